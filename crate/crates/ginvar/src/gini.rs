//! Gini mean evaluation, equality testing, Gauss iteration/composition, and
//! numeric invariance residuals.
//!
//! Evaluation runs in the logarithmic domain with log-sum-exp so that large
//! exponents and extreme argument ratios cannot overflow. The `p = q` branch
//! is selected by exact rational comparison, never by an epsilon.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{rat, BigFloat};

/// Extra working bits used inside evaluations before rounding back.
const GUARD_BITS: usize = 64;

/// Errors from numeric mean evaluation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GiniError {
    #[error("Gini means are defined for positive arguments only")]
    NonPositiveArgument,
    #[error("Gauss iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("verification grid is empty")]
    EmptyGrid,
}

/// Parameter pair of a Gini mean, stored with `p ≥ q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GiniParams {
    p: BigRational,
    q: BigRational,
}

impl GiniParams {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        if p >= q {
            GiniParams { p, q }
        } else {
            GiniParams { p: q, q: p }
        }
    }

    pub fn arithmetic() -> Self {
        Self::new(rat(1, 1), rat(0, 1))
    }

    pub fn geometric() -> Self {
        Self::new(rat(0, 1), rat(0, 1))
    }

    pub fn harmonic() -> Self {
        Self::new(rat(0, 1), rat(-1, 1))
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    /// Evaluates the mean at positive `x`, `y`.
    ///
    /// For `p ≠ q` this is `exp((ln(x^p+y^p) − ln(x^q+y^q))/(p−q))` with the
    /// log-sums computed by log-sum-exp; for `p = q` the exponential form
    /// `exp((x^p ln x + y^p ln y)/(x^p+y^p))` in the same stabilized style.
    pub fn eval(&self, x: &BigFloat, y: &BigFloat) -> Result<BigFloat, GiniError> {
        if !x.is_positive() || !y.is_positive() {
            return Err(GiniError::NonPositiveArgument);
        }
        let prec = x.precision().min(y.precision());
        let work = prec.saturating_add(GUARD_BITS).min(1 << 20);
        let lx = x.with_precision(work).ln();
        let ly = y.with_precision(work).ln();
        let result = if self.p == self.q {
            // u = p·ln x, v = p·ln y, m = max(u, v):
            // exp((e^{u−m}·ln x + e^{v−m}·ln y)/(e^{u−m} + e^{v−m}))
            let pf = BigFloat::from_rational(&self.p, work);
            let u = pf.mul(&lx);
            let v = pf.mul(&ly);
            let m = u.max(&v);
            let eu = u.sub(&m).exp();
            let ev = v.sub(&m).exp();
            let num = eu.mul(&lx).add(&ev.mul(&ly));
            let den = eu.add(&ev);
            num.div(&den).exp()
        } else {
            let pf = BigFloat::from_rational(&self.p, work);
            let qf = BigFloat::from_rational(&self.q, work);
            let np = log_sum_exp(&pf.mul(&lx), &pf.mul(&ly));
            let nq = log_sum_exp(&qf.mul(&lx), &qf.mul(&ly));
            np.sub(&nq).div(&pf.sub(&qf)).exp()
        };
        Ok(result.with_precision(prec))
    }
}

/// `ln(e^u + e^v) = max + ln(1 + e^{min−max})`.
fn log_sum_exp(u: &BigFloat, v: &BigFloat) -> BigFloat {
    let (hi, lo) = if u >= v { (u, v) } else { (v, u) };
    let one = BigFloat::exact_int(1);
    hi.add(&one.add(&lo.sub(hi).exp()).ln())
}

/// The six-parameter tuple of the invariance equation, each pair stored in
/// descending order so tuple equality is multiset equality per pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamTuple<T = BigRational> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub p: T,
    pub q: T,
}

impl ParamTuple<BigRational> {
    pub fn new(
        a: BigRational,
        b: BigRational,
        c: BigRational,
        d: BigRational,
        p: BigRational,
        q: BigRational,
    ) -> Self {
        let (a, b) = if a >= b { (a, b) } else { (b, a) };
        let (c, d) = if c >= d { (c, d) } else { (d, c) };
        let (p, q) = if p >= q { (p, q) } else { (q, p) };
        ParamTuple { a, b, c, d, p, q }
    }

    pub fn from_i64(vals: [i64; 6]) -> Self {
        let [a, b, c, d, p, q] = vals.map(|v| BigRational::from_integer(v.into()));
        Self::new(a, b, c, d, p, q)
    }

    pub fn outer(&self) -> GiniParams {
        GiniParams::new(self.p.clone(), self.q.clone())
    }

    pub fn inner_first(&self) -> GiniParams {
        GiniParams::new(self.a.clone(), self.b.clone())
    }

    pub fn inner_second(&self) -> GiniParams {
        GiniParams::new(self.c.clone(), self.d.clone())
    }
}

/// Equality test for two Gini means: `G_{a,b} = G_{c,d}` iff
/// `a+b = c+d = 0` (both geometric) or `{a,b} = {c,d}` as multisets.
pub fn means_equal(a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational) -> bool {
    if (a + b).is_zero() && (c + d).is_zero() {
        return true;
    }
    (a == c && b == d) || (a == d && b == c)
}

/// Result of a Gauss composition run.
#[derive(Debug, Clone)]
pub struct GaussResult {
    pub value: BigFloat,
    pub iterations: usize,
}

/// Iteration cap; unreachable for strict means at sane precision.
pub const GAUSS_MAX_ITER: usize = 10_000;

/// Gauss composition `M ⊗ N`: iterates `x ← M(x,y)`, `y ← N(x,y)` until the
/// pair agrees to `reltol`, returning the midpoint and iteration count.
pub fn gauss_compose(
    m: &GiniParams,
    n: &GiniParams,
    x: &BigFloat,
    y: &BigFloat,
    reltol: &BigFloat,
) -> Result<GaussResult, GiniError> {
    if !x.is_positive() || !y.is_positive() {
        return Err(GiniError::NonPositiveArgument);
    }
    let mut xs = x.clone();
    let mut ys = y.clone();
    for iter in 0..GAUSS_MAX_ITER {
        let gap = xs.sub(&ys).abs();
        if gap <= reltol.mul(&xs.max(&ys)) {
            let two = BigFloat::exact_int(2);
            return Ok(GaussResult { value: xs.add(&ys).div(&two), iterations: iter });
        }
        let nx = m.eval(&xs, &ys)?;
        let ny = n.eval(&xs, &ys)?;
        xs = nx;
        ys = ny;
    }
    Err(GiniError::NoConvergence(GAUSS_MAX_ITER))
}

/// Default relative tolerance for Gauss composition at `prec` bits.
pub fn default_gauss_reltol(prec: usize) -> BigFloat {
    BigFloat::pow2(-((prec.saturating_sub(16)) as i32), prec)
}

/// Sup over the grid of `|G_{p,q}(G_{a,b}(x,y), G_{c,d}(x,y))/G_{p,q}(x,y) − 1|`.
pub fn invariance_residual(
    t: &ParamTuple,
    grid: &[(BigFloat, BigFloat)],
) -> Result<BigFloat, GiniError> {
    residual_with_early_exit(t, grid, None)
}

/// Like [`invariance_residual`] but stops scanning once the running sup
/// exceeds `stop_above`, when provided.
pub fn residual_with_early_exit(
    t: &ParamTuple,
    grid: &[(BigFloat, BigFloat)],
    stop_above: Option<&BigFloat>,
) -> Result<BigFloat, GiniError> {
    if grid.is_empty() {
        return Err(GiniError::EmptyGrid);
    }
    let outer = t.outer();
    let first = t.inner_first();
    let second = t.inner_second();
    let one = BigFloat::exact_int(1);
    let mut sup = BigFloat::zero();
    for (x, y) in grid {
        let inner1 = first.eval(x, y)?;
        let inner2 = second.eval(x, y)?;
        let lhs = outer.eval(&inner1, &inner2)?;
        let rhs = outer.eval(x, y)?;
        let resid = lhs.div(&rhs).sub(&one).abs();
        if resid > sup {
            sup = resid;
        }
        if let Some(threshold) = stop_above {
            if &sup > threshold {
                break;
            }
        }
    }
    Ok(sup)
}

/// Default verification grid: `(e^h, e^{−h})` for `h ∈ {1/10, 1/2, 1, 2, 5}`
/// plus 16 seeded-random positive pairs with ratio up to 10⁴.
pub fn default_grid(prec: usize, seed: u64) -> Vec<(BigFloat, BigFloat)> {
    let mut grid = Vec::with_capacity(21);
    for (n, d) in [(1i64, 10i64), (1, 2), (1, 1), (2, 1), (5, 1)] {
        let h = BigFloat::from_rational(&rat(n, d), prec);
        grid.push((h.exp(), h.neg().exp()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ln10 = BigFloat::from_i64(10, prec).ln();
    for _ in 0..16 {
        let center: f64 = rng.gen_range(-2.0..2.0);
        let ratio_exp: f64 = rng.gen_range(0.0..4.0);
        let x = BigFloat::from_f64(center, prec).mul(&ln10).exp();
        let y = BigFloat::from_f64(center - ratio_exp, prec).mul(&ln10).exp();
        grid.push((x, y));
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    fn bf(v: i64) -> BigFloat {
        BigFloat::from_i64(v, 256)
    }

    fn close(a: &BigFloat, b: &BigFloat, bits: i32) -> bool {
        a.rel_diff(b) < BigFloat::pow2(-bits, 256)
    }

    #[test]
    fn classic_means() {
        // arithmetic mean of (2, 8) is 5
        let am = GiniParams::arithmetic().eval(&bf(2), &bf(8)).unwrap();
        assert!(close(&am, &bf(5), 250));
        // harmonic mean of (2, 8) is 3.2
        let hm = GiniParams::harmonic().eval(&bf(2), &bf(8)).unwrap();
        assert!(close(&hm, &BigFloat::from_rational(&rat(16, 5), 256), 250));
        // geometric mean of (2, 8) is 4 (p = q branch)
        let gm = GiniParams::geometric().eval(&bf(2), &bf(8)).unwrap();
        assert!(close(&gm, &bf(4), 250));
    }

    #[test]
    fn rejects_nonpositive_arguments() {
        let g = GiniParams::arithmetic();
        assert_eq!(g.eval(&bf(0), &bf(1)), Err(GiniError::NonPositiveArgument));
        assert_eq!(g.eval(&bf(2), &bf(-3)), Err(GiniError::NonPositiveArgument));
    }

    #[test]
    fn means_equal_lemma_cases() {
        // both geometric
        assert!(means_equal(&rat_int(1), &rat_int(-1), &rat_int(2), &rat_int(-2)));
        // same multiset
        assert!(means_equal(&rat_int(3), &rat_int(1), &rat_int(1), &rat_int(3)));
        // distinct power means
        assert!(!means_equal(&rat_int(1), &rat_int(0), &rat_int(2), &rat_int(0)));
    }

    #[test]
    fn gauss_arithmetic_harmonic_is_geometric() {
        let reltol = default_gauss_reltol(256);
        let r = gauss_compose(
            &GiniParams::arithmetic(),
            &GiniParams::harmonic(),
            &bf(2),
            &bf(8),
            &reltol,
        )
        .unwrap();
        assert!(close(&r.value, &bf(4), 230));
        assert!(r.iterations <= 60);
    }

    #[test]
    fn gauss_identical_means_converges_immediately() {
        let reltol = default_gauss_reltol(256);
        let m = GiniParams::arithmetic();
        let r = gauss_compose(&m, &m, &bf(2), &bf(8), &reltol).unwrap();
        assert!(close(&r.value, &bf(5), 230));
        assert!(r.iterations <= 2);
    }

    #[test]
    fn mean_axioms_symmetry_homogeneity_duality() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tol = BigFloat::pow2(-200, 256);
        for _ in 0..15 {
            let p = crate::exactnum::rational::random_rational(&mut rng, 8);
            let q = crate::exactnum::rational::random_rational(&mut rng, 8);
            let g = GiniParams::new(p.clone(), q.clone());
            let x = BigFloat::from_f64(rng.gen_range(0.1..50.0), 256);
            let y = BigFloat::from_f64(rng.gen_range(0.1..50.0), 256);
            let m = g.eval(&x, &y).unwrap();
            // mean axioms: min ≤ M ≤ max, strict for x ≠ y
            assert!(m >= x.min(&y) && m <= x.max(&y));
            // symmetry in arguments
            let m2 = g.eval(&y, &x).unwrap();
            assert!(m.rel_diff(&m2) < tol);
            // symmetry in parameters
            let m3 = GiniParams::new(q.clone(), p.clone()).eval(&x, &y).unwrap();
            assert!(m.rel_diff(&m3) < tol);
            // homogeneity
            let lam = BigFloat::from_f64(rng.gen_range(0.5..4.0), 256);
            let mh = g.eval(&x.mul(&lam), &y.mul(&lam)).unwrap();
            assert!(mh.rel_diff(&m.mul(&lam)) < tol);
            // duality: 1/G_{p,q}(1/x, 1/y) = G_{−p,−q}(x, y)
            let inv = BigFloat::exact_int(1);
            let lhs = inv.div(&g.eval(&inv.div(&x), &inv.div(&y)).unwrap());
            let dual = GiniParams::new(-p.clone(), -q.clone()).eval(&x, &y).unwrap();
            assert!(lhs.rel_diff(&dual) < tol);
        }
    }

    #[test]
    fn power_mean_agreement_when_q_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let tol = BigFloat::pow2(-200, 256);
        for _ in 0..10 {
            let p = crate::exactnum::rational::random_nonzero_rational(&mut rng, 6);
            let g = GiniParams::new(p.clone(), BigRational::zero());
            let x = BigFloat::from_f64(rng.gen_range(0.2..20.0), 256);
            let y = BigFloat::from_f64(rng.gen_range(0.2..20.0), 256);
            let got = g.eval(&x, &y).unwrap();
            // direct power-mean evaluation ((x^p + y^p)/2)^{1/p}
            let pf = BigFloat::from_rational(&p, 320);
            let xp = x.with_precision(320).ln().mul(&pf).exp();
            let yp = y.with_precision(320).ln().mul(&pf).exp();
            let half = BigFloat::from_rational(&rat(1, 2), 320);
            let want = xp.add(&yp).mul(&half).ln().div(&pf).exp();
            assert!(got.rel_diff(&want.with_precision(256)) < tol);
        }
    }

    #[test]
    fn invariance_residual_detects_family_and_defect() {
        let grid = default_grid(256, 0xF00D);
        // family member (3/2, 1/2, 1/2, −1/2, 1, 0)
        let t = ParamTuple::new(rat(3, 2), rat(1, 2), rat(1, 2), rat(-1, 2), rat_int(1), rat_int(0));
        let r = invariance_residual(&t, &grid).unwrap();
        assert!(r <= BigFloat::ten_pow(-60, 256), "family residual {r}");
        // non-solution (1,0,1,0,2,0) has a second-order defect
        let bad = ParamTuple::from_i64([1, 0, 1, 0, 2, 0]);
        let rb = invariance_residual(&bad, &grid).unwrap();
        assert!(rb > BigFloat::ten_pow(-3, 256), "defect residual {rb}");
    }

    #[test]
    fn gauss_fixed_point_and_bracketing() {
        let reltol = default_gauss_reltol(256);
        let m = GiniParams::arithmetic();
        let n = GiniParams::geometric();
        let x = bf(3);
        let y = bf(1);
        let k = gauss_compose(&m, &n, &x, &y, &reltol).unwrap();
        // invariance: K(M(x,y), N(x,y)) = K(x,y)
        let mx = m.eval(&x, &y).unwrap();
        let ny = n.eval(&x, &y).unwrap();
        let k2 = gauss_compose(&m, &n, &mx, &ny, &reltol).unwrap();
        assert!(k.value.rel_diff(&k2.value) < BigFloat::pow2(-220, 256));
        // bracketing: nested, strictly shrinking intervals until the gap
        // reaches float resolution
        let floor = BigFloat::pow2(-200, 256);
        let (mut lo, mut hi) = (y.clone(), x.clone());
        while hi.sub(&lo) > floor {
            let nlo = n.eval(&hi, &lo).unwrap().min(&m.eval(&hi, &lo).unwrap());
            let nhi = n.eval(&hi, &lo).unwrap().max(&m.eval(&hi, &lo).unwrap());
            assert!(nlo >= lo && nhi <= hi);
            assert!(nhi.sub(&nlo) < hi.sub(&lo));
            lo = nlo;
            hi = nhi;
        }
    }

    #[test]
    fn default_grid_shape_and_determinism() {
        let g1 = default_grid(256, 42);
        let g2 = default_grid(256, 42);
        assert_eq!(g1.len(), 21);
        for ((x1, y1), (x2, y2)) in g1.iter().zip(&g2) {
            assert_eq!(x1, x2);
            assert_eq!(y1, y2);
        }
        for (x, y) in &g1 {
            assert!(x.is_positive() && y.is_positive());
            // ratio at most 10⁴ (with a little slack for the h-grid)
            let ratio = x.max(y).div(&x.min(y));
            assert!(ratio <= BigFloat::ten_pow(5, 256));
        }
    }
}
