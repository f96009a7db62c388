//! Resultants via Sylvester determinants.
//!
//! Two independent evaluation paths are provided: fraction-free (Bareiss)
//! elimination over the polynomial ring, and evaluation–interpolation through
//! univariate resultants at integer points. Certification runs both and
//! insists they agree.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{MultiPoly, PolyError};

/// Entry ring for fraction-free elimination.
pub trait DetEntry: Clone {
    fn unit() -> Self;
    fn vanished(&self) -> bool;
    fn times(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Division known to be exact (guaranteed by the Bareiss identity).
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl DetEntry for BigRational {
    fn unit() -> Self {
        One::one()
    }
    fn vanished(&self) -> bool {
        Zero::is_zero(self)
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl DetEntry for MultiPoly {
    fn unit() -> Self {
        MultiPoly::constant(<BigRational as num_traits::One>::one())
    }
    fn vanished(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn times(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        MultiPoly::sub(self, rhs)
    }
    fn negate(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        MultiPoly::divexact(self, rhs).expect("Bareiss division must be exact")
    }
}

/// Fraction-free determinant (Bareiss). Exact over any integral domain;
/// intermediate entries are minors of the input matrix.
pub fn bareiss_determinant<T: DetEntry>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::unit();
    }
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut sign_flip = false;
    let mut prev = T::unit();
    for k in 0..n - 1 {
        if m[k][k].vanished() {
            let swap = (k + 1..n).find(|&i| !m[i][k].vanished());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return T::unit().minus(&T::unit()), // zero
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].times(&m[i][j]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = T::unit().minus(&T::unit());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.negate()
    } else {
        det
    }
}

/// Builds the Sylvester matrix of `f` and `g` with respect to `var`.
/// Both must have positive degree in `var`.
pub fn sylvester_matrix(
    f: &MultiPoly,
    g: &MultiPoly,
    var: &str,
) -> Result<Vec<Vec<MultiPoly>>, PolyError> {
    let m = f.degree_in(var) as usize;
    let n = g.degree_in(var) as usize;
    if m == 0 {
        return Err(PolyError::DegreeZeroInVariable(var.to_string()));
    }
    if n == 0 {
        return Err(PolyError::DegreeZeroInVariable(var.to_string()));
    }
    let fc = f.univariate_coeffs(var);
    let gc = g.univariate_coeffs(var);
    let size = m + n;
    let zero = MultiPoly::zero(&[]);
    let mut mat = vec![vec![zero; size]; size];
    // n rows of f coefficients (descending), then m rows of g.
    for row in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    Ok(mat)
}

/// Resultant with respect to `var` by Bareiss elimination over the
/// remaining-variable polynomial ring.
pub fn resultant_bareiss(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    let mat = sylvester_matrix(f, g, var)?;
    Ok(bareiss_determinant(mat).trimmed())
}

/// Resultant of two univariate polynomials in the same variable; exact value
/// via the fraction-free Sylvester determinant.
pub fn univariate_resultant(f: &MultiPoly, g: &MultiPoly) -> Result<BigRational, PolyError> {
    let fv = f.trimmed();
    let gv = g.trimmed();
    assert!(fv.vars().len() <= 1 && gv.vars().len() <= 1, "univariate inputs required");
    let var = fv
        .vars()
        .first()
        .or_else(|| gv.vars().first())
        .ok_or_else(|| PolyError::DegreeZeroInVariable("<constant>".into()))?
        .clone();
    if !gv.vars().is_empty() && !fv.vars().is_empty() && fv.vars() != gv.vars() {
        panic!("univariate resultant requires a common variable");
    }
    let mat = sylvester_matrix(&fv, &gv, &var)?;
    let rat_mat: Vec<Vec<BigRational>> = mat
        .into_iter()
        .map(|row| row.into_iter().map(|p| p.constant_value()).collect())
        .collect();
    Ok(bareiss_determinant(rat_mat))
}

/// How [`resultant`] computes its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultantMode {
    Bareiss,
    Interpolation,
    /// Run both paths and require identical output.
    CrossCheck,
}

/// Resultant of `f` and `g` with respect to `var`.
pub fn resultant(
    f: &MultiPoly,
    g: &MultiPoly,
    var: &str,
    mode: ResultantMode,
) -> Result<MultiPoly, PolyError> {
    match mode {
        ResultantMode::Bareiss => resultant_bareiss(f, g, var),
        ResultantMode::Interpolation => resultant_interpolation(f, g, var),
        ResultantMode::CrossCheck => {
            let a = resultant_bareiss(f, g, var)?;
            let b = resultant_interpolation(f, g, var)?;
            if a != b {
                return Err(PolyError::CrossCheckMismatch);
            }
            Ok(a)
        }
    }
}

/// Resultant by evaluation–interpolation: the remaining variables are fixed
/// at enough distinct integer points (counted from the Sylvester degree
/// bound), univariate resultants are taken over the rationals, and the
/// grid is interpolated back. Deterministic; grid offsets are bumped until
/// no evaluation point kills a leading coefficient.
pub fn resultant_interpolation(
    f: &MultiPoly,
    g: &MultiPoly,
    var: &str,
) -> Result<MultiPoly, PolyError> {
    let m = f.degree_in(var) as usize;
    let n = g.degree_in(var) as usize;
    if m == 0 || n == 0 {
        return Err(PolyError::DegreeZeroInVariable(var.to_string()));
    }
    let mut rest: Vec<String> = f
        .vars()
        .iter()
        .chain(g.vars())
        .filter(|v| v.as_str() != var)
        .cloned()
        .collect();
    rest.sort();
    rest.dedup();
    if rest.is_empty() {
        return Ok(MultiPoly::constant(univariate_resultant(f, g)?));
    }

    // Per-variable degree bound for the resultant, from the Sylvester rows.
    let bounds: Vec<usize> = rest
        .iter()
        .map(|v| n * f.degree_in(v) as usize + m * g.degree_in(v) as usize)
        .collect();

    let lc_f = f.univariate_coeffs(var).pop().unwrap();
    let lc_g = g.univariate_coeffs(var).pop().unwrap();

    // Disjoint positive ranges per variable (also keeps |wᵢ| ≠ |vⱼ|);
    // shift everything if a leading coefficient vanishes somewhere.
    let mut grids: Vec<Vec<BigRational>> = Vec::new();
    'outer: for attempt in 0..100 {
        let mut start = 1i64 + attempt * 7;
        let mut candidate: Vec<Vec<BigRational>> = Vec::new();
        for b in &bounds {
            let pts: Vec<BigRational> = (start..start + *b as i64 + 1)
                .map(|k| BigRational::from_integer(k.into()))
                .collect();
            start += *b as i64 + 1;
            candidate.push(pts);
        }
        // every tensor point must keep both leading coefficients nonzero
        let mut idx = vec![0usize; rest.len()];
        loop {
            let assign: BTreeMap<String, BigRational> = rest
                .iter()
                .zip(&idx)
                .map(|(v, &i)| (v.clone(), candidate[pos_of(&rest, v)][i].clone()))
                .collect();
            if lc_f.eval(&assign).map(|x| x.is_zero()).unwrap_or(false)
                || lc_g.eval(&assign).map(|x| x.is_zero()).unwrap_or(false)
            {
                continue 'outer;
            }
            if !advance(&mut idx, &candidate) {
                break;
            }
        }
        grids = candidate;
        break;
    }
    if grids.is_empty() {
        return Err(PolyError::NoInterpolationGrid);
    }

    interp_recursive(f, g, var, &rest, &grids, &mut BTreeMap::new(), 0)
}

fn pos_of(rest: &[String], v: &str) -> usize {
    rest.iter().position(|r| r == v).unwrap()
}

fn advance(idx: &mut [usize], grids: &[Vec<BigRational>]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < grids[i].len() {
            return true;
        }
        idx[i] = 0;
    }
    false
}

fn interp_recursive(
    f: &MultiPoly,
    g: &MultiPoly,
    var: &str,
    rest: &[String],
    grids: &[Vec<BigRational>],
    assignment: &mut BTreeMap<String, BigRational>,
    depth: usize,
) -> Result<MultiPoly, PolyError> {
    if depth == rest.len() {
        let fe = eval_in_rest(f, var, assignment);
        let ge = eval_in_rest(g, var, assignment);
        return Ok(MultiPoly::constant(univariate_resultant(&fe, &ge)?));
    }
    let v = &rest[depth];
    let xs = &grids[depth];
    let mut ys = Vec::with_capacity(xs.len());
    for x in xs {
        assignment.insert(v.clone(), x.clone());
        ys.push(interp_recursive(f, g, var, rest, grids, assignment, depth + 1)?);
    }
    assignment.remove(v);
    Ok(newton_interpolate(xs, ys, v))
}

/// Substitutes all variables except `var` from the assignment.
fn eval_in_rest(f: &MultiPoly, var: &str, assignment: &BTreeMap<String, BigRational>) -> MultiPoly {
    let mut cur = f.clone();
    for (name, val) in assignment {
        if name != var {
            cur = cur.substitute(name, &MultiPoly::constant(val.clone()));
        }
    }
    cur
}

/// Newton interpolation with polynomial values: returns the unique
/// polynomial `P(v)` of degree < xs.len() with `P(xsᵢ) = ysᵢ`.
pub fn newton_interpolate(xs: &[BigRational], mut ys: Vec<MultiPoly>, var: &str) -> MultiPoly {
    let n = xs.len();
    assert_eq!(n, ys.len());
    // divided differences in place: after level j, ys[i] = [x_i..x_{i+j}]
    for j in 1..n {
        for i in (j..n).rev() {
            let num = ys[i].sub(&ys[i - 1]);
            let den = &xs[i] - &xs[i - j];
            ys[i] = num.mul_rational(&den.recip());
        }
    }
    // Horner assembly: (((dd_n)(v−x_{n−1}) + dd_{n−1})(v−x_{n−2}) + …)
    let v = MultiPoly::var(var);
    let mut acc = ys[n - 1].clone();
    for i in (0..n - 1).rev() {
        let shifted = v.sub(&MultiPoly::constant(xs[i].clone()));
        acc = acc.mul(&shifted).add(&ys[i]);
    }
    acc.trimmed()
}

/// Monic gcd of two univariate polynomials over the rationals (Euclidean
/// remainder sequence with monic normalization at each step). Returns the
/// constant 1 for coprime inputs.
pub fn gcd_univariate(f: &MultiPoly, g: &MultiPoly, var: &str) -> MultiPoly {
    let mut a = to_univar(f, var);
    let mut b = to_univar(g, var);
    while !b.iter().all(|c| c.is_zero()) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    trim_zeros(&mut a);
    if a.is_empty() {
        return MultiPoly::zero(&[var]);
    }
    // monic normalization
    let lc = a.last().unwrap().clone();
    let coeffs: Vec<BigRational> = a.iter().map(|c| c / &lc).collect();
    from_univar(&coeffs, var)
}

fn to_univar(f: &MultiPoly, var: &str) -> Vec<BigRational> {
    f.univariate_coeffs(var)
        .into_iter()
        .map(|c| {
            assert!(c.is_constant(), "input must be univariate in {var}");
            c.constant_value()
        })
        .collect()
}

fn from_univar(coeffs: &[BigRational], var: &str) -> MultiPoly {
    let terms: Vec<(BigRational, Vec<u32>)> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), vec![i as u32]))
        .collect();
    let borrowed: Vec<(BigRational, &[u32])> =
        terms.iter().map(|(c, e)| (c.clone(), e.as_slice())).collect();
    MultiPoly::from_terms_rational(&[var], &borrowed)
}

fn trim_zeros(a: &mut Vec<BigRational>) {
    while a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim_zeros(&mut r);
    let mut bb = b.to_vec();
    trim_zeros(&mut bb);
    assert!(!bb.is_empty(), "division by zero polynomial");
    let db = bb.len() - 1;
    let lb = bb.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let factor = r.last().unwrap() / &lb;
        for k in 0..=db {
            let idx = dr - db + k;
            let delta = &factor * &bb[k];
            r[idx] -= delta;
        }
        trim_zeros(&mut r);
        if r.len() <= db {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat_int, random_rational};
    use rand::Rng;
    use rand::SeedableRng;

    fn upoly(var: &str, coeffs: &[i64]) -> MultiPoly {
        let terms: Vec<(i128, Vec<u32>)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (c as i128, vec![i as u32]))
            .collect();
        let borrowed: Vec<(i128, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        MultiPoly::from_terms(&[var], &borrowed)
    }

    #[test]
    fn univariate_resultant_examples() {
        // res(x−2, x²−1) = 3
        let f = upoly("x", &[-2, 1]);
        let g = upoly("x", &[-1, 0, 1]);
        assert_eq!(univariate_resultant(&f, &g).unwrap(), rat_int(3));
        // res(x²+1, x²−1) = 4
        let h = upoly("x", &[1, 0, 1]);
        assert_eq!(univariate_resultant(&h, &g).unwrap(), rat_int(4));
        // res(z−1, z+1) = 2
        let a = upoly("z", &[-1, 1]);
        let b = upoly("z", &[1, 1]);
        assert_eq!(univariate_resultant(&a, &b).unwrap(), rat_int(2));
        // res(z²−1, z²−2z+1) = 0, shared root z = 1
        let c = upoly("z", &[-1, 0, 1]);
        let d = upoly("z", &[1, -2, 1]);
        assert_eq!(univariate_resultant(&c, &d).unwrap(), rat_int(0));
    }

    #[test]
    fn degree_zero_input_errors() {
        let f = upoly("x", &[5]);
        let g = upoly("x", &[-1, 0, 1]);
        assert!(matches!(
            univariate_resultant(&f, &g),
            Err(PolyError::DegreeZeroInVariable(_))
        ));
    }

    #[test]
    fn resultant_swap_sign_rule() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let f = upoly(
                "x",
                &[
                    rng.gen_range(-5..=5),
                    rng.gen_range(-5..=5),
                    rng.gen_range(1..=5),
                ],
            );
            let g = upoly(
                "x",
                &[
                    rng.gen_range(-5..=5),
                    rng.gen_range(-5..=5),
                    rng.gen_range(-5..=5),
                    rng.gen_range(1..=5),
                ],
            );
            let rf = univariate_resultant(&f, &g).unwrap();
            let rg = univariate_resultant(&g, &f).unwrap();
            // (−1)^{2·3} = 1
            assert_eq!(rf, rg);
        }
        // odd·odd degree flips the sign: res(x−3, x+5) = 8 = −res(x+5, x−3)
        let f = upoly("x", &[-3, 1]);
        let g = upoly("x", &[5, 1]);
        assert_eq!(univariate_resultant(&f, &g).unwrap(), rat_int(8));
        assert_eq!(univariate_resultant(&g, &f).unwrap(), rat_int(-8));
    }

    /// Brute-force oracle: for f = Π(x−uᵢ) and g = Π(x−vⱼ),
    /// res(f,g) = Π(uᵢ−vⱼ); zero exactly when a root is shared.
    #[test]
    fn resultant_matches_linear_factor_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for trial in 0..20 {
            let us: Vec<BigRational> = (0..3).map(|_| random_rational(&mut rng, 6)).collect();
            let mut vs: Vec<BigRational> = (0..2).map(|_| random_rational(&mut rng, 6)).collect();
            if trial % 4 == 0 {
                vs[0] = us[1].clone(); // force a shared root
            }
            let x = MultiPoly::var("x");
            let poly_from_roots = |roots: &[BigRational]| {
                roots.iter().fold(MultiPoly::constant(<BigRational as num_traits::One>::one()), |acc, r| {
                    acc.mul(&x.sub(&MultiPoly::constant(r.clone())))
                })
            };
            let f = poly_from_roots(&us);
            let g = poly_from_roots(&vs);
            let expected = us
                .iter()
                .flat_map(|u| vs.iter().map(move |v| u - v))
                .fold(<BigRational as num_traits::One>::one(), |acc, d| acc * d);
            assert_eq!(univariate_resultant(&f, &g).unwrap(), expected);
        }
    }

    /// Multivariate oracle: roots that are linear forms in (w, v).
    #[test]
    fn multivariate_resultant_matches_oracle_and_cross_checks() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..6 {
            let lin = |rng: &mut rand_chacha::ChaCha8Rng| {
                MultiPoly::from_terms(
                    &["w", "v"],
                    &[
                        (rng.gen_range(-3..=3), &[1, 0][..]),
                        (rng.gen_range(-3..=3), &[0, 1][..]),
                        (rng.gen_range(-3..=3), &[0, 0][..]),
                    ],
                )
            };
            let roots_f = [lin(&mut rng), lin(&mut rng)];
            let roots_g = [lin(&mut rng)];
            let s = MultiPoly::var("s");
            let build = |roots: &[MultiPoly]| {
                roots.iter().fold(MultiPoly::constant(<BigRational as num_traits::One>::one()), |acc, r| {
                    acc.mul(&s.sub(r))
                })
            };
            let f = build(&roots_f);
            let g = build(&roots_g);
            let expected = roots_f
                .iter()
                .flat_map(|a| roots_g.iter().map(move |b| a.sub(b)))
                .fold(MultiPoly::constant(<BigRational as num_traits::One>::one()), |acc, d| acc.mul(&d));
            let got = resultant(&f, &g, "s", ResultantMode::CrossCheck).unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn gcd_univariate_detects_common_factors() {
        // gcd((x−1)(x+2), (x−1)(x−3)) = x − 1
        let f = upoly("x", &[-2, 1, 1]); // x² + x − 2
        let g = upoly("x", &[3, -4, 1]); // (x−1)(x−3)
        let gcd = gcd_univariate(&f, &g, "x");
        assert_eq!(gcd, upoly("x", &[-1, 1]));
        // coprime inputs give a constant
        let a = upoly("x", &[1, 1]);
        let b = upoly("x", &[2, 0, 1]);
        assert!(gcd_univariate(&a, &b, "x").is_constant());
    }

    #[test]
    fn newton_interpolation_reconstructs() {
        let xs: Vec<BigRational> = (1..=4).map(rat_int).collect();
        let target = upoly("z", &[2, -3, 0, 5]);
        let assign = |x: &BigRational| {
            let mut m = BTreeMap::new();
            m.insert("z".to_string(), x.clone());
            MultiPoly::constant(target.eval(&m).unwrap())
        };
        let ys: Vec<MultiPoly> = xs.iter().map(assign).collect();
        assert_eq!(newton_interpolate(&xs, ys, "z"), target);
    }
}
