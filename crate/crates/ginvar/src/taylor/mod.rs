//! Exact Taylor expansion of the invariance-equation section function
//!
//! ```text
//! F(x) = G_{p,q}(G_{a,b}(e^x, e^{−x}), G_{c,d}(e^x, e^{−x})) / G_{p,q}(e^x, e^{−x})
//! ```
//!
//! at `x = 0`, over big rationals or formal radical towers, together with
//! the `(w, v, t, r, s)` reparametrization and exact identity testing of the
//! stored closed-form coefficients.
//!
//! Two engines compute the coefficients `C_k`:
//!
//! * [`taylor_coefficients`] routes each parameter pair through either plain
//!   rational series or a single-radical tower, extracting the radical
//!   coordinate where conjugation symmetry makes the result rational. This
//!   is the fast path.
//! * [`taylor_coefficients_full_tower`] runs the whole computation in one
//!   merged tower (up to three radicals) and projects at the end, checking
//!   that every radical coordinate vanishes. It is the independent
//!   cross-check route and the home of the radical-residue error contract.

pub mod formulas;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactnum::rational::random_rational;
use crate::exactnum::{ExactError, TowerElement};
use crate::gini::ParamTuple;
use crate::series::{cosh_series, tanh_series, PowerSeries, SeriesError};
use formulas::{paper_formula, r_solution_value, FormulaStage, PaperFormula};

/// Errors from the Taylor engines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TaylorError {
    #[error("parameter `{0}` must be nonzero at this stage")]
    ZeroParameter(&'static str),
    #[error("series arithmetic: {0}")]
    Series(#[from] SeriesError),
    #[error("tower arithmetic: {0}")]
    Exact(#[from] ExactError),
    #[error("unsupported tower shape: parameter pairs must be rational or conjugate over one radical")]
    UnsupportedTowerPair,
    #[error("coefficient C_{index} has a nonzero radical coordinate (internal inconsistency)")]
    RadicalResidue { index: usize },
    #[error("odd-order coefficient C_{index} is nonzero (internal inconsistency)")]
    OddCoefficientResidue { index: usize },
    #[error("constant coefficient of F is not 1 (internal inconsistency)")]
    BadConstantTerm,
    #[error("order must be at least 2")]
    OrderTooSmall,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

/// The reduced coordinates of the parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedParams {
    pub w: BigRational,
    pub v: BigRational,
    pub t: BigRational,
    pub r: BigRational,
    pub s: BigRational,
}

/// `w = (a+b+c+d)/4`, `v = (a+b−c−d)/4`, `t = ((p−q)/2)²`,
/// `r = ((a−b)²+(c−d)²)/8`, `s = ((a−b)²−(c−d)²)/8`.
pub fn reduce_params(t: &ParamTuple) -> ReducedParams {
    let four = BigRational::from_integer(4.into());
    let eight = BigRational::from_integer(8.into());
    let two = BigRational::from_integer(2.into());
    let ab = &t.a + &t.b;
    let cd = &t.c + &t.d;
    let amb = &t.a - &t.b;
    let cmd = &t.c - &t.d;
    let half_pq = (&t.p - &t.q) / &two;
    ReducedParams {
        w: (&ab + &cd) / &four,
        v: (&ab - &cd) / &four,
        t: &half_pq * &half_pq,
        r: (&amb * &amb + &cmd * &cmd) / &eight,
        s: (&amb * &amb - &cmd * &cmd) / &eight,
    }
}

/// Which substitutions have been applied before lifting `(w, v, s)` back to
/// a parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftStage {
    /// `t` and `r` both free.
    Free { t: BigRational, r: BigRational },
    /// After `t := r + v·s/w` with `r` free; requires `w ≠ 0`.
    TSolved { r: BigRational },
    /// After `r := R(w,v,s)` too; requires `w ≠ 0` and `v ≠ 0`.
    RSolved,
}

/// Lifts reduced coordinates to a parameter tuple over the radical tower:
/// `a, b = w+v ± √(r+s)`, `c, d = w−v ± √(r−s)`, `p, q = w ± √t`,
/// with perfect-square radicands folded to rationals.
pub fn lift_params(
    w: &BigRational,
    v: &BigRational,
    s: &BigRational,
    stage: LiftStage,
) -> Result<(ParamTuple<TowerElement>, ReducedParams), TaylorError> {
    let (t, r) = match stage {
        LiftStage::Free { t, r } => (t, r),
        LiftStage::TSolved { r } => {
            if w.is_zero() {
                return Err(TaylorError::ZeroParameter("w"));
            }
            let t = &r + &(v * s) / w;
            (t, r)
        }
        LiftStage::RSolved => {
            if w.is_zero() {
                return Err(TaylorError::ZeroParameter("w"));
            }
            if v.is_zero() {
                return Err(TaylorError::ZeroParameter("v"));
            }
            let r = r_solution_value(w, v, s);
            let t = &r + &(v * s) / w;
            (t, r)
        }
    };
    let reduced = ReducedParams { w: w.clone(), v: v.clone(), t: t.clone(), r: r.clone(), s: s.clone() };
    let wv = TowerElement::from_rational(w + v);
    let wmv = TowerElement::from_rational(w - v);
    let wt = TowerElement::from_rational(w.clone());
    let s1 = TowerElement::sqrt_of(&r + s);
    let s2 = TowerElement::sqrt_of(&r - s);
    let s3 = TowerElement::sqrt_of(t);
    let tuple = ParamTuple {
        a: &wv + &s1,
        b: &wv - &s1,
        c: &wmv + &s2,
        d: &wmv - &s2,
        p: &wt + &s3,
        q: &wt - &s3,
    };
    Ok((tuple, reduced))
}

impl From<&ParamTuple<BigRational>> for ParamTuple<TowerElement> {
    fn from(t: &ParamTuple<BigRational>) -> Self {
        ParamTuple {
            a: TowerElement::from_rational(t.a.clone()),
            b: TowerElement::from_rational(t.b.clone()),
            c: TowerElement::from_rational(t.c.clone()),
            d: TowerElement::from_rational(t.d.clone()),
            p: TowerElement::from_rational(t.p.clone()),
            q: TowerElement::from_rational(t.q.clone()),
        }
    }
}

/// How one parameter pair sits in its tower.
enum PairRepr {
    /// Two rational parameters.
    Split(BigRational, BigRational),
    /// `base ± scale·√radicand` with a formal (non-square) radicand.
    Conjugate {
        base: BigRational,
        scale: BigRational,
        radicand: BigRational,
    },
}

impl PairRepr {
    fn detect(x: &TowerElement, y: &TowerElement) -> Result<PairRepr, TaylorError> {
        let xt = x.trimmed();
        let yt = y.trimmed();
        match (xt.to_rational(), yt.to_rational()) {
            (Some(a), Some(b)) => Ok(PairRepr::Split(a, b)),
            (None, None) => {
                let (bx, ex, dx) =
                    xt.single_radical_parts().ok_or(TaylorError::UnsupportedTowerPair)?;
                let (by, ey, dy) =
                    yt.single_radical_parts().ok_or(TaylorError::UnsupportedTowerPair)?;
                if bx == by && dx == dy && *ey == -ex && !ex.is_zero() {
                    Ok(PairRepr::Conjugate {
                        base: bx.clone(),
                        scale: ex.clone(),
                        radicand: dx.clone(),
                    })
                } else {
                    Err(TaylorError::UnsupportedTowerPair)
                }
            }
            _ => Err(TaylorError::UnsupportedTowerPair),
        }
    }
}

type QSeries = PowerSeries<BigRational>;

/// Log of the section series of `G_{α,β}`:
/// `LA = log G_{α,β}(e^x, e^{−x})`, which is
/// `(log cosh(αx) − log cosh(βx))/(α−β)` for `α ≠ β` and `x·tanh(αx)` for
/// `α = β`. For a conjugate pair the quotient is the radical coordinate of
/// `log cosh((base + scale·√d)·x)` divided by `scale`, which is rational.
fn log_section(pair: &PairRepr, order: usize) -> Result<QSeries, TaylorError> {
    match pair {
        PairRepr::Split(alpha, beta) => {
            if alpha == beta {
                Ok(tanh_series(alpha, order).shift_up(1))
            } else {
                let la = cosh_series(alpha, order).log()?;
                let lb = cosh_series(beta, order).log()?;
                let inv = (alpha - beta).recip();
                Ok(la.sub(&lb).mul_rational(&inv))
            }
        }
        PairRepr::Conjugate { base, scale, radicand } => {
            let k = &TowerElement::from_rational(base.clone())
                + &TowerElement::sqrt_of(radicand.clone()).mul_rational(scale);
            let lc = cosh_series(&k, order).log()?;
            let inv = scale.recip();
            Ok(radical_coordinate(&lc).mul_rational(&inv))
        }
    }
}

/// Radical-coordinate series of a single-radical tower series.
fn radical_coordinate(f: &PowerSeries<TowerElement>) -> QSeries {
    f.map(|c| {
        let t = c.trimmed();
        match t.single_radical_parts() {
            Some((_, coord, _)) => coord.clone(),
            None => BigRational::zero(), // purely rational coefficient
        }
    })
}

/// Exponent series `X = log F` from the two inner log-sections and the
/// outer parameter pair.
fn outer_exponent(
    la: &QSeries,
    lb: &QSeries,
    pair: &PairRepr,
    order: usize,
) -> Result<QSeries, TaylorError> {
    let half = BigRational::new(1.into(), 2.into());
    match pair {
        PairRepr::Split(p, q) if p != q => {
            let l1 = power_sum_log(la, lb, p)?;
            let l2 = power_sum_log(la, lb, q)?;
            let lcp = cosh_series(p, order).log()?;
            let lcq = cosh_series(q, order).log()?;
            let inv = (p - q).recip();
            Ok(l1.sub(&l2).sub(&lcp).add(&lcq).mul_rational(&inv))
        }
        PairRepr::Split(p, _) => {
            // p = q branch: X = (A^p·LA + B^p·LB)/(A^p + B^p) − x·tanh(px)
            let epa = la.mul_rational(p).exp()?;
            let epb = lb.mul_rational(p).exp()?;
            let num = epa.mul(la).add(&epb.mul(lb));
            let den = epa.add(&epb);
            let section = tanh_series(p, order).shift_up(1);
            Ok(num.mul(&den.reciprocal()?).sub(&section))
        }
        PairRepr::Conjugate { base, scale, radicand } => {
            let p = &TowerElement::from_rational(base.clone())
                + &TowerElement::sqrt_of(radicand.clone()).mul_rational(scale);
            let lat = la.map(|c| TowerElement::from_rational(c.clone()));
            let lbt = lb.map(|c| TowerElement::from_rational(c.clone()));
            let epa = lat.mul_scalar(&p).exp()?;
            let epb = lbt.mul_scalar(&p).exp()?;
            let l = epa.add(&epb).mul_rational(&half).log()?;
            let lcp = cosh_series(&p, order).log()?;
            let d = l.sub(&lcp);
            let inv = scale.recip();
            Ok(radical_coordinate(&d).mul_rational(&inv))
        }
    }
}

/// `log((A^p + B^p)/2)` over the rationals.
fn power_sum_log(la: &QSeries, lb: &QSeries, p: &BigRational) -> Result<QSeries, TaylorError> {
    let half = BigRational::new(1.into(), 2.into());
    let epa = la.mul_rational(p).exp()?;
    let epb = lb.mul_rational(p).exp()?;
    Ok(epa.add(&epb).mul_rational(&half).log()?)
}

fn finish(f: QSeries) -> Result<Vec<BigRational>, TaylorError> {
    if !f.coeff(0).is_one() {
        return Err(TaylorError::BadConstantTerm);
    }
    for (i, c) in f.coeffs().iter().enumerate().skip(1).step_by(2) {
        if !c.is_zero() {
            return Err(TaylorError::OddCoefficientResidue { index: i });
        }
    }
    Ok(f.into_coeffs())
}

/// Taylor coefficients `c₀ … c_N` of `F`; `c₀ = 1`, odd entries exactly 0.
///
/// Parameter pairs must be rational or conjugate over a single radical,
/// which is what [`lift_params`] produces.
pub fn taylor_coefficients(
    t: &ParamTuple<TowerElement>,
    order: usize,
) -> Result<Vec<BigRational>, TaylorError> {
    if order < 2 {
        return Err(TaylorError::OrderTooSmall);
    }
    let ab = PairRepr::detect(&t.a, &t.b)?;
    let cd = PairRepr::detect(&t.c, &t.d)?;
    let pq = PairRepr::detect(&t.p, &t.q)?;
    let la = log_section(&ab, order)?;
    let lb = log_section(&cd, order)?;
    let x = outer_exponent(&la, &lb, &pq, order)?;
    finish(x.exp()?)
}

/// [`taylor_coefficients`] for a plain rational tuple.
pub fn taylor_coefficients_rational(
    t: &ParamTuple<BigRational>,
    order: usize,
) -> Result<Vec<BigRational>, TaylorError> {
    taylor_coefficients(&ParamTuple::<TowerElement>::from(t), order)
}

/// Independent engine: the whole computation runs in one merged radical
/// tower (up to three radicals); every coefficient must project to the
/// rationals with zero radical coordinates.
pub fn taylor_coefficients_full_tower(
    t: &ParamTuple<TowerElement>,
    order: usize,
) -> Result<Vec<BigRational>, TaylorError> {
    if order < 2 {
        return Err(TaylorError::OrderTooSmall);
    }
    type TSeries = PowerSeries<TowerElement>;

    let log_sec = |hi: &TowerElement, lo: &TowerElement| -> Result<TSeries, TaylorError> {
        if hi == lo {
            Ok(tanh_series(hi, order).shift_up(1))
        } else {
            let la = cosh_series(hi, order).log()?;
            let lb = cosh_series(lo, order).log()?;
            let inv = (hi - lo).inv()?;
            Ok(la.sub(&lb).mul_scalar(&inv))
        }
    };
    let half = BigRational::new(1.into(), 2.into());
    let la = log_sec(&t.a, &t.b)?;
    let lb = log_sec(&t.c, &t.d)?;
    let x = if t.p == t.q {
        let epa = la.mul_scalar(&t.p).exp()?;
        let epb = lb.mul_scalar(&t.p).exp()?;
        let num = epa.mul(&la).add(&epb.mul(&lb));
        let den = epa.add(&epb);
        let section = tanh_series(&t.p, order).shift_up(1);
        num.mul(&den.reciprocal()?).sub(&section)
    } else {
        let sum_log = |e: &TowerElement| -> Result<TSeries, TaylorError> {
            let ea = la.mul_scalar(e).exp()?;
            let eb = lb.mul_scalar(e).exp()?;
            Ok(ea.add(&eb).mul_rational(&half).log()?)
        };
        let l1 = sum_log(&t.p)?;
        let l2 = sum_log(&t.q)?;
        let lcp = cosh_series(&t.p, order).log()?;
        let lcq = cosh_series(&t.q, order).log()?;
        let inv = (&t.p - &t.q).inv()?;
        l1.sub(&l2).sub(&lcp).add(&lcq).mul_scalar(&inv)
    };
    let f = x.exp()?;
    let mut out = Vec::with_capacity(order + 1);
    for (i, c) in f.coeffs().iter().enumerate() {
        match c.to_rational() {
            Some(r) => out.push(r),
            None => return Err(TaylorError::RadicalResidue { index: i }),
        }
    }
    finish(PowerSeries::from_coeffs(out))
}

/// Identity-testing mode for [`check_formula`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckMode {
    /// Seeded random admissible points.
    Randomized { trials: usize },
    /// Tensor grid with this many distinct values per variable. With
    /// grid size ≥ degree bound + 1 this proves the identity.
    Exhaustive { grid_points: usize },
}

/// A point where a formula disagreed with the series engine.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefutationWitness {
    pub assignment: Vec<(String, String)>,
    pub expected: String,
    pub got: String,
}

/// Outcome of checking one stored coefficient formula.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormulaVerdict {
    pub k: usize,
    pub mode: String,
    pub points_checked: usize,
    pub confirmed: bool,
    pub refutation: Option<RefutationWitness>,
}

/// Verifies the stored formula for `C_k` against the series engine by exact
/// evaluation at admissible points in the formula's stage coordinates.
pub fn check_formula(k: usize, mode: CheckMode, seed: u64) -> Result<FormulaVerdict, TaylorError> {
    let formula = paper_formula(k);
    let mode_name = match mode {
        CheckMode::Randomized { trials } => format!("randomized({trials})"),
        CheckMode::Exhaustive { grid_points } => format!("exhaustive({grid_points})"),
    };
    let points: Vec<BTreeMap<String, BigRational>> = match mode {
        CheckMode::Randomized { trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64));
            (0..trials).map(|_| sample_admissible(&formula.stage, &mut rng)).collect()
        }
        CheckMode::Exhaustive { grid_points } => exhaustive_grid(&formula.stage, grid_points),
    };
    let n = points.len();
    for assignment in points {
        if let Some(witness) = check_formula_at(&formula, &assignment)? {
            return Ok(FormulaVerdict {
                k,
                mode: mode_name,
                points_checked: n,
                confirmed: false,
                refutation: Some(witness),
            });
        }
    }
    Ok(FormulaVerdict { k, mode: mode_name, points_checked: n, confirmed: true, refutation: None })
}

/// One exact comparison; `Ok(None)` means the point agreed.
fn check_formula_at(
    formula: &PaperFormula,
    assignment: &BTreeMap<String, BigRational>,
) -> Result<Option<RefutationWitness>, TaylorError> {
    let expected = match formula.eval(assignment) {
        Some(v) => v,
        None => return Ok(None), // denominator vanished: point inadmissible
    };
    let got = match formula.stage {
        FormulaStage::Raw => {
            let tuple = ParamTuple::new(
                assignment["a"].clone(),
                assignment["b"].clone(),
                assignment["c"].clone(),
                assignment["d"].clone(),
                assignment["p"].clone(),
                assignment["q"].clone(),
            );
            taylor_coefficients_rational(&tuple, formula.k)?[formula.k].clone()
        }
        FormulaStage::Reduced => {
            let stage = LiftStage::Free {
                t: assignment["t"].clone(),
                r: assignment["r"].clone(),
            };
            let (tuple, _) =
                lift_params(&assignment["w"], &assignment["v"], &assignment["s"], stage)?;
            taylor_coefficients(&tuple, formula.k)?[formula.k].clone()
        }
        FormulaStage::TSubstituted => {
            let stage = LiftStage::TSolved { r: assignment["r"].clone() };
            let (tuple, _) =
                lift_params(&assignment["w"], &assignment["v"], &assignment["s"], stage)?;
            taylor_coefficients(&tuple, formula.k)?[formula.k].clone()
        }
        FormulaStage::RSubstituted => {
            let (tuple, _) = lift_params(
                &assignment["w"],
                &assignment["v"],
                &assignment["s"],
                LiftStage::RSolved,
            )?;
            taylor_coefficients(&tuple, formula.k)?[formula.k].clone()
        }
    };
    if got == expected {
        Ok(None)
    } else {
        Ok(Some(RefutationWitness {
            assignment: assignment.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            expected: expected.to_string(),
            got: got.to_string(),
        }))
    }
}

/// Variables sampled per stage.
fn stage_vars(stage: &FormulaStage) -> &'static [&'static str] {
    match stage {
        FormulaStage::Raw => &["a", "b", "c", "d", "p", "q"],
        FormulaStage::Reduced => &["w", "v", "t", "r", "s"],
        FormulaStage::TSubstituted => &["w", "v", "r", "s"],
        FormulaStage::RSubstituted => &["w", "v", "s"],
    }
}

const SAMPLE_BOUND: i64 = 1000;

/// Draws one admissible point: raw points are unconstrained; reduced-stage
/// points avoid `w = 0`, `v = 0`, `v = ±w`, `t = 0`, `r+s = 0`, `r−s = 0`
/// (each excluded hyperplane belongs to its own theorem branch).
fn sample_admissible(stage: &FormulaStage, rng: &mut ChaCha8Rng) -> BTreeMap<String, BigRational> {
    loop {
        let mut m = BTreeMap::new();
        for var in stage_vars(stage) {
            m.insert(var.to_string(), random_rational(rng, SAMPLE_BOUND));
        }
        if *stage == FormulaStage::Raw {
            return m;
        }
        let w = m["w"].clone();
        let v = m["v"].clone();
        let s = m["s"].clone();
        if w.is_zero() || v.is_zero() || v == w || v == -&w {
            continue;
        }
        let (t, r) = match stage {
            FormulaStage::Reduced => (m["t"].clone(), m["r"].clone()),
            FormulaStage::TSubstituted => {
                let r = m["r"].clone();
                (&r + &(&v * &s) / &w, r)
            }
            FormulaStage::RSubstituted => {
                let r = r_solution_value(&w, &v, &s);
                (&r + &(&v * &s) / &w, r)
            }
            FormulaStage::Raw => unreachable!(),
        };
        if t.is_zero() || (&r + &s).is_zero() || (&r - &s).is_zero() {
            continue;
        }
        return m;
    }
}

/// Tensor grid with disjoint positive integer ranges per variable (keeps
/// `w ≠ 0`, `v ≠ 0`, `v ≠ ±w` structurally).
fn exhaustive_grid(stage: &FormulaStage, grid_points: usize) -> Vec<BTreeMap<String, BigRational>> {
    let vars = stage_vars(stage);
    let g = grid_points.max(1) as i64;
    let mut out = Vec::new();
    let mut idx = vec![0usize; vars.len()];
    loop {
        let assignment: BTreeMap<String, BigRational> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let base = 1 + g * i as i64;
                (v.to_string(), BigRational::from_integer((base + idx[i] as i64).into()))
            })
            .collect();
        out.push(assignment);
        let mut carried = false;
        for i in (0..idx.len()).rev() {
            idx[i] += 1;
            if idx[i] < grid_points {
                carried = true;
                break;
            }
            idx[i] = 0;
        }
        if !carried {
            return out;
        }
    }
}

/// Verdict of an all-coefficients-vanish series check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SufficiencyVerdict {
    pub order: usize,
    pub all_zero: bool,
    pub first_nonzero: Option<(usize, String)>,
}

/// Verifies as exact series that `F ≡ 1` for the power-mean family tuple
/// `{a,b} = {u+v, v}`, `{c,d} = {u−v, −v}`, `{p,q} = {u, 0}`; requires
/// `u ≠ 0`.
pub fn sufficiency_series_check(
    u: &BigRational,
    v: &BigRational,
    order: usize,
) -> Result<SufficiencyVerdict, TaylorError> {
    if u.is_zero() {
        return Err(TaylorError::Precondition("u must be nonzero"));
    }
    let tuple = ParamTuple::new(
        u + v,
        v.clone(),
        u - v,
        -v.clone(),
        u.clone(),
        BigRational::zero(),
    );
    series_identity_check(&tuple, order)
}

/// Checks that all Taylor coefficients of `F` vanish up to `order` for the
/// given rational tuple.
pub fn series_identity_check(
    t: &ParamTuple<BigRational>,
    order: usize,
) -> Result<SufficiencyVerdict, TaylorError> {
    let coeffs = taylor_coefficients_rational(t, order)?;
    let first_nonzero = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.to_string()));
    Ok(SufficiencyVerdict { order, all_zero: first_nonzero.is_none(), first_nonzero })
}
