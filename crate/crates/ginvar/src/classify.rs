//! Classification of parameter tuples into the six solution families of the
//! invariance equation, and into the four families of the Matkowski–Sutô
//! special case (outer mean arithmetic).
//!
//! The classifier checks the raw parameter conditions exactly as stated, not
//! modulo mean-level identifications; [`lemma_normalize`] offers the
//! normalized view separately. Families overlap on degenerate tuples, so
//! classification returns a set.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::gini::ParamTuple;

/// One of the six solution families, with witness parameters:
///
/// * `I`   — `a+b = c+d = p+q = 0` (all three means geometric)
/// * `II`  — `{a,b} = {c,d} = {p,q}` (all three means equal)
/// * `III` — `{a,b} = {−c,−d}` and `p+q = 0`
/// * `IV`  — `{a,b} = {u+v, v}`, `{c,d} = {u−v, −v}`, `{p,q} = {u, 0}`
/// * `V`   — `{a,b} = {3w, w}`, `c+d = 0`, `{p,q} = {2w, 0}`
/// * `VI`  — `a+b = 0`, `{c,d} = {3w, w}`, `{p,q} = {2w, 0}`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SolutionFamily {
    I,
    II,
    III,
    IV { u: BigRational, v: BigRational },
    V { w: BigRational },
    VI { w: BigRational },
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionFamily::I => write!(f, "I"),
            SolutionFamily::II => write!(f, "II"),
            SolutionFamily::III => write!(f, "III"),
            SolutionFamily::IV { u, v } => write!(f, "IV (u={u}, v={v})"),
            SolutionFamily::V { w } => write!(f, "V (w={w})"),
            SolutionFamily::VI { w } => write!(f, "VI (w={w})"),
        }
    }
}

/// Matkowski–Sutô families (`G_{a,b} + G_{c,d} = x + y`):
///
/// * `i`   — `{a,b} = {c,d} = {1,0}`
/// * `ii`  — `{a,b} = {1+v, v}`, `{c,d} = {1−v, −v}`
/// * `iii` — `{a,b} = {3/2, 1/2}` and `c+d = 0`
/// * `iv`  — `a+b = 0` and `{c,d} = {3/2, 1/2}`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum MsFamily {
    I,
    Ii { v: BigRational },
    Iii,
    Iv,
}

impl fmt::Display for MsFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MsFamily::I => write!(f, "i"),
            MsFamily::Ii { v } => write!(f, "ii (v={v})"),
            MsFamily::Iii => write!(f, "iii"),
            MsFamily::Iv => write!(f, "iv"),
        }
    }
}

fn multiset_eq(x1: &BigRational, x2: &BigRational, y1: &BigRational, y2: &BigRational) -> bool {
    (x1 == y1 && x2 == y2) || (x1 == y2 && x2 == y1)
}

/// Candidate `u` values solving `{p, q} = {u, 0}`.
fn power_mean_witnesses(p: &BigRational, q: &BigRational) -> Vec<BigRational> {
    let mut out = Vec::new();
    if q.is_zero() {
        out.push(p.clone());
    }
    if p.is_zero() && p != q {
        out.push(q.clone());
    }
    out
}

/// All families whose conditions the tuple satisfies (the conditions
/// overlap on degenerate tuples, e.g. the all-zero tuple is in every one).
pub fn classify_invariance(t: &ParamTuple) -> BTreeSet<SolutionFamily> {
    let mut out = BTreeSet::new();
    let ab_sum = &t.a + &t.b;
    let cd_sum = &t.c + &t.d;
    let pq_sum = &t.p + &t.q;

    if ab_sum.is_zero() && cd_sum.is_zero() && pq_sum.is_zero() {
        out.insert(SolutionFamily::I);
    }
    if multiset_eq(&t.a, &t.b, &t.c, &t.d) && multiset_eq(&t.a, &t.b, &t.p, &t.q) {
        out.insert(SolutionFamily::II);
    }
    if pq_sum.is_zero() && multiset_eq(&t.a, &t.b, &-&t.c, &-&t.d) {
        out.insert(SolutionFamily::III);
    }
    // IV: {a,b} = {u+v, v}, {c,d} = {u−v, −v}, {p,q} = {u, 0}
    for u in power_mean_witnesses(&t.p, &t.q) {
        let mut vs: Vec<BigRational> = vec![t.a.clone(), t.b.clone()];
        vs.dedup();
        for v in vs {
            if multiset_eq(&t.a, &t.b, &(&u + &v), &v)
                && multiset_eq(&t.c, &t.d, &(&u - &v), &-&v)
            {
                out.insert(SolutionFamily::IV { u: u.clone(), v });
            }
        }
    }
    // V and VI: {p,q} = {2w, 0}
    for u in power_mean_witnesses(&t.p, &t.q) {
        let w = u / BigRational::from_integer(2.into());
        let three_w = &w * &BigRational::from_integer(3.into());
        if cd_sum.is_zero() && multiset_eq(&t.a, &t.b, &three_w, &w) {
            out.insert(SolutionFamily::V { w: w.clone() });
        }
        if ab_sum.is_zero() && multiset_eq(&t.c, &t.d, &three_w, &w) {
            out.insert(SolutionFamily::VI { w });
        }
    }
    out
}

/// All Matkowski–Sutô families that `(a, b, c, d)` satisfies.
pub fn classify_matkowski_suto(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
) -> BTreeSet<MsFamily> {
    let mut out = BTreeSet::new();
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::zero();
    let three_half = BigRational::new(3.into(), 2.into());
    let half = BigRational::new(1.into(), 2.into());

    if multiset_eq(a, b, &one, &zero) && multiset_eq(c, d, &one, &zero) {
        out.insert(MsFamily::I);
    }
    // ii: {a,b} = {1+v, v}, {c,d} = {1−v, −v}
    for v in [a.clone(), b.clone()] {
        if multiset_eq(a, b, &(&one + &v), &v) && multiset_eq(c, d, &(&one - &v), &-&v) {
            out.insert(MsFamily::Ii { v });
        }
    }
    if multiset_eq(a, b, &three_half, &half) && (c + d).is_zero() {
        out.insert(MsFamily::Iii);
    }
    if (a + b).is_zero() && multiset_eq(c, d, &three_half, &half) {
        out.insert(MsFamily::Iv);
    }
    out
}

/// Witness parameters for [`sample_family`].
#[derive(Debug, Clone)]
pub enum FamilyWitness {
    /// Family I: free values of `a`, `c`, `p` (with `b = −a` etc.).
    I { a: BigRational, c: BigRational, p: BigRational },
    /// Family II: the shared pair.
    II { a: BigRational, b: BigRational },
    /// Family III: pair `{a, b}` and the outer `p`.
    III { a: BigRational, b: BigRational, p: BigRational },
    /// Family IV: the power-mean parameters.
    IV { u: BigRational, v: BigRational },
    /// Family V: `w` plus the free geometric parameter `c` (`d = −c`).
    V { w: BigRational, c: BigRational },
    /// Family VI: `w` plus the free geometric parameter `a` (`b = −a`).
    VI { w: BigRational, a: BigRational },
}

/// Builds a tuple belonging to the requested family; classification of the
/// result always contains the family (round-trip property).
pub fn sample_family(witness: &FamilyWitness) -> ParamTuple {
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let zero = BigRational::zero();
    match witness {
        FamilyWitness::I { a, c, p } => {
            ParamTuple::new(a.clone(), -a.clone(), c.clone(), -c.clone(), p.clone(), -p.clone())
        }
        FamilyWitness::II { a, b } => ParamTuple::new(
            a.clone(),
            b.clone(),
            a.clone(),
            b.clone(),
            a.clone(),
            b.clone(),
        ),
        FamilyWitness::III { a, b, p } => ParamTuple::new(
            a.clone(),
            b.clone(),
            -a.clone(),
            -b.clone(),
            p.clone(),
            -p.clone(),
        ),
        FamilyWitness::IV { u, v } => ParamTuple::new(
            u + v,
            v.clone(),
            u - v,
            -v.clone(),
            u.clone(),
            zero,
        ),
        FamilyWitness::V { w, c } => ParamTuple::new(
            &three * w,
            w.clone(),
            c.clone(),
            -c.clone(),
            &two * w,
            zero,
        ),
        FamilyWitness::VI { w, a } => ParamTuple::new(
            a.clone(),
            -a.clone(),
            &three * w,
            w.clone(),
            &two * w,
            zero,
        ),
    }
}

/// Mean-level normalization from the equality characterization: any pair
/// with `x + y = 0` denotes the geometric mean and is replaced by the
/// canonical representative `(0, 0)`.
pub fn lemma_normalize(t: &ParamTuple) -> ParamTuple {
    let norm_pair = |x: &BigRational, y: &BigRational| -> (BigRational, BigRational) {
        if (x + y).is_zero() {
            (BigRational::zero(), BigRational::zero())
        } else {
            (x.clone(), y.clone())
        }
    };
    let (a, b) = norm_pair(&t.a, &t.b);
    let (c, d) = norm_pair(&t.c, &t.d);
    let (p, q) = norm_pair(&t.p, &t.q);
    ParamTuple::new(a, b, c, d, p, q)
}
