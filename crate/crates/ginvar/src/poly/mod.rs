//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors (lexicographic order
//! doubles as the monomial order for exact division). Variables are kept in a
//! sorted name list; operations align variable lists automatically.

mod resultant;

pub use resultant::{
    gcd_univariate, resultant, resultant_bareiss, resultant_interpolation, univariate_resultant,
    ResultantMode,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Errors from polynomial operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("inexact division, remainder {remainder}")]
    InexactDivision { remainder: Box<MultiPoly> },
    #[error("polynomial has degree 0 in `{0}`")]
    DegreeZeroInVariable(String),
    #[error("no weight assigned to variable `{0}`")]
    UnweightedVariable(String),
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),
    #[error("resultant cross-check mismatch between elimination and interpolation")]
    CrossCheckMismatch,
    #[error("could not find an interpolation grid with nonvanishing leading coefficients")]
    NoInterpolationGrid,
}

/// Positive integer weights per variable, for weighted-degree checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    weights: BTreeMap<String, u64>,
}

impl WeightVector {
    pub fn new(weights: &[(&str, u64)]) -> Self {
        assert!(weights.iter().all(|&(_, w)| w >= 1), "weights must be >= 1");
        WeightVector {
            weights: weights.iter().map(|&(n, w)| (n.to_string(), w)).collect(),
        }
    }

    pub fn weight(&self, var: &str) -> Option<u64> {
        self.weights.get(var).copied()
    }
}

/// Outcome of a weighted-degree query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightedDegree {
    /// All terms share this weighted degree.
    Homogeneous(u64),
    /// Distinct term degrees observed.
    Mixed(BTreeSet<u64>),
}

/// Sparse multivariate polynomial over `BigRational`.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    /// Sorted, unique variable names.
    vars: Vec<String>,
    /// Exponent vector (parallel to `vars`) → nonzero coefficient.
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        let mut vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        vs.sort();
        vs.dedup();
        MultiPoly { vars: vs, terms: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = MultiPoly::zero(&[]);
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn constant_i64(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// The monomial `var`.
    pub fn var(name: &str) -> Self {
        let mut p = MultiPoly::zero(&[name]);
        p.terms.insert(vec![1], BigRational::one());
        p
    }

    /// Builds a polynomial from integer-coefficient terms over named
    /// variables; each exponent slice is parallel to `vars`.
    pub fn from_terms(vars: &[&str], terms: &[(i128, &[u32])]) -> Self {
        Self::from_terms_rational(
            vars,
            &terms
                .iter()
                .map(|&(c, e)| (BigRational::from_integer(c.into()), e))
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_terms_rational(vars: &[&str], terms: &[(BigRational, &[u32])]) -> Self {
        let given: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut sorted = given.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), given.len(), "duplicate variable names");
        let perm: Vec<usize> = sorted
            .iter()
            .map(|v| given.iter().position(|g| g == v).unwrap())
            .collect();
        let mut p = MultiPoly { vars: sorted, terms: BTreeMap::new() };
        for (c, exps) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent arity");
            if c.is_zero() {
                continue;
            }
            let key: Vec<u32> = perm.iter().map(|&i| exps[i]).collect();
            let entry = p.terms.entry(key).or_insert_with(BigRational::zero);
            *entry += c;
        }
        p.prune();
        p
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Constant-term value (the coefficient of the all-zero exponent).
    pub fn constant_value(&self) -> BigRational {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Re-expresses the polynomial over a variable superset.
    pub fn with_vars(&self, target: &[String]) -> Self {
        if self.vars == target {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).expect("target must be a superset"))
            .collect();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = vec![0u32; target.len()];
            for (i, &exp) in e.iter().enumerate() {
                key[map[i]] = exp;
            }
            terms.insert(key, c.clone());
        }
        MultiPoly { vars: target.to_vec(), terms }
    }

    /// Drops variables that appear in no term.
    pub fn trimmed(&self) -> Self {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars: Vec<String> = used.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (used.iter().map(|&i| e[i]).collect(), c.clone()))
            .collect();
        MultiPoly { vars, terms }
    }

    fn aligned(&self, rhs: &Self) -> (Self, Self) {
        if self.vars == rhs.vars {
            return (self.clone(), rhs.clone());
        }
        let mut union = self.vars.clone();
        union.extend(rhs.vars.iter().cloned());
        union.sort();
        union.dedup();
        (self.with_vars(&union), rhs.with_vars(&union))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            let entry = a.terms.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
        }
        a.prune();
        a
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let key: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(key).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        let mut p = MultiPoly { vars: a.vars, terms };
        p.prune();
        p
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MultiPoly::constant(BigRational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u64).sum())
            .max()
            .unwrap_or(0)
    }

    /// Weighted degree under `wts`: the common degree when the polynomial is
    /// weighted-homogeneous, otherwise the set of distinct term degrees.
    pub fn weighted_degree(&self, wts: &WeightVector) -> Result<WeightedDegree, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut degrees = BTreeSet::new();
        for e in self.terms.keys() {
            let mut d = 0u64;
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let w = wts
                    .weight(&self.vars[i])
                    .ok_or_else(|| PolyError::UnweightedVariable(self.vars[i].clone()))?;
                d += w * exp as u64;
            }
            degrees.insert(d);
        }
        if degrees.len() == 1 {
            Ok(WeightedDegree::Homogeneous(*degrees.iter().next().unwrap()))
        } else {
            Ok(WeightedDegree::Mixed(degrees))
        }
    }

    /// Coefficients of `self` viewed as univariate in `var`, lowest power
    /// first; the coefficient polynomials do not involve `var`.
    pub fn univariate_coeffs(&self, var: &str) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let idx = self.vars.iter().position(|v| v == var);
        let rest: Vec<String> = self.vars.iter().filter(|v| v.as_str() != var).cloned().collect();
        let mut out = vec![MultiPoly { vars: rest.clone(), terms: BTreeMap::new() }; deg + 1];
        for (e, c) in &self.terms {
            let (power, key) = match idx {
                Some(i) => {
                    let mut key = e.clone();
                    let p = key.remove(i);
                    (p as usize, key)
                }
                None => (0, e.clone()),
            };
            out[power].terms.insert(key, c.clone());
        }
        out
    }

    /// Exact substitution `var := g`. If `var` does not occur, the
    /// substitution is vacuous.
    pub fn substitute(&self, var: &str, g: &MultiPoly) -> Self {
        if self.degree_in(var) == 0 {
            return self.trimmed();
        }
        let coeffs = self.univariate_coeffs(var);
        // Horner evaluation in `g`.
        let mut acc = MultiPoly::zero(&[]);
        for c in coeffs.into_iter().rev() {
            acc = acc.mul(g).add(&c);
        }
        acc.trimmed()
    }

    /// Evaluates at a full assignment of the variables.
    pub fn eval(&self, assignment: &BTreeMap<String, BigRational>) -> Result<BigRational, PolyError> {
        let values: Vec<&BigRational> = self
            .vars
            .iter()
            .map(|v| assignment.get(v).ok_or_else(|| PolyError::UnassignedVariable(v.clone())))
            .collect::<Result<_, _>>()?;
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term *= values[i].pow(exp as i32);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Leading term under lexicographic exponent order.
    fn leading(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns `q` with `q·g = self`, or the nonzero
    /// remainder as an error witness.
    pub fn divexact(&self, g: &Self) -> Result<Self, PolyError> {
        if g.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let (mut r, g) = self.aligned(g);
        let vars = r.vars.clone();
        let (glt_exp, glt_coeff) = {
            let (e, c) = g.leading().unwrap();
            (e.clone(), c.clone())
        };
        let mut q = MultiPoly { vars: vars.clone(), terms: BTreeMap::new() };
        while !r.is_zero() {
            let (rlt_exp, rlt_coeff) = {
                let (e, c) = r.leading().unwrap();
                (e.clone(), c.clone())
            };
            let Some(qexp) = sub_exps(&rlt_exp, &glt_exp) else {
                return Err(PolyError::InexactDivision { remainder: Box::new(r.trimmed()) });
            };
            let qc = rlt_coeff / &glt_coeff;
            let mono = MultiPoly {
                vars: vars.clone(),
                terms: BTreeMap::from([(qexp.clone(), qc.clone())]),
            };
            r = r.sub(&mono.mul(&g));
            let entry = q.terms.entry(qexp).or_insert_with(BigRational::zero);
            *entry += qc;
        }
        q.prune();
        Ok(q.trimmed())
    }

    /// Divides out the largest power of `g` and returns `(reduced, power)`.
    /// The receiver must be nonzero (zero is divisible by everything).
    pub fn strip_factor(&self, g: &Self) -> (Self, u32) {
        assert!(!self.is_zero(), "strip_factor on the zero polynomial");
        let mut cur = self.clone();
        let mut count = 0;
        loop {
            match cur.divexact(g) {
                Ok(q) => {
                    cur = q;
                    count += 1;
                }
                Err(_) => return (cur, count),
            }
        }
    }

    /// Writes `self = scale · primitive` with integer, coprime coefficients
    /// and a positive leading coefficient in `primitive`.
    pub fn integer_normalized(&self) -> (Self, BigRational) {
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * &den_lcm / c.denom()));
        }
        let mut scale = BigRational::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            scale = -scale;
        }
        let inv = scale.recip();
        (self.mul_rational(&inv), scale)
    }
}

fn sub_exps(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_sub(y))
        .collect()
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let a = self.trimmed();
        let b = other.trimmed();
        a.vars == b.vars && a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

/// Canonical, sorted, human-diffable text form: terms ascending by total
/// degree, then lexicographically by exponent vector; variables in sorted
/// name order within each monomial.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|e| (e.iter().map(|&x| x as u64).sum::<u64>(), (*e).clone()));
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let is_const = e.iter().all(|&x| x == 0);
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if is_const || !abs.is_one() {
                write!(f, "{abs}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (j, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if exp == 1 {
                    write!(f, "{}", self.vars[j])?;
                } else {
                    write!(f, "{}^{}", self.vars[j], exp)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, rat_int};

    fn wvs() -> WeightVector {
        WeightVector::new(&[("w", 1), ("v", 1), ("s", 2)])
    }

    #[test]
    fn weighted_degree_examples() {
        // w³v⁵ with weights (w:1, v:1, s:2) → 8
        let f = MultiPoly::from_terms(&["w", "v", "s"], &[(1, &[3, 5, 0])]);
        assert_eq!(f.weighted_degree(&wvs()).unwrap(), WeightedDegree::Homogeneous(8));
        // v²s³ → 8
        let g = MultiPoly::from_terms(&["w", "v", "s"], &[(153, &[0, 2, 3])]);
        assert_eq!(g.weighted_degree(&wvs()).unwrap(), WeightedDegree::Homogeneous(8));
        // w + s → undefined with degrees {1, 2}
        let h = MultiPoly::from_terms(&["w", "s"], &[(1, &[1, 0]), (1, &[0, 1])]);
        let wd = WeightVector::new(&[("w", 1), ("s", 2)]);
        assert_eq!(
            h.weighted_degree(&wd).unwrap(),
            WeightedDegree::Mixed(BTreeSet::from([1, 2]))
        );
        // zero polynomial is an error
        assert_eq!(
            MultiPoly::zero(&["w"]).weighted_degree(&wvs()),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn substitution_examples() {
        // w²v with w := z·v gives z²v³
        let f = MultiPoly::from_terms(&["w", "v"], &[(1, &[2, 1])]);
        let zv = MultiPoly::var("z").mul(&MultiPoly::var("v"));
        let got = f.substitute("w", &zv);
        assert_eq!(got, MultiPoly::from_terms(&["z", "v"], &[(1, &[2, 3])]));
        // w with w := 0 gives 0
        let w = MultiPoly::var("w");
        assert!(w.substitute("w", &MultiPoly::zero(&[])).is_zero());
        // vacuous substitution
        let v = MultiPoly::var("v");
        assert_eq!(v.substitute("w", &zv), v);
    }

    #[test]
    fn divexact_examples() {
        // (w² − v²)/(w − v) = w + v
        let n = MultiPoly::from_terms(&["w", "v"], &[(1, &[2, 0]), (-1, &[0, 2])]);
        let d = MultiPoly::from_terms(&["w", "v"], &[(1, &[1, 0]), (-1, &[0, 1])]);
        let q = n.divexact(&d).unwrap();
        assert_eq!(q, MultiPoly::from_terms(&["w", "v"], &[(1, &[1, 0]), (1, &[0, 1])]));
        // (w² + 1)/w errors with remainder 1
        let n2 = MultiPoly::from_terms(&["w"], &[(1, &[2]), (1, &[0])]);
        match n2.divexact(&MultiPoly::var("w")) {
            Err(PolyError::InexactDivision { remainder }) => {
                assert_eq!(*remainder, MultiPoly::constant_i64(1));
            }
            other => panic!("expected inexact division, got {other:?}"),
        }
    }

    #[test]
    fn eval_and_arith() {
        let f = MultiPoly::from_terms(&["w", "v"], &[(2, &[1, 0]), (3, &[0, 2])]);
        let assign = BTreeMap::from([
            ("w".to_string(), rat(1, 2)),
            ("v".to_string(), rat_int(2)),
        ]);
        assert_eq!(f.eval(&assign).unwrap(), rat_int(13));
        assert!(f.sub(&f).is_zero());
        let g = f.mul(&f);
        assert_eq!(g.degree_in("v"), 4);
    }

    #[test]
    fn integer_normalization() {
        let f = MultiPoly::from_terms_rational(
            &["w"],
            &[(rat(3, 4), &[2]), (rat(-9, 2), &[0])],
        );
        let (prim, scale) = f.integer_normalized();
        assert_eq!(prim, MultiPoly::from_terms(&["w"], &[(1, &[2]), (-6, &[0])]));
        assert_eq!(scale, rat(3, 4));
        assert_eq!(prim.mul_rational(&scale), f);
    }

    #[test]
    fn display_canonical_form() {
        let f = MultiPoly::from_terms(
            &["w", "v", "s"],
            &[(2100, &[3, 5, 0]), (-3850, &[2, 4, 1]), (1, &[0, 0, 1]), (-1, &[1, 0, 0])],
        );
        assert_eq!(format!("{f}"), "-w + s - 3850*s*v^4*w^2 + 2100*v^5*w^3");
        assert_eq!(format!("{}", MultiPoly::zero(&["w"])), "0");
    }

    #[test]
    fn strip_factor_counts_powers() {
        let w = MultiPoly::var("w");
        let f = w.pow(3).mul(&MultiPoly::from_terms(&["w", "v"], &[(1, &[0, 1]), (1, &[1, 0])]));
        let (reduced, k) = f.strip_factor(&w);
        assert_eq!(k, 3);
        assert_eq!(reduced.degree_in("w"), 1);
    }
}
