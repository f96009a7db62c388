//! Truncated univariate power series over an exact scalar ring.
//!
//! A series of order `N` is known modulo `x^{N+1}` and stores exactly `N+1`
//! coefficients. Arithmetic never silently extends precision: binary
//! operations truncate to the minimum operand order.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::{BigFloat, TowerElement};

/// Scalar rings the series engine can run over.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` when not invertible.
    fn invert(&self) -> Option<Self>;
    /// Scaling by an exact rational constant.
    fn mul_rational(&self, r: &BigRational) -> Self;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn invert(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn mul_rational(&self, r: &BigRational) -> Self {
        self * r
    }
}

impl Scalar for TowerElement {
    fn zero() -> Self {
        TowerElement::zero()
    }
    fn one() -> Self {
        TowerElement::one()
    }
    fn is_zero(&self) -> bool {
        TowerElement::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        self.negated()
    }
    fn invert(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn mul_rational(&self, r: &BigRational) -> Self {
        TowerElement::mul_rational(self, r)
    }
}

impl Scalar for BigFloat {
    fn zero() -> Self {
        BigFloat::zero()
    }
    fn one() -> Self {
        BigFloat::one()
    }
    fn is_zero(&self) -> bool {
        BigFloat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        BigFloat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        BigFloat::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        BigFloat::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        BigFloat::neg(self)
    }
    fn invert(&self) -> Option<Self> {
        if BigFloat::is_zero(self) {
            None
        } else {
            Some(BigFloat::one().div(self))
        }
    }
    fn mul_rational(&self, r: &BigRational) -> Self {
        self.mul(&BigFloat::from_rational(r, self.precision()))
    }
}

/// Errors from series preconditions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("constant term is not invertible")]
    ConstantTermNotInvertible,
    #[error("exp requires a zero constant term")]
    ConstantTermNotZero,
    #[error("log/pow require constant term one")]
    ConstantTermNotOne,
}

/// Truncated power series `c₀ + c₁x + … + c_N x^N` (mod `x^{N+1}`).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> PowerSeries<S> {
    /// Builds a series from coefficients `c₀..c_N`; the list must be nonempty.
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![S::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut coeffs = vec![S::zero(); order + 1];
        coeffs[0] = c;
        PowerSeries { coeffs }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Self {
        let n = order.min(self.order());
        PowerSeries { coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PowerSeries<T> {
        PowerSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k].sub(&rhs.coeffs[k])).collect();
        PowerSeries { coeffs }
    }

    pub fn negate(&self) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    /// Cauchy product truncated to the minimum operand order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        PowerSeries { coeffs }
    }

    pub fn mul_scalar(&self, c: &S) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a.mul_rational(r)).collect() }
    }

    /// Multiplication by `x^k`, truncating at the current order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![S::zero(); n + 1];
        if k <= n {
            coeffs[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        PowerSeries { coeffs }
    }

    /// Series `r` with `self·r = 1 mod x^{N+1}`; needs an invertible constant
    /// term.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0].invert().ok_or(SeriesError::ConstantTermNotInvertible)?;
        let n = self.order();
        let mut r = vec![S::zero(); n + 1];
        r[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = S::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].mul(&r[k - j]));
            }
            r[k] = inv0.mul(&acc).neg();
        }
        Ok(PowerSeries { coeffs: r })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&rhs.reciprocal()?))
    }

    /// `exp` of a series with zero constant term, via the recurrence
    /// `n·e_n = Σ_{j=1..n} j·a_j·e_{n−j}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ConstantTermNotZero);
        }
        let n = self.order();
        let mut e = vec![S::zero(); n + 1];
        e[0] = S::one();
        for k in 1..=n {
            let mut acc = S::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let term = self.coeffs[j].mul(&e[k - j]).mul_rational(&BigRational::from_integer(j.into()));
                acc = acc.add(&term);
            }
            e[k] = acc.mul_rational(&BigRational::new(1.into(), k.into()));
        }
        Ok(PowerSeries { coeffs: e })
    }

    /// `log` of a series with constant term one, via
    /// `l_n = a_n − (1/n)·Σ_{j=1..n−1} j·l_j·a_{n−j}`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != S::one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = self.order();
        let mut l = vec![S::zero(); n + 1];
        for k in 1..=n {
            let mut acc = S::zero();
            for j in 1..k {
                if l[j].is_zero() || self.coeffs[k - j].is_zero() {
                    continue;
                }
                let term = l[j].mul(&self.coeffs[k - j]).mul_rational(&BigRational::from_integer(j.into()));
                acc = acc.add(&term);
            }
            l[k] = self.coeffs[k].sub(&acc.mul_rational(&BigRational::new(1.into(), k.into())));
        }
        Ok(PowerSeries { coeffs: l })
    }

    /// General power `self^alpha = exp(alpha·log self)`; constant term must
    /// be one. For integer `alpha` this matches repeated multiplication.
    pub fn pow_scalar(&self, alpha: &S) -> Result<Self, SeriesError> {
        Ok(self.log()?.mul_scalar(alpha).exp().expect("log has zero constant term"))
    }

    /// True iff every odd-index coefficient is exactly zero.
    pub fn odd_coeffs_all_zero(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }
}

fn factorial_inverse(k: usize) -> BigRational {
    let mut f = num_bigint::BigInt::from(1);
    for i in 2..=k {
        f *= i as i64;
    }
    BigRational::new(1.into(), f)
}

/// `cosh(kx) = Σ k^{2m} x^{2m} / (2m)!` truncated at `order`.
pub fn cosh_series<S: Scalar>(k: &S, order: usize) -> PowerSeries<S> {
    let k2 = k.mul(k);
    let mut coeffs = vec![S::zero(); order + 1];
    coeffs[0] = S::one();
    let mut power = S::one();
    let mut m = 1;
    while 2 * m <= order {
        power = power.mul(&k2);
        coeffs[2 * m] = power.mul_rational(&factorial_inverse(2 * m));
        m += 1;
    }
    PowerSeries::from_coeffs(coeffs)
}

/// `sinh(kx) = Σ k^{2m+1} x^{2m+1} / (2m+1)!` truncated at `order`.
pub fn sinh_series<S: Scalar>(k: &S, order: usize) -> PowerSeries<S> {
    let k2 = k.mul(k);
    let mut coeffs = vec![S::zero(); order + 1];
    if order >= 1 {
        coeffs[1] = k.mul_rational(&factorial_inverse(1));
        let mut power = k.clone();
        let mut m = 1;
        while 2 * m < order {
            power = power.mul(&k2);
            coeffs[2 * m + 1] = power.mul_rational(&factorial_inverse(2 * m + 1));
            m += 1;
        }
    }
    PowerSeries::from_coeffs(coeffs)
}

/// `tanh(kx) = sinh(kx)/cosh(kx)` truncated at `order`.
pub fn tanh_series<S: Scalar>(k: &S, order: usize) -> PowerSeries<S> {
    sinh_series(k, order)
        .div(&cosh_series(k, order))
        .expect("cosh has constant term one")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, rat_int, random_rational};
    use crate::exactnum::TowerElement;
    use rand::SeedableRng;

    fn qs(vals: &[(i64, i64)]) -> PowerSeries<BigRational> {
        PowerSeries::from_coeffs(vals.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn mul_truncates_to_min_order() {
        // (1+x)·(1−x) at order 2 → 1 − x²
        let a = qs(&[(1, 1), (1, 1), (0, 1)]);
        let b = qs(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b), qs(&[(1, 1), (0, 1), (-1, 1)]));
        // identity
        let c = qs(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(c.mul(&PowerSeries::one(2)), c);
        // min order rule
        assert_eq!(a.mul(&PowerSeries::one(1)).order(), 1);
    }

    #[test]
    fn cosh_product_matches_hand_cauchy() {
        // cosh(x)² to order 4 = 1 + x² + x⁴/3
        let c = cosh_series(&rat_int(1), 4);
        let sq = c.mul(&c);
        assert_eq!(sq, qs(&[(1, 1), (0, 1), (1, 1), (0, 1), (1, 3)]));
    }

    #[test]
    fn reciprocal_of_geometric() {
        // 1/(1−x) = 1 + x + x² + …
        let f = qs(&[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        assert_eq!(f.reciprocal().unwrap(), qs(&[(1, 1), (1, 1), (1, 1), (1, 1)]));
        // 1/1 = 1
        assert_eq!(PowerSeries::<BigRational>::one(3).reciprocal().unwrap(), PowerSeries::one(3));
        // zero constant term rejected
        assert_eq!(
            qs(&[(0, 1), (1, 1)]).reciprocal(),
            Err(SeriesError::ConstantTermNotInvertible)
        );
    }

    #[test]
    fn reciprocal_of_cosh() {
        // 1/cosh(x) to order 4 = 1 − x²/2 + 5x⁴/24, checked by multiplying back
        let c = cosh_series(&rat_int(1), 4);
        let r = c.reciprocal().unwrap();
        assert_eq!(r, qs(&[(1, 1), (0, 1), (-1, 2), (0, 1), (5, 24)]));
        assert_eq!(c.mul(&r), PowerSeries::one(4));
    }

    #[test]
    fn exp_and_log_basics() {
        // exp(x) = 1, 1, 1/2, 1/6
        let x = qs(&[(0, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(x.exp().unwrap(), qs(&[(1, 1), (1, 1), (1, 2), (1, 6)]));
        // log(1+x) = x − x²/2 + x³/3
        let f = qs(&[(1, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(f.log().unwrap(), qs(&[(0, 1), (1, 1), (-1, 2), (1, 3)]));
        // exp(log(1+2x+3x²)) round trip
        let g = qs(&[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
        // precondition violations
        assert_eq!(f.exp(), Err(SeriesError::ConstantTermNotZero));
        assert_eq!(x.log(), Err(SeriesError::ConstantTermNotOne));
    }

    #[test]
    fn pow_scalar_matches_binomial_and_integer_powers() {
        let f = qs(&[(1, 1), (1, 1), (0, 1)]);
        // (1+x)^{1/2} = 1 + x/2 − x²/8
        assert_eq!(f.pow_scalar(&rat(1, 2)).unwrap(), qs(&[(1, 1), (1, 2), (-1, 8)]));
        // (1+x)² = 1 + 2x + x²
        assert_eq!(f.pow_scalar(&rat_int(2)).unwrap(), f.mul(&f));
        // cosh(x)^{1/(1−0)} = cosh(x)
        let c = cosh_series(&rat_int(1), 4);
        assert_eq!(c.pow_scalar(&rat_int(1)).unwrap(), c);
    }

    #[test]
    fn cosh_and_tanh_expansions() {
        // cosh(2x) to order 4 → 1, 0, 2, 0, 2/3
        assert_eq!(cosh_series(&rat_int(2), 4), qs(&[(1, 1), (0, 1), (2, 1), (0, 1), (2, 3)]));
        // cosh(0·x) = 1
        assert_eq!(cosh_series(&rat_int(0), 4), PowerSeries::one(4));
        // tanh(x) to order 5 → x − x³/3 + 2x⁵/15
        assert_eq!(
            tanh_series(&rat_int(1), 5),
            qs(&[(0, 1), (1, 1), (0, 1), (-1, 3), (0, 1), (2, 15)])
        );
    }

    #[test]
    fn exp_log_round_trip_over_random_rational_series() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut coeffs = vec![rat_int(1)];
            for _ in 0..8 {
                coeffs.push(random_rational(&mut rng, 50));
            }
            let f = PowerSeries::from_coeffs(coeffs);
            assert_eq!(f.log().unwrap().exp().unwrap(), f);
        }
    }

    #[test]
    fn series_over_tower_scalars() {
        // exp/log round trip with coefficients in Q(√2)
        let s2 = TowerElement::sqrt_of(rat_int(2));
        let one = TowerElement::one();
        let f = PowerSeries::from_coeffs(vec![
            one.clone(),
            &one + &s2,
            s2.mul_rational(&rat(1, 3)),
            &one - &s2,
        ]);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
        // cosh over the tower stays even
        let c = cosh_series(&(&one + &s2), 6);
        assert!(c.odd_coeffs_all_zero());
    }

    #[test]
    fn bigfloat_series_tracks_rational_reference() {
        use crate::exactnum::BigFloat;
        for prec in [192usize, 320] {
            let k = rat(7, 5);
            let exact = tanh_series(&k, 8);
            let approx = tanh_series(&BigFloat::from_rational(&k, prec), 8);
            let tol = BigFloat::pow2(-((prec as i32) - 10), prec);
            for (e, a) in exact.coeffs().iter().zip(approx.coeffs()) {
                let ef = BigFloat::from_rational(e, prec);
                assert!(a.precision() == prec || a.precision() == usize::MAX);
                if ef.is_zero() {
                    assert!(a.abs() < tol);
                } else {
                    assert!(ef.rel_diff(a) < tol, "prec {prec}: {ef} vs {a}");
                }
            }
        }
    }
}
