//! Arbitrary-precision binary floating point, wrapping `astro-float`.
//!
//! Every value carries its working precision in bits; binary operations
//! produce results at the minimum of the operand precisions, so precision is
//! never silently extended. Values made by [`BigFloat::exact_int`] are marked
//! exact and adopt the other operand's precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat as AFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Default working precision in bits; resolves residuals down to ~10⁻⁷⁷.
pub const DEFAULT_PRECISION: usize = 256;

/// Sentinel precision for exact small-integer constants.
const EXACT: usize = usize::MAX;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Arbitrary-precision binary float with explicit precision tracking.
#[derive(Clone, Debug)]
pub struct BigFloat {
    inner: AFloat,
    prec: usize,
}

fn effective(p: usize) -> usize {
    if p == EXACT {
        DEFAULT_PRECISION
    } else {
        p
    }
}

/// Converts a big integer exactly (precision covers every bit).
fn bigint_to_afloat(n: &BigInt) -> AFloat {
    if n.is_zero() {
        return AFloat::from_i64(0, 64);
    }
    let bits = n.magnitude().bits() as usize + 64;
    let s = n.magnitude().to_str_radix(2);
    let mag = with_consts(|cc| AFloat::parse(&s, Radix::Bin, bits, RoundingMode::None, cc));
    if n.is_negative() {
        mag.neg()
    } else {
        mag
    }
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { inner: AFloat::from_i64(0, 64), prec: EXACT }
    }

    pub fn one() -> Self {
        BigFloat { inner: AFloat::from_i64(1, 64), prec: EXACT }
    }

    /// Small integer marked as exact: adopts the other operand's precision.
    pub fn exact_int(v: i64) -> Self {
        BigFloat { inner: AFloat::from_i64(v, 64), prec: EXACT }
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        BigFloat { inner: AFloat::from_i64(v, prec), prec }
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        BigFloat { inner: AFloat::from_f64(v, prec.max(64)), prec }
    }

    /// Exact conversion of `n/d`, rounded once at the end to `prec` bits.
    pub fn from_rational(r: &BigRational, prec: usize) -> Self {
        let p = effective(prec);
        if r.is_integer() {
            let mut inner = bigint_to_afloat(r.numer());
            inner.set_precision(p, RM).expect("set_precision");
            return BigFloat { inner, prec };
        }
        let n = bigint_to_afloat(r.numer());
        let d = bigint_to_afloat(r.denom());
        BigFloat { inner: n.div(&d, p, RM), prec }
    }

    /// `2^k` exactly.
    pub fn pow2(k: i32, prec: usize) -> Self {
        let mut inner = AFloat::from_i64(1, effective(prec));
        inner.set_exponent(k + 1);
        BigFloat { inner, prec }
    }

    /// `10^k` (exact for k ≥ 0 when it fits the precision).
    pub fn ten_pow(k: i32, prec: usize) -> Self {
        let p = effective(prec);
        let ten = AFloat::from_i64(10, p + 32);
        let mag = ten.powi(k.unsigned_abs() as usize, p + 32, RM);
        let inner = if k < 0 {
            mag.reciprocal(p, RM)
        } else {
            let mut m = mag;
            m.set_precision(p, RM).expect("set_precision");
            m
        };
        BigFloat { inner, prec }
    }

    pub fn pi(prec: usize) -> Self {
        let p = effective(prec);
        BigFloat { inner: with_consts(|cc| cc.pi(p, RM)), prec }
    }

    /// Precision in bits ([`usize::MAX`] for exact integer constants).
    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Same value rounded (or padded) to `prec` bits.
    pub fn with_precision(&self, prec: usize) -> Self {
        let mut inner = self.inner.clone();
        inner.set_precision(effective(prec), RM).expect("set_precision");
        BigFloat { inner, prec }
    }

    fn join(&self, rhs: &Self) -> usize {
        self.prec.min(rhs.prec)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigFloat { inner: self.inner.add(&rhs.inner, effective(p), RM), prec: p }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigFloat { inner: self.inner.sub(&rhs.inner, effective(p), RM), prec: p }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigFloat { inner: self.inner.mul(&rhs.inner, effective(p), RM), prec: p }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigFloat { inner: self.inner.div(&rhs.inner, effective(p), RM), prec: p }
    }

    pub fn neg(&self) -> Self {
        BigFloat { inner: self.inner.neg(), prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { inner: self.inner.abs(), prec: self.prec }
    }

    pub fn sqrt(&self) -> Self {
        let p = effective(self.prec);
        BigFloat { inner: self.inner.sqrt(p, RM), prec: self.prec }
    }

    pub fn exp(&self) -> Self {
        let p = effective(self.prec);
        BigFloat { inner: with_consts(|cc| self.inner.exp(p, RM, cc)), prec: p }
    }

    /// Natural logarithm; the argument must be positive.
    pub fn ln(&self) -> Self {
        let p = effective(self.prec);
        BigFloat { inner: with_consts(|cc| self.inner.ln(p, RM, cc)), prec: p }
    }

    pub fn cos(&self) -> Self {
        let p = effective(self.prec);
        BigFloat { inner: with_consts(|cc| self.inner.cos(p, RM, cc)), prec: p }
    }

    pub fn sin(&self) -> Self {
        let p = effective(self.prec);
        BigFloat { inner: with_consts(|cc| self.inner.sin(p, RM, cc)), prec: p }
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.inner.is_positive() && !self.inner.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.inner.is_negative() && !self.inner.is_zero()
    }

    pub fn is_nan(&self) -> bool {
        self.inner.is_nan()
    }

    pub fn max(&self, rhs: &Self) -> Self {
        if self >= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    pub fn min(&self, rhs: &Self) -> Self {
        if self <= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    /// `|self − rhs| / max(|self|, |rhs|)`; zero when both vanish.
    pub fn rel_diff(&self, rhs: &Self) -> Self {
        let denom = self.abs().max(&rhs.abs());
        if denom.is_zero() {
            return BigFloat::zero().with_precision(self.join(rhs));
        }
        self.sub(rhs).abs().div(&denom)
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.inner.cmp(&other.inner) == Some(0)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.inner.cmp(&other.inner).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    #[test]
    fn rational_conversion_is_exact_for_dyadics() {
        let x = BigFloat::from_rational(&rat(3, 4), 128);
        let y = BigFloat::from_f64(0.75, 128);
        assert_eq!(x, y);
    }

    #[test]
    fn precision_propagates_as_minimum() {
        let a = BigFloat::from_i64(2, 512);
        let b = BigFloat::from_i64(3, 128);
        assert_eq!(a.mul(&b).precision(), 128);
        assert_eq!(a.add(&BigFloat::one()).precision(), 512);
    }

    #[test]
    fn pow2_and_ten_pow() {
        let x = BigFloat::pow2(-10, 128);
        let y = BigFloat::from_rational(&rat(1, 1024), 128);
        assert_eq!(x, y);
        let t = BigFloat::ten_pow(-3, 128);
        let u = BigFloat::from_rational(&rat(1, 1000), 128);
        assert!(t.rel_diff(&u) < BigFloat::pow2(-100, 128));
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = BigFloat::from_rational(&rat(13, 7), 256);
        let y = x.ln().exp();
        assert!(x.rel_diff(&y) < BigFloat::pow2(-240, 256));
    }

    #[test]
    fn pi_digits() {
        let pi = BigFloat::pi(256);
        let reference = BigFloat::from_f64(std::f64::consts::PI, 256);
        assert!(pi.rel_diff(&reference) < BigFloat::pow2(-50, 256));
        // sin(pi) ~ 0 at working precision
        assert!(pi.sin().abs() < BigFloat::pow2(-250, 256));
    }

    #[test]
    fn big_rational_conversion_handles_large_values() {
        let r = rat(1, 3);
        let x = BigFloat::from_rational(&r, 256);
        let three = BigFloat::exact_int(3);
        assert!(x.mul(&three).rel_diff(&BigFloat::one().with_precision(256)) < BigFloat::pow2(-250, 256));
    }
}
