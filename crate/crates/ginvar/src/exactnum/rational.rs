//! Helpers around `num_rational::BigRational`, the base scalar of the crate.
//!
//! `BigRational` is always stored reduced with a positive denominator, so the
//! canonical-form invariants come for free from `num-rational`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::ExactError;

/// Shorthand for `n/d` as a reduced rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"` (optional leading minus) into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let t = s.trim();
    BigRational::from_str(t).map_err(|_| ExactError::ParseRational(s.to_string()))
}

/// Exact square root, if `r` is the square of a rational.
///
/// A reduced fraction is a perfect square iff numerator and denominator both
/// are; negative inputs never have a rational root.
pub fn sqrt_exact(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// True iff `r` equals the square of some rational.
pub fn is_perfect_square(r: &BigRational) -> bool {
    sqrt_exact(r).is_some()
}

/// Uniform random rational with numerator in `[-bound, bound]` and
/// denominator in `[1, bound]`, then reduced.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    rat(n, d)
}

/// Like [`random_rational`] but never zero.
pub fn random_nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    loop {
        let r = random_rational(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}
