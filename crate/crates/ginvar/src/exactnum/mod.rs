//! Exact scalar arithmetic: big rationals, formal quadratic radical towers,
//! and arbitrary-precision binary floats.
//!
//! Everything in this module is immutable after construction and can be moved
//! freely between threads.

pub mod float;
pub mod rational;
pub mod tower;

pub use float::{BigFloat, DEFAULT_PRECISION};
pub use rational::{parse_rational, rat, rat_int, sqrt_exact};
pub use tower::TowerElement;

/// Errors from exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is a zero divisor (radicands are multiplicatively dependent)")]
    ZeroDivisor,
    #[error("aligning towers would need {0} radicands, more than the supported 3")]
    TooManyRadicands(usize),
    #[error("cannot parse `{0}` as a rational number")]
    ParseRational(String),
}
