//! Exact verification, certification, and classification of solutions of the
//! invariance equation for two-variable Gini means,
//!
//! ```text
//! G_{p,q}(G_{a,b}(x,y), G_{c,d}(x,y)) = G_{p,q}(x,y)      (x, y > 0),
//! ```
//!
//! where `G_{p,q}(x,y) = ((x^p+y^p)/(x^q+y^q))^{1/(p-q)}` (with an
//! exponential limiting form when `p = q`).
//!
//! The library combines exact arithmetic (big rationals, formal quadratic
//! radical towers), truncated power series, sparse multivariate polynomials
//! with resultants, and high-precision floating-point cross-checks to decide
//! and certify which parameter tuples `(a,b,c,d,p,q)` solve the equation.

pub mod certify;
pub mod cli;
pub mod classify;
pub mod exactnum;
pub mod gini;
pub mod poly;
pub mod series;
pub mod taylor;
