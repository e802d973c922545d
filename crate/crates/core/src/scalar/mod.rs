//! Exact coefficient arithmetic.
//!
//! Every coefficient that appears in an operator expansion lives in
//! [`ScalarExpr`]: a Laurent polynomial with Gaussian-rational coefficients in
//! a fixed, closed set of time-dependent [`Symbol`]s.

mod expr;
mod gauss;
mod json;
mod parse;
mod symbol;

pub use expr::{Assignment, Closure, Monomial, ScalarExpr};
pub use gauss::{binomial, falling, rat, GaussianRational};
pub use symbol::Symbol;
