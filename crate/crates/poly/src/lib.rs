//! Exact polynomial algebra over the rationals.
//!
//! Univariate ([`UniPoly`]) and bivariate ([`BiPoly`]) polynomials with
//! arbitrary-precision rational coefficients, resultants by fraction-free
//! subresultant sequences, gcds, modular coprimality certificates and complex
//! evaluation with a forward error bound.
//!
//! Every public value is normalized (lowest-terms coefficients, no stored
//! zeros, no trailing zero coefficients), so equality is structural.

mod bi;
mod complex;
mod error;
pub mod modular;
mod parse;
mod rational;
mod resultant;
mod uni;
mod var;

pub use bi::{BiPoly, Homogeneous};
pub use complex::{eval_bi_complex, eval_uni_complex, Enclosure, MpComplex};
pub use error::PolyError;
pub use rational::{format_rational, parse_rational, serde_rational};
pub use resultant::{resultant_integer, resultant_uni, resultant_x};
pub use uni::UniPoly;
pub use var::Var;

pub use rug::{Float, Integer, Rational};
