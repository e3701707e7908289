//! Constructive uniform approximation on `[a, b]` by finite combinations of
//! scattered translates of the generalized multiquadric
//! `phi_k(t) = (t^2 + c^2)^(k - 1/2)`.
//!
//! The pipeline: expand `phi_k(x - y)` in powers of `1/y` with polynomial
//! coefficients [`expansion::expansion_polynomial`], solve a modified
//! Vandermonde system for weights that isolate one coefficient polynomial
//! ([`vandermonde`]), combine those to reproduce any polynomial
//! ([`approx::approximate_polynomial`]), and stand a Chebyshev interpolant in
//! for the continuous target ([`approx::approximate_function`]).

pub mod approx;
pub mod centers;
pub mod error;
pub mod expansion;
pub mod expr;
pub mod poly;
pub mod scalar;
pub mod vandermonde;

pub use approx::{Approximant, ErrorReport, Interval, TargetFunction};
pub use centers::{CenterSet, ScatteredSequence};
pub use error::{Error, Result};
pub use expansion::MultiquadricParams;
pub use poly::RationalPolynomial;
pub use scalar::{AdjustableReal, ExactRational};
pub use vandermonde::WeightVector;
