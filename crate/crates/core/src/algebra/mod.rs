//! Exact arithmetic kernel: big-integer multivariate polynomials, truncated
//! power series, arbitrary-precision floats and Sylvester resultants.

mod bigfloat;
mod mpoly;
mod resultant;
mod series;

pub use bigfloat::{BigFloat, DEFAULT_DIGITS};
pub use mpoly::{MPoly, Marker};
pub use resultant::{sylvester_resultant, ResultantScalar};
pub use series::{format_rational_sig, GenSeries};

use thiserror::Error;

/// Errors raised by series and resultant operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// Series inversion requires constant coefficient 1.
    #[error("series inversion requires constant coefficient 1, found {0}")]
    InversionOfNonUnit(String),
    /// Composition requires the inner series to have zero constant term.
    #[error("series composition requires inner constant term 0, found {0}")]
    CompositionDivergence(String),
    /// Rational expansion requires a denominator with constant term ±1.
    #[error("rational expansion requires denominator constant term ±1, found {0}")]
    NonUnitDenominator(String),
    /// Resultant of polynomials with vanishing leading coefficient.
    #[error("resultant requires nonzero leading coefficients")]
    ZeroLeadingCoefficient,
}
