//! Error type shared by all series and extraction operations.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Series inversion requires the leading coefficient to be a unit
    /// monomial of the coefficient ring.
    #[error("leading coefficient is not an invertible monomial")]
    NonUnitLeading,

    /// Series logarithm requires the series to start with constant term 1.
    #[error("series does not start with constant term 1")]
    BadConstantTerm,

    /// A polynomial expected to be invariant under y <-> 1/y and
    /// w <-> 1/w failed the symmetry check.
    #[error("polynomial is not symmetric under inversion of {var}")]
    NotSymmetric { var: char },

    /// A rational quantity that must be an integer had a non-trivial
    /// denominator.
    #[error("non-integral coefficient where an integer was required: {0}")]
    NotIntegral(String),

    /// A half-integer exponent escaped into a context that only admits
    /// integral exponents.
    #[error("half-integer exponent leaked into an integral-exponent context")]
    HalfIntegerLeak,

    /// The residue of a multi-cover subtraction did not close up to a
    /// Laurent polynomial inside the certification window.
    #[error("residue is not a Laurent polynomial within the window: {0}")]
    NotPolynomial(String),

    /// The requested expansion window cannot hold the terms needed.
    #[error("window too small: {0}")]
    WindowTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
