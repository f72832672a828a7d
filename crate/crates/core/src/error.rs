//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands built over different variable tables.
    #[error("variable list mismatch: {0}")]
    VariableMismatch(String),

    /// A named variable is not in the polynomial's table.
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    /// A rational power of something that is not a single monomial.
    #[error("non-Puiseux composition: {0}")]
    NonPuiseuxComposition(String),

    /// `c_{1ij}` is not constant.
    #[error("normalization violated: {0}")]
    NormalizationViolated(String),

    #[error("degenerate metric")]
    DegenerateMetric,

    /// Weighted degrees of the cubic-and-higher monomials disagree.
    #[error("not quasihomogeneous: {0}")]
    NotQuasihomogeneous(String),

    /// Induced metric has non-constant entries.
    #[error("not flat coordinates: {0}")]
    NotFlatCoordinates(String),

    /// Normal frames are only constructed in codimension one.
    #[error("unsupported codimension {0}")]
    UnsupportedCodimension(usize),

    /// The normal's squared length is not a rational square.
    #[error("normal frame not rational: {0}")]
    NormalFrameNotRational(String),

    /// An antiderivative hit an exponent of -1.
    #[error("logarithmic case unsupported: {0}")]
    LogarithmicCase(String),

    /// Parametrization Jacobian drops rank at the test points.
    #[error("rank deficient: {0}")]
    RankDeficient(String),

    #[error("input error: {0}")]
    Input(String),

    /// A derived identity failed; signals an upstream bug, not bad input.
    #[error("internal consistency: {0}")]
    Internal(String),
}
