//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Exact polynomial division left a nonzero remainder.
    #[error("polynomial division left a nonzero remainder: {context}")]
    NotDivisible { context: String },

    /// Input polynomial is not invariant under variable permutations.
    #[error("polynomial is not symmetric: {context}")]
    NotSymmetric { context: String },

    /// Evaluation point / frame / polynomial dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A Laurent term with a negative exponent was evaluated at zero.
    #[error("zero coordinate at index {index} with negative exponent")]
    ZeroCoordinate { index: usize },

    /// A Monte Carlo sample came too close to an integrand pole.
    #[error("near-singular integrand: |denominator| = {magnitude:.3e} at sample {sample}")]
    NearSingularIntegrand { magnitude: f64, sample: u64 },

    /// Principal-branch square root would be evaluated on its cut.
    #[error("argument on the negative real axis (principal branch cut)")]
    BranchCut,

    /// Re(H) <= 0 at a quadrature node; the square-root branch is ambiguous.
    #[error("branch ambiguity: Re(H) = {re:.3e} <= 0 at node xi = {node}")]
    BranchAmbiguity { re: f64, node: f64 },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error(
        "quadrature tolerance not met: error estimate {error:.3e} > requested {requested:.3e}"
    )]
    ToleranceNotMet { error: f64, requested: f64 },

    /// A required algebraic constraint (e.g. x1*x2*x3 = 1) fails.
    #[error("constraint violated: {context}")]
    ConstraintViolated { context: String },

    /// Two redundant internal computations disagree; indicates a bug.
    #[error("internal mismatch: {context}")]
    InternalMismatch { context: String },

    /// A parameter is outside its validated domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
