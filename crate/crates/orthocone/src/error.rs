use thiserror::Error;

/// Errors reported by the construction and evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A continuous parameter left its admissible open range.
    #[error("parameter {name} = {value} must be greater than {bound}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        bound: f64,
    },

    /// A parameter was NaN or infinite.
    #[error("parameter {name} must be finite")]
    NonFiniteParameter { name: &'static str },

    /// Polynomial degree beyond the supported cap. Double-precision Gram
    /// residuals are not guaranteed past this point.
    #[error("degree {n} exceeds the supported maximum of {max}")]
    DegreeTooLarge { n: usize, max: usize },

    /// Polynomial degree below the minimum the formula is defined for.
    #[error("degree {n} is below the required minimum of {min}")]
    DegreeTooSmall { n: usize, min: usize },

    /// Only the circle (d = 2) and the two-sphere (d = 3) cross sections
    /// are implemented.
    #[error("dimension d = {d} is unsupported; expected 2 or 3")]
    UnsupportedDimension { d: usize },

    /// A (n, m, ell) triple that does not address a basis element.
    #[error("basis index (n = {n}, m = {m}, ell = {ell}) is invalid: {reason}")]
    InvalidIndex {
        n: usize,
        m: usize,
        ell: usize,
        reason: &'static str,
    },

    /// A derivative-order argument that the operation cannot satisfy.
    #[error("derivative order {k} is invalid here: {reason}")]
    InvalidDerivativeOrder { k: usize, reason: &'static str },

    /// The smoothness order s must be a positive integer.
    #[error("smoothness order s = {s} is invalid: {reason}")]
    InvalidSmoothness { s: usize, reason: &'static str },

    /// Mass coefficient vector of the wrong length.
    #[error("expected {expected} mass coefficients, got {got}")]
    MassCountMismatch { expected: usize, got: usize },

    /// A quadrature rule was requested with no nodes.
    #[error("a quadrature rule needs at least one node")]
    EmptyQuadrature,

    /// The symmetric tridiagonal eigensolver failed to converge.
    #[error("eigenvalue iteration failed to converge after {iterations} sweeps")]
    EigenNoConvergence { iterations: usize },

    /// A point that is not on the cone surface.
    #[error("point is not on the cone: {reason}")]
    InvalidPoint { reason: &'static str },

    /// Evaluation would divide by t at the cone apex without a matching
    /// power of t to cancel it.
    #[error("evaluation at the apex t = 0 has an uncancelled 1/t term (mode m = {m})")]
    ApexSingularity { m: usize },

    /// The radial eigenfunction candidate is undefined because a recurrence
    /// denominator vanishes.
    #[error("radial factor of degree {j} for total degree {n} is degenerate: 2n + gamma + d - 1 - {k} = 0")]
    DegenerateCandidate { n: usize, j: usize, k: usize },

    /// A cutoff profile that violates admissibility on the sample grid.
    #[error("cutoff profile is not admissible: {reason}")]
    InvalidCutoff { reason: &'static str },

    /// The coefficient table does not extend far enough for the request.
    #[error("coefficient table holds degrees up to {have}, but degree {need} was requested")]
    TableTooShort { have: usize, need: usize },

    /// Parameter set of the wrong kind (ordinary vs Sobolev) for an operation.
    #[error("wrong weight kind for this operation: {reason}")]
    WrongWeightKind { reason: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
