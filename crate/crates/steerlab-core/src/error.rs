use thiserror::Error;

/// Errors produced by validation, conditioning, and classification.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),

    /// A covariance matrix violates the uncertainty relation.
    #[error("unphysical covariance matrix (min UR eigenvalue {min_ur_eigenvalue:e})")]
    Unphysical { min_ur_eigenvalue: f64 },

    /// Symplectic invariants that no physical state can produce.
    #[error("inconsistent symplectic invariants (discriminant {discriminant:e})")]
    InconsistentInvariants { discriminant: f64 },

    /// The ideal-quadrature limit has no finite covariance matrix.
    #[error("ideal quadrature has no finite CM; use condition_quadrature")]
    UnsupportedVariant,

    /// Rounding produced a singular matrix or negative radicand that valid
    /// inputs cannot reach.
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(&'static str),

    /// Two redundant computation routes disagreed beyond tolerance.
    #[error("internal consistency violation: {0}")]
    InternalConsistency(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
