//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Dimension not admitted by the family (`OHat` needs N >= 3,
    /// `PHat` needs even N >= 4).
    #[error("invalid dimension {n} for family {family}")]
    InvalidDimension { family: &'static str, n: usize },

    /// Evaluation of a Laurent polynomial at s = 0.
    #[error("cannot evaluate a Laurent polynomial at zero base")]
    ZeroBase,

    /// T^2 = 4: the two lambda roots coincide and the operation needs
    /// them distinct.
    #[error("degenerate lambda roots (T^2 = 4)")]
    Degenerate,

    /// sinh(eta + theta) vanished in a Baxterized coefficient.
    #[error("pole at theta = {theta}")]
    PoleAtTheta { theta: f64 },

    /// |T(q0)| <= 2 or T(q0) not real: no real eta at this q0.
    /// Complex-eta evaluation is allowed behind an explicit flag.
    #[error("no real eta at this q (T = {t_re}+{t_im}i); pass the complex-eta flag to proceed")]
    NoRealEta { t_re: f64, t_im: f64 },

    /// Matrix or operator shapes do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Root finding did not converge within the iteration budget.
    #[error("root finding failed to converge: {0}")]
    NonConvergence(String),

    /// Operation only implemented for a specific spec.
    #[error("operation unsupported for this spec: {0}")]
    UnsupportedSpec(String),

    /// A braid representation would exceed the configured dimension cap.
    #[error("representation dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    /// The three words do not form a skein triple.
    #[error("words are not a skein triple: {0}")]
    WordsNotSkeinTriple(String),

    /// Cone parameters must be non-negative (and q real positive).
    #[error("negative or invalid parameter: {0}")]
    NegativeParameter(String),

    /// Input coordinates do not satisfy the coordinate relation.
    #[error("input coordinates violate the relation (residual {residual:e})")]
    RelationViolated { residual: f64 },

    /// Malformed braid word, config value or other user input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
