//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the finite-space engine, the binormal model and the
/// estimators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Two arguments refer to different sample spaces.
    #[error("arguments are defined on different sample spaces")]
    SpaceMismatch,

    /// A sample space, event or partition failed a structural check.
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    /// Probability masses do not form a probability measure.
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// The candidate partition does not coarsen the reference partition.
    #[error("partition is not a coarsening of the reference partition")]
    NotACoarsening,

    /// A target-positive cell carries no source mass, so the posterior on it
    /// cannot be learned from the source distribution.
    #[error("indeterminate: cell {cell} has positive target mass but zero source mass")]
    IndeterminatePosterior { cell: usize },

    /// The class event has probability 0 or 1 where a nondegenerate prior is
    /// required.
    #[error("degenerate class prior {value}")]
    DegenerateClassPrior { value: f64 },

    /// A reweighting density does not have unit expectation under the base
    /// measure.
    #[error("density expectation {expectation} differs from 1 beyond tolerance")]
    DensityNotNormalized { expectation: f64 },

    /// Conditioning on an event of probability zero.
    #[error("cannot condition on an event of probability zero")]
    NullConditioningEvent,

    /// A stated premise of an implication check does not hold.
    #[error("premise violated: {0}")]
    PremiseViolated(String),

    /// The drifted posterior asks for positive mass on an empty set.
    #[error("drifted posterior is unrealizable on cell {cell}")]
    UnrealizableDrift { cell: usize },

    /// A function failed the monotone-in-[0,1] validation.
    #[error("invalid drift function: {0}")]
    InvalidDriftFunction(String),

    /// Binormal model parameters out of range.
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    /// Quadrature settings out of range.
    #[error("invalid quadrature config: {0}")]
    InvalidQuadratureConfig(String),

    /// Adaptive quadrature hit its subdivision limit before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge: residual {residual}")]
    QuadratureDidNotConverge { residual: f64 },

    /// A sample that must be nonempty is empty.
    #[error("empty sample")]
    EmptySample,

    /// The labeled source sample is missing one of the classes.
    #[error("source sample has no instances of class {class}")]
    MissingClass { class: u8 },

    /// Classifier rates give no information to adjust counts with.
    #[error("uninformative classifier: tpr {tpr} and fpr {fpr} coincide")]
    UninformativeClassifier { tpr: f64, fpr: f64 },

    /// A cost grid failed validation.
    #[error("invalid cost grid: {0}")]
    InvalidCostGrid(String),

    /// A classifier family cannot be fitted against the given loss backend.
    #[error("classifier family {family} cannot be fitted on a {backend} loss backend")]
    FamilyBackendMismatch {
        family: &'static str,
        backend: &'static str,
    },

    /// A serialized object could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
