use serde::Serialize;
use thiserror::Error;

/// Diagnostic payload attached to projection-domain failures, suitable for
/// machine-readable (JSON) display by front ends.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionDiagnostic {
    /// Measurement vector the projection was taken relative to.
    pub setting: [f64; 3],
    /// Textual rendering of the hidden state involved.
    pub state: String,
    /// What made the value inadmissible.
    pub reason: String,
}

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A vector that must have unit norm does not.
    #[error("vector norm {norm} is not 1 within tolerance")]
    NonUnitVector { norm: f64 },

    /// A direction could not be normalized (zero or non-finite input).
    #[error("cannot normalize a zero or non-finite vector")]
    ZeroVector,

    /// A state vector whose amplitudes must have unit norm does not.
    #[error("state norm {norm} is not 1 within tolerance")]
    NonUnitState { norm: f64 },

    /// A probability distribution failed validation.
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    /// Exact expectation values were requested for a continuous state space
    /// that provides no exact integrator.
    #[error("exact expectation unsupported: continuous state space without an exact integrator")]
    ExactUnsupported,

    /// A value fell outside the domain of its projection map.
    #[error("value outside projection domain for setting {:?}: {}", .0.setting, .0.reason)]
    ProjectionOutsideDomain(ProjectionDiagnostic),

    /// A correlator returned a value outside [-1, 1].
    #[error("correlator returned {value}, outside [-1, 1]")]
    CorrelatorOutOfRange { value: f64 },

    /// A trial count of zero was requested.
    #[error("trial count must be at least 1")]
    EmptyTrialCount,

    /// A search or run configuration is unusable.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
