//! Numerical toolkit for the EPR-Bohm experiment.
//!
//! Two spin-1/2 particles prepared in the singlet state are measured at
//! remote stations along freely chosen unit vectors, each measurement
//! yielding +1 or -1. This crate provides, from first principles:
//!
//! * the quantum-mechanical reference predictions, computed by explicit
//!   complex matrix algebra over the two-qubit Hilbert space ([`quantum`]);
//! * a framework for local, deterministic hidden-variable models with exact
//!   and seeded Monte Carlo expectation estimators ([`hvm`]);
//! * a model whose "observables" are antisymmetric rank-2 tensors
//!   (bivectors) on Euclidean 3-space, built on an exact little tensor
//!   algebra ([`tensor3`], [`bivector_model`]);
//! * the projection maps that turn bivector-valued outcomes into the +-1
//!   record an experimenter actually writes down, and the reduction of any
//!   generalized model to a standard one ([`projection`]);
//! * CHSH statistics, bound verification, and a deterministic search for
//!   maximally violating detector settings ([`chsh`]).
//!
//! The headline numerics: the quantum correlation is `-a.b` and reaches a
//! CHSH value of `2 sqrt(2)`, while every local deterministic model (and
//! every generalized model once its outcomes are projected to +-1) stays
//! within the CHSH bound of 2. The bivector model reproduces `-a.b` only
//! before projection; afterwards its product expectation is the constant -1.
//!
//! All numerical code is generic over the scalar type through the [`Real`]
//! trait (`f32` or `f64`); the crate root exports `f64` aliases for the
//! common geometric types.

pub mod bivector_model;
pub mod chsh;
pub mod error;
pub mod gallery;
pub mod hvm;
pub mod projection;
pub mod quantum;
pub mod rng;
pub mod scalar;
pub mod sign;
pub mod tensor3;
pub mod trials;

pub use error::{Error, ProjectionDiagnostic};
pub use scalar::Real;
pub use sign::{Side, Sign};

pub use tensor3::{
    bivector_inner, eps_contract_vector, hodge_dual, lie_bracket, wedge, Bivector3, LeviCivita,
    UnitVector3, Vector3,
};

pub use bivector_model::BivectorModel;
pub use chsh::{ChshReport, ChshSettings, SearchConfig, SearchMode};
pub use hvm::{ClosureModel, HiddenStateSpace, HiddenVariableModel, SignModel};
pub use projection::{GeneralizedModel, ReducedModel};
pub use quantum::{QuantumState, SpinObservable};
pub use rng::TrialRng;
pub use trials::{CorrelationEstimate, TrialRecord};

/// `f64` vector alias.
pub type Vec3 = Vector3<f64>;
/// `f64` unit-vector alias.
pub type Unit3 = UnitVector3<f64>;
/// `f64` bivector alias.
pub type Biv3 = Bivector3<f64>;
