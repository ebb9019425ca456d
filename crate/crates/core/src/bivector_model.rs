//! A local, deterministic model whose measurement outcomes are antisymmetric
//! rank-2 tensors rather than the integers +-1.
//!
//! The motivating idea: a spin measurement determines the orientation of a
//! rotation, and a rotation in 3-space carries more structure than a sign.
//! Representing outcomes as bivectors keeps that structure: each observable
//! value encodes a plane of rotation (here, the plane orthogonal to the
//! measurement vector) and an orientation within it.
//!
//! The hidden state is a single sign `lambda`; the observables are
//!
//! ```text
//! A_bc(alpha, lambda) =  (lambda / sqrt(2)) eps_abc alpha^a
//! B_bc(beta,  lambda) = -(lambda / sqrt(2)) eps_abc beta^a
//! ```
//!
//! Both single-side expectation values are the zero tensor, and the inner
//! product `A_bc B^bc` has expectation `-alpha.beta`, matching the quantum
//! correlation in functional form. The [`crate::projection`] module shows
//! why that match does not survive projection of the outcomes to +-1.

use crate::error::Error;
use crate::hvm::{FiniteDistribution, HiddenStateSpace};
use crate::projection::{self, GeneralizedModel};
use crate::scalar::Real;
use crate::sign::{Side, Sign};
use crate::tensor3::{bivector_inner, eps_contract_vector, Bivector3, LeviCivita, UnitVector3};

/// The bivector-valued model: hidden states `{+1, -1}` with equal weight,
/// and tensor observables built from a fixed volume element.
#[derive(Clone)]
pub struct BivectorModel<T> {
    orientation: LeviCivita,
    space: HiddenStateSpace<T, Sign>,
}

impl<T: Real> BivectorModel<T> {
    /// The model with the right-handed volume element.
    pub fn new() -> Self {
        Self::with_orientation(LeviCivita::RIGHT_HANDED)
    }

    /// The model with an explicit volume element choice.
    pub fn with_orientation(orientation: LeviCivita) -> Self {
        BivectorModel {
            orientation,
            space: HiddenStateSpace::Finite(FiniteDistribution::uniform_pair(
                Sign::Plus,
                Sign::Minus,
            )),
        }
    }

    pub fn orientation(&self) -> LeviCivita {
        self.orientation
    }

    pub fn states(&self) -> &HiddenStateSpace<T, Sign> {
        &self.space
    }

    fn density(&self) -> &FiniteDistribution<T, Sign> {
        match &self.space {
            HiddenStateSpace::Finite(d) => d,
            HiddenStateSpace::Continuous(_) => unreachable!("state space is finite by construction"),
        }
    }

    /// Alice's observable `(lambda / sqrt(2)) eps_abc alpha^a`.
    ///
    /// The value is orthogonal to `alpha` (its contraction with `alpha`
    /// vanishes) and has unit self inner product, so it lies in the domain
    /// of the projection map associated with `alpha`.
    pub fn observable_a(&self, alpha: UnitVector3<T>, lambda: Sign) -> Bivector3<T> {
        eps_contract_vector(self.orientation, alpha.vector())
            .scale(lambda.real::<T>() * T::FRAC_1_SQRT_2())
    }

    /// Bob's observable `-(lambda / sqrt(2)) eps_abc beta^a`: the exact
    /// negation of Alice's at equal settings, so parallel measurements are
    /// always anti-correlated state by state.
    pub fn observable_b(&self, beta: UnitVector3<T>, lambda: Sign) -> Bivector3<T> {
        -self.observable_a(beta, lambda)
    }

    /// Tensor-valued single-side expectation: the density-weighted sum of
    /// the observable over both hidden states.
    ///
    /// The two terms are exact negations of each other, so the cancellation
    /// is exact even in floating point: the result is the zero tensor
    /// bit for bit, meaning that on average neither body rotates about any
    /// direction.
    pub fn single_expectation(&self, side: Side, v: UnitVector3<T>) -> Bivector3<T> {
        let mut total = Bivector3::zero();
        for (lambda, mass) in self.density().iter() {
            let value = match side {
                Side::Alice => self.observable_a(v, *lambda),
                Side::Bob => self.observable_b(v, *lambda),
            };
            total = total + value.scale(mass);
        }
        total
    }

    /// Expectation of the tensor inner product `A_bc(alpha) B^bc(beta)`.
    ///
    /// Per state the contraction collapses to `-alpha.beta` through the
    /// identity `eps_mbc eps^nbc = 2 delta_m^n`, so the expectation equals
    /// `-alpha.beta`: the same functional form as the quantum correlation.
    /// This number is an inner product of tensors, not an average of
    /// products of recorded +-1 outcomes; see [`crate::projection`] for the
    /// average the experiment actually produces.
    pub fn product_expectation(&self, alpha: UnitVector3<T>, beta: UnitVector3<T>) -> T {
        let mut total = T::zero();
        for (lambda, mass) in self.density().iter() {
            let a = self.observable_a(alpha, *lambda);
            let b = self.observable_b(beta, *lambda);
            total = total + mass * bivector_inner(a, b);
        }
        total
    }
}

impl<T: Real> Default for BivectorModel<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Registration as a generalized hidden-variable model: the outcome space is
/// the bivectors, and recording an outcome as +-1 uses the canonical
/// projection relative to the measurement vector.
impl<T: Real> GeneralizedModel<T> for BivectorModel<T> {
    type State = Sign;
    type Value = Bivector3<T>;

    fn outcome_space(&self) -> &str {
        "bivector"
    }

    fn states(&self) -> &HiddenStateSpace<T, Sign> {
        &self.space
    }

    fn observable_a(&self, a: UnitVector3<T>, state: &Sign) -> Bivector3<T> {
        BivectorModel::observable_a(self, a, *state)
    }

    fn observable_b(&self, b: UnitVector3<T>, state: &Sign) -> Bivector3<T> {
        BivectorModel::observable_b(self, b, *state)
    }

    fn project_value(&self, xi: UnitVector3<T>, value: &Bivector3<T>) -> Result<Sign, Error> {
        projection::project(xi, *value)
    }
}
