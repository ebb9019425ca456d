//! A small gallery of concrete models used by the verification suites and
//! the command-line front end.
//!
//! Every standard model here is local and deterministic, so each must (and
//! does) respect the CHSH bound; the generalized members reproduce richer
//! outcome spaces whose projected records collapse back to standard models.

use crate::bivector_model::BivectorModel;
use crate::error::Error;
use crate::hvm::{
    ClosureModel, FiniteDistribution, HiddenStateSpace, HiddenVariableModel, SignModel,
};
use crate::projection::GeneralizedModel;
use crate::scalar::Real;
use crate::sign::Sign;
use crate::tensor3::{Bivector3, UnitVector3};

/// The hemisphere-sign model over the sphere of hidden directions.
pub fn sign_model<T: Real>() -> SignModel<T> {
    SignModel::new()
}

/// Two equally likely states; both sides report the state itself:
/// `A = lambda`, `B = lambda`. Singles vanish, the product is +1.
pub fn two_state_correlated<T: Real>() -> ClosureModel<T, Sign> {
    ClosureModel::new(
        HiddenStateSpace::Finite(FiniteDistribution::uniform_pair(Sign::Plus, Sign::Minus)),
        |_, s: &Sign| *s,
        |_, s: &Sign| *s,
    )
}

/// Two equally likely states with `A = lambda`, `B = -lambda`: perfect
/// anti-correlation at every settings pair.
pub fn two_state_anticorrelated<T: Real>() -> ClosureModel<T, Sign> {
    ClosureModel::new(
        HiddenStateSpace::Finite(FiniteDistribution::uniform_pair(Sign::Plus, Sign::Minus)),
        |_, s: &Sign| *s,
        |_, s: &Sign| -*s,
    )
}

/// A single hidden state; both sides report the hemisphere of their setting
/// relative to the z axis. Deterministic outcomes, setting-dependent
/// correlation `sign(a_z) sign(b_z)`.
pub fn fixed_axis_model<T: Real>() -> ClosureModel<T, ()> {
    ClosureModel::new(
        HiddenStateSpace::Finite(FiniteDistribution::point(())),
        |a: UnitVector3<T>, _: &()| Sign::of(a.vector().z),
        |b: UnitVector3<T>, _: &()| Sign::of(b.vector().z),
    )
}

/// A degenerate generalized model: bivector outcomes frozen at the `+1`
/// hidden state, so the projected record is constant on each side.
#[derive(Clone)]
pub struct ConstantGhvm<T> {
    inner: BivectorModel<T>,
}

impl<T: Real> ConstantGhvm<T> {
    pub fn new() -> Self {
        ConstantGhvm {
            inner: BivectorModel::new(),
        }
    }
}

impl<T: Real> Default for ConstantGhvm<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> GeneralizedModel<T> for ConstantGhvm<T> {
    type State = Sign;
    type Value = Bivector3<T>;

    fn outcome_space(&self) -> &str {
        "bivector (state-independent)"
    }

    fn states(&self) -> &HiddenStateSpace<T, Sign> {
        self.inner.states()
    }

    fn observable_a(&self, a: UnitVector3<T>, _state: &Sign) -> Bivector3<T> {
        self.inner.observable_a(a, Sign::Plus)
    }

    fn observable_b(&self, b: UnitVector3<T>, _state: &Sign) -> Bivector3<T> {
        self.inner.observable_b(b, Sign::Plus)
    }

    fn project_value(&self, xi: UnitVector3<T>, value: &Bivector3<T>) -> Result<Sign, Error> {
        crate::projection::project(xi, *value)
    }
}

/// A standard model wrapped as a generalized one: the outcome space is
/// already `{-1, +1}` and the projection family is the identity. Wrapping
/// and reducing must give back the original expectation values.
///
/// The inner model must be conforming (its observables never fail), which
/// every standard model in this gallery is.
#[derive(Clone)]
pub struct SignValuedGhvm<M> {
    inner: M,
}

impl<M> SignValuedGhvm<M> {
    pub fn new(inner: M) -> Self {
        SignValuedGhvm { inner }
    }
}

impl<T: Real, M: HiddenVariableModel<T>> GeneralizedModel<T> for SignValuedGhvm<M>
where
    M::State: std::fmt::Debug,
{
    type State = M::State;
    type Value = Sign;

    fn outcome_space(&self) -> &str {
        "sign"
    }

    fn states(&self) -> &HiddenStateSpace<T, M::State> {
        self.inner.states()
    }

    fn observable_a(&self, a: UnitVector3<T>, state: &M::State) -> Sign {
        self.inner
            .observable_a(a, state)
            .expect("inner model is conforming")
    }

    fn observable_b(&self, b: UnitVector3<T>, state: &M::State) -> Sign {
        self.inner
            .observable_b(b, state)
            .expect("inner model is conforming")
    }

    fn project_value(&self, _xi: UnitVector3<T>, value: &Sign) -> Result<Sign, Error> {
        Ok(*value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hvm::exact_expectations;
    use crate::projection::{
        projected_product_expectation, projected_single_expectation, reduce_to_hvm,
    };
    use crate::rng::TrialRng;
    use crate::sign::Side;
    use crate::testutil::random_unit;

    #[test]
    fn two_state_models_have_expected_correlations() {
        let mut rng = TrialRng::new(71);
        let a = random_unit(&mut rng);
        let b = random_unit(&mut rng);

        let e = exact_expectations(&two_state_correlated::<f64>(), a, b).unwrap();
        assert_eq!((e.mean_a, e.mean_b, e.mean_ab), (0.0, 0.0, 1.0));

        let e = exact_expectations(&two_state_anticorrelated::<f64>(), a, b).unwrap();
        assert_eq!((e.mean_a, e.mean_b, e.mean_ab), (0.0, 0.0, -1.0));
    }

    #[test]
    fn fixed_axis_model_correlates_hemispheres() {
        let m = fixed_axis_model::<f64>();
        let up = UnitVector3::z_axis();
        let down = -UnitVector3::z_axis();
        assert_eq!(exact_expectations(&m, up, up).unwrap().mean_ab, 1.0);
        assert_eq!(exact_expectations(&m, up, down).unwrap().mean_ab, -1.0);
    }

    #[test]
    fn constant_ghvm_projects_to_constant_outcomes() {
        let g = ConstantGhvm::<f64>::new();
        let mut rng = TrialRng::new(72);
        for _ in 0..20 {
            let v = random_unit(&mut rng);
            assert_eq!(
                projected_single_expectation(&g, Side::Alice, v).unwrap(),
                1.0
            );
            assert_eq!(
                projected_single_expectation(&g, Side::Bob, v).unwrap(),
                -1.0
            );
            let w = random_unit(&mut rng);
            assert_eq!(projected_product_expectation(&g, v, w).unwrap(), -1.0);
        }
    }

    #[test]
    fn sign_valued_ghvm_reduces_to_its_inner_model() {
        let g = SignValuedGhvm::new(two_state_anticorrelated::<f64>());
        let reduced = reduce_to_hvm(g);
        let mut rng = TrialRng::new(73);
        for _ in 0..20 {
            let a = random_unit(&mut rng);
            let b = random_unit(&mut rng);
            let direct = exact_expectations(&two_state_anticorrelated::<f64>(), a, b).unwrap();
            let via = exact_expectations(&reduced, a, b).unwrap();
            assert_eq!(direct, via);
        }
    }
}
