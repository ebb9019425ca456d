//! Projection of structured measurement outcomes onto +-1, and the reduction
//! of generalized hidden-variable models to standard ones.
//!
//! However an outcome is represented internally, the experimenters record
//! their results as +-1; whatever map they use to do so, applied after a
//! generalized model's observables, yields ordinary sign-valued observables.
//! The quantities a model must reproduce are therefore the expectation
//! values of the projected record, and the reduction constructed here shows
//! that every local, deterministic generalized model is bound by the same
//! CHSH constraint as a standard one, no matter how rich its outcome space.
//!
//! For bivector-valued outcomes the projection relative to a measurement
//! vector `xi` is canonical (unique up to overall sign): it reads off the
//! orientation of the rotation about `xi`,
//!
//! ```text
//! P_xi(X_ab) = (1 / sqrt(2)) X_ab eps^{nab} xi_n,
//! ```
//!
//! defined on bivectors that are orthogonal to `xi` and normalized to unit
//! self inner product. On that domain the value is +-1 up to rounding.

use std::fmt::Debug;

use crate::error::{Error, ProjectionDiagnostic};
use crate::hvm::{HiddenStateSpace, HiddenVariableModel};
use crate::scalar::Real;
use crate::sign::{Side, Sign};
use crate::tensor3::{bivector_inner, hodge_dual, Bivector3, LeviCivita, UnitVector3};

fn diagnostic<T: Real>(setting: UnitVector3<T>, state: String, reason: String) -> Error {
    let v = setting.vector();
    Error::ProjectionOutsideDomain(ProjectionDiagnostic {
        setting: [
            v.x.to_f64().unwrap_or(f64::NAN),
            v.y.to_f64().unwrap_or(f64::NAN),
            v.z.to_f64().unwrap_or(f64::NAN),
        ],
        state,
        reason,
    })
}

/// Replace the diagnostic's state rendering with the hidden state that
/// produced the offending value.
fn blame_state<S: Debug>(err: Error, state: &S) -> Error {
    match err {
        Error::ProjectionOutsideDomain(d) => Error::ProjectionOutsideDomain(ProjectionDiagnostic {
            state: format!("{state:?}"),
            ..d
        }),
        other => other,
    }
}

/// Membership in the domain of the projection map for `xi`: the bivector
/// must be orthogonal to `xi` (`X_ab xi^a = 0`) and satisfy the
/// normalization `X_ab X^ab = 1`, both within [`Real::domain_tol`].
pub fn in_domain_set<T: Real>(xi: UnitVector3<T>, x: Bivector3<T>) -> bool {
    let orthogonal = x.contract_vector(xi.vector()).norm() <= T::domain_tol();
    let normalized = (bivector_inner(x, x) - T::one()).abs() <= T::domain_tol();
    orthogonal && normalized
}

/// The projection `P_xi(X) = (1/sqrt(2)) X_ab eps^{nab} xi_n`, with the
/// right-handed volume element fixed by convention.
///
/// Defined only on the domain set of `xi`; inputs outside it are an error
/// rather than being silently extended, since the map has no meaning there.
/// On the domain set the contraction is +-1 up to rounding and is returned
/// as an exact sign.
pub fn project<T: Real>(xi: UnitVector3<T>, x: Bivector3<T>) -> Result<Sign, Error> {
    let orthogonality = x.contract_vector(xi.vector()).norm();
    if orthogonality > T::domain_tol() {
        return Err(diagnostic(
            xi,
            format!("{x:?}"),
            format!("contraction with the setting has norm {orthogonality}, not 0"),
        ));
    }
    let self_inner = bivector_inner(x, x);
    if (self_inner - T::one()).abs() > T::domain_tol() {
        return Err(diagnostic(
            xi,
            format!("{x:?}"),
            format!("self inner product is {self_inner}, not 1"),
        ));
    }
    let value =
        T::FRAC_1_SQRT_2() * xi.vector().dot(hodge_dual(x, LeviCivita::RIGHT_HANDED));
    if (value.abs() - T::one()).abs() > T::domain_tol() {
        return Err(diagnostic(
            xi,
            format!("{x:?}"),
            format!("projected value {value} is not +-1"),
        ));
    }
    Ok(Sign::of(value))
}

/// A local, deterministic generalized hidden-variable model: observables
/// valued in an arbitrary outcome space, together with the family of
/// projection maps the experimenters use to record outcomes as +-1.
///
/// Locality is structural: each observable and each projection sees only its
/// own side's measurement vector. The projection family is indexed by the
/// measurement vector alone, not by the hidden state, since the recording
/// step is performed by an experimenter who does not know the state.
pub trait GeneralizedModel<T: Real> {
    type State: Clone + Debug;
    type Value;

    /// Short label for the outcome space, for reports. The framework treats
    /// the outcome space as opaque: only the observables and the projection
    /// family ever touch values of this type, so the reduction below applies
    /// to any choice.
    fn outcome_space(&self) -> &str;

    fn states(&self) -> &HiddenStateSpace<T, Self::State>;

    fn observable_a(&self, a: UnitVector3<T>, state: &Self::State) -> Self::Value;

    fn observable_b(&self, b: UnitVector3<T>, state: &Self::State) -> Self::Value;

    /// The projection map for measurement vector `xi`, applied to a value.
    fn project_value(&self, xi: UnitVector3<T>, value: &Self::Value) -> Result<Sign, Error>;
}

fn projected_outcome<T: Real, G: GeneralizedModel<T>>(
    model: &G,
    side: Side,
    v: UnitVector3<T>,
    state: &G::State,
) -> Result<Sign, Error> {
    let value = match side {
        Side::Alice => model.observable_a(v, state),
        Side::Bob => model.observable_b(v, state),
    };
    model
        .project_value(v, &value)
        .map_err(|e| blame_state(e, state))
}

/// Expectation of one side's projected outcome,
/// the state-space average of `P_v(observable(v, state))`.
pub fn projected_single_expectation<T: Real, G: GeneralizedModel<T>>(
    model: &G,
    side: Side,
    v: UnitVector3<T>,
) -> Result<T, Error> {
    match model.states() {
        HiddenStateSpace::Finite(dist) => {
            let mut total = T::zero();
            for (state, mass) in dist.iter() {
                total = total + mass * projected_outcome(model, side, v, state)?.real();
            }
            Ok(total)
        }
        HiddenStateSpace::Continuous(dist) => {
            let hook = dist.exact_integrator().ok_or(Error::ExactUnsupported)?;
            hook(&mut |state| projected_outcome(model, side, v, state).map(Sign::real))
        }
    }
}

/// Expectation of the product of the two projected outcomes: the number the
/// +-1 record of an actual run estimates, and the one a satisfactory model
/// would need to match to the quantum correlation.
pub fn projected_product_expectation<T: Real, G: GeneralizedModel<T>>(
    model: &G,
    a: UnitVector3<T>,
    b: UnitVector3<T>,
) -> Result<T, Error> {
    match model.states() {
        HiddenStateSpace::Finite(dist) => {
            let mut total = T::zero();
            for (state, mass) in dist.iter() {
                let oa = projected_outcome(model, Side::Alice, a, state)?;
                let ob = projected_outcome(model, Side::Bob, b, state)?;
                total = total + mass * (oa * ob).real();
            }
            Ok(total)
        }
        HiddenStateSpace::Continuous(dist) => {
            let hook = dist.exact_integrator().ok_or(Error::ExactUnsupported)?;
            hook(&mut |state| {
                let oa = projected_outcome(model, Side::Alice, a, state)?;
                let ob = projected_outcome(model, Side::Bob, b, state)?;
                Ok((oa * ob).real())
            })
        }
    }
}

/// A generalized model reduced to a standard hidden-variable model over the
/// same state space, with observables `A'(a, s) = P_a(A(a, s))` and
/// `B'(b, s) = P_b(B(b, s))`.
///
/// Expectation values of the reduced model equal the projected expectation
/// values of the generalized one, so the reduced model satisfying the CHSH
/// bound means the generalized model's projected record does too.
#[derive(Clone)]
pub struct ReducedModel<G> {
    inner: G,
}

impl<G> ReducedModel<G> {
    pub fn inner(&self) -> &G {
        &self.inner
    }
}

/// Reduce a generalized model to a standard one by composing its observables
/// with its projection family.
///
/// The composition is evaluated lazily; a value that falls outside its
/// projection domain surfaces as a [`Error::ProjectionOutsideDomain`] naming
/// the setting and hidden state, at the point of evaluation.
pub fn reduce_to_hvm<T: Real, G: GeneralizedModel<T>>(model: G) -> ReducedModel<G> {
    ReducedModel { inner: model }
}

impl<T: Real, G: GeneralizedModel<T>> HiddenVariableModel<T> for ReducedModel<G> {
    type State = G::State;

    fn states(&self) -> &HiddenStateSpace<T, G::State> {
        self.inner.states()
    }

    fn observable_a(&self, a: UnitVector3<T>, state: &G::State) -> Result<Sign, Error> {
        projected_outcome(&self.inner, Side::Alice, a, state)
    }

    fn observable_b(&self, b: UnitVector3<T>, state: &G::State) -> Result<Sign, Error> {
        projected_outcome(&self.inner, Side::Bob, b, state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivector_model::BivectorModel;
    use crate::hvm::{exact_expectations, FiniteDistribution};
    use crate::quantum;
    use crate::rng::TrialRng;
    use crate::tensor3::{eps_contract_vector, wedge, Vector3};
    use crate::testutil::random_unit;

    const TOL: f64 = 1e-12;

    #[test]
    fn domain_set_examples() {
        let model = BivectorModel::<f64>::new();
        let mut rng = TrialRng::new(61);
        for _ in 0..50 {
            let xi = random_unit(&mut rng);
            for lambda in Sign::BOTH {
                assert!(in_domain_set(xi, model.observable_a(xi, lambda)));
                assert!(in_domain_set(xi, model.observable_b(xi, lambda)));
            }
        }

        let ex = Vector3::new(1.0, 0.0, 0.0);
        let ey = Vector3::new(0.0, 1.0, 0.0);
        // Orthogonal to e_z but self inner product 1/2: fails normalization.
        assert!(!in_domain_set(UnitVector3::z_axis(), wedge(ex, ey)));
        // Normalized but not orthogonal to e_x.
        let scaled = wedge(ex, ey).scale(std::f64::consts::SQRT_2);
        assert!((bivector_inner(scaled, scaled) - 1.0).abs() <= TOL);
        assert!(!in_domain_set(UnitVector3::x_axis(), scaled));
    }

    #[test]
    fn projection_reads_off_the_hidden_sign() {
        let model = BivectorModel::<f64>::new();
        let mut rng = TrialRng::new(62);
        for _ in 0..100 {
            let alpha = random_unit(&mut rng);
            let beta = random_unit(&mut rng);
            for lambda in Sign::BOTH {
                assert_eq!(project(alpha, model.observable_a(alpha, lambda)).unwrap(), lambda);
                assert_eq!(project(beta, model.observable_b(beta, lambda)).unwrap(), -lambda);
            }
        }
    }

    #[test]
    fn projection_is_sign_equivariant() {
        let mut rng = TrialRng::new(63);
        for _ in 0..100 {
            let xi = random_unit(&mut rng);
            let x = eps_contract_vector(LeviCivita::RIGHT_HANDED, xi.vector())
                .scale(std::f64::consts::FRAC_1_SQRT_2);
            assert_eq!(project(xi, -x).unwrap(), -project(xi, x).unwrap());
        }
    }

    #[test]
    fn projection_rejects_values_outside_its_domain() {
        let xi = UnitVector3::<f64>::z_axis();
        let too_small = wedge(Vector3::new(1.0, 0.0, 0.0), Vector3::new(0.0, 1.0, 0.0));
        match project(xi, too_small) {
            Err(Error::ProjectionOutsideDomain(d)) => {
                assert_eq!(d.setting, [0.0, 0.0, 1.0]);
                assert!(d.reason.contains("self inner product"));
            }
            other => panic!("expected domain error, got {other:?}"),
        }

        let misaligned = eps_contract_vector(LeviCivita::RIGHT_HANDED, Vector3::new(0.0, 1.0, 0.0))
            .scale(std::f64::consts::FRAC_1_SQRT_2);
        assert!(project(UnitVector3::<f64>::x_axis(), misaligned).is_err());
    }

    #[test]
    fn diagnostics_serialize_to_json() {
        let xi = UnitVector3::<f64>::z_axis();
        let bad = wedge(Vector3::new(1.0, 0.0, 0.0), Vector3::new(0.0, 1.0, 0.0));
        let Err(Error::ProjectionOutsideDomain(d)) = project(xi, bad) else {
            panic!("expected domain error");
        };
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json["setting"][2], 1.0);
        assert!(json["reason"].as_str().unwrap().contains("inner product"));
        assert!(json["state"].as_str().is_some());
    }

    #[test]
    fn projected_singles_vanish_for_the_bivector_model() {
        let model = BivectorModel::<f64>::new();
        let mut rng = TrialRng::new(64);
        for _ in 0..100 {
            let v = random_unit(&mut rng);
            let ea = projected_single_expectation(&model, Side::Alice, v).unwrap();
            let eb = projected_single_expectation(&model, Side::Bob, v).unwrap();
            assert_eq!(ea, 0.0);
            assert_eq!(eb, 0.0);
        }
    }

    #[test]
    fn projected_product_is_constant_minus_one() {
        let model = BivectorModel::<f64>::new();
        let mut rng = TrialRng::new(65);
        for _ in 0..100 {
            let a = random_unit(&mut rng);
            let b = random_unit(&mut rng);
            assert_eq!(projected_product_expectation(&model, a, b).unwrap(), -1.0);
        }
    }

    #[test]
    fn projected_product_disagrees_with_quantum_at_orthogonal_settings() {
        let model = BivectorModel::<f64>::new();
        let a = UnitVector3::<f64>::x_axis();
        let b = UnitVector3::y_axis();
        let projected = projected_product_expectation(&model, a, b).unwrap();
        let quantum = quantum::product_expectation(a, b);
        // Before projection the model tracks the quantum value (0 here);
        // after projection the product is locked at -1.
        assert!((model.product_expectation(a, b) - quantum).abs() <= TOL);
        assert!((projected - quantum).abs() >= 1.0 - TOL);
    }

    #[test]
    fn reduced_model_recovers_the_projected_expectations() {
        let model = BivectorModel::<f64>::new();
        let reduced = reduce_to_hvm(model.clone());
        let mut rng = TrialRng::new(66);
        for _ in 0..100 {
            let a = random_unit(&mut rng);
            let b = random_unit(&mut rng);
            let direct = projected_product_expectation(&model, a, b).unwrap();
            let via_reduction = exact_expectations(&reduced, a, b).unwrap();
            assert!((direct - via_reduction.mean_ab).abs() <= TOL);
            assert_eq!(via_reduction.mean_ab, -1.0);
            // A' = lambda and B' = -lambda for every setting.
            for lambda in Sign::BOTH {
                assert_eq!(reduced.observable_a(a, &lambda).unwrap(), lambda);
                assert_eq!(reduced.observable_b(b, &lambda).unwrap(), -lambda);
            }
        }
    }

    /// A generalized model whose observable strays outside the projection
    /// domain: the reduction must report, not panic.
    struct BrokenGhvm {
        inner: BivectorModel<f64>,
    }

    impl GeneralizedModel<f64> for BrokenGhvm {
        type State = Sign;
        type Value = Bivector3<f64>;

        fn outcome_space(&self) -> &str {
            "bivector (unnormalized)"
        }

        fn states(&self) -> &HiddenStateSpace<f64, Sign> {
            self.inner.states()
        }

        fn observable_a(&self, a: UnitVector3<f64>, state: &Sign) -> Bivector3<f64> {
            self.inner.observable_a(a, *state).scale(2.0)
        }

        fn observable_b(&self, b: UnitVector3<f64>, state: &Sign) -> Bivector3<f64> {
            self.inner.observable_b(b, *state)
        }

        fn project_value(
            &self,
            xi: UnitVector3<f64>,
            value: &Bivector3<f64>,
        ) -> Result<Sign, Error> {
            project(xi, *value)
        }
    }

    #[test]
    fn reduction_of_nonconforming_model_reports_the_offending_inputs() {
        let broken = BrokenGhvm {
            inner: BivectorModel::new(),
        };
        let a = UnitVector3::<f64>::x_axis();
        let err = projected_product_expectation(&broken, a, a).unwrap_err();
        match err {
            Error::ProjectionOutsideDomain(d) => {
                assert_eq!(d.setting, [1.0, 0.0, 0.0]);
                assert_eq!(d.state, "Plus");
                assert!(d.reason.contains("self inner product"));
            }
            other => panic!("expected domain error, got {other:?}"),
        }

        let reduced = reduce_to_hvm(broken);
        assert!(matches!(
            exact_expectations(&reduced, a, a),
            Err(Error::ProjectionOutsideDomain(_))
        ));
        // Bob's side is untouched and still projects fine.
        assert!(reduced.observable_b(a, &Sign::Plus).is_ok());
    }

    #[test]
    fn finite_distribution_helpers_cover_point_masses() {
        let d = FiniteDistribution::<f64, u8>::point(7);
        let states: Vec<_> = d.iter().collect();
        assert_eq!(states, vec![(&7u8, 1.0)]);
    }

    #[test]
    fn whole_pipeline_instantiates_at_f32() {
        let model = BivectorModel::<f32>::new();
        let a = UnitVector3::<f32>::in_plane_deg(30.0);
        let b = UnitVector3::<f32>::in_plane_deg(90.0);
        assert!((model.product_expectation(a, b) + a.dot(b)).abs() <= 1e-5);
        assert_eq!(projected_product_expectation(&model, a, b).unwrap(), -1.0f32);
        let reduced = reduce_to_hvm(model);
        let e = exact_expectations(&reduced, a, b).unwrap();
        assert_eq!(e.mean_ab, -1.0f32);
    }
}
