//! Local, deterministic hidden-variable models and their expectation values.
//!
//! A model is a quadruple: a space of complete states, two observables
//! `A, B : S^2 x states -> {-1, +1}`, and a probability distribution over the
//! states. Determinism is the requirement that the observables are functions;
//! locality is built into their signatures, which see only their own side's
//! measurement vector.
//!
//! Expectation values are the distribution-weighted means of `A`, `B`, and
//! the per-state product `A*B`. Finite state spaces are summed exactly;
//! continuous ones are sampled with counter-based seeded randomness (or
//! integrated through an optional exact hook).

use std::sync::Arc;

use crate::error::Error;
use crate::rng::TrialRng;
use crate::scalar::Real;
use crate::sign::Sign;
use crate::tensor3::{UnitVector3, Vector3};
use crate::trials::{CorrelationEstimate, PairAccumulator, TrialRecord};

/// Exact integrator hook for a continuous state space: evaluates the
/// distribution-weighted integral of an arbitrary integrand.
pub type ExactIntegrator<T, S> =
    Arc<dyn Fn(&mut dyn FnMut(&S) -> Result<T, Error>) -> Result<T, Error> + Send + Sync>;

/// Sampler for a continuous state space, drawing one state per trial from
/// the trial's own random stream.
pub type StateSampler<S> = Arc<dyn Fn(&mut TrialRng) -> S + Send + Sync>;

/// A deterministic, local observable as a plain function.
pub type ObservableFn<T, S> = Arc<dyn Fn(UnitVector3<T>, &S) -> Sign + Send + Sync>;

/// A finite probability distribution: states with masses that are
/// nonnegative and sum to 1.
#[derive(Clone)]
pub struct FiniteDistribution<T, S> {
    entries: Vec<(S, T)>,
}

impl<T: Real, S> FiniteDistribution<T, S> {
    pub fn new(entries: Vec<(S, T)>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::InvalidDistribution("no states".into()));
        }
        let mut total = T::zero();
        for (_, mass) in &entries {
            if !mass.is_finite() || *mass < T::zero() {
                return Err(Error::InvalidDistribution(format!(
                    "mass {mass} is negative or not finite"
                )));
            }
            total = total + *mass;
        }
        if (total - T::one()).abs() > T::strict_tol() {
            return Err(Error::InvalidDistribution(format!(
                "masses sum to {total}, not 1"
            )));
        }
        Ok(FiniteDistribution { entries })
    }

    /// Two equally weighted states.
    pub fn uniform_pair(first: S, second: S) -> Self {
        let half = T::of(0.5);
        FiniteDistribution {
            entries: vec![(first, half), (second, half)],
        }
    }

    /// A single state of mass 1.
    pub fn point(state: S) -> Self {
        FiniteDistribution {
            entries: vec![(state, T::one())],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&S, T)> {
        self.entries.iter().map(|(s, m)| (s, *m))
    }

    fn draw(&self, rng: &mut TrialRng) -> &S {
        let u: T = rng.next_real();
        let mut acc = T::zero();
        for (state, mass) in &self.entries {
            acc = acc + *mass;
            if u < acc {
                return state;
            }
        }
        &self.entries[self.entries.len() - 1].0
    }
}

/// A continuous distribution, defined operationally by a sampler and,
/// optionally, an exact integrator.
///
/// No pointwise density is stored: on a continuous space a density need not
/// be bounded by 1, so the distribution is characterized by what can
/// actually be done with it (drawing states, and integrating when a hook is
/// supplied).
#[derive(Clone)]
pub struct ContinuousDistribution<T, S> {
    sampler: StateSampler<S>,
    exact: Option<ExactIntegrator<T, S>>,
}

impl<T: Real, S> ContinuousDistribution<T, S> {
    pub fn new(sampler: StateSampler<S>) -> Self {
        ContinuousDistribution {
            sampler,
            exact: None,
        }
    }

    pub fn with_exact(sampler: StateSampler<S>, exact: ExactIntegrator<T, S>) -> Self {
        ContinuousDistribution {
            sampler,
            exact: Some(exact),
        }
    }

    pub fn exact_integrator(&self) -> Option<&ExactIntegrator<T, S>> {
        self.exact.as_ref()
    }
}

/// The space of complete states together with its probability distribution.
#[derive(Clone)]
pub enum HiddenStateSpace<T, S> {
    Finite(FiniteDistribution<T, S>),
    Continuous(ContinuousDistribution<T, S>),
}

impl<T: Real, S> HiddenStateSpace<T, S> {
    pub fn is_finite(&self) -> bool {
        matches!(self, HiddenStateSpace::Finite(_))
    }

    /// Draw one state for a trial from its random stream.
    pub fn draw(&self, rng: &mut TrialRng) -> S
    where
        S: Clone,
    {
        match self {
            HiddenStateSpace::Finite(d) => d.draw(rng).clone(),
            HiddenStateSpace::Continuous(c) => (c.sampler)(rng),
        }
    }
}

/// A local, deterministic hidden-variable model.
///
/// Conforming models are total: their observables return `Ok` for every
/// (unit vector, state) input, and calling them twice with the same inputs
/// gives the same outcome. The error channel exists for models derived from
/// generalized models, where an inadmissible underlying value is diagnosed
/// at evaluation time rather than hidden behind a panic.
pub trait HiddenVariableModel<T: Real> {
    type State: Clone;

    fn states(&self) -> &HiddenStateSpace<T, Self::State>;

    /// Alice's outcome. Sees only Alice's measurement vector.
    fn observable_a(&self, a: UnitVector3<T>, state: &Self::State) -> Result<Sign, Error>;

    /// Bob's outcome. Sees only Bob's measurement vector.
    fn observable_b(&self, b: UnitVector3<T>, state: &Self::State) -> Result<Sign, Error>;
}

/// A model assembled from plain closures over an arbitrary state space.
#[derive(Clone)]
pub struct ClosureModel<T, S> {
    space: HiddenStateSpace<T, S>,
    obs_a: ObservableFn<T, S>,
    obs_b: ObservableFn<T, S>,
}

impl<T: Real, S> ClosureModel<T, S> {
    pub fn new(
        space: HiddenStateSpace<T, S>,
        obs_a: impl Fn(UnitVector3<T>, &S) -> Sign + Send + Sync + 'static,
        obs_b: impl Fn(UnitVector3<T>, &S) -> Sign + Send + Sync + 'static,
    ) -> Self {
        ClosureModel {
            space,
            obs_a: Arc::new(obs_a),
            obs_b: Arc::new(obs_b),
        }
    }
}

impl<T: Real, S: Clone> HiddenVariableModel<T> for ClosureModel<T, S> {
    type State = S;

    fn states(&self) -> &HiddenStateSpace<T, S> {
        &self.space
    }

    fn observable_a(&self, a: UnitVector3<T>, state: &S) -> Result<Sign, Error> {
        Ok((self.obs_a)(a, state))
    }

    fn observable_b(&self, b: UnitVector3<T>, state: &S) -> Result<Sign, Error> {
        Ok((self.obs_b)(b, state))
    }
}

/// The canonical continuous example: complete states are points of the
/// sphere, drawn uniformly; Alice reports the hemisphere of her setting,
/// `A(a, l) = sign(a.l)`, and Bob the opposite, `B(b, l) = -sign(b.l)`.
/// Ties (`a.l = 0`) resolve to +1.
///
/// Its correlation has the closed form `-1 + 2 theta / pi` in the angle
/// between the settings, available as [`SignModel::correlation`].
#[derive(Clone)]
pub struct SignModel<T> {
    space: HiddenStateSpace<T, Vector3<T>>,
}

impl<T: Real> SignModel<T> {
    pub fn new() -> Self {
        let sampler: StateSampler<Vector3<T>> = Arc::new(|rng| {
            let two = T::of(2.0);
            let z = two * rng.next_real::<T>() - T::one();
            let phi = two * T::PI() * rng.next_real::<T>();
            let r = (T::one() - z * z).max(T::zero()).sqrt();
            let (s, c) = phi.sin_cos();
            Vector3::new(r * c, r * s, z)
        });
        SignModel {
            space: HiddenStateSpace::Continuous(ContinuousDistribution::new(sampler)),
        }
    }

    /// Closed-form correlation `-1 + 2 theta / pi` at the angle between the
    /// settings, from integrating the hemisphere signs over the sphere.
    pub fn correlation(a: UnitVector3<T>, b: UnitVector3<T>) -> T {
        Self::correlation_at_angle(a.angle_to(b))
    }

    /// Same closed form as a function of the angle in radians.
    pub fn correlation_at_angle(theta: T) -> T {
        -T::one() + T::of(2.0) * theta / T::PI()
    }
}

impl<T: Real> Default for SignModel<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> HiddenVariableModel<T> for SignModel<T> {
    type State = Vector3<T>;

    fn states(&self) -> &HiddenStateSpace<T, Vector3<T>> {
        &self.space
    }

    fn observable_a(&self, a: UnitVector3<T>, state: &Vector3<T>) -> Result<Sign, Error> {
        Ok(Sign::of(a.vector().dot(*state)))
    }

    fn observable_b(&self, b: UnitVector3<T>, state: &Vector3<T>) -> Result<Sign, Error> {
        Ok(-Sign::of(b.vector().dot(*state)))
    }
}

/// Exact expectation values by summation over a finite state space (or
/// through the exact integrator of a continuous one, when provided).
///
/// Returns [`Error::ExactUnsupported`] for a continuous space without an
/// exact hook; use [`monte_carlo_expectations`] there instead.
pub fn exact_expectations<T: Real, M: HiddenVariableModel<T>>(
    model: &M,
    a: UnitVector3<T>,
    b: UnitVector3<T>,
) -> Result<CorrelationEstimate<T>, Error> {
    match model.states() {
        HiddenStateSpace::Finite(dist) => {
            let mut mean_a = T::zero();
            let mut mean_b = T::zero();
            let mut mean_ab = T::zero();
            for (state, mass) in dist.iter() {
                let oa = model.observable_a(a, state)?;
                let ob = model.observable_b(b, state)?;
                mean_a = mean_a + mass * oa.real();
                mean_b = mean_b + mass * ob.real();
                mean_ab = mean_ab + mass * (oa * ob).real();
            }
            Ok(CorrelationEstimate::exact(mean_a, mean_b, mean_ab))
        }
        HiddenStateSpace::Continuous(dist) => {
            let hook = dist.exact.as_ref().ok_or(Error::ExactUnsupported)?;
            let mean_a = hook(&mut |s| model.observable_a(a, s).map(Sign::real))?;
            let mean_b = hook(&mut |s| model.observable_b(b, s).map(Sign::real))?;
            let mean_ab = hook(&mut |s| {
                let oa = model.observable_a(a, s)?;
                let ob = model.observable_b(b, s)?;
                Ok((oa * ob).real())
            })?;
            Ok(CorrelationEstimate::exact(mean_a, mean_b, mean_ab))
        }
    }
}

fn trial_outcome<T: Real, M: HiddenVariableModel<T>>(
    model: &M,
    a: UnitVector3<T>,
    b: UnitVector3<T>,
    seed: u64,
    trial: u64,
) -> Result<(Sign, Sign), Error> {
    let mut rng = TrialRng::for_trial(seed, trial);
    let state = model.states().draw(&mut rng);
    Ok((
        model.observable_a(a, &state)?,
        model.observable_b(b, &state)?,
    ))
}

/// Monte Carlo estimate from `n` seeded trials.
///
/// Trial `i` draws its state from the counter-based stream `(seed, i)`, so
/// the estimate is deterministic in `(n, seed)` and identical, bit for bit,
/// to the summary of [`simulate_trials`] with the same arguments.
pub fn monte_carlo_expectations<T: Real, M: HiddenVariableModel<T>>(
    model: &M,
    a: UnitVector3<T>,
    b: UnitVector3<T>,
    n: u64,
    seed: u64,
) -> Result<CorrelationEstimate<T>, Error> {
    if n == 0 {
        return Err(Error::EmptyTrialCount);
    }
    let mut acc = PairAccumulator::new();
    for i in 0..n {
        acc.push(trial_outcome(model, a, b, seed, i)?);
    }
    Ok(acc.finish())
}

/// Simulate `n` seeded trials and keep the full +-1 record.
pub fn simulate_trials<T: Real, M: HiddenVariableModel<T>>(
    model: &M,
    a: UnitVector3<T>,
    b: UnitVector3<T>,
    n: u64,
    seed: u64,
) -> Result<TrialRecord<T>, Error> {
    if n == 0 {
        return Err(Error::EmptyTrialCount);
    }
    let mut outcomes = Vec::with_capacity(n as usize);
    for i in 0..n {
        outcomes.push(trial_outcome(model, a, b, seed, i)?);
    }
    Ok(TrialRecord::new(a, b, seed, outcomes))
}
