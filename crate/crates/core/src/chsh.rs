//! The CHSH statistic, bound verification, and a deterministic search for
//! maximally violating detector settings.
//!
//! For settings `(a, a')` on Alice's side and `(b, b')` on Bob's, the
//! statistic is
//!
//! ```text
//! S = | E(a,b) - E(a,b') + E(a',b) + E(a',b') |
//! ```
//!
//! with the minus sign on the `(a, b')` term. Every local deterministic
//! hidden-variable model satisfies `S <= 2`; the quantum correlation reaches
//! `2 sqrt(2)` (the Tsirelson bound). The search below reproduces that value
//! from the quantum correlator, and [`verify_bound`] sweeps models over
//! settings grids to confirm they stay within the classical bound.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Error;
use crate::hvm::{exact_expectations, monte_carlo_expectations, HiddenVariableModel};
use crate::rng::TrialRng;
use crate::scalar::Real;
use crate::tensor3::{UnitVector3, Vector3};

/// Tolerance on the correlator contract `|E| <= 1`.
fn range_tol<T: Real>() -> T {
    T::of(1e-9)
}

/// A quadruple of detector settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChshSettings<T> {
    pub a: UnitVector3<T>,
    pub a_prime: UnitVector3<T>,
    pub b: UnitVector3<T>,
    pub b_prime: UnitVector3<T>,
}

impl<T: Real> ChshSettings<T> {
    pub fn new(
        a: UnitVector3<T>,
        a_prime: UnitVector3<T>,
        b: UnitVector3<T>,
        b_prime: UnitVector3<T>,
    ) -> Self {
        ChshSettings {
            a,
            a_prime,
            b,
            b_prime,
        }
    }

    /// Settings in the x-y plane from four angles in degrees.
    pub fn coplanar_deg(a: T, a_prime: T, b: T, b_prime: T) -> Self {
        ChshSettings {
            a: UnitVector3::in_plane_deg(a),
            a_prime: UnitVector3::in_plane_deg(a_prime),
            b: UnitVector3::in_plane_deg(b),
            b_prime: UnitVector3::in_plane_deg(b_prime),
        }
    }

    /// All four settings rotated by the same rotation.
    pub fn rotated(&self, axis: UnitVector3<T>, angle: T) -> Self {
        ChshSettings {
            a: self.a.rotated(axis, angle),
            a_prime: self.a_prime.rotated(axis, angle),
            b: self.b.rotated(axis, angle),
            b_prime: self.b_prime.rotated(axis, angle),
        }
    }
}

/// The four correlations and the statistic for one settings quadruple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChshReport<T> {
    pub settings: ChshSettings<T>,
    pub e_ab: T,
    pub e_ab_prime: T,
    pub e_a_prime_b: T,
    pub e_a_prime_b_prime: T,
    /// `|e_ab - e_ab_prime + e_a_prime_b + e_a_prime_b_prime|`.
    pub statistic: T,
    pub source: String,
    /// Whether the statistic respects the classical bound of 2.
    pub bound_satisfied: bool,
}

fn checked_correlation<T: Real, C>(
    correlator: &mut C,
    a: UnitVector3<T>,
    b: UnitVector3<T>,
) -> Result<T, Error>
where
    C: FnMut(UnitVector3<T>, UnitVector3<T>) -> Result<T, Error>,
{
    let value = correlator(a, b)?;
    if !value.is_finite() || value.abs() > T::one() + range_tol::<T>() {
        return Err(Error::CorrelatorOutOfRange {
            value: value.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(value.min(T::one()).max(-T::one()))
}

/// Evaluate the CHSH statistic of a correlator at one settings quadruple.
///
/// The correlator must return values in `[-1, 1]` (within 1e-9); accepted
/// values are clamped into the interval, which also caps the statistic at
/// the algebraic maximum of 4.
pub fn chsh_statistic<T: Real, C>(
    mut correlator: C,
    settings: &ChshSettings<T>,
    source: &str,
) -> Result<ChshReport<T>, Error>
where
    C: FnMut(UnitVector3<T>, UnitVector3<T>) -> Result<T, Error>,
{
    let e_ab = checked_correlation(&mut correlator, settings.a, settings.b)?;
    let e_ab_prime = checked_correlation(&mut correlator, settings.a, settings.b_prime)?;
    let e_a_prime_b = checked_correlation(&mut correlator, settings.a_prime, settings.b)?;
    let e_a_prime_b_prime = checked_correlation(&mut correlator, settings.a_prime, settings.b_prime)?;
    let statistic = (e_ab - e_ab_prime + e_a_prime_b + e_a_prime_b_prime).abs();
    Ok(ChshReport {
        settings: *settings,
        e_ab,
        e_ab_prime,
        e_a_prime_b,
        e_a_prime_b_prime,
        statistic,
        source: source.to_string(),
        bound_satisfied: statistic <= T::of(2.0) + T::strict_tol(),
    })
}

/// Parameterization searched by [`maximize_chsh`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    /// Four angles in the x-y plane, in degrees.
    Coplanar,
    /// Four (polar, azimuth) pairs in degrees: eight coordinates.
    FullSphere,
}

impl SearchMode {
    fn dims(self) -> usize {
        match self {
            SearchMode::Coplanar => 4,
            SearchMode::FullSphere => 8,
        }
    }

    /// Is coordinate `dim` a polar angle (range [0, 180]) rather than a
    /// periodic one (range [0, 360))?
    fn is_polar(self, dim: usize) -> bool {
        self == SearchMode::FullSphere && dim.is_multiple_of(2)
    }
}

/// Configuration for the settings search: a coarse multistart grid, then
/// per-coordinate descent on a fine grid, then step-halving refinement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchConfig<T> {
    pub mode: SearchMode,
    /// Coarse grid points per coordinate for seeding.
    pub coarse_points: usize,
    /// Grid resolution for the descent stage, in degrees.
    pub step_deg: T,
    /// Number of step halvings in the refinement stage (0 disables it).
    pub refine_halvings: usize,
    /// How many of the best coarse seeds to descend from.
    pub keep_seeds: usize,
}

impl<T: Real> SearchConfig<T> {
    /// Coplanar search at 1 degree resolution.
    pub fn coplanar() -> Self {
        SearchConfig {
            mode: SearchMode::Coplanar,
            coarse_points: 8,
            step_deg: T::one(),
            refine_halvings: 30,
            keep_seeds: 4,
        }
    }

    /// Full-sphere search; the coarse stage is 8-dimensional, so it uses
    /// fewer points per coordinate.
    pub fn full_sphere() -> Self {
        SearchConfig {
            mode: SearchMode::FullSphere,
            coarse_points: 4,
            step_deg: T::one(),
            refine_halvings: 30,
            keep_seeds: 4,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.coarse_points < 2 {
            return Err(Error::InvalidConfig("coarse_points must be at least 2".into()));
        }
        let total = (self.coarse_points as f64).powi(self.mode.dims() as i32);
        if total > 2e7 {
            return Err(Error::InvalidConfig(format!(
                "coarse grid of {total} points is too large"
            )));
        }
        if !(self.step_deg > T::zero() && self.step_deg <= T::of(90.0)) {
            return Err(Error::InvalidConfig(
                "step_deg must lie in (0, 90] degrees".into(),
            ));
        }
        if self.refine_halvings > 60 {
            return Err(Error::InvalidConfig("refine_halvings must be <= 60".into()));
        }
        if self.keep_seeds == 0 || self.keep_seeds > 64 {
            return Err(Error::InvalidConfig("keep_seeds must lie in 1..=64".into()));
        }
        Ok(())
    }
}

impl<T: Real> Default for SearchConfig<T> {
    fn default() -> Self {
        Self::coplanar()
    }
}

fn wrap_period<T: Real>(x: T, period: T) -> T {
    let wrapped = x - period * (x / period).floor();
    if wrapped >= period {
        wrapped - period
    } else {
        wrapped
    }
}

fn clamp_coordinate<T: Real>(mode: SearchMode, dim: usize, x: T) -> T {
    if mode.is_polar(dim) {
        x.max(T::zero()).min(T::of(180.0))
    } else {
        wrap_period(x, T::of(360.0))
    }
}

fn settings_from_angles<T: Real>(mode: SearchMode, angles: &[T]) -> ChshSettings<T> {
    match mode {
        SearchMode::Coplanar => {
            ChshSettings::coplanar_deg(angles[0], angles[1], angles[2], angles[3])
        }
        SearchMode::FullSphere => {
            let v = |i: usize| {
                UnitVector3::from_spherical(angles[2 * i].to_radians(), angles[2 * i + 1].to_radians())
            };
            ChshSettings::new(v(0), v(1), v(2), v(3))
        }
    }
}

fn statistic_at<T: Real, C>(
    correlator: &mut C,
    mode: SearchMode,
    angles: &[T],
) -> Result<T, Error>
where
    C: FnMut(UnitVector3<T>, UnitVector3<T>) -> Result<T, Error>,
{
    let s = settings_from_angles(mode, angles);
    let e1 = checked_correlation(correlator, s.a, s.b)?;
    let e2 = checked_correlation(correlator, s.a, s.b_prime)?;
    let e3 = checked_correlation(correlator, s.a_prime, s.b)?;
    let e4 = checked_correlation(correlator, s.a_prime, s.b_prime)?;
    Ok((e1 - e2 + e3 + e4).abs())
}

/// Grid values for one coordinate at the given step.
fn coordinate_grid<T: Real>(mode: SearchMode, dim: usize, step: T) -> Vec<T> {
    let end = if mode.is_polar(dim) {
        T::of(180.0)
    } else {
        T::of(360.0)
    };
    let mut values = Vec::new();
    let mut k = T::zero();
    while k * step < end - step * T::of(1e-9) {
        values.push(k * step);
        k = k + T::one();
    }
    if mode.is_polar(dim) {
        values.push(end);
    }
    values
}

/// Search detector settings maximizing the CHSH statistic of a correlator.
///
/// Deterministic for a fixed configuration: a coarse multistart grid seeds
/// per-coordinate descent over 1-degree (by default) grids, followed by
/// step-halving local refinement. Returns the best settings found and the
/// statistic there.
pub fn maximize_chsh<T: Real, C>(
    mut correlator: C,
    config: &SearchConfig<T>,
) -> Result<(ChshSettings<T>, T), Error>
where
    C: FnMut(UnitVector3<T>, UnitVector3<T>) -> Result<T, Error>,
{
    config.validate()?;
    let mode = config.mode;
    let dims = mode.dims();

    // Coarse multistart grid over all coordinates.
    let coarse: Vec<Vec<T>> = (0..dims)
        .map(|dim| {
            let end = if mode.is_polar(dim) { 180.0 } else { 360.0 };
            (0..config.coarse_points)
                .map(|k| T::of(k as f64 * end / config.coarse_points as f64))
                .collect()
        })
        .collect();
    let total = config.coarse_points.pow(dims as u32);
    let mut scored: Vec<(T, Vec<T>)> = Vec::with_capacity(total);
    for index in 0..total {
        let mut rem = index;
        let mut angles = Vec::with_capacity(dims);
        for coarse_dim in coarse.iter() {
            angles.push(coarse_dim[rem % config.coarse_points]);
            rem /= config.coarse_points;
        }
        let s = statistic_at(&mut correlator, mode, &angles)?;
        scored.push((s, angles));
    }
    scored.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(Ordering::Equal));
    scored.truncate(config.keep_seeds);

    let mut best_overall: Option<(T, Vec<T>)> = None;
    const MAX_SWEEPS: usize = 256;

    for (seed_value, seed_angles) in scored {
        let mut angles = seed_angles;
        let mut best = seed_value;

        // Per-coordinate descent on the fine grid.
        for _ in 0..MAX_SWEEPS {
            let mut improved = false;
            for dim in 0..dims {
                let original = angles[dim];
                let mut best_here = best;
                let mut best_angle = original;
                for value in coordinate_grid(mode, dim, config.step_deg) {
                    angles[dim] = value;
                    let s = statistic_at(&mut correlator, mode, &angles)?;
                    if s > best_here {
                        best_here = s;
                        best_angle = value;
                    }
                }
                angles[dim] = best_angle;
                if best_here > best {
                    best = best_here;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }

        // Step-halving refinement around the grid optimum.
        let mut step = config.step_deg;
        for _ in 0..config.refine_halvings {
            step = step * T::of(0.5);
            for _ in 0..MAX_SWEEPS {
                let mut improved = false;
                for dim in 0..dims {
                    let original = angles[dim];
                    for candidate in [original - step, original + step] {
                        angles[dim] = clamp_coordinate(mode, dim, candidate);
                        let s = statistic_at(&mut correlator, mode, &angles)?;
                        if s > best {
                            best = s;
                            improved = true;
                        } else {
                            angles[dim] = original;
                        }
                    }
                }
                if !improved {
                    break;
                }
            }
        }

        match &best_overall {
            Some((current, _)) if *current >= best => {}
            _ => best_overall = Some((best, angles)),
        }
    }

    let (best, angles) = best_overall.expect("at least one seed is kept");
    Ok((settings_from_angles(mode, &angles), best))
}

/// Result of sweeping a correlator over a grid of settings quadruples and
/// checking the classical bound at each.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck<T> {
    /// Largest statistic encountered.
    pub max_statistic: T,
    /// Settings achieving the maximum.
    pub worst_settings: ChshSettings<T>,
    /// Number of quadruples checked.
    pub quadruples: usize,
    /// Allowed excess over the bound of 2.
    pub tolerance: T,
    /// Quadruples whose statistic exceeded `2 + tolerance`.
    pub violations: usize,
    pub passed: bool,
}

/// Sweep a correlator over settings quadruples, recording the maximal
/// statistic and any excursions beyond `2 + tolerance`.
///
/// A violation by a conforming local deterministic model is impossible, so
/// a failed check indicates a defect in the model or framework rather than
/// physics; the report flags it instead of panicking.
pub fn verify_bound<T: Real, C>(
    mut correlator: C,
    sweep: &[ChshSettings<T>],
    tolerance: T,
) -> Result<BoundCheck<T>, Error>
where
    C: FnMut(UnitVector3<T>, UnitVector3<T>) -> Result<T, Error>,
{
    if sweep.is_empty() {
        return Err(Error::InvalidConfig("empty settings sweep".into()));
    }
    let mut max_statistic = T::neg_infinity();
    let mut worst_settings = sweep[0];
    let mut violations = 0usize;
    let bound = T::of(2.0) + tolerance;
    for settings in sweep {
        let report = chsh_statistic(&mut correlator, settings, "sweep")?;
        if report.statistic > max_statistic {
            max_statistic = report.statistic;
            worst_settings = *settings;
        }
        if report.statistic > bound {
            violations += 1;
        }
    }
    Ok(BoundCheck {
        max_statistic,
        worst_settings,
        quadruples: sweep.len(),
        tolerance,
        violations,
        passed: violations == 0,
    })
}

/// Bound check with exact expectation values of a finite-state model,
/// at tolerance [`Real::strict_tol`].
pub fn verify_bound_exact<T: Real, M: HiddenVariableModel<T>>(
    model: &M,
    sweep: &[ChshSettings<T>],
) -> Result<BoundCheck<T>, Error> {
    verify_bound(
        |a, b| exact_expectations(model, a, b).map(|e| e.mean_ab),
        sweep,
        T::strict_tol(),
    )
}

/// Bound check with Monte Carlo correlations of `n` trials per settings
/// pair, at the statistical tolerance `5 / sqrt(n)`. Each quadruple uses its
/// own derived seed.
pub fn verify_bound_monte_carlo<T: Real, M: HiddenVariableModel<T>>(
    model: &M,
    sweep: &[ChshSettings<T>],
    n: u64,
    seed: u64,
) -> Result<BoundCheck<T>, Error> {
    if n == 0 {
        return Err(Error::EmptyTrialCount);
    }
    let tolerance = T::of(5.0) / T::from_u64(n).expect("trial count fits scalar").sqrt();
    let mut evaluation = 0u64;
    verify_bound(
        move |a, b| {
            // Each of the four correlations of each quadruple gets its own
            // derived seed, so the estimates are independent.
            evaluation += 1;
            let sub_seed = seed.wrapping_add(evaluation.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            monte_carlo_expectations(model, a, b, n, sub_seed).map(|e| e.mean_ab)
        },
        sweep,
        tolerance,
    )
}

/// Uniformly random settings quadruples, derived from a counter-based seed.
pub fn random_settings<T: Real>(count: usize, seed: u64) -> Vec<ChshSettings<T>> {
    let sphere_point = |rng: &mut TrialRng| {
        let two = T::of(2.0);
        let z = two * rng.next_real::<T>() - T::one();
        let phi = two * T::PI() * rng.next_real::<T>();
        let r = (T::one() - z * z).max(T::zero()).sqrt();
        let (s, c) = phi.sin_cos();
        UnitVector3::normalized(Vector3::new(r * c, r * s, z)).expect("sphere point is unit")
    };
    (0..count)
        .map(|i| {
            let mut rng = TrialRng::for_trial(seed, i as u64);
            ChshSettings::new(
                sphere_point(&mut rng),
                sphere_point(&mut rng),
                sphere_point(&mut rng),
                sphere_point(&mut rng),
            )
        })
        .collect()
}

/// Coplanar settings quadruples on a grid of angles with `a` fixed at
/// 0 degrees (a gauge choice: rotation-invariant correlators lose nothing,
/// and the sweep stays cubic rather than quartic in the grid size).
pub fn coplanar_quadruple_sweep<T: Real>(step_deg: T) -> Result<Vec<ChshSettings<T>>, Error> {
    if !(step_deg > T::zero() && step_deg <= T::of(120.0)) {
        return Err(Error::InvalidConfig(
            "sweep step must lie in (0, 120] degrees".into(),
        ));
    }
    let mut angles = Vec::new();
    let mut k = T::zero();
    while k * step_deg < T::of(360.0) - step_deg * T::of(1e-9) {
        angles.push(k * step_deg);
        k = k + T::one();
    }
    let mut sweep = Vec::with_capacity(angles.len().pow(3));
    for &a_prime in &angles {
        for &b in &angles {
            for &b_prime in &angles {
                sweep.push(ChshSettings::coplanar_deg(T::zero(), a_prime, b, b_prime));
            }
        }
    }
    Ok(sweep)
}

/// One row of a coplanar sweep: the four angles, the four correlations, and
/// the statistic.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepPoint<T> {
    pub a_deg: T,
    pub a_prime_deg: T,
    pub b_deg: T,
    pub b_prime_deg: T,
    pub e_ab: T,
    pub e_ab_prime: T,
    pub e_a_prime_b: T,
    pub e_a_prime_b_prime: T,
    pub statistic: T,
}

/// Evaluate a correlator over the gauge-fixed coplanar angle grid,
/// producing plot-ready rows.
pub fn coplanar_sweep<T: Real, C>(
    mut correlator: C,
    step_deg: T,
) -> Result<Vec<SweepPoint<T>>, Error>
where
    C: FnMut(UnitVector3<T>, UnitVector3<T>) -> Result<T, Error>,
{
    let quadruples = coplanar_quadruple_sweep(step_deg)?;
    let mut points = Vec::with_capacity(quadruples.len());
    let per_axis = {
        let mut count = 0usize;
        let mut k = T::zero();
        while k * step_deg < T::of(360.0) - step_deg * T::of(1e-9) {
            count += 1;
            k = k + T::one();
        }
        count
    };
    for (index, settings) in quadruples.iter().enumerate() {
        let report = chsh_statistic(&mut correlator, settings, "sweep")?;
        // Invert the (a_prime, b, b_prime) nesting of the sweep generator.
        let unravel = |i: usize| T::of((i % per_axis) as f64) * step_deg;
        let b_prime_deg = unravel(index);
        let b_deg = unravel(index / per_axis);
        let a_prime_deg = unravel(index / (per_axis * per_axis));
        points.push(SweepPoint {
            a_deg: T::zero(),
            a_prime_deg,
            b_deg,
            b_prime_deg,
            e_ab: report.e_ab,
            e_ab_prime: report.e_ab_prime,
            e_a_prime_b: report.e_a_prime_b,
            e_a_prime_b_prime: report.e_a_prime_b_prime,
            statistic: report.statistic,
        });
    }
    Ok(points)
}

/// CSV rendering of sweep rows: header, then one row per quadruple.
pub fn sweep_to_csv<T: Real>(points: &[SweepPoint<T>]) -> String {
    let mut out = String::new();
    out.push_str(
        "a_deg,a_prime_deg,b_deg,b_prime_deg,e_ab,e_ab_prime,e_a_prime_b,e_a_prime_b_prime,s\n",
    );
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            p.a_deg,
            p.a_prime_deg,
            p.b_deg,
            p.b_prime_deg,
            p.e_ab,
            p.e_ab_prime,
            p.e_a_prime_b,
            p.e_a_prime_b_prime,
            p.statistic
        );
    }
    out
}
