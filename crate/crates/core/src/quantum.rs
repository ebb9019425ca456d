//! Quantum-mechanical reference predictions for the EPR-Bohm experiment.
//!
//! Everything here is computed by explicit complex linear algebra over the
//! two-qubit Hilbert space: spin operators are built from the Pauli matrices,
//! two-particle operators from Kronecker products, and expectation values
//! from matrix-vector contractions. The closed form `-a.b` for the product
//! expectation is never hard-coded; it is what the tests compare the matrix
//! computation against.
//!
//! Units are chosen so the spin eigenvalues are exactly +1 and -1, matching
//! the +-1 coding of measurement records. The fixed computational basis is
//! `{|+z,+z>, |+z,-z>, |-z,+z>, |-z,-z>}`, with Alice's qubit first.

use num_complex::Complex;
use serde::Serialize;

use crate::error::Error;
use crate::rng::TrialRng;
use crate::scalar::Real;
use crate::sign::{Side, Sign};
use crate::tensor3::UnitVector3;
use crate::trials::TrialRecord;

/// A square complex matrix of compile-time dimension (2 or 4 here).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<T, const N: usize> {
    entries: [[Complex<T>; N]; N],
}

impl<T: Real, const N: usize> CMatrix<T, N> {
    pub fn new(entries: [[Complex<T>; N]; N]) -> Self {
        CMatrix { entries }
    }

    pub fn zero() -> Self {
        CMatrix {
            entries: [[Complex::new(T::zero(), T::zero()); N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.entries[i][i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row][col]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..N {
                    acc = acc + self.entries[i][k] * other.entries[k][j];
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] = self.entries[i][j] + other.entries[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = *e * s;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..N {
            acc = acc + self.entries[i][i];
        }
        acc
    }

    pub fn mul_vec(&self, v: &[Complex<T>; N]) -> [Complex<T>; N] {
        let mut out = [Complex::new(T::zero(), T::zero()); N];
        for (slot, row) in out.iter_mut().zip(&self.entries) {
            for (entry, component) in row.iter().zip(v) {
                *slot = *slot + *entry * *component;
            }
        }
        out
    }

    /// `<psi| M |psi>` as a complex number.
    pub fn expectation(&self, psi: &[Complex<T>; N]) -> Complex<T> {
        let mv = self.mul_vec(psi);
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..N {
            acc = acc + psi[i].conj() * mv[i];
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|e| e.re.is_finite() && e.im.is_finite())
    }
}

impl<T: Real> CMatrix<T, 2> {
    pub fn det(&self) -> Complex<T> {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }
}

/// Kronecker product of two one-qubit operators, Alice's factor first.
pub fn kron<T: Real>(a: &CMatrix<T, 2>, b: &CMatrix<T, 2>) -> CMatrix<T, 4> {
    let mut out = CMatrix::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.entries[2 * i + k][2 * j + l] = a.entries[i][j] * b.entries[k][l];
                }
            }
        }
    }
    out
}

/// Kronecker product of two one-qubit state vectors, Alice's factor first.
pub fn kron_vec<T: Real>(a: &[Complex<T>; 2], b: &[Complex<T>; 2]) -> [Complex<T>; 4] {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::of(re), T::of(im))
}

pub fn pauli_x<T: Real>() -> CMatrix<T, 2> {
    CMatrix::new([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
}

pub fn pauli_y<T: Real>() -> CMatrix<T, 2> {
    CMatrix::new([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
}

pub fn pauli_z<T: Real>() -> CMatrix<T, 2> {
    CMatrix::new([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]])
}

/// A pure state of the two-qubit system, stored as four amplitudes in the
/// fixed z-basis. Construction enforces unit norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumState<T> {
    amplitudes: [Complex<T>; 4],
}

impl<T: Real> QuantumState<T> {
    pub fn new(amplitudes: [Complex<T>; 4]) -> Result<Self, Error> {
        let norm_sq: T = amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr());
        let norm = norm_sq.sqrt();
        if !norm.is_finite() || (norm - T::one()).abs() > T::strict_tol() {
            return Err(Error::NonUnitState {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(QuantumState { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex<T>; 4] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &Self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..4 {
            acc = acc + self.amplitudes[i].conj() * other.amplitudes[i];
        }
        acc
    }

    /// Real expectation value of a Hermitian two-qubit operator in this state.
    pub fn expectation(&self, operator: &CMatrix<T, 4>) -> T {
        let value = operator.expectation(&self.amplitudes);
        debug_assert!(
            value.im.abs() <= T::strict_tol(),
            "expectation of a Hermitian operator must be real"
        );
        value.re
    }
}

/// The spin operator about a unit vector `n`, paired with its axis.
///
/// The matrix is `sigma_x n_x + sigma_y n_y + sigma_z n_z`: Hermitian,
/// traceless, determinant -1, eigenvalues exactly +1 and -1. Non-unit axes
/// are rejected when the [`UnitVector3`] argument is constructed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinObservable<T> {
    axis: UnitVector3<T>,
    matrix: CMatrix<T, 2>,
}

impl<T: Real> SpinObservable<T> {
    pub fn new(axis: UnitVector3<T>) -> Self {
        let n = axis.vector();
        let zero = T::zero();
        let matrix = CMatrix::new([
            [Complex::new(n.z, zero), Complex::new(n.x, -n.y)],
            [Complex::new(n.x, n.y), Complex::new(-n.z, zero)],
        ]);
        SpinObservable { axis, matrix }
    }

    pub fn axis(&self) -> UnitVector3<T> {
        self.axis
    }

    pub fn matrix(&self) -> &CMatrix<T, 2> {
        &self.matrix
    }

    /// Orthonormal eigenvectors `(|n,+>, |n,->)` of the spin operator,
    /// in the standard polar-angle parameterization of the axis.
    pub fn eigenvectors(&self) -> ([Complex<T>; 2], [Complex<T>; 2]) {
        let n = self.axis.vector();
        let theta = n.z.min(T::one()).max(-T::one()).acos();
        let phi = n.y.atan2(n.x);
        let half = T::of(0.5);
        let (s, co) = (theta * half).sin_cos();
        let (sp, cp) = phi.sin_cos();
        let phase = Complex::new(cp, sp);
        let zero = T::zero();
        let plus = [Complex::new(co, zero), phase * Complex::new(s, zero)];
        let minus = [
            phase.conj() * Complex::new(-s, zero),
            Complex::new(co, zero),
        ];
        (plus, minus)
    }
}

/// The singlet state `(|+z,-z> - |-z,+z>) / sqrt(2)`.
pub fn singlet_state<T: Real>() -> QuantumState<T> {
    let r = T::FRAC_1_SQRT_2();
    let zero = T::zero();
    QuantumState::new([
        Complex::new(zero, zero),
        Complex::new(r, zero),
        Complex::new(-r, zero),
        Complex::new(zero, zero),
    ])
    .expect("singlet amplitudes are normalized")
}

/// The singlet expressed through the spin eigenbasis about `n`, expanded
/// back into the fixed z-basis: `(|n,+>|n,-> - |n,->|n,+>) / sqrt(2)`.
///
/// Up to global phase this equals [`singlet_state`] for every `n`.
pub fn singlet_state_about<T: Real>(n: UnitVector3<T>) -> QuantumState<T> {
    let (plus, minus) = SpinObservable::new(n).eigenvectors();
    let pm = kron_vec(&plus, &minus);
    let mp = kron_vec(&minus, &plus);
    let r = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let mut amplitudes = [Complex::new(T::zero(), T::zero()); 4];
    for i in 0..4 {
        amplitudes[i] = (pm[i] - mp[i]) * r;
    }
    QuantumState::new(amplitudes).expect("singlet re-expansion stays normalized")
}

/// Expectation of one side's spin measurement in the singlet state:
/// `<Psi| (sigma.n (x) I) |Psi>` or `<Psi| (I (x) sigma.n) |Psi>`.
///
/// The returned value is the matrix computation, which is 0 up to rounding
/// for every axis.
pub fn single_expectation<T: Real>(side: Side, n: UnitVector3<T>) -> T {
    let spin = SpinObservable::new(n);
    let identity = CMatrix::identity();
    let operator = match side {
        Side::Alice => kron(spin.matrix(), &identity),
        Side::Bob => kron(&identity, spin.matrix()),
    };
    singlet_state().expectation(&operator)
}

/// Expectation of the product of the two spin measurements in the singlet
/// state: `<Psi| (sigma.a (x) sigma.b) |Psi>`, computed as an explicit 4x4
/// matrix expectation. Equals `-a.b` up to rounding.
pub fn product_expectation<T: Real>(a: UnitVector3<T>, b: UnitVector3<T>) -> T {
    let operator = kron(SpinObservable::new(a).matrix(), SpinObservable::new(b).matrix());
    singlet_state().expectation(&operator)
}

/// Joint distribution of the +-1 outcome pair for settings `(a, b)`.
///
/// The four probabilities are `P(s, t) = (1 - s t (a.b)) / 4`: the unique
/// table with uniform single-side marginals and correlation `-a.b`. Quantum
/// mechanics fixes only the marginals and the correlation; this table is the
/// minimal completion consistent with them, used to sample trial-level data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JointDistribution<T> {
    correlation: T,
}

/// Outcome pairs in the fixed sampling order.
const OUTCOME_PAIRS: [(Sign, Sign); 4] = [
    (Sign::Plus, Sign::Plus),
    (Sign::Plus, Sign::Minus),
    (Sign::Minus, Sign::Plus),
    (Sign::Minus, Sign::Minus),
];

impl<T: Real> JointDistribution<T> {
    pub fn from_settings(a: UnitVector3<T>, b: UnitVector3<T>) -> Self {
        // Clamp: rounding in the dot product of unit vectors must not push
        // a probability below zero.
        let correlation = -a.dot(b).min(T::one()).max(-T::one());
        JointDistribution { correlation }
    }

    /// Expected value of the outcome product, `-a.b`.
    pub fn correlation(&self) -> T {
        self.correlation
    }

    /// `P(s, t)` for an outcome pair.
    pub fn probability(&self, s: Sign, t: Sign) -> T {
        let quarter = T::of(0.25);
        quarter + quarter * (s * t).real::<T>() * self.correlation
    }

    /// The four probabilities in the order `(+,+), (+,-), (-,+), (-,-)`.
    pub fn table(&self) -> [((Sign, Sign), T); 4] {
        OUTCOME_PAIRS.map(|(s, t)| ((s, t), self.probability(s, t)))
    }

    /// Single-side marginal `P(+1)`; 1/2 identically for this family, since
    /// `P(s,+1) + P(s,-1) = 1/4 + u + 1/4 - u` for either side.
    pub fn marginal_plus(&self, _side: Side) -> T {
        T::of(0.5)
    }

    /// Draw one outcome pair by inverting the cumulative table.
    pub fn sample(&self, rng: &mut TrialRng) -> (Sign, Sign) {
        let u: T = rng.next_real();
        let mut acc = T::zero();
        for (pair, p) in self.table() {
            acc = acc + p;
            if u < acc {
                return pair;
            }
        }
        OUTCOME_PAIRS[3]
    }

    /// Simulate `n` seeded trials of the experiment at the fixed settings.
    /// Trial `i` draws from the counter-based stream `(seed, i)`, so records
    /// are reproducible and order-independent.
    pub fn sample_record(
        &self,
        a: UnitVector3<T>,
        b: UnitVector3<T>,
        n: u64,
        seed: u64,
    ) -> Result<TrialRecord<T>, Error> {
        if n == 0 {
            return Err(Error::EmptyTrialCount);
        }
        let outcomes = (0..n)
            .map(|i| self.sample(&mut TrialRng::for_trial(seed, i)))
            .collect();
        Ok(TrialRecord::new(a, b, seed, outcomes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::random_unit;

    const TOL: f64 = 1e-12;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn pauli_matrices_have_textbook_entries() {
        let x = pauli_x::<f64>();
        assert_eq!(x.entry(0, 1), Complex::new(1.0, 0.0));
        let y = pauli_y::<f64>();
        assert_eq!(y.entry(0, 1), Complex::new(0.0, -1.0));
        assert_eq!(y.entry(1, 0), Complex::new(0.0, 1.0));
        let z = pauli_z::<f64>();
        assert_eq!(z.entry(0, 0), Complex::new(1.0, 0.0));
        assert_eq!(z.entry(1, 1), Complex::new(-1.0, 0.0));
    }

    #[test]
    fn pauli_algebra_holds_entrywise() {
        // sigma_i sigma_j = delta_ij I + i eps_ijk sigma_k
        let sigma = [pauli_x::<f64>(), pauli_y(), pauli_z()];
        let eps = crate::tensor3::LeviCivita::RIGHT_HANDED;
        for i in 0..3 {
            for j in 0..3 {
                let product = sigma[i].mul(&sigma[j]);
                let mut expected = if i == j {
                    CMatrix::identity()
                } else {
                    CMatrix::zero()
                };
                for (k, s) in sigma.iter().enumerate() {
                    let coeff = Complex::new(0.0, f64::from(eps.component(i, j, k)));
                    expected = expected.add(&s.scale(coeff));
                }
                for r in 0..2 {
                    for cidx in 0..2 {
                        let d = product.entry(r, cidx) - expected.entry(r, cidx);
                        assert!(d.norm_sqr().sqrt() <= TOL, "i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn spin_observable_along_axes() {
        let z = SpinObservable::new(UnitVector3::<f64>::z_axis());
        assert_eq!(*z.matrix(), pauli_z());
        let x = SpinObservable::new(UnitVector3::<f64>::x_axis());
        assert_eq!(*x.matrix(), pauli_x());
        let y = SpinObservable::new(UnitVector3::<f64>::y_axis());
        assert_eq!(*y.matrix(), pauli_y());
    }

    #[test]
    fn spin_observable_is_hermitian_traceless_involutive() {
        let mut rng = TrialRng::new(31);
        for _ in 0..50 {
            let n = random_unit(&mut rng);
            let m = SpinObservable::new(n);
            assert_eq!(m.matrix().adjoint(), *m.matrix());
            assert!(m.matrix().trace().norm_sqr().sqrt() <= TOL);
            assert!((m.matrix().det().re + 1.0).abs() <= TOL);
            // (sigma.n)^2 = I forces the eigenvalues to be +1 and -1.
            let sq = m.matrix().mul(m.matrix());
            let id = CMatrix::<f64, 2>::identity();
            for r in 0..2 {
                for cidx in 0..2 {
                    let d = sq.entry(r, cidx) - id.entry(r, cidx);
                    assert!(d.norm_sqr().sqrt() <= TOL);
                }
            }
        }
    }

    #[test]
    fn eigenvectors_satisfy_eigen_equation() {
        let mut rng = TrialRng::new(32);
        for _ in 0..50 {
            let n = random_unit(&mut rng);
            let obs = SpinObservable::new(n);
            let (plus, minus) = obs.eigenvectors();
            let mp = obs.matrix().mul_vec(&plus);
            let mm = obs.matrix().mul_vec(&minus);
            for i in 0..2 {
                assert!((mp[i] - plus[i]).norm_sqr().sqrt() <= 1e-10);
                assert!((mm[i] + minus[i]).norm_sqr().sqrt() <= 1e-10);
            }
        }
    }

    #[test]
    fn singlet_is_normalized_with_expected_amplitudes() {
        let s = singlet_state::<f64>();
        let amps = s.amplitudes();
        assert_eq!(amps[0], Complex::new(0.0, 0.0));
        assert!(close(amps[1].re, std::f64::consts::FRAC_1_SQRT_2, TOL));
        assert!(close(amps[2].re, -std::f64::consts::FRAC_1_SQRT_2, TOL));
        assert_eq!(amps[3], Complex::new(0.0, 0.0));
        assert!(close(s.overlap(&s).re, 1.0, TOL));
    }

    #[test]
    fn singlet_is_basis_independent_up_to_phase() {
        let reference = singlet_state::<f64>();
        let mut rng = TrialRng::new(33);
        for _ in 0..20 {
            let n = random_unit(&mut rng);
            let re_expressed = singlet_state_about(n);
            // |<Psi_z|Psi_n>| = 1 means equality up to a global phase.
            let overlap = reference.overlap(&re_expressed);
            assert!(close(overlap.norm_sqr().sqrt(), 1.0, TOL));
        }
    }

    #[test]
    fn singlet_antidiagonal_spin_correlation_is_minus_one() {
        let mut rng = TrialRng::new(34);
        for _ in 0..20 {
            let n = random_unit(&mut rng);
            assert!(close(product_expectation(n, n), -1.0, TOL));
        }
    }

    #[test]
    fn single_side_expectations_vanish() {
        assert!(close(
            single_expectation(Side::Alice, UnitVector3::z_axis()),
            0.0,
            TOL
        ));
        let diag = UnitVector3::normalized(crate::tensor3::Vector3::new(1.0, 1.0, 1.0)).unwrap();
        assert!(close(single_expectation(Side::Alice, diag), 0.0, TOL));
        let mut rng = TrialRng::new(35);
        for _ in 0..20 {
            let n = random_unit(&mut rng);
            assert!(close(single_expectation(Side::Alice, n), 0.0, TOL));
            assert!(close(single_expectation(Side::Bob, n), 0.0, TOL));
        }
    }

    #[test]
    fn product_expectation_matches_closed_form() {
        let a = UnitVector3::<f64>::x_axis();
        let b = UnitVector3::in_plane_deg(45.0);
        assert!(close(
            product_expectation(a, b),
            -std::f64::consts::FRAC_1_SQRT_2,
            TOL
        ));
        // Orthogonal settings: no correlation.
        assert!(close(
            product_expectation(a, UnitVector3::y_axis()),
            0.0,
            TOL
        ));

        let mut rng = TrialRng::new(36);
        for _ in 0..100 {
            let a = random_unit(&mut rng);
            let b = random_unit(&mut rng);
            assert!(close(product_expectation(a, b), -a.dot(b), TOL));
        }
    }

    #[test]
    fn product_expectation_is_rotation_invariant() {
        let mut rng = TrialRng::new(37);
        for _ in 0..20 {
            let a = random_unit(&mut rng);
            let b = random_unit(&mut rng);
            let axis = random_unit(&mut rng);
            let angle = std::f64::consts::TAU * rng.next_f64();
            let rotated = product_expectation(a.rotated(axis, angle), b.rotated(axis, angle));
            assert!(close(rotated, product_expectation(a, b), TOL));
        }
    }

    #[test]
    fn joint_distribution_limit_tables() {
        let a = UnitVector3::<f64>::x_axis();
        // Parallel settings: perfect anti-correlation.
        let d = JointDistribution::from_settings(a, a);
        assert!(close(d.probability(Sign::Plus, Sign::Minus), 0.5, TOL));
        assert!(close(d.probability(Sign::Minus, Sign::Plus), 0.5, TOL));
        assert!(close(d.probability(Sign::Plus, Sign::Plus), 0.0, TOL));
        assert!(close(d.probability(Sign::Minus, Sign::Minus), 0.0, TOL));

        // Orthogonal settings: all four outcomes equally likely.
        let d = JointDistribution::from_settings(a, UnitVector3::y_axis());
        for (_, p) in d.table() {
            assert!(close(p, 0.25, TOL));
        }
    }

    #[test]
    fn joint_distribution_is_valid_and_reproduces_correlation() {
        let mut rng = TrialRng::new(38);
        for _ in 0..100 {
            let a = random_unit(&mut rng);
            let b = random_unit(&mut rng);
            let d = JointDistribution::from_settings(a, b);
            let mut total = 0.0;
            let mut corr = 0.0;
            for ((s, t), p) in d.table() {
                assert!(p >= 0.0);
                total += p;
                corr += f64::from((s * t).value()) * p;
            }
            assert!(close(total, 1.0, TOL));
            // Brute-force sum over the four outcomes against -a.b.
            assert!(close(corr, -a.dot(b), TOL));
            assert_eq!(d.marginal_plus(Side::Alice), 0.5);
            assert_eq!(d.marginal_plus(Side::Bob), 0.5);
            // Float route to the marginal for good measure.
            let pa = d.probability(Sign::Plus, Sign::Plus) + d.probability(Sign::Plus, Sign::Minus);
            assert!(close(pa, 0.5, 1e-15));
        }
    }

    #[test]
    fn sampling_is_reproducible_and_anticorrelated_at_equal_settings() {
        let a = UnitVector3::<f64>::in_plane_deg(30.0);
        let d = JointDistribution::from_settings(a, a);
        let r1 = d.sample_record(a, a, 500, 9).unwrap();
        let r2 = d.sample_record(a, a, 500, 9).unwrap();
        assert_eq!(r1.outcomes(), r2.outcomes());
        for &(s, t) in r1.outcomes() {
            assert_eq!(t, -s);
        }
        assert!(matches!(
            d.sample_record(a, a, 0, 9),
            Err(Error::EmptyTrialCount)
        ));
    }
}
