//! Constant vectors, antisymmetric rank-2 tensors, and the Levi-Civita symbol
//! on Euclidean 3-space.
//!
//! The metric is fixed to the identity, so raising and lowering indices is a
//! no-op and covectors are identified with vectors. Antisymmetric rank-2
//! tensors ("bivectors") are stored by their three independent components,
//! which makes antisymmetry hold by construction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::Error;
use crate::scalar::Real;

/// A vector (equivalently covector) in Euclidean 3-space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Vector3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vector3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vector3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vector3::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        Vector3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn scale(self, s: T) -> Self {
        Vector3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Component by index 0..=2. Panics on an out-of-range index.
    pub fn component(self, a: usize) -> T {
        match a {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("vector index {a} out of range"),
        }
    }

    /// Rodrigues rotation of `self` about `axis` by `angle` (radians).
    pub fn rotated(self, axis: UnitVector3<T>, angle: T) -> Self {
        let k = axis.vector();
        let (s, c) = angle.sin_cos();
        self.scale(c) + k.cross(self).scale(s) + k.scale(k.dot(self) * (T::one() - c))
    }
}

impl<T: Real> Add for Vector3<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Vector3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Real> Sub for Vector3<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Vector3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Real> Neg for Vector3<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Vector3::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vector3<T> {
    type Output = Self;

    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

impl<T: fmt::Display> fmt::Display for Vector3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A point of the 2-sphere: a vector whose norm is 1 within tolerance.
///
/// Measurement settings are always of this type, so operations that require a
/// unit vector reject non-unit input at construction time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitVector3<T>(Vector3<T>);

impl<T: Real> UnitVector3<T> {
    /// Wraps a vector after checking its norm is 1 within [`Real::strict_tol`].
    pub fn new(v: Vector3<T>) -> Result<Self, Error> {
        let norm = v.norm();
        if !norm.is_finite() || (norm - T::one()).abs() > T::strict_tol() {
            return Err(Error::NonUnitVector {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(UnitVector3(v))
    }

    /// Normalizes an arbitrary direction. Fails on zero or non-finite input.
    pub fn normalized(v: Vector3<T>) -> Result<Self, Error> {
        let norm = v.norm();
        if !norm.is_finite() || norm <= T::zero() {
            return Err(Error::ZeroVector);
        }
        Ok(UnitVector3(v.scale(norm.recip())))
    }

    pub fn x_axis() -> Self {
        UnitVector3(Vector3::new(T::one(), T::zero(), T::zero()))
    }

    pub fn y_axis() -> Self {
        UnitVector3(Vector3::new(T::zero(), T::one(), T::zero()))
    }

    pub fn z_axis() -> Self {
        UnitVector3(Vector3::new(T::zero(), T::zero(), T::one()))
    }

    /// Unit vector at `angle` radians in the x-y plane, measured from +x.
    pub fn in_plane(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        UnitVector3(Vector3::new(c, s, T::zero()))
    }

    /// Unit vector at `deg` degrees in the x-y plane.
    pub fn in_plane_deg(deg: T) -> Self {
        Self::in_plane(deg.to_radians())
    }

    /// Unit vector with polar angle `theta` (from +z) and azimuth `phi`.
    pub fn from_spherical(theta: T, phi: T) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        UnitVector3(Vector3::new(st * cp, st * sp, ct))
    }

    pub fn vector(self) -> Vector3<T> {
        self.0
    }

    pub fn dot(self, other: Self) -> T {
        self.0.dot(other.0)
    }

    /// Angle in `[0, pi]` between two unit vectors, with the dot product
    /// clamped against rounding past the ends of the arccos domain.
    pub fn angle_to(self, other: Self) -> T {
        self.dot(other).min(T::one()).max(-T::one()).acos()
    }

    pub fn rotated(self, axis: UnitVector3<T>, angle: T) -> Self {
        // Rodrigues rotation preserves the norm to a few ulps.
        UnitVector3::new(self.0.rotated(axis, angle)).expect("rotation preserves unit norm")
    }
}

impl<T: Real> Neg for UnitVector3<T> {
    type Output = Self;

    fn neg(self) -> Self {
        UnitVector3(-self.0)
    }
}

impl<T: Real> From<UnitVector3<T>> for Vector3<T> {
    fn from(u: UnitVector3<T>) -> Self {
        u.0
    }
}

impl<T: fmt::Display> fmt::Display for UnitVector3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A constant antisymmetric rank-2 tensor on Euclidean 3-space.
///
/// Storage is the three independent components `w_01`, `w_02`, `w_12`
/// (named `xy`, `xz`, `yz`); the full index picture `w_ab = -w_ba` is
/// recovered through [`Bivector3::component`]. Geometrically such a tensor
/// represents an oriented plane of rotation. Two bivectors are taken to
/// represent the same rotation state exactly when they are equal as
/// tensors; the scale ambiguity in that representation is pinned by the
/// unit self-inner-product normalization used in the projection domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bivector3<T> {
    /// Component `w_01`.
    pub xy: T,
    /// Component `w_02`.
    pub xz: T,
    /// Component `w_12`.
    pub yz: T,
}

impl<T: Real> Bivector3<T> {
    pub fn new(xy: T, xz: T, yz: T) -> Self {
        Bivector3 { xy, xz, yz }
    }

    pub fn zero() -> Self {
        Bivector3::new(T::zero(), T::zero(), T::zero())
    }

    /// Indexed component `w_ab`, including the sign from antisymmetry.
    /// Panics on an out-of-range index.
    pub fn component(self, a: usize, b: usize) -> T {
        assert!(a < 3 && b < 3, "bivector index ({a}, {b}) out of range");
        match (a, b) {
            (0, 1) => self.xy,
            (1, 0) => -self.xy,
            (0, 2) => self.xz,
            (2, 0) => -self.xz,
            (1, 2) => self.yz,
            (2, 1) => -self.yz,
            _ => T::zero(),
        }
    }

    pub fn scale(self, s: T) -> Self {
        Bivector3::new(self.xy * s, self.xz * s, self.yz * s)
    }

    /// Contraction with a vector over the first index:
    /// `(w, v) -> u_b = w_ab v^a`.
    pub fn contract_vector(self, v: Vector3<T>) -> Vector3<T> {
        Vector3::new(
            -self.xy * v.y - self.xz * v.z,
            self.xy * v.x - self.yz * v.z,
            self.xz * v.x + self.yz * v.y,
        )
    }

    pub fn is_zero(self) -> bool {
        self.xy == T::zero() && self.xz == T::zero() && self.yz == T::zero()
    }
}

impl<T: Real> Add for Bivector3<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Bivector3::new(self.xy + rhs.xy, self.xz + rhs.xz, self.yz + rhs.yz)
    }
}

impl<T: Real> Sub for Bivector3<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Bivector3::new(self.xy - rhs.xy, self.xz - rhs.xz, self.yz - rhs.yz)
    }
}

impl<T: Real> Neg for Bivector3<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Bivector3::new(-self.xy, -self.xz, -self.yz)
    }
}

impl<T: Real> Mul<T> for Bivector3<T> {
    type Output = Self;

    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

/// One of the two volume elements on oriented Euclidean 3-space.
///
/// `component(0, 1, 2)` is `+1` for the right-handed element and `-1` for the
/// left-handed one; all other components follow by total antisymmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LeviCivita {
    orientation: i8,
}

impl LeviCivita {
    pub const RIGHT_HANDED: LeviCivita = LeviCivita { orientation: 1 };
    pub const LEFT_HANDED: LeviCivita = LeviCivita { orientation: -1 };

    pub fn orientation(self) -> i8 {
        self.orientation
    }

    pub fn flipped(self) -> Self {
        LeviCivita {
            orientation: -self.orientation,
        }
    }

    /// The component `eps_abc`: the permutation sign of `(a, b, c)` times the
    /// orientation, and 0 when an index repeats. Panics on an index above 2.
    pub fn component(self, a: usize, b: usize, c: usize) -> i8 {
        assert!(a < 3 && b < 3 && c < 3, "epsilon index out of range");
        let perm = match (a, b, c) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
            _ => 0,
        };
        perm * self.orientation
    }

    fn sign<T: Real>(self) -> T {
        if self.orientation > 0 {
            T::one()
        } else {
            -T::one()
        }
    }
}

impl Default for LeviCivita {
    fn default() -> Self {
        LeviCivita::RIGHT_HANDED
    }
}

/// Antisymmetrized product of two vectors:
/// `w_ab = (1/2) (xi_a eta_b - xi_b eta_a)`.
///
/// The two orderings of the factors give opposite orientations of the plane
/// they span; parallel factors give the zero bivector. Note the explicit 1/2
/// in the antisymmetrization.
pub fn wedge<T: Real>(xi: Vector3<T>, eta: Vector3<T>) -> Bivector3<T> {
    let half = T::of(0.5);
    Bivector3::new(
        half * (xi.x * eta.y - xi.y * eta.x),
        half * (xi.x * eta.z - xi.z * eta.x),
        half * (xi.y * eta.z - xi.z * eta.y),
    )
}

/// Contraction of the volume element with a vector over its first index:
/// `T_bc = eps_abc v^a`.
pub fn eps_contract_vector<T: Real>(eps: LeviCivita, v: Vector3<T>) -> Bivector3<T> {
    // T_01 = eps_201 v^2, T_02 = eps_102 v^1, T_12 = eps_012 v^0.
    Bivector3::new(v.z, -v.y, v.x).scale(eps.sign())
}

/// Full inner product of two antisymmetric rank-2 tensors:
/// `X_ab Y^ab` summed over both indices independently.
pub fn bivector_inner<T: Real>(x: Bivector3<T>, y: Bivector3<T>) -> T {
    let two = T::of(2.0);
    two * (x.xy * y.xy + x.xz * y.xz + x.yz * y.yz)
}

/// Dual vector of a bivector: `d^a = X_bc eps^{abc}`.
///
/// Composed with [`eps_contract_vector`] this gives twice the identity, from
/// the contraction identity `eps_mab eps^nab = 2 delta_m^n`.
pub fn hodge_dual<T: Real>(x: Bivector3<T>, eps: LeviCivita) -> Vector3<T> {
    let two = T::of(2.0);
    Vector3::new(two * x.yz, -two * x.xz, two * x.xy).scale(eps.sign())
}

/// Commutator of two antisymmetric tensors:
/// `[x, y]_ab = x_an y^n_b - y_an x^n_b`.
///
/// The result is again antisymmetric; on the basis `L_i = eps_contract_vector(eps, e_i)`
/// the bracket closes as `[L_i, L_j] = -eps_ijk L_k`, which is the rotation
/// algebra so(3).
pub fn lie_bracket<T: Real>(x: Bivector3<T>, y: Bivector3<T>) -> Bivector3<T> {
    Bivector3::new(
        y.xz * x.yz - x.xz * y.yz,
        x.xy * y.yz - y.xy * x.yz,
        y.xy * x.xz - x.xy * y.xz,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::TrialRng;
    use crate::testutil::{random_bivector, random_unit, random_vector};

    const TOL: f64 = 1e-12;

    fn ex() -> Vector3<f64> {
        Vector3::new(1.0, 0.0, 0.0)
    }

    fn ey() -> Vector3<f64> {
        Vector3::new(0.0, 1.0, 0.0)
    }

    fn ez() -> Vector3<f64> {
        Vector3::new(0.0, 0.0, 1.0)
    }

    fn assert_biv_close(a: Bivector3<f64>, b: Bivector3<f64>, tol: f64) {
        assert!((a.xy - b.xy).abs() <= tol, "xy: {} vs {}", a.xy, b.xy);
        assert!((a.xz - b.xz).abs() <= tol, "xz: {} vs {}", a.xz, b.xz);
        assert!((a.yz - b.yz).abs() <= tol, "yz: {} vs {}", a.yz, b.yz);
    }

    #[test]
    fn wedge_of_basis_vectors() {
        let w = wedge(ex(), ey());
        assert_eq!(w.component(0, 1), 0.5);
        assert_eq!(w.component(1, 0), -0.5);
        assert_eq!(w.component(0, 2), 0.0);
        assert_eq!(w.component(2, 0), 0.0);
        assert_eq!(w.component(1, 2), 0.0);
        assert_eq!(w.component(0, 0), 0.0);
    }

    #[test]
    fn wedge_of_vector_with_itself_is_zero() {
        let mut rng = TrialRng::new(11);
        for _ in 0..20 {
            let v = random_vector(&mut rng);
            assert!(wedge(v, v).is_zero());
        }
    }

    #[test]
    fn wedge_swaps_to_negation() {
        let mut rng = TrialRng::new(12);
        for _ in 0..20 {
            let a = random_vector(&mut rng);
            let b = random_vector(&mut rng);
            assert_biv_close(wedge(b, a), -wedge(a, b), 0.0);
        }
    }

    #[test]
    fn eps_contraction_of_z_axis() {
        let t = eps_contract_vector(LeviCivita::RIGHT_HANDED, ez());
        assert_eq!(t.component(0, 1), 1.0);
        assert_eq!(t.component(1, 0), -1.0);
        assert_eq!(t.component(0, 2), 0.0);
        assert_eq!(t.component(1, 2), 0.0);
    }

    #[test]
    fn eps_contraction_of_zero_vector() {
        assert!(eps_contract_vector(LeviCivita::RIGHT_HANDED, Vector3::<f64>::zero()).is_zero());
    }

    #[test]
    fn orientation_flip_negates_contraction() {
        let mut rng = TrialRng::new(13);
        for _ in 0..20 {
            let v = random_vector(&mut rng);
            let right = eps_contract_vector(LeviCivita::RIGHT_HANDED, v);
            let left = eps_contract_vector(LeviCivita::LEFT_HANDED, v);
            assert_biv_close(left, -right, 0.0);
        }
    }

    #[test]
    fn inner_product_examples() {
        let w = wedge(ex(), ey());
        assert!((bivector_inner(w, w) - 0.5).abs() <= TOL);

        let mut rng = TrialRng::new(14);
        let x = random_bivector(&mut rng);
        assert_eq!(bivector_inner(x, Bivector3::zero()), 0.0);
    }

    #[test]
    fn eps_contraction_identity_two_delta() {
        // eps_mab eps^nab = 2 delta_m^n, checked through the inner product.
        let mut rng = TrialRng::new(15);
        for _ in 0..100 {
            let u = random_vector(&mut rng);
            let v = random_vector(&mut rng);
            let lhs = bivector_inner(
                eps_contract_vector(LeviCivita::RIGHT_HANDED, u),
                eps_contract_vector(LeviCivita::RIGHT_HANDED, v),
            );
            assert!((lhs - 2.0 * u.dot(v)).abs() <= TOL);
        }
    }

    #[test]
    fn unit_eps_contraction_normalizes_to_one() {
        let mut rng = TrialRng::new(16);
        for _ in 0..100 {
            let u = random_unit(&mut rng);
            let t = eps_contract_vector(LeviCivita::RIGHT_HANDED, u.vector())
                .scale(std::f64::consts::FRAC_1_SQRT_2);
            assert!((bivector_inner(t, t) - 1.0).abs() <= TOL);
        }
    }

    #[test]
    fn hodge_dual_examples() {
        let d = hodge_dual(wedge(ex(), ey()), LeviCivita::RIGHT_HANDED);
        assert_eq!(d, ez());

        assert_eq!(
            hodge_dual(Bivector3::<f64>::zero(), LeviCivita::RIGHT_HANDED),
            Vector3::zero()
        );

        let mut rng = TrialRng::new(17);
        for _ in 0..100 {
            let alpha = random_unit(&mut rng).vector();
            let x = eps_contract_vector(LeviCivita::RIGHT_HANDED, alpha)
                .scale(std::f64::consts::FRAC_1_SQRT_2);
            let d = hodge_dual(x, LeviCivita::RIGHT_HANDED);
            let expected = alpha.scale(std::f64::consts::SQRT_2);
            assert!((d - expected).norm() <= TOL);
        }
    }

    #[test]
    fn hodge_dual_inverts_eps_contraction_up_to_two() {
        let mut rng = TrialRng::new(18);
        for &eps in &[LeviCivita::RIGHT_HANDED, LeviCivita::LEFT_HANDED] {
            for _ in 0..100 {
                let v = random_vector(&mut rng);
                let round = hodge_dual(eps_contract_vector(eps, v), eps);
                assert!((round - v.scale(2.0)).norm() <= TOL);
            }
        }
    }

    #[test]
    fn lie_bracket_is_antisymmetric() {
        let mut rng = TrialRng::new(19);
        for _ in 0..100 {
            let x = random_bivector(&mut rng);
            let y = random_bivector(&mut rng);
            assert!(lie_bracket(x, x).is_zero());
            assert_biv_close(lie_bracket(y, x), -lie_bracket(x, y), 0.0);
        }
    }

    #[test]
    fn lie_bracket_closes_on_rotation_basis() {
        // [L_i, L_j] = -eps_ijk L_k for the basis L_i = eps . e_i.
        let eps = LeviCivita::RIGHT_HANDED;
        let basis = [
            eps_contract_vector(eps, ex()),
            eps_contract_vector(eps, ey()),
            eps_contract_vector(eps, ez()),
        ];
        for i in 0..3 {
            for j in 0..3 {
                let mut expected = Bivector3::zero();
                for (k, l) in basis.iter().enumerate() {
                    let coeff = -f64::from(eps.component(i, j, k));
                    expected = expected + l.scale(coeff);
                }
                assert_biv_close(lie_bracket(basis[i], basis[j]), expected, TOL);
            }
        }
    }

    #[test]
    fn lie_bracket_satisfies_jacobi_identity() {
        let mut rng = TrialRng::new(20);
        for _ in 0..100 {
            let x = random_bivector(&mut rng);
            let y = random_bivector(&mut rng);
            let z = random_bivector(&mut rng);
            let total = lie_bracket(x, lie_bracket(y, z))
                + lie_bracket(y, lie_bracket(z, x))
                + lie_bracket(z, lie_bracket(x, y));
            assert_biv_close(total, Bivector3::zero(), TOL);
        }
    }

    #[test]
    fn operations_are_bilinear() {
        let mut rng = TrialRng::new(21);
        for _ in 0..100 {
            let a = 2.0 * rng.next_f64() - 1.0;
            let b = 2.0 * rng.next_f64() - 1.0;
            let u = random_vector(&mut rng);
            let v = random_vector(&mut rng);
            let w = random_vector(&mut rng);
            let combo = wedge(u.scale(a) + v.scale(b), w);
            let split = wedge(u, w).scale(a) + wedge(v, w).scale(b);
            assert_biv_close(combo, split, TOL);

            let x = random_bivector(&mut rng);
            let y = random_bivector(&mut rng);
            let z = random_bivector(&mut rng);
            let lhs = bivector_inner(x.scale(a) + y.scale(b), z);
            let rhs = a * bivector_inner(x, z) + b * bivector_inner(y, z);
            assert!((lhs - rhs).abs() <= TOL);

            let lhs = lie_bracket(x.scale(a) + y.scale(b), z);
            let rhs = lie_bracket(x, z).scale(a) + lie_bracket(y, z).scale(b);
            assert_biv_close(lhs, rhs, TOL);
        }
    }

    #[test]
    fn unit_vector_construction_checks_norm() {
        assert!(UnitVector3::new(Vector3::new(1.0, 0.0, 0.0)).is_ok());
        assert!(matches!(
            UnitVector3::new(Vector3::new(1.0, 1.0, 0.0)),
            Err(Error::NonUnitVector { .. })
        ));
        assert!(UnitVector3::new(Vector3::new(f64::NAN, 0.0, 0.0)).is_err());
        assert!(matches!(
            UnitVector3::<f64>::normalized(Vector3::zero()),
            Err(Error::ZeroVector)
        ));

        let u = UnitVector3::normalized(Vector3::new(3.0f64, 4.0, 0.0)).unwrap();
        assert!((u.vector().norm() - 1.0).abs() <= TOL);
    }

    #[test]
    fn plane_angle_constructors() {
        let u = UnitVector3::in_plane_deg(90.0);
        assert!((u.vector() - ey()).norm() <= TOL);
        let v = UnitVector3::from_spherical(std::f64::consts::FRAC_PI_2, 0.0);
        assert!((v.vector() - ex()).norm() <= TOL);
    }

    #[test]
    fn rotation_preserves_angles() {
        let mut rng = TrialRng::new(22);
        for _ in 0..50 {
            let a = random_unit(&mut rng);
            let b = random_unit(&mut rng);
            let axis = random_unit(&mut rng);
            let angle = std::f64::consts::TAU * rng.next_f64();
            let ra = a.rotated(axis, angle);
            let rb = b.rotated(axis, angle);
            assert!((ra.dot(rb) - a.dot(b)).abs() <= TOL);
        }
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn bivector_component_rejects_bad_index() {
        let _ = Bivector3::new(1.0, 2.0, 3.0).component(3, 0);
    }

    #[test]
    fn levi_civita_components() {
        let eps = LeviCivita::RIGHT_HANDED;
        assert_eq!(eps.component(0, 1, 2), 1);
        assert_eq!(eps.component(1, 0, 2), -1);
        assert_eq!(eps.component(0, 0, 2), 0);
        assert_eq!(eps.flipped().component(0, 1, 2), -1);
        assert_eq!(LeviCivita::default(), LeviCivita::RIGHT_HANDED);
    }

    #[test]
    fn generic_over_f32() {
        let v = Vector3::new(0.6f32, 0.8, 0.0);
        let u = UnitVector3::new(v).unwrap();
        let t = eps_contract_vector(LeviCivita::RIGHT_HANDED, u.vector());
        assert!((bivector_inner(t, t) - 2.0).abs() <= 1e-5);
    }
}
