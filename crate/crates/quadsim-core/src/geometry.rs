//! Rotation matrices, rigid-body transforms, and Euler-angle extraction.
//!
//! Column-vector convention throughout: a rotation acts as `v' = R * v`.
//! [`world_from_body`] is the Z-Y-X attitude matrix taking body-frame
//! vectors to the world frame; its transpose goes the other way.

use core::f64::consts::PI;
use core::ops::{Add, Mul, Neg, Sub};

use crate::real;
use crate::Error;

/// Threshold on `1 - |R31|` below which Euler extraction takes the
/// gimbal-locked branch.
pub const GIMBAL_LOCK_EPS: f64 = 1e-9;

/// Orthonormality tolerance for matrices entering [`euler_from_rotation`].
/// Inputs worse than this are rejected, not repaired.
pub const ROTATION_INPUT_TOL: f64 = 1e-6;

/// A 3-component column vector. Units depend on context.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(self, rhs: Self) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    #[inline]
    pub fn cross(self, rhs: Self) -> Self {
        Self::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        real::sqrt(self.dot(self))
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        real::abs(self.x).max(real::abs(self.y)).max(real::abs(self.z))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Row-major 3x3 matrix meant to hold a rotation (orthonormal, det +1).
///
/// Construction does not validate; call [`RotationMatrix::validate`] where
/// the invariants matter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix {
    m: [[f64; 3]; 3],
}

impl RotationMatrix {
    pub const IDENTITY: Self = Self {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    #[inline]
    pub const fn from_rows(m: [[f64; 3]; 3]) -> Self {
        Self { m }
    }

    /// Entry at `row`, `col`, both 0-indexed.
    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.m[row][col]
    }

    pub fn rows(&self) -> &[[f64; 3]; 3] {
        &self.m
    }

    pub fn col(&self, col: usize) -> Vec3 {
        Vec3::new(self.m[0][col], self.m[1][col], self.m[2][col])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.m;
        Self::from_rows([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    /// Applies the rotation to a column vector: `R * v`.
    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest violation of R·Rᵀ = I (per entry) and det = 1.
    pub fn orthonormality_residual(&self) -> f64 {
        let rt = self.transpose();
        let prod = *self * rt;
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(real::abs(prod.m[i][j] - target));
            }
        }
        worst.max(real::abs(self.det() - 1.0))
    }

    pub fn validate(&self, tol: f64) -> Result<(), Error> {
        let residual = self.orthonormality_residual();
        if !residual.is_finite() || residual > tol {
            return Err(Error::InvalidRotation { residual });
        }
        Ok(())
    }
}

impl Mul for RotationMatrix {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.m[i][0] * rhs.m[0][j]
                    + self.m[i][1] * rhs.m[1][j]
                    + self.m[i][2] * rhs.m[2][j];
            }
        }
        Self::from_rows(out)
    }
}

impl Mul<Vec3> for RotationMatrix {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        self.apply(v)
    }
}

/// Rotation about the X axis (right-hand rule, column convention).
pub fn rot_x(angle: f64) -> RotationMatrix {
    let (s, c) = real::sin_cos(angle);
    RotationMatrix::from_rows([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
}

/// Rotation about the Y axis.
pub fn rot_y(angle: f64) -> RotationMatrix {
    let (s, c) = real::sin_cos(angle);
    RotationMatrix::from_rows([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
}

/// Rotation about the Z axis.
pub fn rot_z(angle: f64) -> RotationMatrix {
    let (s, c) = real::sin_cos(angle);
    RotationMatrix::from_rows([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
}

/// Z-Y-X (roll-pitch-yaw) Euler angles, radians.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerAngles {
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
}

impl EulerAngles {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(roll: f64, pitch: f64, yaw: f64) -> Self {
        Self { roll, pitch, yaw }
    }

    pub fn is_finite(self) -> bool {
        self.roll.is_finite() && self.pitch.is_finite() && self.yaw.is_finite()
    }
}

/// Attitude matrix taking body-frame column vectors to the world frame.
///
/// Equals `rot_z(yaw) * rot_y(pitch) * rot_x(roll)`; entries are written in
/// closed form so that e.g. entry (3,1) is exactly `-sin(pitch)`.
pub fn world_from_body(angles: &EulerAngles) -> RotationMatrix {
    let (sr, cr) = real::sin_cos(angles.roll);
    let (sp, cp) = real::sin_cos(angles.pitch);
    let (sy, cy) = real::sin_cos(angles.yaw);
    RotationMatrix::from_rows([
        [cp * cy, cy * sp * sr - cr * sy, sr * sy + cr * cy * sp],
        [cp * sy, cr * cy + sp * sr * sy, cr * sp * sy - cy * sr],
        [-sp, cp * sr, cp * cr],
    ])
}

/// Attitude matrix taking world-frame column vectors to the body frame;
/// the transpose of [`world_from_body`].
pub fn body_from_world(angles: &EulerAngles) -> RotationMatrix {
    world_from_body(angles).transpose()
}

/// A rotation followed by a translation: `p' = R * p + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    pub rotation: RotationMatrix,
    pub translation: Vec3,
}

impl RigidTransform {
    pub const IDENTITY: Self = Self {
        rotation: RotationMatrix::IDENTITY,
        translation: Vec3::ZERO,
    };

    pub const fn new(rotation: RotationMatrix, translation: Vec3) -> Self {
        Self { rotation, translation }
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        self.rotation.apply(p) + self.translation
    }
}

/// Transforms point `p`: `t.rotation * p + t.translation`.
pub fn apply_transform(t: &RigidTransform, p: Vec3) -> Vec3 {
    t.apply(p)
}

// Probe set for the length- and cross-product-preservation checks.
const PROBE_PAIRS: [(Vec3, Vec3); 4] = [
    (Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0)),
    (Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1.0)),
    (Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 0.0)),
    (Vec3::new(0.3, -0.7, 0.2), Vec3::new(1.1, 0.4, -0.5)),
];

/// True iff `t` is a rigid transformation within `tol`:
/// orthonormal columns, preserved lengths, and preserved cross products.
pub fn is_rigid(t: &RigidTransform, tol: f64) -> bool {
    let r = &t.rotation;

    // Columns mutually orthogonal and unit length.
    for i in 0..3 {
        for j in i..3 {
            let target = if i == j { 1.0 } else { 0.0 };
            if real::abs(r.col(i).dot(r.col(j)) - target) > tol {
                return false;
            }
        }
    }

    // Distances between transformed probe points match the originals.
    for (p, q) in PROBE_PAIRS {
        let before = (p - q).norm();
        let after = (t.apply(p) - t.apply(q)).norm();
        if real::abs(after - before) > tol {
            return false;
        }
    }

    // Cross products commute with the vector map: (Rv) x (Rw) = R(v x w).
    for (v, w) in PROBE_PAIRS {
        let lhs = r.apply(v).cross(r.apply(w));
        let rhs = r.apply(v.cross(w));
        if (lhs - rhs).max_abs() > tol {
            return false;
        }
    }

    true
}

/// Wraps an angle into the canonical range `(-π, π]`.
pub fn normalize_angle(angle: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut x = angle % two_pi;
    if x <= -PI {
        x += two_pi;
    } else if x > PI {
        x -= two_pi;
    }
    x
}

/// The Euler-angle solutions extracted from a rotation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerSolutions {
    pub primary: EulerAngles,
    /// The second valid triplet; absent at gimbal lock.
    pub secondary: Option<EulerAngles>,
    /// Set when `|R31|` is within [`GIMBAL_LOCK_EPS`] of 1: pitch is at
    /// ±π/2 and only a roll/yaw combination is observable.
    pub gimbal_locked: bool,
}

/// Extracts Z-Y-X Euler angles from a rotation matrix.
///
/// Away from gimbal lock this returns both valid triplets: pitch from
/// `-asin(R31)` and its supplement, with roll and yaw from the
/// cos(pitch)-normalized atan2 forms. At gimbal lock (`|R31|` within
/// [`GIMBAL_LOCK_EPS`] of 1) yaw is set to 0 and roll is solved from the
/// collapsed matrix entries; only the primary solution is returned.
///
/// Inputs violating the rotation-matrix invariants beyond
/// [`ROTATION_INPUT_TOL`] are rejected.
pub fn euler_from_rotation(r: &RotationMatrix) -> Result<EulerSolutions, Error> {
    r.validate(ROTATION_INPUT_TOL)?;

    let r31 = r.entry(2, 0);
    if real::abs(r31) >= 1.0 - GIMBAL_LOCK_EPS {
        let pitch = -real::asin(r31.clamp(-1.0, 1.0));
        // With cos(pitch) = 0 the matrix collapses to functions of
        // roll - yaw (pitch = +π/2) or roll + yaw (pitch = -π/2); with
        // yaw fixed at 0, roll comes from the first-row entries.
        let roll = if r31 < 0.0 {
            real::atan2(r.entry(0, 1), r.entry(0, 2))
        } else {
            real::atan2(-r.entry(0, 1), -r.entry(0, 2))
        };
        return Ok(EulerSolutions {
            primary: EulerAngles::new(normalize_angle(roll), pitch, 0.0),
            secondary: None,
            gimbal_locked: true,
        });
    }

    let pitch1 = -real::asin(r31);
    let pitch2 = normalize_angle(PI - pitch1);
    let solve = |pitch: f64| {
        let cp = real::cos(pitch);
        let roll = real::atan2(r.entry(2, 1) / cp, r.entry(2, 2) / cp);
        let yaw = real::atan2(r.entry(1, 0) / cp, r.entry(0, 0) / cp);
        EulerAngles::new(normalize_angle(roll), pitch, normalize_angle(yaw))
    };
    Ok(EulerSolutions {
        primary: solve(pitch1),
        secondary: Some(solve(pitch2)),
        gimbal_locked: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::FRAC_PI_2;
    use proptest::prelude::*;

    fn max_entry_diff(a: &RotationMatrix, b: &RotationMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((a.entry(i, j) - b.entry(i, j)).abs());
            }
        }
        worst
    }

    #[test]
    fn rot_z_zero_is_identity() {
        assert_eq!(max_entry_diff(&rot_z(0.0), &RotationMatrix::IDENTITY), 0.0);
    }

    #[test]
    fn rot_x_inverse_symmetry() {
        let prod = rot_x(0.73) * rot_x(-0.73);
        assert!(max_entry_diff(&prod, &RotationMatrix::IDENTITY) < 1e-12);
    }

    #[test]
    fn rot_z_quarter_turn_maps_x_to_y() {
        let v = rot_z(FRAC_PI_2).apply(Vec3::new(1.0, 0.0, 0.0));
        assert_abs_diff_eq!(v.x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.y, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.z, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn world_from_body_zero_angles_is_identity() {
        let r = world_from_body(&EulerAngles::ZERO);
        assert_eq!(max_entry_diff(&r, &RotationMatrix::IDENTITY), 0.0);
    }

    #[test]
    fn world_from_body_entry_31_is_minus_sin_pitch() {
        let r = world_from_body(&EulerAngles::new(0.1, 0.2, 0.3));
        assert_eq!(r.entry(2, 0), -(0.2f64).sin());
    }

    #[test]
    fn body_from_world_is_transpose() {
        let a = EulerAngles::new(0.1, 0.2, 0.3);
        assert_eq!(body_from_world(&a).entry(0, 2), -(0.2f64).sin());
        let prod = body_from_world(&a) * world_from_body(&a);
        assert!(max_entry_diff(&prod, &RotationMatrix::IDENTITY) < 1e-12);
    }

    #[test]
    fn apply_transform_identity_and_translation() {
        let p = Vec3::new(1.0, 2.0, 3.0);
        assert_eq!(apply_transform(&RigidTransform::IDENTITY, p), p);

        let t = RigidTransform::new(RotationMatrix::IDENTITY, Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(apply_transform(&t, Vec3::ZERO), Vec3::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn apply_transform_rotation_plus_translation() {
        let t = RigidTransform::new(rot_z(FRAC_PI_2), Vec3::new(1.0, 1.0, 0.0));
        let p = apply_transform(&t, Vec3::new(1.0, 0.0, 0.0));
        assert_abs_diff_eq!(p.x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.y, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.z, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn is_rigid_accepts_identity() {
        assert!(is_rigid(&RigidTransform::IDENTITY, 1e-9));
    }

    #[test]
    fn is_rigid_rejects_scaled_rotation() {
        let mut m = *rot_z(0.4).rows();
        for row in &mut m {
            for v in row.iter_mut() {
                *v *= 2.0;
            }
        }
        let t = RigidTransform::new(RotationMatrix::from_rows(m), Vec3::ZERO);
        assert!(!is_rigid(&t, 1e-6));
    }

    #[test]
    fn is_rigid_rejects_reflection() {
        // Negate one column: still orthonormal, but det = -1 flips cross products.
        let mut m = *rot_y(1.1).rows();
        for row in &mut m {
            row[2] = -row[2];
        }
        let t = RigidTransform::new(RotationMatrix::from_rows(m), Vec3::ZERO);
        assert!(!is_rigid(&t, 1e-6));
    }

    #[test]
    fn extraction_of_identity_gives_both_solutions() {
        let sol = euler_from_rotation(&RotationMatrix::IDENTITY).unwrap();
        assert!(!sol.gimbal_locked);
        assert_abs_diff_eq!(sol.primary.roll, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sol.primary.pitch, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sol.primary.yaw, 0.0, epsilon = 1e-15);
        let sec = sol.secondary.unwrap();
        assert_abs_diff_eq!(sec.roll, PI, epsilon = 1e-15);
        assert_abs_diff_eq!(sec.pitch, PI, epsilon = 1e-15);
        assert_abs_diff_eq!(sec.yaw, PI, epsilon = 1e-15);
        // Both reconstruct the identity.
        for s in [sol.primary, sec] {
            assert!(max_entry_diff(&world_from_body(&s), &RotationMatrix::IDENTITY) < 1e-9);
        }
    }

    #[test]
    fn extraction_round_trip_mid_range() {
        let a = EulerAngles::new(0.1, 0.2, 0.3);
        let sol = euler_from_rotation(&world_from_body(&a)).unwrap();
        assert!(!sol.gimbal_locked);
        assert_abs_diff_eq!(sol.primary.roll, 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.primary.pitch, 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.primary.yaw, 0.3, epsilon = 1e-12);
    }

    #[test]
    fn extraction_at_gimbal_lock() {
        let r = world_from_body(&EulerAngles::new(0.3, FRAC_PI_2, 0.7));
        let sol = euler_from_rotation(&r).unwrap();
        assert!(sol.gimbal_locked);
        assert!(sol.secondary.is_none());
        assert_eq!(sol.primary.yaw, 0.0);
        assert!(max_entry_diff(&world_from_body(&sol.primary), &r) < 1e-9);

        let r = world_from_body(&EulerAngles::new(-0.4, -FRAC_PI_2, 1.2));
        let sol = euler_from_rotation(&r).unwrap();
        assert!(sol.gimbal_locked);
        assert_eq!(sol.primary.yaw, 0.0);
        assert!(max_entry_diff(&world_from_body(&sol.primary), &r) < 1e-9);
    }

    #[test]
    fn gimbal_lock_pitch_sign_follows_r31() {
        // R31 = +1 (pitch -π/2) and R31 = -1 (pitch +π/2).
        let minus = euler_from_rotation(&world_from_body(&EulerAngles::new(0.0, -FRAC_PI_2, 0.0)))
            .unwrap();
        assert_abs_diff_eq!(minus.primary.pitch, -FRAC_PI_2, epsilon = 1e-15);
        let plus = euler_from_rotation(&world_from_body(&EulerAngles::new(0.0, FRAC_PI_2, 0.0)))
            .unwrap();
        assert_abs_diff_eq!(plus.primary.pitch, FRAC_PI_2, epsilon = 1e-15);
    }

    #[test]
    fn extraction_rejects_invalid_matrix() {
        let mut m = *RotationMatrix::IDENTITY.rows();
        m[0][0] = 1.1;
        let err = euler_from_rotation(&RotationMatrix::from_rows(m)).unwrap_err();
        assert!(matches!(err, Error::InvalidRotation { .. }));
    }

    #[test]
    fn normalize_angle_canonical_range() {
        assert_eq!(normalize_angle(PI), PI);
        assert_eq!(normalize_angle(-PI), PI);
        assert_eq!(normalize_angle(0.0), 0.0);
        assert_abs_diff_eq!(normalize_angle(3.0 * PI), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(normalize_angle(-2.5 * PI), -0.5 * PI, epsilon = 1e-12);
    }

    fn arb_angles() -> impl Strategy<Value = EulerAngles> {
        (
            -PI + 1e-6..PI - 1e-6,
            -FRAC_PI_2 + 1e-3..FRAC_PI_2 - 1e-3,
            -PI + 1e-6..PI - 1e-6,
        )
            .prop_map(|(r, p, y)| EulerAngles::new(r, p, y))
    }

    proptest! {
        #[test]
        fn single_axis_matrices_are_orthonormal(beta in -10.0..10.0f64, axis in 0usize..3) {
            let r = match axis {
                0 => rot_x(beta),
                1 => rot_y(beta),
                _ => rot_z(beta),
            };
            prop_assert!(r.orthonormality_residual() < 1e-12);
        }

        #[test]
        fn world_from_body_matches_axis_product(a in arb_angles()) {
            let closed = world_from_body(&a);
            let product = rot_z(a.yaw) * rot_y(a.pitch) * rot_x(a.roll);
            prop_assert!(max_entry_diff(&closed, &product) < 1e-14);
        }

        #[test]
        fn extraction_round_trip(a in arb_angles()) {
            let r = world_from_body(&a);
            let sol = euler_from_rotation(&r).unwrap();
            prop_assert!(!sol.gimbal_locked);
            prop_assert!((sol.primary.roll - a.roll).abs() < 1e-9);
            prop_assert!((sol.primary.pitch - a.pitch).abs() < 1e-9);
            prop_assert!((sol.primary.yaw - a.yaw).abs() < 1e-9);
            for s in [sol.primary, sol.secondary.unwrap()] {
                prop_assert!(max_entry_diff(&world_from_body(&s), &r) < 1e-9);
            }
        }

        #[test]
        fn rotations_are_rigid_and_perturbations_are_not(a in arb_angles(), col in 0usize..3) {
            let r = world_from_body(&a);
            let t = RigidTransform::new(r, Vec3::new(0.4, -1.0, 2.0));
            prop_assert!(is_rigid(&t, 1e-6));

            let mut scaled = *r.rows();
            for row in &mut scaled {
                row[col] *= 1.001;
            }
            prop_assert!(!is_rigid(
                &RigidTransform::new(RotationMatrix::from_rows(scaled), Vec3::ZERO),
                1e-6
            ));

            let mut reflected = *r.rows();
            for row in &mut reflected {
                row[col] = -row[col];
            }
            prop_assert!(!is_rigid(
                &RigidTransform::new(RotationMatrix::from_rows(reflected), Vec3::ZERO),
                1e-6
            ));
        }
    }
}
