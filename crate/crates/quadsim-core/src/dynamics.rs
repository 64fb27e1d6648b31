//! Newton-Euler equations of motion and the assembled 12-state derivative.
//!
//! World frame is NED: z points down so gravity is +g along world Z while
//! the rotors' thrust acts along -Z of the body frame. State slots 10-12
//! hold body rates (p, q, r); their derivatives come from Euler's rotational
//! equation, while slots 4-6 (attitude) integrate the mapped Euler rates.

use crate::geometry::{world_from_body, EulerAngles, Vec3};
use crate::kinematics::{
    euler_rates_from_body_rates, BodyRates, EulerRates, DEFAULT_SINGULARITY_TOL,
};
use crate::real;
use crate::rotor::{wrench_from_input, ControlInput, VehicleParams};
use crate::Error;

/// Diagonal body inertia tensor, kg·m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertiaTensor {
    pub ixx: f64,
    pub iyy: f64,
    pub izz: f64,
}

impl InertiaTensor {
    pub const fn new(ixx: f64, iyy: f64, izz: f64) -> Self {
        Self { ixx, iyy, izz }
    }

    /// Strictly positive moments satisfying the triangle inequalities.
    pub fn validate(&self) -> Result<(), Error> {
        for (value, reason) in [
            (self.ixx, "ixx must be > 0"),
            (self.iyy, "iyy must be > 0"),
            (self.izz, "izz must be > 0"),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParams { reason });
            }
        }
        if self.ixx + self.iyy < self.izz
            || self.iyy + self.izz < self.ixx
            || self.izz + self.ixx < self.iyy
        {
            return Err(Error::InvalidParams {
                reason: "inertia moments must satisfy the triangle inequalities",
            });
        }
        Ok(())
    }

    /// I·ω for diagonal I.
    pub fn apply(&self, rates: &BodyRates) -> Vec3 {
        Vec3::new(self.ixx * rates.p, self.iyy * rates.q, self.izz * rates.r)
    }
}

impl From<&VehicleParams> for InertiaTensor {
    fn from(p: &VehicleParams) -> Self {
        Self::new(p.ixx, p.iyy, p.izz)
    }
}

/// Full vehicle state: world-frame position and velocity (NED, z down),
/// attitude, and body-frame angular rates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State12 {
    /// Position in the world frame, m.
    pub position: Vec3,
    /// Attitude as Z-Y-X Euler angles, rad.
    pub attitude: EulerAngles,
    /// Velocity in the world frame, m/s.
    pub velocity: Vec3,
    /// Angular velocity in the body frame, rad/s.
    pub rates: BodyRates,
}

impl State12 {
    pub const ZERO: Self = Self {
        position: Vec3::ZERO,
        attitude: EulerAngles::ZERO,
        velocity: Vec3::ZERO,
        rates: BodyRates::ZERO,
    };

    /// Slot order: x, y, z, phi, theta, psi, xd, yd, zd, p, q, r.
    pub fn to_array(&self) -> [f64; 12] {
        [
            self.position.x,
            self.position.y,
            self.position.z,
            self.attitude.roll,
            self.attitude.pitch,
            self.attitude.yaw,
            self.velocity.x,
            self.velocity.y,
            self.velocity.z,
            self.rates.p,
            self.rates.q,
            self.rates.r,
        ]
    }

    pub fn from_array(s: [f64; 12]) -> Self {
        Self {
            position: Vec3::new(s[0], s[1], s[2]),
            attitude: EulerAngles::new(s[3], s[4], s[5]),
            velocity: Vec3::new(s[6], s[7], s[8]),
            rates: BodyRates::new(s[9], s[10], s[11]),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.position.is_finite()
            && self.attitude.is_finite()
            && self.velocity.is_finite()
            && self.rates.is_finite()
    }
}

/// Slot-for-slot time derivative of [`State12`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDeriv {
    /// d/dt position = velocity, m/s.
    pub velocity: Vec3,
    /// d/dt attitude, rad/s.
    pub attitude_rates: EulerRates,
    /// d/dt velocity, m/s².
    pub acceleration: Vec3,
    /// d/dt body rates, rad/s².
    pub angular_acceleration: Vec3,
}

impl StateDeriv {
    pub fn to_array(&self) -> [f64; 12] {
        [
            self.velocity.x,
            self.velocity.y,
            self.velocity.z,
            self.attitude_rates.roll_rate,
            self.attitude_rates.pitch_rate,
            self.attitude_rates.yaw_rate,
            self.acceleration.x,
            self.acceleration.y,
            self.acceleration.z,
            self.angular_acceleration.x,
            self.angular_acceleration.y,
            self.angular_acceleration.z,
        ]
    }
}

/// World-frame acceleration from gravity plus body-Z thrust at the given
/// attitude:
///
/// xdd = -(T/m)(cos φ sin θ cos ψ + sin φ sin ψ)
/// ydd = -(T/m)(cos φ sin θ sin ψ - sin φ cos ψ)
/// zdd = g - (T/m)(cos φ cos θ)
///
/// Identical (within rounding) to g·ẑ + R_wb·(0, 0, -T)/m.
pub fn translational_accel(angles: &EulerAngles, thrust: f64, params: &VehicleParams) -> Vec3 {
    let (sr, cr) = real::sin_cos(angles.roll);
    let (sp, cp) = real::sin_cos(angles.pitch);
    let (sy, cy) = real::sin_cos(angles.yaw);
    let a = thrust / params.mass;
    Vec3::new(
        -a * (cr * sp * cy + sr * sy),
        -a * (cr * sp * sy - sr * cy),
        params.gravity - a * (cr * cp),
    )
}

/// The gyroscopic coupling ω × (I·ω), expanded for diagonal inertia:
/// ((Izz-Iyy)qr, (Ixx-Izz)rp, (Iyy-Ixx)pq).
pub fn gyroscopic_term(rates: &BodyRates, inertia: &InertiaTensor) -> Vec3 {
    let BodyRates { p, q, r } = *rates;
    Vec3::new(
        (inertia.izz - inertia.iyy) * q * r,
        (inertia.ixx - inertia.izz) * r * p,
        (inertia.iyy - inertia.ixx) * p * q,
    )
}

/// Body angular acceleration from Euler's rotational equation:
/// ω̇ = I⁻¹(τ - ω × (I·ω)).
pub fn angular_accel(rates: &BodyRates, torque: Vec3, inertia: &InertiaTensor) -> Vec3 {
    let BodyRates { p, q, r } = *rates;
    Vec3::new(
        (torque.x + (inertia.iyy - inertia.izz) * q * r) / inertia.ixx,
        (torque.y + (inertia.izz - inertia.ixx) * r * p) / inertia.iyy,
        (torque.z + (inertia.ixx - inertia.iyy) * p * q) / inertia.izz,
    )
}

/// The full nonlinear state derivative f(X, U).
///
/// Propagation requires the pitch to stay strictly inside the principal
/// chart: `cos(pitch)` (signed) must be at least the default singularity
/// tolerance. A signed check cannot be stepped across — once a trajectory
/// leaves `|pitch| < π/2`, every later state fails it, so a fixed-step
/// integrator detects the crossing no matter where the step lands.
/// Fails with [`Error::NonFinite`] for a non-finite state.
pub fn state_derivative(
    state: &State12,
    input: &ControlInput,
    params: &VehicleParams,
) -> Result<StateDeriv, Error> {
    if !state.is_finite() {
        return Err(Error::NonFinite { what: "state" });
    }
    let cos_pitch = real::cos(state.attitude.pitch);
    if cos_pitch < DEFAULT_SINGULARITY_TOL {
        return Err(Error::GimbalSingularity { cos_pitch, tol: DEFAULT_SINGULARITY_TOL });
    }
    let attitude_rates =
        euler_rates_from_body_rates(&state.attitude, &state.rates, DEFAULT_SINGULARITY_TOL)?;
    let wrench = wrench_from_input(input, params);
    let inertia = InertiaTensor::from(params);
    Ok(StateDeriv {
        velocity: state.velocity,
        attitude_rates,
        acceleration: translational_accel(&state.attitude, wrench.thrust, params),
        angular_acceleration: angular_accel(&state.rates, wrench.torque, &inertia),
    })
}

/// Test-oracle form of [`translational_accel`]: gravity plus the rotated
/// body-frame thrust vector, computed through the full matrix product.
pub fn translational_accel_frame_form(
    angles: &EulerAngles,
    thrust: f64,
    params: &VehicleParams,
) -> Vec3 {
    let thrust_world = world_from_body(angles).apply(Vec3::new(0.0, 0.0, -thrust));
    Vec3::new(0.0, 0.0, params.gravity) + thrust_world * (1.0 / params.mass)
}
