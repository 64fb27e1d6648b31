//! Per-rotor thrust and aerodynamic moment, and the mixing between squared
//! rotor speeds and the body wrench.
//!
//! Rotor 1 sits on +X, rotor 2 on +Y, rotor 3 on -X, rotor 4 on -Y; rotors
//! 1 and 3 spin together, 2 and 4 opposite. Each rotor produces thrust
//! `ka * w_i^2` along -Z body (up) and a reaction moment `km * w_i^2` about
//! Z. Total thrust is stored as a nonnegative magnitude; the -Z direction is
//! applied once, in the dynamics.

use crate::geometry::Vec3;
use crate::Error;

/// Individual rotor angular speeds, rad/s, each nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RotorSpeeds {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
}

impl RotorSpeeds {
    pub const fn new(w1: f64, w2: f64, w3: f64, w4: f64) -> Self {
        Self { w1, w2, w3, w4 }
    }

    /// Squares each speed, producing the model's input vector.
    pub fn squared(&self) -> ControlInput {
        ControlInput::new(
            self.w1 * self.w1,
            self.w2 * self.w2,
            self.w3 * self.w3,
            self.w4 * self.w4,
        )
    }
}

/// Squared rotor speeds (u1..u4), rad²/s² — the input vector of the model.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ControlInput {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub u4: f64,
}

impl ControlInput {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(u1: f64, u2: f64, u3: f64, u4: f64) -> Self {
        Self { u1, u2, u3, u4 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.u1, self.u2, self.u3, self.u4]
    }

    pub fn from_array(u: [f64; 4]) -> Self {
        Self::new(u[0], u[1], u[2], u[3])
    }

    /// All components finite and nonnegative.
    pub fn is_valid(&self) -> bool {
        self.as_array().iter().all(|u| u.is_finite() && *u >= 0.0)
    }
}

/// Total thrust magnitude (N, acting along -Z body) and body torques (N·m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wrench {
    pub thrust: f64,
    pub torque: Vec3,
}

impl Wrench {
    pub const fn new(thrust: f64, torque: Vec3) -> Self {
        Self { thrust, torque }
    }
}

/// Physical vehicle constants, all strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleParams {
    /// Mass, kg.
    pub mass: f64,
    /// Diagonal inertia about body X, kg·m².
    pub ixx: f64,
    /// Diagonal inertia about body Y, kg·m².
    pub iyy: f64,
    /// Diagonal inertia about body Z, kg·m².
    pub izz: f64,
    /// Thrust coefficient, N·s²/rad².
    pub ka: f64,
    /// Rotor moment coefficient, N·m·s²/rad².
    pub km: f64,
    /// Arm length from body center to each rotor, m.
    pub arm_length: f64,
    /// Gravitational acceleration, m/s².
    pub gravity: f64,
}

impl Default for VehicleParams {
    /// Typical micro-quadrotor magnitudes.
    fn default() -> Self {
        Self {
            mass: 0.5,
            ixx: 5.0e-3,
            iyy: 5.0e-3,
            izz: 9.0e-3,
            ka: 3.0e-6,
            km: 1.1e-7,
            arm_length: 0.25,
            gravity: 9.81,
        }
    }
}

impl VehicleParams {
    pub fn validate(&self) -> Result<(), Error> {
        let positive: [(f64, &'static str); 8] = [
            (self.mass, "m must be > 0"),
            (self.ixx, "ixx must be > 0"),
            (self.iyy, "iyy must be > 0"),
            (self.izz, "izz must be > 0"),
            (self.ka, "ka must be > 0"),
            (self.km, "km must be > 0"),
            (self.arm_length, "l must be > 0"),
            (self.gravity, "g must be > 0"),
        ];
        for (value, reason) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParams { reason });
            }
        }
        if self.ixx + self.iyy < self.izz {
            return Err(Error::InvalidParams { reason: "ixx + iyy must be >= izz" });
        }
        if self.iyy + self.izz < self.ixx {
            return Err(Error::InvalidParams { reason: "iyy + izz must be >= ixx" });
        }
        if self.izz + self.ixx < self.iyy {
            return Err(Error::InvalidParams { reason: "izz + ixx must be >= iyy" });
        }
        Ok(())
    }
}

/// Mixes squared rotor speeds into total thrust and body torques.
///
/// T = ka(u1+u2+u3+u4), tau_x = ka·l(u4-u2), tau_y = ka·l(u1-u3),
/// tau_z = km(u1-u2+u3-u4). Sums are grouped by spin direction (1,3 vs 2,4)
/// so that swapping opposite rotors leaves T and tau_z bit-identical.
pub fn wrench_from_input(input: &ControlInput, params: &VehicleParams) -> Wrench {
    let ControlInput { u1, u2, u3, u4 } = *input;
    let same_spin = u1 + u3;
    let counter_spin = u2 + u4;
    Wrench {
        thrust: params.ka * (same_spin + counter_spin),
        torque: Vec3::new(
            params.ka * params.arm_length * (u4 - u2),
            params.ka * params.arm_length * (u1 - u3),
            params.km * (same_spin - counter_spin),
        ),
    }
}

/// Inverts the mixing: squared rotor speeds realizing the wrench.
///
/// Fails with [`Error::InfeasibleWrench`] when any rotor would need a
/// negative squared speed, reporting the offending rotor.
pub fn input_from_wrench(wrench: &Wrench, params: &VehicleParams) -> Result<ControlInput, Error> {
    let base = wrench.thrust / (4.0 * params.ka);
    let dx = wrench.torque.x / (2.0 * params.ka * params.arm_length);
    let dy = wrench.torque.y / (2.0 * params.ka * params.arm_length);
    let dz = wrench.torque.z / (4.0 * params.km);
    let u = [base + dy + dz, base - dx - dz, base - dy + dz, base + dx - dz];
    for (i, &value) in u.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InfeasibleWrench { rotor: i + 1, value });
        }
    }
    Ok(ControlInput::from_array(u))
}

/// The input that exactly balances gravity: u_i = m·g/(4·ka) on every rotor.
pub fn hover_input(params: &VehicleParams) -> ControlInput {
    let u = params.mass * params.gravity / (4.0 * params.ka);
    ControlInput::new(u, u, u, u)
}
