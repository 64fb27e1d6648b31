//! Mappings between body-frame angular rates and Euler-angle rates.
//!
//! The forward map (Euler rates to body rates) is total; the inverse map
//! blows up as `cos(pitch)` approaches zero and reports a gimbal-lock
//! singularity instead of returning amplified noise.

use crate::geometry::EulerAngles;
use crate::real;
use crate::Error;

/// Default `|cos(pitch)|` tolerance for [`euler_rates_from_body_rates`].
/// Below it `tan(pitch)` exceeds about 1e6 and the map is treated as singular.
pub const DEFAULT_SINGULARITY_TOL: f64 = 1e-6;

/// Angular velocity (p, q, r) about the body X, Y, Z axes, rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BodyRates {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl BodyRates {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(p: f64, q: f64, r: f64) -> Self {
        Self { p, q, r }
    }

    pub fn is_finite(self) -> bool {
        self.p.is_finite() && self.q.is_finite() && self.r.is_finite()
    }
}

/// Time derivatives of the Euler angles, rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerRates {
    pub roll_rate: f64,
    pub pitch_rate: f64,
    pub yaw_rate: f64,
}

impl EulerRates {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(roll_rate: f64, pitch_rate: f64, yaw_rate: f64) -> Self {
        Self { roll_rate, pitch_rate, yaw_rate }
    }
}

/// Body rates from Euler-angle rates at the given attitude.
///
/// Defined for every attitude, including pitch = ±π/2 where the map loses
/// rank.
pub fn body_rates_from_euler_rates(angles: &EulerAngles, rates: &EulerRates) -> BodyRates {
    let (sr, cr) = real::sin_cos(angles.roll);
    let (sp, cp) = real::sin_cos(angles.pitch);
    BodyRates {
        p: rates.roll_rate - sp * rates.yaw_rate,
        q: cr * rates.pitch_rate + cp * sr * rates.yaw_rate,
        r: cp * cr * rates.yaw_rate - sr * rates.pitch_rate,
    }
}

/// Euler-angle rates from body rates at the given attitude.
///
/// Fails with [`Error::GimbalSingularity`] when `|cos(pitch)| < tol`.
pub fn euler_rates_from_body_rates(
    angles: &EulerAngles,
    rates: &BodyRates,
    tol: f64,
) -> Result<EulerRates, Error> {
    let (sp, cp) = real::sin_cos(angles.pitch);
    if real::abs(cp) < tol {
        return Err(Error::GimbalSingularity { cos_pitch: cp, tol });
    }
    let (sr, cr) = real::sin_cos(angles.roll);
    let tp = sp / cp;
    Ok(EulerRates {
        roll_rate: rates.p + rates.q * sr * tp + rates.r * cr * tp,
        pitch_rate: rates.q * cr - rates.r * sr,
        yaw_rate: rates.q * sr / cp + rates.r * cr / cp,
    })
}
