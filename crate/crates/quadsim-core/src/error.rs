use core::fmt;

/// Errors raised by geometry, kinematics, mixing, and simulation operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A matrix handed to Euler extraction is not a rotation matrix.
    InvalidRotation {
        /// Largest violation of R·Rᵀ = I or det = 1.
        residual: f64,
    },
    /// `|cos(pitch)|` fell below tolerance; the body-to-Euler rate map is
    /// singular (gimbal lock).
    GimbalSingularity { cos_pitch: f64, tol: f64 },
    /// The requested wrench requires a negative squared rotor speed.
    InfeasibleWrench {
        /// Rotor number 1..=4.
        rotor: usize,
        /// The offending squared speed, rad²/s².
        value: f64,
    },
    /// A state or input contains NaN or infinity.
    NonFinite { what: &'static str },
    /// A vehicle parameter violates its constraint.
    InvalidParams { reason: &'static str },
    /// An input schedule violates its ordering constraints.
    InvalidSchedule { reason: &'static str },
    /// dt or duration violates its precondition.
    InvalidTime { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRotation { residual } => {
                write!(f, "not a rotation matrix (residual {residual:e})")
            }
            Error::GimbalSingularity { cos_pitch, tol } => write!(
                f,
                "gimbal-lock singularity: |cos(pitch)| = {:e} < tolerance {tol:e}",
                cos_pitch.abs()
            ),
            Error::InfeasibleWrench { rotor, value } => write!(
                f,
                "infeasible wrench: rotor {rotor} needs squared speed {value:e} < 0"
            ),
            Error::NonFinite { what } => write!(f, "{what} contains a non-finite value"),
            Error::InvalidParams { reason } => write!(f, "invalid parameters: {reason}"),
            Error::InvalidSchedule { reason } => write!(f, "invalid schedule: {reason}"),
            Error::InvalidTime { reason } => write!(f, "invalid time setup: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
