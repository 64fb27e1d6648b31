//! Rigid-body dynamics of a quadrotor with six degrees of freedom.
//!
//! The crate builds the model bottom-up:
//!
//! - [`geometry`]: rotation matrices, rigid transforms, and Euler-angle
//!   extraction including the gimbal-locked case
//! - [`kinematics`]: mappings between body angular rates and Euler-angle rates
//! - [`rotor`]: per-rotor thrust/moment and the mixing between squared rotor
//!   speeds and the body wrench
//! - [`dynamics`]: Newton-Euler equations of motion and the assembled
//!   12-state derivative function
//! - [`integrator`]: fixed-step explicit integration with input schedules and
//!   trajectory recording
//!
//! The world frame is NED (z down, gravity positive along +Z); the body frame
//! has X toward rotor 1, Y toward rotor 2, Z down. All operations are pure
//! functions of immutable values.
//!
//! The crate is `no_std`-compatible (requires `alloc`): disable the default
//! `std` feature and enable `libm` instead.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("quadsim-core requires either the `std` (default) or `libm` feature");

pub mod dynamics;
pub mod geometry;
pub mod integrator;
pub mod kinematics;
pub mod rotor;

mod error;
mod real;

pub use error::Error;

pub use dynamics::{InertiaTensor, State12, StateDeriv};
pub use geometry::{EulerAngles, EulerSolutions, RigidTransform, RotationMatrix, Vec3};
pub use integrator::{
    InputSchedule, Method, Sample, ScheduleEntry, SimOutcome, Termination, Trajectory,
};
pub use kinematics::{BodyRates, EulerRates};
pub use rotor::{ControlInput, RotorSpeeds, VehicleParams, Wrench};
