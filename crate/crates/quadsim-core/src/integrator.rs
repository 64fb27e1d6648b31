//! Fixed-step explicit integration of the 12-state model with
//! piecewise-constant input schedules and trajectory recording.
//!
//! Inputs are held constant across each step (zero-order hold). The final
//! step is shortened so the trajectory lands exactly on the requested
//! duration when it is not a multiple of dt.

use alloc::vec::Vec;

use crate::dynamics::{state_derivative, State12};
use crate::real;
use crate::rotor::{ControlInput, VehicleParams};
use crate::Error;

/// Relative slack when deciding how many whole steps fit in a duration;
/// absorbs the rounding noise of duration/dt without admitting real
/// truncation.
const STEP_COUNT_EPS: f64 = 1e-9;

/// Integration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Explicit first-order step.
    Euler,
    /// Classical fourth-order Runge-Kutta step.
    Rk4,
}

/// One (start time, input) segment of a piecewise-constant schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleEntry {
    pub t_start: f64,
    pub input: ControlInput,
}

/// Piecewise-constant input schedule starting at t = 0; each entry applies
/// from its `t_start` until the next entry.
#[derive(Debug, Clone, PartialEq)]
pub struct InputSchedule {
    entries: Vec<ScheduleEntry>,
}

impl InputSchedule {
    pub fn new(entries: Vec<ScheduleEntry>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::InvalidSchedule { reason: "schedule must not be empty" });
        }
        if entries[0].t_start != 0.0 {
            return Err(Error::InvalidSchedule { reason: "schedule must start at t = 0" });
        }
        for entry in &entries {
            if !entry.t_start.is_finite() {
                return Err(Error::InvalidSchedule { reason: "schedule times must be finite" });
            }
            if !entry.input.is_valid() {
                return Err(Error::InvalidSchedule {
                    reason: "schedule inputs must be finite and >= 0",
                });
            }
        }
        for pair in entries.windows(2) {
            if pair[1].t_start <= pair[0].t_start {
                return Err(Error::InvalidSchedule {
                    reason: "schedule times must be strictly increasing",
                });
            }
        }
        Ok(Self { entries })
    }

    /// A schedule holding one input forever.
    pub fn constant(input: ControlInput) -> Result<Self, Error> {
        Self::new(alloc::vec![ScheduleEntry { t_start: 0.0, input }])
    }

    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    /// The last entry with `t_start <= t`.
    pub fn input_at(&self, t: f64) -> &ControlInput {
        let idx = self.entries.partition_point(|e| e.t_start <= t);
        &self.entries[idx.saturating_sub(1)].input
    }
}

/// One explicit first-order step: state + dt·f(state, u).
pub fn step_euler(
    state: &State12,
    input: &ControlInput,
    dt: f64,
    params: &VehicleParams,
) -> Result<State12, Error> {
    check_dt(dt)?;
    let s = state.to_array();
    let k = state_derivative(state, input, params)?.to_array();
    let mut next = [0.0; 12];
    for i in 0..12 {
        next[i] = s[i] + dt * k[i];
    }
    Ok(State12::from_array(next))
}

/// One classical fourth-order Runge-Kutta step with u held constant.
pub fn step_rk4(
    state: &State12,
    input: &ControlInput,
    dt: f64,
    params: &VehicleParams,
) -> Result<State12, Error> {
    check_dt(dt)?;
    let s = state.to_array();
    let at = |k: &[f64; 12], h: f64| {
        let mut probe = [0.0; 12];
        for i in 0..12 {
            probe[i] = s[i] + h * k[i];
        }
        State12::from_array(probe)
    };
    let k1 = state_derivative(state, input, params)?.to_array();
    let k2 = state_derivative(&at(&k1, 0.5 * dt), input, params)?.to_array();
    let k3 = state_derivative(&at(&k2, 0.5 * dt), input, params)?.to_array();
    let k4 = state_derivative(&at(&k3, dt), input, params)?.to_array();
    let mut next = [0.0; 12];
    for i in 0..12 {
        next[i] = s[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(State12::from_array(next))
}

fn check_dt(dt: f64) -> Result<(), Error> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidTime { reason: "dt must be > 0" });
    }
    Ok(())
}

/// One recorded simulation sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub state: State12,
    /// The schedule input in effect at `t`.
    pub input: ControlInput,
}

/// Samples at every accepted step, starting at t = 0 with uniform spacing
/// dt; when the duration is not a multiple of dt a final shortened step is
/// appended so the last sample lands exactly on the duration.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }
}

/// How a simulation ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    /// Ran to the requested duration.
    Completed,
    /// The dynamics hit the gimbal-lock singularity; `t` is the last time
    /// with a valid recorded state.
    Singularity { t: f64 },
}

/// A trajectory plus how it ended; a singular abort still returns the
/// partial trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub trajectory: Trajectory,
    pub termination: Termination,
}

/// Number of whole dt steps covering the duration, plus the shortened final
/// step when one is needed.
fn plan_steps(dt: f64, duration: f64) -> (u64, Option<f64>) {
    let ratio = duration / dt;
    let mut n = real::floor(ratio) as u64;
    if ((n + 1) as f64) * dt <= duration + dt * STEP_COUNT_EPS {
        n += 1;
    }
    let remainder = duration - (n as f64) * dt;
    if remainder > dt * STEP_COUNT_EPS {
        (n, Some(remainder))
    } else {
        (n, None)
    }
}

/// Integrates from t = 0 to the duration, recording every step.
///
/// The input is the schedule's last entry with `t_start <= t`, held constant
/// over each step. A gimbal-lock singularity stops integration and returns
/// the partial trajectory with [`Termination::Singularity`]; other errors
/// (invalid schedule, dt, parameters, non-finite states) fail outright.
pub fn simulate(
    initial: &State12,
    schedule: &InputSchedule,
    dt: f64,
    duration: f64,
    method: Method,
    params: &VehicleParams,
) -> Result<SimOutcome, Error> {
    check_dt(dt)?;
    if !duration.is_finite() || duration < dt {
        return Err(Error::InvalidTime { reason: "duration must be >= dt" });
    }
    params.validate()?;
    if !initial.is_finite() {
        return Err(Error::NonFinite { what: "initial state" });
    }

    let step = match method {
        Method::Euler => step_euler,
        Method::Rk4 => step_rk4,
    };

    let (n_full, last_dt) = plan_steps(dt, duration);
    let mut samples = Vec::with_capacity(n_full as usize + 2);
    let mut state = *initial;
    samples.push(Sample { t: 0.0, state, input: *schedule.input_at(0.0) });

    let advance = |state: &mut State12,
                       samples: &mut Vec<Sample>,
                       t: f64,
                       t_next: f64,
                       h: f64|
     -> Result<bool, Error> {
        let input = *schedule.input_at(t);
        match step(state, &input, h, params) {
            Ok(next) => {
                *state = next;
                samples.push(Sample { t: t_next, state: next, input: *schedule.input_at(t_next) });
                Ok(true)
            }
            Err(Error::GimbalSingularity { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };

    for k in 0..n_full {
        let t = k as f64 * dt;
        let t_next = (k + 1) as f64 * dt;
        if !advance(&mut state, &mut samples, t, t_next, dt)? {
            return Ok(SimOutcome {
                trajectory: Trajectory { samples },
                termination: Termination::Singularity { t },
            });
        }
    }
    if let Some(h) = last_dt {
        let t = n_full as f64 * dt;
        if !advance(&mut state, &mut samples, t, duration, h)? {
            return Ok(SimOutcome {
                trajectory: Trajectory { samples },
                termination: Termination::Singularity { t },
            });
        }
    }

    Ok(SimOutcome { trajectory: Trajectory { samples }, termination: Termination::Completed })
}
