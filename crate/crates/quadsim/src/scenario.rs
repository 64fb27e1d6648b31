//! Scenario files: a strict JSON schema with per-field defaulting,
//! validation that names the violated invariant, and built-in presets.
//!
//! Presets compute their rotor inputs through the mixing inverse
//! ([`input_from_wrench`]) so even analytically specified wrenches exercise
//! the rotor-level pipeline.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use quadsim_core::rotor::{hover_input, input_from_wrench};
use quadsim_core::{
    ControlInput, EulerAngles, InputSchedule, Method, ScheduleEntry, State12, VehicleParams, Vec3,
    Wrench,
};

/// Trim pitch used by the forward-flight preset, rad.
pub const FORWARD_FLIGHT_PITCH: f64 = 0.2;

/// Yaw torque applied by the yaw-step preset, N·m.
pub const YAW_STEP_TORQUE: f64 = 1.0e-3;

/// Time at which the yaw-step preset switches from hover to the stepped
/// input, s.
pub const YAW_STEP_TIME: f64 = 1.0;

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read scenario: {0}")]
    Io(#[from] std::io::Error),
    #[error("scenario parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scenario: {0}")]
    Invalid(String),
}

/// Built-in reference scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum PresetName {
    /// Trim thrust, zero torque: an exact equilibrium.
    Hover,
    /// Zero input from rest.
    FreeFall,
    /// Hover, then a constant yaw torque from t = 1 s.
    YawStep,
    /// Constant pitch trim with the thrust raised to hold altitude.
    ForwardFlight,
}

/// Integration method names as they appear in scenario files and flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    Euler,
    Rk4,
}

impl From<MethodName> for Method {
    fn from(m: MethodName) -> Self {
        match m {
            MethodName::Euler => Method::Euler,
            MethodName::Rk4 => Method::Rk4,
        }
    }
}

impl From<Method> for MethodName {
    fn from(m: Method) -> Self {
        match m {
            Method::Euler => MethodName::Euler,
            Method::Rk4 => MethodName::Rk4,
        }
    }
}

/// Vehicle parameters as written in a scenario file; every field optional,
/// missing ones take the repository defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamsFile {
    pub m: Option<f64>,
    pub ixx: Option<f64>,
    pub iyy: Option<f64>,
    pub izz: Option<f64>,
    pub ka: Option<f64>,
    pub km: Option<f64>,
    pub l: Option<f64>,
    pub g: Option<f64>,
}

impl ParamsFile {
    fn resolve(&self) -> VehicleParams {
        let d = VehicleParams::default();
        VehicleParams {
            mass: self.m.unwrap_or(d.mass),
            ixx: self.ixx.unwrap_or(d.ixx),
            iyy: self.iyy.unwrap_or(d.iyy),
            izz: self.izz.unwrap_or(d.izz),
            ka: self.ka.unwrap_or(d.ka),
            km: self.km.unwrap_or(d.km),
            arm_length: self.l.unwrap_or(d.arm_length),
            gravity: self.g.unwrap_or(d.gravity),
        }
    }

    fn from_params(p: &VehicleParams) -> Self {
        Self {
            m: Some(p.mass),
            ixx: Some(p.ixx),
            iyy: Some(p.iyy),
            izz: Some(p.izz),
            ka: Some(p.ka),
            km: Some(p.km),
            l: Some(p.arm_length),
            g: Some(p.gravity),
        }
    }
}

/// One schedule segment: squared rotor speeds applied from time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentFile {
    pub t: f64,
    pub u: [f64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimFile {
    pub dt: f64,
    pub duration: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodName>,
}

/// The on-disk scenario document. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<[f64; 12]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<SegmentFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetName>,
    pub sim: SimFile,
}

/// A parsed, defaulted, validated scenario ready to run.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub params: VehicleParams,
    pub initial: State12,
    pub schedule: InputSchedule,
    pub dt: f64,
    pub duration: f64,
    pub method: Method,
}

impl Scenario {
    /// Re-checks the time fields; used after CLI flag overrides.
    pub fn validate_sim(&self) -> Result<(), ScenarioError> {
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(ScenarioError::Invalid("dt must be > 0".into()));
        }
        if !self.duration.is_finite() || self.duration < self.dt {
            return Err(ScenarioError::Invalid("duration must be >= dt".into()));
        }
        Ok(())
    }

    /// The explicit file form of this scenario (presets already expanded).
    pub fn to_file(&self) -> ScenarioFile {
        ScenarioFile {
            params: Some(ParamsFile::from_params(&self.params)),
            initial: Some(self.initial.to_array()),
            schedule: Some(
                self.schedule
                    .entries()
                    .iter()
                    .map(|e| SegmentFile { t: e.t_start, u: e.input.as_array() })
                    .collect(),
            ),
            preset: None,
            sim: SimFile {
                dt: self.dt,
                duration: self.duration,
                method: Some(self.method.into()),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_file()).expect("scenario serializes");
        text.push('\n');
        text
    }
}

impl ScenarioFile {
    pub fn resolve(&self) -> Result<Scenario, ScenarioError> {
        let params = self.params.unwrap_or_default().resolve();
        params.validate().map_err(|e| match e {
            quadsim_core::Error::InvalidParams { reason } => {
                ScenarioError::Invalid(reason.to_string())
            }
            other => ScenarioError::Invalid(other.to_string()),
        })?;

        let (schedule, preset_initial) = match (&self.schedule, self.preset) {
            (Some(_), Some(_)) | (None, None) => {
                return Err(ScenarioError::Invalid(
                    "exactly one of schedule or preset must be given".into(),
                ));
            }
            (Some(segments), None) => {
                let entries = segments
                    .iter()
                    .map(|s| ScheduleEntry {
                        t_start: s.t,
                        input: ControlInput::from_array(s.u),
                    })
                    .collect();
                let schedule = InputSchedule::new(entries)
                    .map_err(|e| ScenarioError::Invalid(e.to_string()))?;
                (schedule, None)
            }
            (None, Some(preset)) => {
                let (schedule, initial) = preset_parts(preset, &params)
                    .map_err(|e| ScenarioError::Invalid(e.to_string()))?;
                (schedule, Some(initial))
            }
        };

        let initial = match self.initial {
            Some(slots) => {
                let state = State12::from_array(slots);
                if !state.is_finite() {
                    return Err(ScenarioError::Invalid("initial state must be finite".into()));
                }
                state
            }
            None => preset_initial.unwrap_or(State12::ZERO),
        };

        let scenario = Scenario {
            params,
            initial,
            schedule,
            dt: self.sim.dt,
            duration: self.sim.duration,
            method: self.sim.method.unwrap_or(MethodName::Rk4).into(),
        };
        scenario.validate_sim()?;
        Ok(scenario)
    }
}

/// Schedule and initial state for a preset, computed against the resolved
/// vehicle parameters.
fn preset_parts(
    preset: PresetName,
    params: &VehicleParams,
) -> Result<(InputSchedule, State12), quadsim_core::Error> {
    let weight = params.mass * params.gravity;
    match preset {
        PresetName::Hover => {
            let u = input_from_wrench(&Wrench::new(weight, Vec3::ZERO), params)?;
            Ok((InputSchedule::constant(u)?, State12::ZERO))
        }
        PresetName::FreeFall => {
            let u = input_from_wrench(&Wrench::new(0.0, Vec3::ZERO), params)?;
            Ok((InputSchedule::constant(u)?, State12::ZERO))
        }
        PresetName::YawStep => {
            let hover = hover_input(params);
            let stepped = input_from_wrench(
                &Wrench::new(weight, Vec3::new(0.0, 0.0, YAW_STEP_TORQUE)),
                params,
            )?;
            let schedule = InputSchedule::new(vec![
                ScheduleEntry { t_start: 0.0, input: hover },
                ScheduleEntry { t_start: YAW_STEP_TIME, input: stepped },
            ])?;
            Ok((schedule, State12::ZERO))
        }
        PresetName::ForwardFlight => {
            // Attitude holds itself: zero torque command and zero initial
            // body rates leave the trimmed pitch constant.
            let thrust = weight / FORWARD_FLIGHT_PITCH.cos();
            let u = input_from_wrench(&Wrench::new(thrust, Vec3::ZERO), params)?;
            let initial = State12 {
                attitude: EulerAngles::new(0.0, FORWARD_FLIGHT_PITCH, 0.0),
                ..State12::ZERO
            };
            Ok((InputSchedule::constant(u)?, initial))
        }
    }
}

/// Default sim settings emitted by `quadsim preset`.
pub fn preset_sim_defaults(preset: PresetName) -> SimFile {
    let duration = match preset {
        PresetName::Hover | PresetName::YawStep => 5.0,
        PresetName::FreeFall => 1.0,
        PresetName::ForwardFlight => 2.0,
    };
    SimFile { dt: 1e-3, duration, method: Some(MethodName::Rk4) }
}

/// The full scenario a preset stands for, with its default sim settings.
pub fn preset_scenario(preset: PresetName) -> Scenario {
    let sim = preset_sim_defaults(preset);
    ScenarioFile {
        params: None,
        initial: None,
        schedule: None,
        preset: Some(preset),
        sim,
    }
    .resolve()
    .expect("presets are valid by construction")
}

/// Parses a scenario document from a JSON string.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    file.resolve()
}

/// Loads, defaults, and validates a scenario file.
pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = fs::read_to_string(path)?;
    parse_scenario(&text)
}
