//! Runs a scenario and writes the trajectory CSV.
//!
//! CSV contract: UTF-8, LF line endings, mandatory header, one row per
//! trajectory sample, every value in scientific notation with 17
//! significant digits. Formatting is deterministic, so identical runs
//! produce byte-identical files.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use quadsim_core::integrator::simulate;
use quadsim_core::{Sample, State12, Termination, Trajectory};

use crate::scenario::Scenario;

pub const CSV_HEADER: &str = "t,x,y,z,phi,theta,psi,xd,yd,zd,p,q,r,u1,u2,u3,u4";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("simulation: {0}")]
    Sim(#[from] quadsim_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

/// What a finished run reports.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub final_state: State12,
    pub final_t: f64,
    /// Steps taken: trajectory length minus one.
    pub steps: usize,
    pub termination: Termination,
    /// Largest |pitch| seen along the trajectory, rad.
    pub max_abs_pitch: f64,
    pub wall_time: Duration,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reason = match self.termination {
            Termination::Completed => "completed".to_string(),
            Termination::Singularity { t } => format!("singularity at t = {t}"),
        };
        writeln!(f, "termination:   {reason}")?;
        writeln!(f, "steps:         {}", self.steps)?;
        writeln!(f, "final t:       {} s", self.final_t)?;
        writeln!(f, "max |pitch|:   {} rad", self.max_abs_pitch)?;
        let s = self.final_state.to_array();
        writeln!(f, "final state:   x={} y={} z={}", s[0], s[1], s[2])?;
        writeln!(f, "               phi={} theta={} psi={}", s[3], s[4], s[5])?;
        writeln!(f, "               xd={} yd={} zd={}", s[6], s[7], s[8])?;
        writeln!(f, "               p={} q={} r={}", s[9], s[10], s[11])?;
        write!(f, "wall clock:    {:.6} s", self.wall_time.as_secs_f64())
    }
}

fn write_row<W: Write>(w: &mut W, sample: &Sample) -> io::Result<()> {
    let s = sample.state.to_array();
    let u = sample.input.as_array();
    write!(w, "{:.16e}", sample.t)?;
    for v in s.iter().chain(u.iter()) {
        write!(w, ",{v:.16e}")?;
    }
    writeln!(w)
}

/// Writes the header plus one row per sample.
pub fn write_trajectory_csv<W: Write>(mut w: W, trajectory: &Trajectory) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for sample in &trajectory.samples {
        write_row(&mut w, sample)?;
    }
    Ok(())
}

/// Simulates the scenario and writes its trajectory CSV to `out_path`.
///
/// A singularity abort is an outcome, not an error: the partial trajectory
/// is still written and reported in the summary.
pub fn run(scenario: &Scenario, out_path: &Path) -> Result<RunSummary, RunError> {
    let start = Instant::now();
    let outcome = simulate(
        &scenario.initial,
        &scenario.schedule,
        scenario.dt,
        scenario.duration,
        scenario.method,
        &scenario.params,
    )?;

    let file = File::create(out_path)?;
    let mut writer = BufWriter::new(file);
    write_trajectory_csv(&mut writer, &outcome.trajectory)?;
    writer.flush()?;

    let last = outcome
        .trajectory
        .last()
        .expect("simulate always records the initial sample");
    let max_abs_pitch = outcome
        .trajectory
        .samples
        .iter()
        .map(|s| s.state.attitude.pitch.abs())
        .fold(0.0, f64::max);

    Ok(RunSummary {
        final_state: last.state,
        final_t: last.t,
        steps: outcome.trajectory.len() - 1,
        termination: outcome.termination,
        max_abs_pitch,
        wall_time: start.elapsed(),
    })
}
