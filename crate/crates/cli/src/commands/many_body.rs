//! `chtn many-body`: center-of-mass reduction and the common-factor
//! modification of a particle table.
//!
//! Particle lines have the form `particle = mass @ x0 ; x1 ; ...` with
//! comma-separated components per waypoint.

use chtn_core::many_body::{cm_modification_factor, cm_trajectory, modify_system, ParticleSystem};
use chtn_core::paths::{kinetic_action, LatticeTrajectory, Point};
use chtn_core::units::UnitMode;

use crate::config::{ConfigDoc, Entry, Params};
use crate::errors::{CliError, CliResult};
use crate::output::{write_dsv, Column, Report};

use super::CommandIo;

pub const KEYS: &[&str] = &["particle", "tau", "alpha"];
pub const REPEATABLE: &[&str] = &["particle"];

/// Demo table used when the config provides no particles: two masses on a
/// shared four-slice lattice.
const DEFAULT_PARTICLES: &[&str] = &["1.0 @ 0 ; 0.5 ; 1.2 ; 2.0", "2.0 @ 2 ; 1.5 ; 1.0 ; 0.0"];

fn parse_particle(line: Option<usize>, text: &str) -> CliResult<(f64, Vec<Vec<f64>>)> {
    let err = |message: String| CliError::Config { line, message };
    let (mass_text, waypoint_text) = text
        .split_once('@')
        .ok_or_else(|| err(format!("particle '{text}' missing `mass @ waypoints`")))?;
    let mass: f64 = mass_text
        .trim()
        .parse()
        .map_err(|_| err(format!("particle mass '{}' is not a number", mass_text.trim())))?;
    let waypoints: Result<Vec<Vec<f64>>, CliError> = waypoint_text
        .split(';')
        .map(|w| {
            w.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<f64>()
                        .map_err(|_| err(format!("waypoint component '{}' is not a number", c.trim())))
                })
                .collect()
        })
        .collect();
    let waypoints = waypoints?;
    if waypoints.len() < 2 {
        return Err(err("particle needs at least two waypoints".into()));
    }
    Ok((mass, waypoints))
}

pub fn run(doc: &ConfigDoc, io: &CommandIo) -> CliResult<Vec<String>> {
    let params = Params::new(doc);
    let (constants, mode) = super::build_constants(&params, UnitMode::Natural)?;

    let tau = params.f64_checked("tau", 1.0, |v| v > 0.0, "(0, inf)")?;
    let alpha = params.f64_checked("alpha", 0.5, |v| (0.0..=1.0).contains(&v), "[0, 1]")?;

    let entries: Vec<(Option<usize>, String)> = {
        let configured = params.particle_entries();
        if configured.is_empty() {
            for text in DEFAULT_PARTICLES {
                params.note_derived("particle", text.to_string());
            }
            DEFAULT_PARTICLES
                .iter()
                .map(|t| (None, t.to_string()))
                .collect()
        } else {
            configured
                .iter()
                .map(|e: &&Entry| (Some(e.line), e.value.clone()))
                .collect()
        }
    };

    let mut parsed = Vec::new();
    for (line, text) in &entries {
        parsed.push(parse_particle(*line, text)?);
    }
    let dimension = parsed[0].1[0].len();
    let slices = parsed[0].1.len();
    for (mass, waypoints) in &parsed {
        if waypoints.len() != slices || waypoints.iter().any(|w| w.len() != dimension) {
            return Err(CliError::config(
                "all particles must share the waypoint count and dimension",
            ));
        }
        if *mass <= 0.0 {
            return Err(CliError::config(format!("particle mass {mass} must be positive")));
        }
    }
    if !(1..=3).contains(&dimension) {
        return Err(CliError::config(format!(
            "waypoint dimension must be 1, 2, or 3, got {dimension}"
        )));
    }

    let tau_step = tau / (slices - 1) as f64;
    let trajectories: Result<Vec<LatticeTrajectory<f64>>, _> = parsed
        .iter()
        .map(|(mass, waypoints)| {
            let positions: Vec<Point<f64>> = waypoints
                .iter()
                .map(|w| {
                    let mut p = [0.0; 3];
                    p[..dimension].copy_from_slice(w);
                    p
                })
                .collect();
            LatticeTrajectory::new(*mass, dimension, positions, tau_step)
        })
        .collect();
    let system = ParticleSystem::new(trajectories?)?;

    let factor = cm_modification_factor(&system, alpha, &constants)?;
    let modified = modify_system(&system, alpha, &constants)?;
    let cm = cm_trajectory(&system);
    let cm_modified = cm_trajectory(&modified);
    let s_cm = kinetic_action(&cm);

    let columns = vec![
        Column::new("particle", "1", "index, -1 = center of mass"),
        Column::new("slice", "1", "lattice index"),
        Column::new("tau", "s", "slice*dtau"),
        Column::new("x", "m", "input waypoint"),
        Column::new("y", "m", "input waypoint"),
        Column::new("z", "m", "input waypoint"),
        Column::new("x_modified", "m", "x*exp(-S_cm*alpha/hbar)"),
        Column::new("y_modified", "m", "y*exp(-S_cm*alpha/hbar)"),
        Column::new("z_modified", "m", "z*exp(-S_cm*alpha/hbar)"),
    ];
    let mut rows = Vec::new();
    let mut push_rows = |index: f64,
                         original: &LatticeTrajectory<f64>,
                         scaled: &LatticeTrajectory<f64>| {
        for (slice, (p, q)) in original
            .positions()
            .iter()
            .zip(scaled.positions())
            .enumerate()
        {
            rows.push(vec![
                index,
                slice as f64,
                slice as f64 * tau_step,
                p[0],
                p[1],
                p[2],
                q[0],
                q[1],
                q[2],
            ]);
        }
    };
    for (i, (orig, new)) in system
        .particles()
        .iter()
        .zip(modified.particles())
        .enumerate()
    {
        push_rows(i as f64, orig, new);
    }
    push_rows(-1.0, &cm, &cm_modified);
    write_dsv(&io.out_dir.join("many_body.dsv"), &columns, &rows)?;

    let mut report = Report::new("many-body: center-of-mass modification");
    report.inputs(io.seed, mode, &constants, &params.echo_entries());
    {
        let lines = report.section("results");
        lines.push(format!(
            "particles = {}, dimension = {dimension}, slices = {slices}",
            system.len()
        ));
        Report::result_line(lines, "total_mass", system.total_mass(), "sum m_i");
        Report::result_line(lines, "cm_action", s_cm.value(), "sum M*|dx_cm|^2/(2*dtau)");
        Report::result_line(
            lines,
            "modification_factor",
            factor,
            "exp(-S_cm*alpha/hbar), common to all particles",
        );
    }
    {
        let lines = report.section("files");
        lines.push("many_body.dsv".into());
    }
    report.write(&io.out_dir.join("many_body_report.txt"))?;

    Ok(vec!["many_body.dsv".into(), "many_body_report.txt".into()])
}
