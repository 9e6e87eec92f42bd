//! `chtn paths`: kernel estimate, event readout, and the probability triple
//! for a straight-line trajectory between fixed endpoints.

use chtn_core::paths::{
    analytic_free_kernel, contract_event_vector, event_count, kinetic_action, mc_propagator,
    path_probability, readout_events, LatticeTrajectory,
};
use chtn_core::units::UnitMode;

use crate::config::{ConfigDoc, Params};
use crate::errors::{CliError, CliResult};
use crate::output::{write_dsv, Column, Report};

use super::CommandIo;

pub const KEYS: &[&str] = &["mass", "x_start", "x_end", "tau", "k", "samples", "alpha"];

pub fn run(doc: &ConfigDoc, io: &CommandIo) -> CliResult<Vec<String>> {
    let params = Params::new(doc);
    let (constants, mode) = super::build_constants(&params, UnitMode::Natural)?;

    let mass = params.f64_checked("mass", 1.0, |v| v > 0.0, "(0, inf)")?;
    let x_start = params.f64_list("x_start", &[0.0])?;
    let x_end = params.f64_list("x_end", &[1.0])?;
    if x_start.len() != x_end.len() || !(1..=3).contains(&x_start.len()) {
        return Err(CliError::config(
            "x_start and x_end must share a dimension of 1, 2, or 3",
        ));
    }
    let tau = params.f64_checked("tau", 1.0, |v| v > 0.0, "(0, inf)")?;
    let segments = params.usize("k", 64)?;
    if segments < 2 {
        return Err(CliError::config(format!("k = {segments} must be at least 2")));
    }
    let samples = params.usize("samples", 10_000)?;
    if samples < 100 {
        return Err(CliError::config(format!(
            "samples = {samples} must be at least 100"
        )));
    }
    let alpha = params.f64_checked("alpha", 0.5, |v| (0.0..=1.0).contains(&v), "[0, 1]")?;

    let trajectory = LatticeTrajectory::straight_line(mass, &x_start, &x_end, tau, segments)?;
    let action = kinetic_action(&trajectory);
    let n_tau = event_count(action, &constants)?;
    let probability = path_probability(action, alpha, &constants)?;
    let events = readout_events(&trajectory, &constants)?;
    let contracted = contract_event_vector(&events, n_tau, alpha)?;

    let kernel = mc_propagator(
        mass, &x_start, &x_end, tau, segments, samples, io.seed, &constants,
    )?;
    let analytic = analytic_free_kernel(mass, &x_start, &x_end, tau, &constants)?;
    let rel_dev = (kernel.estimate.value() - analytic.value()).abs() / analytic.value();

    let kernel_dim = kernel.estimate.dim().to_string();
    let kernel_columns = vec![
        Column::new("estimate", kernel_dim.clone(), "bridge-sampled lattice paths"),
        Column::new("std_error", kernel_dim.clone(), "bootstrap, 200 replicates"),
        Column::new(
            "analytic",
            kernel_dim,
            "(m/(2*pi*hbar*tau))^(D/2)*exp(-m*dx^2/(2*hbar*tau))",
        ),
        Column::new("rel_deviation", "1", "|estimate-analytic|/analytic"),
    ];
    write_dsv(
        &io.out_dir.join("paths_kernel.dsv"),
        &kernel_columns,
        &[vec![
            kernel.estimate.value(),
            kernel.std_error.value(),
            analytic.value(),
            rel_dev,
        ]],
    )?;

    let event_columns = vec![
        Column::new("event", "1", "index, 0 = start"),
        Column::new("tau", "s", "action crossing of hbar*ln2 multiples"),
        Column::new("x", "m", "interpolated position"),
        Column::new("y", "m", "interpolated position"),
        Column::new("z", "m", "interpolated position"),
        Column::new("x_contracted", "m", "x*2^(-N_tau*alpha)"),
        Column::new("y_contracted", "m", "y*2^(-N_tau*alpha)"),
        Column::new("z_contracted", "m", "z*2^(-N_tau*alpha)"),
    ];
    let event_rows: Vec<Vec<f64>> = events
        .entries()
        .iter()
        .zip(contracted.entries())
        .enumerate()
        .map(|(i, ((p, tau), (pc, _)))| {
            vec![i as f64, *tau, p[0], p[1], p[2], pc[0], pc[1], pc[2]]
        })
        .collect();
    write_dsv(&io.out_dir.join("paths_events.dsv"), &event_columns, &event_rows)?;

    let prob_columns = vec![
        Column::new("action", "m^2 kg s^-1", "sum m*|dx|^2/(2*dtau)"),
        Column::new("n_tau", "1", "S/(hbar*ln2)"),
        Column::new("original", "1", "exp(-S/hbar)"),
        Column::new("modified", "1", "2^(-N_tau*(1-alpha))"),
        Column::new("ratio", "1", "2^(N_tau*alpha)"),
    ];
    write_dsv(
        &io.out_dir.join("paths_probability.dsv"),
        &prob_columns,
        &[vec![
            action.value(),
            n_tau,
            probability.original,
            probability.modified,
            probability.ratio,
        ]],
    )?;

    let mut report = Report::new("paths: imaginary-time trajectory pipeline");
    report.inputs(io.seed, mode, &constants, &params.echo_entries());
    {
        let lines = report.section("results");
        Report::result_line(lines, "kinetic_action", action.value(), "sum m*|dx|^2/(2*dtau)");
        Report::result_line(lines, "n_tau", n_tau, "S/(hbar*ln2)");
        lines.push(format!("events read out: {}", events.count()));
        Report::result_line(
            lines,
            "kernel_estimate",
            kernel.estimate.value(),
            "bridge-sampled lattice paths",
        );
        Report::result_line(lines, "kernel_std_error", kernel.std_error.value(), "bootstrap");
        Report::result_line(
            lines,
            "kernel_analytic",
            analytic.value(),
            "(m/(2*pi*hbar*tau))^(D/2)*exp(-m*dx^2/(2*hbar*tau))",
        );
        Report::result_line(lines, "original_probability", probability.original, "exp(-S/hbar)");
        Report::result_line(
            lines,
            "modified_probability",
            probability.modified,
            "2^(-N_tau*(1-alpha))",
        );
        Report::result_line(lines, "probability_ratio", probability.ratio, "2^(N_tau*alpha)");
    }
    {
        let lines = report.section("files");
        lines.push("paths_kernel.dsv".into());
        lines.push("paths_events.dsv".into());
        lines.push("paths_probability.dsv".into());
    }
    report.write(&io.out_dir.join("paths_report.txt"))?;

    Ok(vec![
        "paths_kernel.dsv".into(),
        "paths_events.dsv".into(),
        "paths_probability.dsv".into(),
        "paths_report.txt".into(),
    ])
}
