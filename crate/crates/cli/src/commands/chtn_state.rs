//! `chtn chtn`: network entropy, action, tensions, and central charges, with
//! an optional mixed-state entropy sampler.

use chtn_core::chtn::{
    brown_henneaux, classicalized_action, redefine_central_charges, sample_mixed_state_entropy,
    tension_alpha, tension_flat, CHTNState,
};
use chtn_core::units::{Dimension, Quantity, UnitMode};
use chtn_core::weight::p_from_alpha;

use crate::config::{ConfigDoc, Params};
use crate::errors::CliResult;
use crate::output::{write_dsv, Column, Report};

use super::CommandIo;

pub const KEYS: &[&str] = &[
    "area_tn", "alpha", "site_area", "t2_flat", "r_ads", "epsilon", "samples", "sites",
];

pub fn run(doc: &ConfigDoc, io: &CommandIo) -> CliResult<Vec<String>> {
    let params = Params::new(doc);
    let (constants, mode) = super::build_constants(&params, UnitMode::Natural)?;

    let area_tn = params.f64_checked("area_tn", 100.0, |v| v >= 0.0, "[0, inf)")?;
    let alpha = params.f64_checked("alpha", 0.25, |v| (0.0..=1.0).contains(&v), "[0, 1]")?;
    let site_area = params.f64_checked("site_area", 1.0, |v| v > 0.0, "(0, inf)")?;
    let t2_flat = params.f64_checked("t2_flat", 1.0, |v| v > 0.0, "(0, inf)")?;
    let r_ads = params.f64_checked("r_ads", 1.0, |v| v > 0.0, "(0, inf)")?;
    let epsilon = params.f64_checked("epsilon", 1e-3, |v| v > 0.0 && v < 0.1, "(0, 0.1)")?;
    let samples = params.usize("samples", 0)?;
    let sites = params.usize("sites", 8)?;

    let state = CHTNState::new(
        area_tn,
        alpha,
        Quantity::new(site_area, Dimension::AREA),
        Quantity::new(t2_flat, Dimension::TIME),
        Quantity::new(r_ads, Dimension::LENGTH),
        epsilon,
    )?;

    let entropy = state.measurement_entropy();
    let action = classicalized_action(entropy, &constants)?;
    let t_alpha = tension_alpha(&state, &constants);
    let t_flat = tension_flat(&state, &constants);
    let charge = brown_henneaux(state.r_ads(), constants.newton_3d)?;
    let charges = redefine_central_charges(charge, charge, epsilon)?;

    let columns = vec![
        Column::new("area_tn", "1", "input"),
        Column::new("alpha", "1", "input"),
        Column::new("entropy", "bit", "(1-alpha)*A_TN"),
        Column::new("action", action.dim().to_string(), "-hbar*ln2*entropy"),
        Column::new(
            "tension_alpha",
            t_alpha.value.dim().to_string(),
            "-hbar*ln2*alpha/(site_area*T2)",
        ),
        Column::new(
            "tension_flat",
            t_flat.dim().to_string(),
            "hbar*ln2/(site_area*T2)",
        ),
        Column::new("c1", "1", "C-Cbar, C=Cbar=3*R_AdS/(2*G3)"),
        Column::new("c2", "1", "eps*(C+Cbar)"),
    ];
    let row = vec![
        area_tn,
        alpha,
        entropy,
        action.value(),
        t_alpha.value.value(),
        t_flat.value(),
        charges.c1,
        charges.c2,
    ];
    write_dsv(&io.out_dir.join("chtn.dsv"), &columns, &[row])?;

    let mut files = vec!["chtn.dsv".to_string(), "chtn_report.txt".to_string()];
    let mut report = Report::new("chtn: classicalized network bookkeeping");
    report.inputs(io.seed, mode, &constants, &params.echo_entries());
    {
        let lines = report.section("results");
        Report::result_line(lines, "measurement_entropy_bits", entropy, "(1-alpha)*A_TN");
        Report::result_line(lines, "classicalized_action", action.value(), "-hbar*ln2*entropy");
        Report::result_line(
            lines,
            "tension_alpha",
            t_alpha.value.value(),
            "-hbar*ln2*alpha/(site_area*T2)",
        );
        if t_alpha.degenerate {
            lines.push("tension_alpha is degenerate: alpha = 0, no deviation term".to_string());
        }
        Report::result_line(lines, "tension_flat", t_flat.value(), "hbar*ln2/(site_area*T2)");
        Report::result_line(lines, "central_charge", charge, "3*R_AdS/(2*G3)");
        Report::result_line(lines, "c1", charges.c1, "C-Cbar");
        Report::result_line(lines, "c2", charges.c2, "eps*(C+Cbar)");
    }

    if samples > 0 {
        let p = p_from_alpha(alpha, 1e-12)?;
        let est = sample_mixed_state_entropy(p, sites, samples, io.seed)?;
        let sampler_columns = vec![
            Column::new("site_probability", "1", "H2(p)=1-alpha"),
            Column::new("sites", "1", "input"),
            Column::new("samples", "1", "input"),
            Column::new("entropy_estimate", "bit/site", "plug-in Shannon entropy"),
            Column::new("std_error", "bit/site", "bootstrap, 200 replicates"),
        ];
        let sampler_row = vec![
            p,
            sites as f64,
            samples as f64,
            est.bits_per_site,
            est.std_error,
        ];
        write_dsv(
            &io.out_dir.join("chtn_sampler.dsv"),
            &sampler_columns,
            &[sampler_row],
        )?;
        let lines = report.section("mixed-state sampler");
        Report::result_line(lines, "site_probability", p, "H2(p)=1-alpha");
        Report::result_line(
            lines,
            "entropy_estimate",
            est.bits_per_site,
            "plug-in Shannon entropy, bits/site",
        );
        Report::result_line(lines, "std_error", est.std_error, "bootstrap");
        lines.push(format!(
            "expected limit: 1-alpha = {} bits/site",
            1.0 - alpha
        ));
        files.push("chtn_sampler.dsv".to_string());
    }

    {
        let lines = report.section("files");
        for f in &files {
            if f.ends_with(".dsv") {
                lines.push(f.clone());
            }
        }
    }
    report.write(&io.out_dir.join("chtn_report.txt"))?;
    Ok(files)
}
