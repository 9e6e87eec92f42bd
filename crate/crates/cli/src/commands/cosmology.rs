//! `chtn cosmology`: the full pipeline from the center-of-mass kinetic
//! energy to the de Sitter cosmological constant, in either direction
//! (alpha -> lambda, or observed lambda -> inferred alpha).

use chtn_core::cosmology::{
    horizon_radius_quadrature, infer_alpha, lambda_ds_estimate, lloyd_estimate, wick_rotate,
    CosmologyParams, ScaleFactorSeries,
};
use chtn_core::units::{Dimension, Quantity, UnitMode};

use crate::config::{ConfigDoc, Params};
use crate::errors::{CliError, CliResult};
use crate::output::{fmt_sci, write_dsv, Column, Report};

use super::CommandIo;

pub const KEYS: &[&str] = &[
    "alpha",
    "lambda_obs",
    "lambda_obs_planck",
    "v",
    "m_universe",
    "epsilon",
    "t2_flat",
    "r_ads",
    "n_max",
    "n_points",
    "quad_tol",
];

pub fn run(doc: &ConfigDoc, io: &CommandIo) -> CliResult<Vec<String>> {
    let params = Params::new(doc);
    // The headline numbers live in SI; natural units remain available.
    let (constants, mode) = super::build_constants(&params, UnitMode::Si)?;
    let c_val = constants.c.value();

    let velocity = {
        let v = params.f64_checked("v", c_val, |x| x > 0.0, "(0, c]")?;
        if v > c_val {
            return Err(CliError::config(format!("v = {v} exceeds c = {c_val}")));
        }
        Quantity::new(v, Dimension::SPEED)
    };
    let mass_universe = Quantity::new(
        params.f64_checked("m_universe", 1e53, |x| x > 0.0, "(0, inf)")?,
        Dimension::MASS,
    );
    let epsilon = params.f64_checked("epsilon", 1e-3, |x| x > 0.0 && x < 0.1, "(0, 0.1)")?;
    let t2_flat = params.f64_checked("t2_flat", 1.0, |x| x > 0.0, "(0, inf)")?;
    let r_ads = match params.f64_opt("r_ads")? {
        Some(v) if v > 0.0 => v,
        Some(v) => return Err(CliError::config(format!("r_ads = {v} outside (0, inf)"))),
        None => {
            // consistent chain default: R_AdS = c*T2/eps^2, so R_h = c*T2/eps
            let v = c_val * t2_flat / (epsilon * epsilon);
            params.note_derived(
                "r_ads",
                format!("{} (c*t2_flat/epsilon^2)", crate::config::fmt_default(v)),
            );
            v
        }
    };
    let n_max = params.f64_checked("n_max", 10.0, |x| x >= 0.0, "[0, inf)")?;
    let n_points = params.usize("n_points", 11)?;
    if n_points < 2 {
        return Err(CliError::config("n_points must be at least 2"));
    }
    let quad_tol = params.f64_checked("quad_tol", 1e-9, |x| x > 0.0, "(0, inf)")?;

    let lambda_obs_direct = params.f64_opt("lambda_obs")?;
    let lambda_obs_planck = params.f64_opt("lambda_obs_planck")?;
    if lambda_obs_direct.is_some() && lambda_obs_planck.is_some() {
        return Err(CliError::config(
            "give either lambda_obs or lambda_obs_planck, not both",
        ));
    }
    let lambda_obs = match (lambda_obs_direct, lambda_obs_planck) {
        (Some(v), _) if v > 0.0 => Some(Quantity::new(v, Dimension::CURVATURE)),
        (None, Some(x)) if x > 0.0 => {
            let ct_p = c_val * constants.planck_time.value();
            Some(Quantity::new(x / (ct_p * ct_p), Dimension::CURVATURE))
        }
        (None, None) => None,
        _ => return Err(CliError::config("observed lambda must be positive")),
    };

    // Margolus-Levitin time of the center-of-mass kinetic energy.
    let ml = lloyd_estimate(velocity, mass_universe, &constants)?;
    let coefficient = ml.scaling_coefficient(&constants);

    // alpha -> lambda, or observed lambda -> alpha.
    let (alpha_eff, inferred) = match lambda_obs {
        Some(lam) => (infer_alpha(lam, ml.t_ml, &constants)?, true),
        None => (
            params.f64_checked("alpha", 0.0, |x| x >= 0.0, "[0, inf)")?,
            false,
        ),
    };
    let lambda = lambda_ds_estimate(alpha_eff, ml.t_ml, &constants)?;

    // Geometry side: contraction, Wick rotation, horizon.
    let flat = CosmologyParams::flat(
        epsilon,
        Quantity::new(r_ads, Dimension::LENGTH),
        Quantity::new(t2_flat, Dimension::TIME),
    )?;
    let ds = wick_rotate(&flat, &constants)?;
    let horizon = horizon_radius_quadrature(
        ds.r_h(),
        Quantity::new(0.0, Dimension::TIME),
        quad_tol,
        &constants,
    )?;

    // Scale-factor series in both phases.
    let grid: Vec<f64> = (0..n_points)
        .map(|i| n_max * i as f64 / (n_points - 1) as f64)
        .collect();
    let euclidean = ScaleFactorSeries::euclidean(alpha_eff.min(1.0), &grid)?;
    let de_sitter = ScaleFactorSeries::de_sitter(alpha_eff.min(1.0), &grid)?;

    let columns = vec![
        Column::new("alpha", "1", if inferred { "(2/pi)*c*t_ML*sqrt(lambda_obs)" } else { "input" }),
        Column::new("energy", "m^2 kg s^-2", "M*v^2/2"),
        Column::new("t_ml", "s", "h/(4*E)"),
        Column::new("t_ml_coefficient", "s", "t_ML*(v/c)^2"),
        Column::new("lambda_order", "m^-2", "alpha^2/(c*t_ML)^2"),
        Column::new("lambda_coefficient", "m^-2", "(pi^2/4)*alpha^2/(c*t_ML)^2"),
        Column::new("lambda_wick", "m^-2", "eps^2/(c*T2)^2"),
        Column::new("r_h", "m", "eps*R_AdS"),
        Column::new("r_h_quadrature", "m", "a(t)*integral c dt'/a(t')"),
    ];
    let row = vec![
        alpha_eff,
        ml.energy.value(),
        ml.t_ml.value(),
        coefficient.value(),
        lambda.order_form.value(),
        lambda.coefficient_form.value(),
        ds.lambda().value(),
        ds.r_h().value(),
        horizon.value(),
    ];
    write_dsv(&io.out_dir.join("cosmology.dsv"), &columns, &[row])?;

    let scale_columns = vec![
        Column::new("n", "1", "event count"),
        Column::new("a_euclidean", "1", "2^(-n*alpha)"),
        Column::new("a_ds", "1", "2^(n*alpha)"),
    ];
    let scale_rows: Vec<Vec<f64>> = euclidean
        .samples()
        .iter()
        .zip(de_sitter.samples())
        .map(|((n, a_eu), (_, a_ds))| vec![*n, *a_eu, *a_ds])
        .collect();
    write_dsv(&io.out_dir.join("cosmology_scale.dsv"), &scale_columns, &scale_rows)?;

    let mut report = Report::new("cosmology: de Sitter constant pipeline");
    report.inputs(io.seed, mode, &constants, &params.echo_entries());
    {
        let lines = report.section("results");
        if inferred {
            lines.push(format!(
                "alpha inferred from observed lambda: {} [(2/pi)*c*t_ML*sqrt(lambda_obs)]",
                fmt_sci(alpha_eff)
            ));
        } else {
            Report::result_line(lines, "alpha", alpha_eff, "input");
        }
        Report::result_line(lines, "cm_kinetic_energy", ml.energy.value(), "M*v^2/2");
        Report::result_line(lines, "t_ml", ml.t_ml.value(), "h/(4*E)");
        Report::result_line(
            lines,
            "t_ml_coefficient",
            coefficient.value(),
            "t_ML*(v/c)^2, v-independent",
        );
        Report::result_line(
            lines,
            "lambda_order_form",
            lambda.order_form.value(),
            "alpha^2/(c*t_ML)^2",
        );
        Report::result_line(
            lines,
            "lambda_coefficient_form",
            lambda.coefficient_form.value(),
            "(pi^2/4)*alpha^2/(c*t_ML)^2",
        );
        Report::result_line(lines, "lambda_wick", ds.lambda().value(), "eps^2/(c*T2)^2");
        Report::result_line(lines, "r_h", ds.r_h().value(), "eps*R_AdS");
        Report::result_line(
            lines,
            "r_h_from_lambda",
            ds.horizon_from_lambda()?.value(),
            "1/sqrt(lambda_wick), convention-dependent",
        );
        Report::result_line(
            lines,
            "r_h_quadrature",
            horizon.value(),
            "a(t)*integral c dt'/a(t'), t = 0",
        );
    }
    {
        let lines = report.section("files");
        lines.push("cosmology.dsv".into());
        lines.push("cosmology_scale.dsv".into());
    }
    report.write(&io.out_dir.join("cosmology_report.txt"))?;

    Ok(vec![
        "cosmology.dsv".into(),
        "cosmology_scale.dsv".into(),
        "cosmology_report.txt".into(),
    ])
}
