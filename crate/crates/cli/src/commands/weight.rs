//! `chtn weight`: (alpha, W, p, residual) rows over an alpha grid.

use chtn_core::units::UnitMode;
use chtn_core::weight::{verify_weight_asymptotics, WeightModel};

use crate::config::{ConfigDoc, Params};
use crate::errors::{CliError, CliResult};
use crate::output::{write_dsv, Column, Report};

use super::CommandIo;

pub const KEYS: &[&str] = &["alpha", "alpha_min", "alpha_max", "alpha_step", "n", "tol"];

pub fn run(doc: &ConfigDoc, io: &CommandIo) -> CliResult<Vec<String>> {
    let params = Params::new(doc);
    let (constants, mode) = super::build_constants(&params, UnitMode::Natural)?;

    let in_unit = |v: f64| (0.0..=1.0).contains(&v);
    let alphas: Vec<f64> = if let Some(single) = params.f64_opt("alpha")? {
        for grid_key in ["alpha_min", "alpha_max", "alpha_step"] {
            if doc.get(grid_key).is_some() {
                return Err(CliError::config(format!(
                    "alpha conflicts with {grid_key}; give a single value or a grid"
                )));
            }
        }
        if !in_unit(single) {
            return Err(CliError::config(format!("alpha = {single} outside [0, 1]")));
        }
        vec![single]
    } else {
        let min = params.f64_checked("alpha_min", 0.0, in_unit, "[0, 1]")?;
        let max = params.f64_checked("alpha_max", 1.0, in_unit, "[0, 1]")?;
        let step = params.f64_checked("alpha_step", 0.1, |v| v > 0.0, "(0, inf)")?;
        if max < min {
            return Err(CliError::config("alpha_max below alpha_min"));
        }
        let count = ((max - min) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| (min + step * i as f64).min(max)).collect()
    };
    let n = params.u64("n", 10_000)?;
    if n < 2 {
        return Err(CliError::config(format!("n = {n} must be at least 2")));
    }
    let tol = params.f64_checked("tol", 1e-12, |v| v > 0.0, "(0, inf)")?;

    let mut rows = Vec::with_capacity(alphas.len());
    for alpha in &alphas {
        let model = WeightModel::from_alpha(*alpha, tol)?;
        let residual = verify_weight_asymptotics(&model, n)?;
        rows.push(vec![
            *alpha,
            model.weight(),
            model.site_probability(),
            residual,
        ]);
    }

    let columns = vec![
        Column::new("alpha", "1", "input"),
        Column::new("weight", "1", "W=2^(1-alpha)"),
        Column::new("site_probability", "1", "H2(p)=1-alpha, p<=1/2"),
        Column::new("residual", "1", "|log2(C(n,round(p*n)))/n-(1-alpha)|"),
    ];
    write_dsv(&io.out_dir.join("weight.dsv"), &columns, &rows)?;

    let mut report = Report::new("weight: statistical weight model");
    report.inputs(io.seed, mode, &constants, &params.echo_entries());
    {
        let lines = report.section("results");
        lines.push(format!("rows = {}", rows.len()));
        for row in &rows {
            lines.push(format!(
                "alpha = {:.4}: W = {:.12} [W=2^(1-alpha)], p = {:.12} [H2(p)=1-alpha], residual(n={n}) = {:.6e}",
                row[0], row[1], row[2], row[3]
            ));
        }
    }
    {
        let lines = report.section("files");
        lines.push("weight.dsv".to_string());
    }
    report.write(&io.out_dir.join("weight_report.txt"))?;

    Ok(vec!["weight.dsv".into(), "weight_report.txt".into()])
}
