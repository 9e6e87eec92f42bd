//! `chtn report`: aggregate the headline numbers of previous runs into one
//! summary document.

use std::fs;
use std::path::Path;

use crate::config::ConfigDoc;
use crate::errors::{CliError, CliResult};
use crate::output::atomic_write;

use super::CommandIo;

pub const KEYS: &[&str] = &[];

/// (data file, section title, headline column names).
const SOURCES: &[(&str, &str, &[&str])] = &[
    (
        "weight.dsv",
        "weight model",
        &["alpha", "weight", "site_probability", "residual"],
    ),
    (
        "chtn.dsv",
        "classicalized network",
        &["entropy", "action", "tension_alpha", "tension_flat", "c2"],
    ),
    (
        "paths_kernel.dsv",
        "path-integral kernel",
        &["estimate", "std_error", "analytic", "rel_deviation"],
    ),
    (
        "paths_probability.dsv",
        "path probabilities",
        &["n_tau", "original", "modified", "ratio"],
    ),
    (
        "many_body.dsv",
        "many-body modification",
        &[],
    ),
    (
        "cosmology.dsv",
        "cosmological constant",
        &[
            "alpha",
            "t_ml",
            "lambda_order",
            "lambda_coefficient",
            "r_h_quadrature",
        ],
    ),
];

struct Table {
    header: Vec<String>,
    first_row: Vec<String>,
    rows: usize,
}

fn read_table(path: &Path) -> CliResult<Option<Table>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header: Vec<String> = match lines.next() {
        Some(h) => h.split('\t').map(str::to_string).collect(),
        None => return Ok(None),
    };
    let mut rows = 0;
    let mut first_row = Vec::new();
    for line in lines {
        if rows == 0 {
            first_row = line.split('\t').map(str::to_string).collect();
        }
        rows += 1;
    }
    Ok(Some(Table {
        header,
        first_row,
        rows,
    }))
}

pub fn run(_doc: &ConfigDoc, io: &CommandIo) -> CliResult<Vec<String>> {
    let mut sections = Vec::new();
    let mut missing = Vec::new();

    for (file, title, headline) in SOURCES {
        let table = read_table(&io.out_dir.join(file))?;
        match table {
            None => missing.push(*file),
            Some(t) => {
                let mut lines = vec![format!("{title} ({file}, {} row(s))", t.rows)];
                for (cell_header, cell) in t.header.iter().zip(&t.first_row) {
                    let name = cell_header.split(' ').next().unwrap_or(cell_header);
                    if headline.is_empty() || headline.contains(&name) {
                        // header cells carry `name [unit] formula`
                        lines.push(format!("  {cell_header} = {cell}"));
                    }
                }
                sections.push(lines);
            }
        }
    }

    if sections.is_empty() {
        let todo: Vec<String> = SOURCES
            .iter()
            .map(|(file, _, _)| {
                let sub = match *file {
                    "weight.dsv" => "weight",
                    "chtn.dsv" => "chtn",
                    "paths_kernel.dsv" | "paths_probability.dsv" => "paths",
                    "many_body.dsv" => "many-body",
                    _ => "cosmology",
                };
                format!("chtn {sub} --out {}", io.out_dir.display())
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        return Err(CliError::config(format!(
            "no prior outputs in {}; run one of these first: {}",
            io.out_dir.display(),
            todo.join(" | ")
        )));
    }

    let mut out = String::from("summary of recorded runs\n=========================\n\n");
    for lines in &sections {
        for line in lines {
            out.push_str(line);
            out.push('\n');
        }
        out.push('\n');
    }
    if !missing.is_empty() {
        out.push_str("not yet recorded\n");
        for file in &missing {
            out.push_str(&format!("  {file}\n"));
        }
    }
    atomic_write(&io.out_dir.join("summary.txt"), &out)?;
    Ok(vec!["summary.txt".into()])
}
