//! Tab-separated data files with unit- and formula-carrying headers, plus the
//! human-readable run reports. All writes are write-then-rename so an
//! interrupted run never leaves a truncated file behind.

use std::fs;
use std::path::{Path, PathBuf};

use chtn_core::units::UnitMode;
use chtn_core::PhysicalConstants64;

use crate::config::EchoEntry;
use crate::errors::CliResult;

/// Scientific notation with 17 significant digits; the cosmology numbers
/// span ~160 orders of magnitude.
pub fn fmt_sci(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone)]
pub struct Column {
    pub name: &'static str,
    pub unit: String,
    pub formula: &'static str,
}

impl Column {
    pub fn new(name: &'static str, unit: impl Into<String>, formula: &'static str) -> Self {
        Self {
            name,
            unit: unit.into(),
            formula,
        }
    }
}

pub fn atomic_write(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Tab-delimited data file; header cells are `name [unit] formula`.
pub fn write_dsv(path: &Path, columns: &[Column], rows: &[Vec<f64>]) -> CliResult<()> {
    let mut out = String::new();
    let header: Vec<String> = columns
        .iter()
        .map(|c| format!("{} [{}] {}", c.name, c.unit, c.formula))
        .collect();
    out.push_str(&header.join("\t"));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), columns.len());
        let cells: Vec<String> = row.iter().map(|v| fmt_sci(*v)).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    atomic_write(path, &out)
}

/// Builder for the per-run human-readable report.
pub struct Report {
    title: String,
    sections: Vec<(String, Vec<String>)>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            sections: Vec::new(),
        }
    }

    pub fn section(&mut self, name: impl Into<String>) -> &mut Vec<String> {
        self.sections.push((name.into(), Vec::new()));
        &mut self.sections.last_mut().unwrap().1
    }

    pub fn inputs(
        &mut self,
        seed: u64,
        mode: UnitMode,
        constants: &PhysicalConstants64,
        echo: &[EchoEntry],
    ) {
        let lines = self.section("inputs");
        lines.push(format!("seed = {seed}"));
        lines.push(format!(
            "unit system: {}",
            match mode {
                UnitMode::Natural => "natural (hbar = c = 1, 1 m length anchor)",
                UnitMode::Si => "si",
            }
        ));
        for e in echo {
            let marker = if e.defaulted { " (default)" } else { "" };
            lines.push(format!("{} = {}{}", e.key, e.value, marker));
        }
        lines.push(format!(
            "effective constants: hbar = {:e} [{}], c = {:e} [{}], b = ln2, h = 2*pi*hbar, G3 = {:e} [{}], t_P = {:e} [{}]",
            constants.hbar.value(),
            constants.hbar.dim(),
            constants.c.value(),
            constants.c.dim(),
            constants.newton_3d.value(),
            constants.newton_3d.dim(),
            constants.planck_time.value(),
            constants.planck_time.dim(),
        ));
    }

    pub fn result_line(lines: &mut Vec<String>, name: &str, value: f64, label: &str) {
        lines.push(format!("{name} = {} [{label}]", fmt_sci(value)));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        out.push_str(&"=".repeat(self.title.len()));
        out.push_str("\n\n");
        for (name, lines) in &self.sections {
            out.push_str(name);
            out.push('\n');
            for line in lines {
                out.push_str("  ");
                out.push_str(line);
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        atomic_write(path, &self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci_format_is_seventeen_significant_digits() {
        assert_eq!(fmt_sci(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_sci(0.0625), "6.2500000000000000e-2");
        assert_eq!(fmt_sci(1e-104).len(), 23);
    }

    #[test]
    fn dsv_round_trips_through_disk() {
        let dir = std::env::temp_dir().join("chtn_output_test");
        let path = dir.join("probe.dsv");
        let cols = vec![
            Column::new("a", "1", "input"),
            Column::new("b", "m", "a*2"),
        ];
        write_dsv(&path, &cols, &[vec![1.0, 2.0], vec![0.5, 1.0]]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("a [1] input\tb [m] a*2\n"));
        assert_eq!(text.lines().count(), 3);
        assert!(!dir.join("probe.dsv.tmp").exists());
        fs::remove_dir_all(&dir).ok();
    }
}
