use std::path::Path;

use chtn_core::units::{PhysicalConstants, UnitMode, UnitSystem};
use chtn_core::PhysicalConstants64;

use crate::config::Params;
use crate::errors::{CliError, CliResult};

pub mod chtn_state;
pub mod cosmology;
pub mod many_body;
pub mod paths;
pub mod report;
pub mod weight;

/// Everything a subcommand needs besides its own parameters.
pub struct CommandIo<'a> {
    pub out_dir: &'a Path,
    pub seed: u64,
}

/// Build the working constants from the SI anchors (with any config
/// overrides) and the selected unit mode.
pub fn build_constants(
    params: &Params,
    default_mode: UnitMode,
) -> CliResult<(PhysicalConstants64, UnitMode)> {
    let mode = params.unit_mode(default_mode)?;
    let mut si = PhysicalConstants::<f64>::si();
    if let Some(v) = params.f64_opt("constant.hbar")? {
        si = si.with_hbar(v);
    }
    if let Some(v) = params.f64_opt("constant.c")? {
        si = si.with_c(v);
    }
    if let Some(v) = params.f64_opt("constant.g3")? {
        si = si.with_newton_3d(v);
    }
    if let Some(v) = params.f64_opt("constant.planck_time")? {
        si = si.with_planck_time(v);
    }
    si.validate()
        .map_err(|e| CliError::config(format!("constant override rejected: {e}")))?;
    let constants = match mode {
        UnitMode::Si => si,
        UnitMode::Natural => {
            let target =
                UnitSystem::natural().with_anchors(si.hbar.value(), si.c.value());
            si.to_system(&UnitSystem::si(), &target)?
        }
    };
    Ok((constants, mode))
}
