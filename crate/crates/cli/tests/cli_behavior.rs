//! Front-end behaviour: exit codes, diagnostics, defaults, environment
//! override, and worker-count independence of the data files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chtn"));
    cmd.env_remove("CHTN_OUT_DIR");
    cmd
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chtn_cli_{}_{name}", std::process::id()));
    fs::remove_dir_all(&dir).ok();
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

#[test]
fn unknown_key_exits_2_with_line_number() {
    let dir = scratch("unknown_key");
    let conf = dir.join("c.conf");
    write(&conf, "alpha = 0.5\nbogus_key = 1\n");
    let out = bin()
        .args(["weight", "--config", conf.to_str().unwrap(), "--out"])
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("bogus_key"), "{err}");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_of_range_alpha_exits_2_citing_the_range() {
    let dir = scratch("alpha_range");
    let conf = dir.join("c.conf");
    write(&conf, "alpha = 1.5\n");
    let out = bin()
        .args(["weight", "--config", conf.to_str().unwrap(), "--out"])
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("[0, 1]"), "{err}");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn empty_document_runs_with_defaults() {
    let dir = scratch("defaults");
    let out_dir = dir.join("out");
    let out = bin().args(["weight", "--out"]).arg(&out_dir).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let dsv = fs::read_to_string(out_dir.join("weight.dsv")).unwrap();
    // default grid 0..1 step 0.1: header + 11 rows
    assert_eq!(dsv.lines().count(), 12);
    let report = fs::read_to_string(out_dir.join("weight_report.txt")).unwrap();
    assert!(report.contains("seed = 42"), "default seed echoed");
    assert!(report.contains("alpha_step = 0.1 (default)"));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_config_file_exits_4() {
    let dir = scratch("missing_conf");
    let out = bin()
        .args(["weight", "--config", "/definitely/not/here.conf", "--out"])
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn non_convergent_quadrature_exits_3() {
    // A tolerance too tight for f64 forces the depth cap.
    let dir = scratch("numeric");
    let conf = dir.join("c.conf");
    write(&conf, "quad_tol = 1e-300\n");
    let out = bin()
        .args(["cosmology", "--config", conf.to_str().unwrap(), "--out"])
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("numeric failure"), "{err}");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn report_without_prior_runs_lists_what_to_run() {
    let dir = scratch("report_empty");
    let out = bin().args(["report", "--out"]).arg(dir.join("out")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("run one of these first"), "{err}");
    assert!(err.contains("chtn weight"), "{err}");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn report_aggregates_present_sections() {
    let dir = scratch("report_agg");
    let out_dir = dir.join("out");
    for sub in ["weight", "cosmology"] {
        let out = bin().args([sub, "--out"]).arg(&out_dir).output().unwrap();
        assert!(out.status.success());
    }
    let out = bin().args(["report", "--out"]).arg(&out_dir).output().unwrap();
    assert!(out.status.success());
    let summary = fs::read_to_string(out_dir.join("summary.txt")).unwrap();
    assert!(summary.contains("weight model"), "{summary}");
    assert!(summary.contains("cosmological constant"), "{summary}");
    assert!(summary.contains("W=2^(1-alpha)"), "{summary}");
    assert!(summary.contains("not yet recorded"), "{summary}");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn env_variable_overrides_output_directory() {
    let dir = scratch("env_out");
    let env_dir = dir.join("from_env");
    let out = bin()
        .env("CHTN_OUT_DIR", &env_dir)
        .args(["weight"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env_dir.join("weight.dsv").exists());
    // the --out flag wins over the environment
    let flag_dir = dir.join("from_flag");
    let out = bin()
        .env("CHTN_OUT_DIR", &env_dir)
        .args(["weight", "--out"])
        .arg(&flag_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(flag_dir.join("weight.dsv").exists());
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn no_temporary_files_survive_a_run() {
    let dir = scratch("atomic");
    let out_dir = dir.join("out");
    let out = bin().args(["cosmology", "--out"]).arg(&out_dir).output().unwrap();
    assert!(out.status.success());
    for entry in fs::read_dir(&out_dir).unwrap() {
        let name = entry.unwrap().file_name().to_string_lossy().into_owned();
        assert!(!name.ends_with(".tmp"), "leftover temporary {name}");
    }
    // the default direction is alpha = 0: both lambda forms are zero
    let dsv = fs::read_to_string(out_dir.join("cosmology.dsv")).unwrap();
    let row: Vec<&str> = dsv.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[0].parse::<f64>().unwrap(), 0.0, "alpha");
    assert_eq!(row[4].parse::<f64>().unwrap(), 0.0, "lambda_order");
    assert_eq!(row[5].parse::<f64>().unwrap(), 0.0, "lambda_coefficient");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn worker_count_does_not_change_data_bytes() {
    // Batches derive their streams from the batch index, so any worker
    // count reduces to the same result.
    let dir = scratch("workers");
    let conf = dir.join("c.conf");
    write(&conf, "samples = 4000\nk = 8\n");
    let one = dir.join("one");
    let four = dir.join("four");
    for (workers, out_dir) in [("1", &one), ("4", &four)] {
        let out = bin()
            .args([
                "paths",
                "--config",
                conf.to_str().unwrap(),
                "--workers",
                workers,
                "--out",
            ])
            .arg(out_dir)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let a = fs::read(one.join("paths_kernel.dsv")).unwrap();
    let b = fs::read(four.join("paths_kernel.dsv")).unwrap();
    assert_eq!(a, b);
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn seed_changes_data_bytes() {
    let dir = scratch("seeded");
    let conf = dir.join("c.conf");
    write(&conf, "samples = 2000\nk = 8\n");
    let s1 = dir.join("s1");
    let s2 = dir.join("s2");
    for (seed, out_dir) in [("1", &s1), ("2", &s2)] {
        let out = bin()
            .args([
                "paths",
                "--config",
                conf.to_str().unwrap(),
                "--seed",
                seed,
                "--out",
            ])
            .arg(out_dir)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let a = fs::read(s1.join("paths_kernel.dsv")).unwrap();
    let b = fs::read(s2.join("paths_kernel.dsv")).unwrap();
    assert_ne!(a, b);
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn many_body_parses_particle_table() {
    let dir = scratch("particles");
    let conf = dir.join("c.conf");
    write(
        &conf,
        "particle = 1.0 @ 0,0 ; 1,1 ; 2,0\nparticle = 3.0 @ 4,0 ; 3,1 ; 2,2\nalpha = 0.3\n",
    );
    let out_dir = dir.join("out");
    let out = bin()
        .args(["many-body", "--config", conf.to_str().unwrap(), "--out"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let dsv = fs::read_to_string(out_dir.join("many_body.dsv")).unwrap();
    // 2 particles + CM, 3 slices each, plus header
    assert_eq!(dsv.lines().count(), 10);
    let report = fs::read_to_string(out_dir.join("many_body_report.txt")).unwrap();
    assert!(report.contains("total_mass = 4.0"), "{report}");

    // malformed particle line is a config error
    write(&conf, "particle = 1.0 / 0 ; 1\n");
    let out = bin()
        .args(["many-body", "--config", conf.to_str().unwrap(), "--out"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn constant_overrides_flow_into_results() {
    let dir = scratch("constants");
    let conf = dir.join("c.conf");
    // double hbar in SI: the Margolus-Levitin time doubles
    write(&conf, "constant.hbar = 2.109143635444981e-34\nalpha = 0.1\n");
    let out_dir = dir.join("out");
    let out = bin()
        .args(["cosmology", "--config", conf.to_str().unwrap(), "--out"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(out_dir.join("cosmology.dsv")).unwrap();
    let base = bin().args(["cosmology", "--out"]).arg(dir.join("base")).output().unwrap();
    assert!(base.status.success());
    let base_text = fs::read_to_string(dir.join("base").join("cosmology.dsv")).unwrap();
    let t_ml = |s: &str| -> f64 {
        s.lines()
            .nth(1)
            .unwrap()
            .split('\t')
            .nth(2)
            .unwrap()
            .parse()
            .unwrap()
    };
    let ratio = t_ml(&text) / t_ml(&base_text);
    assert!((ratio - 2.0).abs() < 1e-9, "t_ml ratio {ratio}");

    // non-positive override is rejected up front
    write(&conf, "constant.c = 0\n");
    let out = bin()
        .args(["cosmology", "--config", conf.to_str().unwrap(), "--out"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    fs::remove_dir_all(&dir).ok();
}
