//! Command-line behaviour, driven through the built binary and the library entry points.

use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use twistkit::cli::*;
use twistkit::operator::Geometry;
use twistkit::verify::{Group, RunConfig};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_twistkit"));
    c.env_remove(SEED_ENV);
    c
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("twistkit-{}-{name}", std::process::id()))
}

fn verify_args(extra: &[&str]) -> VerifyArgs {
    let mut argv = vec!["twistkit", "verify"];
    argv.extend_from_slice(extra);
    match Cli::parse_from(argv).command {
        twistkit::cli::Command::Verify(a) => a,
        _ => unreachable!(),
    }
}

fn dispersion(extra: &[&str]) -> twistkit::dynamics::DispersionResult {
    let mut argv = vec!["twistkit", "dispersion"];
    argv.extend_from_slice(extra);
    match Cli::parse_from(argv).command {
        twistkit::cli::Command::Dispersion(a) => evaluate_dispersion(&a).unwrap(),
        _ => unreachable!(),
    }
}

#[test]
fn config_precedence_file_env_flag() {
    let path = temp("precedence.conf");
    std::fs::write(&path, "# run settings\nseed = 5\nmode_cutoff = 3\ngroups = clifford, boost\ntolerance.boost = 1e-8\n").unwrap();
    let p = path.to_str().unwrap();
    let c = run_config(&verify_args(&["--config", p]), None).unwrap();
    assert_eq!((c.seed, c.mode_cutoff), (5, 3));
    assert_eq!(c.groups.iter().copied().collect::<Vec<_>>(), vec![Group::Clifford, Group::Boost]);
    assert_eq!(c.tolerances.get(&Group::Boost), Some(&1e-8));
    assert_eq!(run_config(&verify_args(&["--config", p]), Some("9".into())).unwrap().seed, 9);
    assert_eq!(run_config(&verify_args(&["--config", p, "--seed", "11"]), Some("9".into())).unwrap().seed, 11);
    assert_eq!(run_config(&verify_args(&["--config", p, "--mode-cutoff", "1"]), None).unwrap().mode_cutoff, 1);
    std::fs::remove_file(&path).ok();
}

#[test]
fn invalid_configuration_is_rejected() {
    assert!(run_config(&verify_args(&["--mode-cutoff", "0"]), None).is_err());
    assert!(run_config(&verify_args(&["--rapidity=-1"]), None).is_err());
    assert!(run_config(&verify_args(&["--groups", "clifford,nope"]), None).is_err());
    assert!(run_config(&verify_args(&[]), Some("abc".into())).is_err());
    let mut c = RunConfig::default();
    assert!(c.apply_file("seed 3").is_err());
    assert!(c.apply_file("colour = blue").is_err());
}

#[test]
fn exit_codes() {
    assert_eq!(main_with(["twistkit", "verify", "--groups", "foo"]), EXIT_USAGE);
    assert_eq!(main_with(["twistkit", "verify", "--mode-cutoff", "0"]), EXIT_USAGE);
    assert_eq!(main_with(["twistkit", "frobnicate"]), EXIT_USAGE);
    assert_eq!(main_with(["twistkit", "action"]), EXIT_USAGE);
    assert_eq!(main_with(["twistkit", "verify", "--groups", "clifford"]), EXIT_OK);
    assert_eq!(main_with(["twistkit", "verify", "--list"]), EXIT_OK);
    assert_eq!(main_with(["twistkit", "action", "--geometry", "doubled", "--seed", "3"]), EXIT_OK);
    // a zero tolerance on a rounding-limited group fails
    let path = temp("strict.conf");
    std::fs::write(&path, "groups = boost\ntolerance.boost = 0\n").unwrap();
    assert_eq!(main_with(["twistkit", "verify", "--config", path.to_str().unwrap()]), EXIT_FAIL);
    std::fs::remove_file(&path).ok();
}

#[test]
fn binary_json_reports_are_deterministic() {
    let (a, b) = (temp("a.json"), temp("b.json"));
    for path in [&a, &b] {
        let status = bin()
            .args(["verify", "--groups", "clifford,gauge", "--seed", "17", "--json", path.to_str().unwrap()])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(EXIT_OK));
    }
    let (ja, jb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_str(&ja).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["seed"], 17);
        assert_eq!(c["status"], "pass");
        assert!(c["check_id"].as_str().unwrap().starts_with("clifford.") || c["check_id"].as_str().unwrap().starts_with("gauge."));
    }
    std::fs::remove_file(&a).ok();
    std::fs::remove_file(&b).ok();
}

#[test]
fn binary_reads_seed_from_environment() {
    let path = temp("env.json");
    let status = bin()
        .env(SEED_ENV, "23")
        .args(["verify", "--groups", "clifford", "--json", path.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["config"]["seed"], 23);
    std::fs::remove_file(&path).ok();
}

#[test]
fn action_on_zero_and_random_input() {
    for g in Geometry::ALL {
        let r = evaluate_action(&ActionInput::zero(g)).unwrap();
        assert!(r.coefficients.is_empty(), "{}", g.name());
    }
    let ed = evaluate_action(&ActionInput::random(Geometry::Electrodynamics, 3, 2, twistkit::clifford::C64::new(0.0, 1.0))).unwrap();
    assert!(!ed.coefficients.is_empty());
    assert!(ed.closed_form_error.unwrap() < 1e-10);
    // generic d has no closed form
    let generic = evaluate_action(&ActionInput::random(Geometry::Electrodynamics, 3, 2, twistkit::clifford::C64::new(0.5, 1.0))).unwrap();
    assert!(generic.closed_form_error.is_none());
}

#[test]
fn action_input_round_trips_through_json() {
    let input = ActionInput::random(Geometry::Doubled, 4, 1, twistkit::clifford::C64::new(0.0, 0.0));
    let path = temp("input.json");
    std::fs::write(&path, serde_json::to_string(&input).unwrap()).unwrap();
    let out = bin().args(["action", "--input", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("closed form"));
    let mismatch = bin().args(["action", "--geometry", "manifold", "--input", path.to_str().unwrap()]).status().unwrap();
    assert_eq!(mismatch.code(), Some(EXIT_USAGE));
    std::fs::remove_file(&path).ok();
}

#[test]
fn dispersion_examples() {
    let weyl = dispersion(&["weyl-left", "--f0", "1", "--p", "0,0,1"]);
    assert_eq!(weyl.kernel.len(), 1);
    assert!(weyl.identified);
    assert!(weyl.admissible_roots.iter().any(|r| (r + 1.0).abs() < 1e-12));
    let dirac = dispersion(&["dirac", "--m", "1"]);
    let mut roots = dirac.p0_roots.clone();
    roots.sort_by(f64::total_cmp);
    assert_eq!(roots.len(), 2);
    assert!((roots[0] + 1.0).abs() < 1e-12 && (roots[1] - 1.0).abs() < 1e-12);
    // the identity boost reproduces the unboosted kernel
    let boosted = dispersion(&["boosted-weyl-left", "--f", "1,0,0,1"]);
    assert_eq!(boosted.kernel.len(), weyl.kernel.len());
    assert!(boosted.identified && boosted.kernel_residual < 1e-12);
    assert!((boosted.kernel[0][1] - weyl.kernel[0][1]).norm() < 1e-12);
}

#[test]
fn dispersion_rejects_malformed_vectors() {
    let parsed = Cli::parse_from(["twistkit", "dispersion", "dirac", "--p", "1,2"]);
    match parsed.command {
        twistkit::cli::Command::Dispersion(a) => assert!(evaluate_dispersion(&a).is_err()),
        _ => unreachable!(),
    }
    assert_eq!(main_with(["twistkit", "dispersion", "dirac", "--boost", "0.1,1,0"]), EXIT_USAGE);
}
