use std::path::Path;
use std::process::{Command, Output};

use photon_frames::lorentz::{Direction, FourVector, LorentzTransform};
use photon_frames::polarization::PolarizationVector;
use photon_frames::validate::{validate_with, Kernels};
use photon_frames::Result;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_photon-frames"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

#[test]
fn single_prints_log_negativity() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["single", "--sigma-theta", "0.01", "--xi", "0"],
        dir.path(),
    );
    assert!(out.status.success());
    let ln: f64 = String::from_utf8(out.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((ln - 1.0).abs() < 1e-3);
}

#[test]
fn sweep_reads_config_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"alpha": 0.5, "sigma_theta": 0.8, "xi_min": -1, "xi_max": 1, "xi_steps": 5,
            "n_theta": 16, "n_phi": 16, "output_path": "from_config.csv"}"#,
    )
    .unwrap();
    let out = run(
        &["sweep", "--config", "cfg.json", "--xi-steps", "3"],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.path().join("from_config.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "alpha,sigma_theta,xi,log_negativity,trace_residual,min_eigenvalue"
    );
    assert_eq!(lines.len(), 4);
    let xi: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(xi, vec![-1.0, 0.0, 1.0]);
    for l in &lines[1..] {
        assert!(l.starts_with("0.5,0.8,"));
    }
}

#[test]
fn sweep_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sweep",
        "--alpha",
        "1.2",
        "--xi-steps",
        "7",
        "--n-theta",
        "16",
        "--n-phi",
        "16",
    ];
    let mut a = args.to_vec();
    a.extend(["--out", "a.csv"]);
    let mut b = args.to_vec();
    b.extend(["--out", "b.csv"]);
    assert!(run(&a, dir.path()).status.success());
    assert!(run(&b, dir.path()).status.success());
    let ra = std::fs::read(dir.path().join("a.csv")).unwrap();
    let rb = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(ra, rb);
}

#[test]
fn timing_adds_a_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "sweep",
            "--xi-steps",
            "2",
            "--n-theta",
            "8",
            "--n-phi",
            "8",
            "--out",
            "t.csv",
            "--timing",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert!(text.lines().next().unwrap().ends_with(",wall_time_ms"));
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 7));
}

#[test]
fn invalid_config_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"sigma_theta": -1}"#).unwrap();
    assert_eq!(
        run(&["sweep", "--config", "bad.json"], dir.path())
            .status
            .code(),
        Some(1)
    );
    std::fs::write(dir.path().join("typo.json"), r#"{"sigma": 1}"#).unwrap();
    assert_eq!(
        run(&["sweep", "--config", "typo.json"], dir.path())
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["sweep", "--config", "missing.json"], dir.path())
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["sweep", "--n-theta", "2"], dir.path()).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["single", "--sigma-theta", "0"], dir.path())
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn plot_flag_writes_gnuplot_script() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "sweep",
            "--xi-steps",
            "3",
            "--n-theta",
            "8",
            "--n-phi",
            "8",
            "--out",
            "p.csv",
            "--plot",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let script = std::fs::read_to_string(dir.path().join("p.gp")).unwrap();
    assert!(script.contains("p.csv"));
    assert!(script.contains("using 3:4"));
}

#[test]
fn convergence_check_passes_on_converged_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "sweep",
            "--xi-steps",
            "3",
            "--out",
            "c.csv",
            "--check-convergence",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn validate_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["validate"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
}

fn flipped_rot_y(gamma: f64, d: &Direction) -> f64 {
    let (sg, cg) = gamma.sin_cos();
    let (st, ct) = d.theta().sin_cos();
    let (sp, cp) = d.phi().sin_cos();
    (sg * sp).atan2(-(st * cg + ct * sg * cp))
}

fn no_gauge_term(
    l: &LorentzTransform,
    _p: &FourVector,
    eps: &PolarizationVector,
) -> Result<PolarizationVector> {
    Ok(eps.transformed(l.matrix()))
}

#[test]
fn validation_catches_wrong_rotation_rule() {
    let report = validate_with(&Kernels {
        rot_y: flipped_rot_y,
        ..Kernels::default()
    });
    assert!(!report.passed);
    assert!(!report.group("wigner_oracle").unwrap().passed);
}

#[test]
fn validation_catches_missing_gauge_term() {
    let report = validate_with(&Kernels {
        gauge: no_gauge_term,
        ..Kernels::default()
    });
    assert!(!report.passed);
    assert!(!report.group("d_form_equivalence").unwrap().passed);
}
