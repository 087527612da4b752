use std::path::Path;
use std::process::Command;

use axishell_cli::{commands, ExperimentConfig};
use proptest::prelude::*;

const CYLINDER: &str = r#"
thicknesses = [0.1]
p = 4

[profile]
kind = "cylinder"
radius = 1.0
length = 2.0
"#;

const BARREL: &str = r#"
thicknesses = [0.002]

[profile]
kind = "polynomial"
coeffs = [1.0, 0.0, -0.5]
interval = [-0.892668, 0.892668]
"#;

const HYPERBOLOID: &str = r#"
thicknesses = [0.01]

[profile]
kind = "polynomial"
coeffs = [1.0, 0.0, 0.5]
interval = [-0.5, 0.5]
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_axishell"))
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("run.toml");
    std::fs::write(&path, format!("{text}\n[output]\ndir = {:?}\n", dir.join("out"))).unwrap();
    path
}

#[test]
fn classify_lines() {
    let cyl = commands::classify_report(&ExperimentConfig::parse(CYLINDER).unwrap()).unwrap();
    assert_eq!(cyl.lines().next().unwrap(), "Cylinder, membrane limit 0");
    let barrel = commands::classify_report(&ExperimentConfig::parse(BARREL).unwrap()).unwrap();
    let head = barrel.lines().next().unwrap();
    assert!(head.starts_with("EllipticAiry, z0=±0.892668, membrane limit "), "{head}");
}

#[test]
fn predict_json_barrel() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BARREL);
    let out = bin().args(["predict", "--no-write"]).arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["class"], "EllipticAiry");
    assert!((v["gamma"].as_f64().unwrap() - 0.51738).abs() < 5e-5);
    assert!((v["a0_over_e_rho"].as_f64().unwrap() - 0.1724).abs() < 5e-4);
    assert!((v["a1_over_e_rho"].as_f64().unwrap() - 1.403).abs() < 5e-3);
    assert!(!dir.path().join("out").exists());
}

#[test]
fn predict_json_cylinder_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CYLINDER);
    let out = bin().arg("predict").arg(&cfg).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["a1_over_e_rho"].as_f64().unwrap() - 6.770).abs() < 1e-3);
    let written = std::fs::read_to_string(dir.path().join("out/prediction.json")).unwrap();
    assert_eq!(written.trim_end(), String::from_utf8_lossy(&out.stdout).trim_end());
}

#[test]
fn hyperbolic_profile_is_a_numerical_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), HYPERBOLOID);
    let out = bin().args(["predict", "--no-write"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn malformed_config_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &CYLINDER.replace("radius", "radus"));
    let out = bin().arg("classify").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("radus"));
    let missing = bin().arg("classify").arg(dir.path().join("none.toml")).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn constants_command() {
    let out = bin().arg("constants").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("mu_bilap: 500.56"), "{text}");
    assert!(text.contains("z_airy: 2.33810741"), "{text}");
}

fn dispersion_bytes(cfg: &ExperimentConfig) -> Vec<u8> {
    let mut buf = Vec::new();
    commands::dispersion(cfg, None, &mut buf).unwrap();
    buf
}

#[test]
fn dispersion_csv_is_stable_and_ends_with_footer() {
    let cfg = ExperimentConfig::parse(CYLINDER).unwrap();
    let a = dispersion_bytes(&cfg);
    assert_eq!(a, dispersion_bytes(&cfg));
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "k,lambda,lambda_over_e_rho,residual");
    let rows: Vec<_> = lines.clone().filter(|l| !l.starts_with('#')).collect();
    assert!(rows.len() >= 6);
    let footer = text.lines().last().unwrap();
    assert!(footer.starts_with("# argmin k=3 "), "{footer}");
    assert!(footer.ends_with("stop_reason=rise_detected"), "{footer}");
}

#[test]
fn laplace_sweep_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let text = CYLINDER.replace("thicknesses = [0.1]", "operator = \"laplace\"\nthicknesses = [0.05, 0.1, 0.1]");
    let cfg = write_config(dir.path(), &text);
    let out = bin().arg("sweep").arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out_dir = dir.path().join("out");
    let summary = std::fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    let lines: Vec<_> = summary.lines().collect();
    assert_eq!(lines[0], "h,eps,k_star,lambda,lambda_over_e_rho,lambda_pred,k_pred,residual");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0.1,0.05,0,"), "{}", lines[1]);
    assert!(lines[2].starts_with("0.05,0.025,0,"), "{}", lines[2]);
    assert!(out_dir.join("dispersion_h0.1.csv").exists());
    assert!(out_dir.join("dispersion_h0.05.csv").exists());
    assert!(!out_dir.join("prediction.json").exists());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn config_round_trip(
        radius in 0.5f64..3.0,
        length in 0.5f64..4.0,
        hs in prop::collection::vec(1e-4f64..0.2, 1..5),
        p in 1usize..9,
        laplace in any::<bool>(),
        nu in 0.0f64..0.49,
    ) {
        let text = format!(
            "operator = \"{}\"\nthicknesses = {:?}\np = {p}\n[profile]\nkind = \"cylinder\"\nradius = {radius}\nlength = {length}\n[material]\nE = 2.0e11\nnu = {nu}\nrho = 7800.0\n",
            if laplace { "laplace" } else { "lame" },
            hs,
        );
        let cfg = ExperimentConfig::parse(&text).unwrap();
        let back = ExperimentConfig::parse(&cfg.to_toml()).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(cfg.thicknesses(), hs);
    }
}
