//! The five subcommands, written against `io::Write` sinks so they can be
//! driven from tests.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use axishell::{membrane_limit, predict, sweep_k, Curve, Error, OperatorKind, Prediction};

use crate::config::ExperimentConfig;
use crate::output::{write_dispersion, PredictionRecord, SummaryWriter};
use crate::CliError;

/// One-line summary followed by `key: value` details.
pub fn classify_report(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let profile = cfg.profile()?;
    let m = cfg.material_params()?;
    let class = profile.classify();
    let limit = match membrane_limit(&class, &m) {
        Ok(v) if v == 0.0 => "0".to_string(),
        Ok(v) => format!("{} E/rho", v / m.wave_speed_sq()),
        Err(Error::NotApplicable(_)) => "n/a".to_string(),
        Err(_) => "unsupported".to_string(),
    };
    let mut head = class.tag.to_string();
    if let Some(z) = format_minimizers(&class.minimizers) {
        head.push_str(&format!(", z0={z}"));
    }
    head.push_str(&format!(", membrane limit {limit}"));
    let mut out = vec![head, format!("class: {}", class.tag)];
    out.push(format!("minimizers: {}", format_minimizers(&class.minimizers).unwrap_or_default()));
    if let Some(h) = class.h0_min(&m) {
        out.push(format!("h0_min: {h}"));
        out.push(format!("h0_min_over_e_rho: {}", h / m.wave_speed_sq()));
    }
    out.push(format!("membrane_limit: {limit}"));
    Ok(out.join("\n") + "\n")
}

fn format_minimizers(z: &[f64]) -> Option<String> {
    match z {
        [] => None,
        [a, b] if *a == -*b => Some(format!("±{}", b.abs())),
        _ => Some(z.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
    }
}

pub fn prediction(cfg: &ExperimentConfig) -> Result<Prediction, CliError> {
    Ok(predict(&cfg.profile()?, &cfg.material_params()?)?)
}

pub fn predict_record(cfg: &ExperimentConfig) -> Result<PredictionRecord, CliError> {
    Ok(PredictionRecord::new(&prediction(cfg)?, &cfg.material_params()?))
}

/// Sweep one thickness `h` (default: the first configured) and write its CSV.
pub fn dispersion<W: Write>(cfg: &ExperimentConfig, h: Option<f64>, out: W) -> Result<Curve, CliError> {
    let profile = cfg.profile()?;
    let h = h.unwrap_or(2.0 * cfg.eps[0]);
    let bound = profile.injectivity_bound();
    if !(h > 0.0) || !(h / 2.0 < bound) {
        return Err(CliError::Config(format!("h = {h} must be positive with h/2 below {bound}")));
    }
    let settings = cfg.settings()?;
    let curve = sweep_k(&profile, h / 2.0, &settings)?;
    write_dispersion(out, &curve, &settings.material)?;
    Ok(curve)
}

pub fn dispersion_file_name(h: f64) -> String {
    format!("dispersion_h{h}.csv")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub summary: PathBuf,
    pub curves: Vec<PathBuf>,
    pub prediction: Option<PathBuf>,
    pub notes: Vec<String>,
}

/// Thickness sweep, thickest first. The summary row of each thickness is
/// written as soon as its curve is complete.
pub fn sweep(cfg: &ExperimentConfig, dir: &Path) -> Result<SweepReport, CliError> {
    let profile = cfg.profile()?;
    let settings = cfg.settings()?;
    fs::create_dir_all(dir)?;
    let mut notes = Vec::new();

    let pred = if settings.operator == OperatorKind::Lame {
        match predict(&profile, &settings.material) {
            Ok(p) => Some(p),
            Err(e) => {
                notes.push(format!("no prediction: {e}"));
                None
            }
        }
    } else {
        None
    };
    let prediction = match &pred {
        Some(p) => {
            let path = dir.join("prediction.json");
            fs::write(&path, PredictionRecord::new(p, &settings.material).to_json() + "\n")?;
            Some(path)
        }
        None => None,
    };

    let mut eps = cfg.eps.clone();
    eps.sort_by(|a, b| b.partial_cmp(a).expect("validated thickness"));
    eps.dedup();

    let summary = dir.join("summary.csv");
    let mut rows = SummaryWriter::new(BufWriter::new(File::create(&summary)?), &settings.material)?;
    let mut curves = Vec::new();
    for e in eps {
        let curve = sweep_k(&profile, e, &settings)?;
        let path = dir.join(dispersion_file_name(2.0 * e));
        write_dispersion(BufWriter::new(File::create(&path)?), &curve, &settings.material)?;
        curves.push(path);
        curve.require_complete(settings.policy)?;
        let (k, lambda) = curve.first_mode()?;
        rows.row(e, k, lambda, pred.as_ref())?;
    }
    Ok(SweepReport { summary, curves, prediction, notes })
}

pub fn constants_report() -> String {
    let x: f64 = axishell::special::beam_characteristic_root();
    format!(
        "beam_root: {x}\nmu_bilap: {}\nz_airy: {}\n",
        axishell::beam_bilap_constant::<f64>(),
        axishell::airy_first_zero::<f64>()
    )
}
