//! CSV and JSON writers. Numbers use the shortest round-trip decimal form so
//! files are byte-stable for identical inputs.

use std::io::Write;

use axishell::{Curve, Material, Prediction};
use serde::Serialize;

use crate::CliError;

pub const DISPERSION_HEADER: [&str; 4] = ["k", "lambda", "lambda_over_e_rho", "residual"];
pub const SUMMARY_HEADER: [&str; 8] = ["h", "eps", "k_star", "lambda", "lambda_over_e_rho", "lambda_pred", "k_pred", "residual"];

fn num(x: f64) -> String {
    format!("{x}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// One row per mode, then a `#` footer with the minimum and the stop reason.
pub fn write_dispersion<W: Write>(out: W, curve: &Curve, material: &Material) -> Result<(), CliError> {
    let scale = material.wave_speed_sq();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DISPERSION_HEADER)?;
    for p in &curve.entries {
        w.write_record([p.k.to_string(), num(p.lambda), num(p.lambda / scale), num(p.residual)])?;
    }
    w.flush()?;
    let mut inner = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    writeln!(
        inner,
        "# argmin k={} lambda={} lambda_over_e_rho={} stop_reason={}",
        curve.argmin_k,
        num(curve.lambda_min),
        num(curve.lambda_min / scale),
        curve.stop_reason.as_str()
    )?;
    inner.flush()?;
    Ok(())
}

/// Sweep summary writer; every row is flushed as soon as it is known.
pub struct SummaryWriter<W: Write> {
    w: csv::Writer<W>,
    scale: f64,
}

impl<W: Write> SummaryWriter<W> {
    pub fn new(out: W, material: &Material) -> Result<Self, CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SUMMARY_HEADER)?;
        w.flush()?;
        Ok(Self { w, scale: material.wave_speed_sq() })
    }

    pub fn row(&mut self, eps: f64, k: u32, lambda: f64, pred: Option<&Prediction>) -> Result<(), CliError> {
        let lambda_pred = pred.and_then(|p| p.lambda_at(eps));
        let k_pred = pred.and_then(|p| p.k_at(eps));
        let residual = pred.and_then(|p| p.residual(eps, lambda));
        self.w.write_record([
            num(2.0 * eps),
            num(eps),
            k.to_string(),
            num(lambda),
            num(lambda / self.scale),
            opt(lambda_pred),
            opt(k_pred),
            opt(residual),
        ])?;
        self.w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionRecord {
    pub class: String,
    pub minimizers: Vec<f64>,
    pub young: f64,
    pub nu: f64,
    pub rho: f64,
    pub e_over_rho: f64,
    pub gamma: Option<f64>,
    pub beta: Option<f64>,
    pub a0: f64,
    pub a1: Option<f64>,
    pub delta: Option<f64>,
    pub a0_over_e_rho: f64,
    pub a1_over_e_rho: Option<f64>,
    pub coefficients_unavailable: bool,
    pub mu_bilap: Option<f64>,
    pub z_airy: Option<f64>,
    pub z0: Option<f64>,
    pub g: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub plate_mode: Option<u32>,
}

impl PredictionRecord {
    pub fn new(p: &Prediction, m: &Material) -> Self {
        let s = m.wave_speed_sq();
        let c = p.constants;
        PredictionRecord {
            class: p.class.tag.to_string(),
            minimizers: p.class.minimizers.clone(),
            young: m.young,
            nu: m.nu,
            rho: m.rho,
            e_over_rho: s,
            gamma: p.k_law.map(|l| l.gamma),
            beta: p.k_law.map(|l| l.beta),
            a0: p.lambda_law.a0,
            a1: p.lambda_law.a1,
            delta: p.lambda_law.delta,
            a0_over_e_rho: p.lambda_law.a0 / s,
            a1_over_e_rho: p.lambda_law.a1.map(|a| a / s),
            coefficients_unavailable: p.coefficients_unavailable,
            mu_bilap: c.mu_bilap,
            z_airy: c.z_airy,
            z0: c.z0,
            g: c.g,
            b: c.b,
            c: c.c,
            plate_mode: c.plate_mode,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}
