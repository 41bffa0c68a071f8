//! `tabulate fgoe` and `tabulate kpz`: CSV tables with the discretization
//! fingerprint of every value.

use clap::{Args, Subcommand};
use halfspace_core::kernels::{self, Discretization, KpzDiscretization};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{self, is_false};
use crate::error::{LabError, Status};
use crate::output::{num, Sink};

#[derive(Subcommand)]
pub enum TabulateCommand {
    /// The GOE Tracy-Widom distribution function on a grid.
    Fgoe(FgoeArgs),
    /// The KPZ Laplace functional over a grid of ζ < 0.
    Kpz(KpzArgs),
}

#[derive(Args, Serialize)]
pub struct FgoeArgs {
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    to: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    step: Option<f64>,
    /// Use the refined discretization.
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    refined: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FgoeConfig {
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub refined: bool,
}

impl Default for FgoeConfig {
    fn default() -> Self {
        FgoeConfig { from: -6.0, to: 4.0, step: 0.1, refined: false }
    }
}

#[derive(Args, Serialize)]
pub struct KpzArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_hat: Option<f64>,
    /// Comma-separated ζ values, each negative.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    zeta_grid: Vec<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    refined: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KpzConfig {
    pub tau_hat: f64,
    pub zeta_grid: Vec<f64>,
    pub refined: bool,
}

impl Default for KpzConfig {
    fn default() -> Self {
        KpzConfig { tau_hat: 1.0, zeta_grid: vec![-0.5, -1.0, -2.0], refined: false }
    }
}

pub fn run(cmd: TabulateCommand, file: Option<&Value>, out: &Sink) -> Result<Status, LabError> {
    match cmd {
        TabulateCommand::Fgoe(a) => fgoe(config::resolve(file, &a)?, out),
        TabulateCommand::Kpz(a) => kpz(config::resolve(file, &a)?, out),
    }
}

/// `from, from + step, ...` up to `to` inclusive (within rounding).
pub fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, LabError> {
    if !(step > 0.0) || !(to >= from) || !from.is_finite() || !to.is_finite() {
        return Err(LabError::Usage("need finite from <= to and step > 0".into()));
    }
    let k = ((to - from) / step + 1e-9).floor() as usize;
    if k > 100_000 {
        return Err(LabError::Usage("grid too large".into()));
    }
    Ok((0..=k).map(|i| from + i as f64 * step).collect())
}

fn fgoe(cfg: FgoeConfig, out: &Sink) -> Result<Status, LabError> {
    let xs = grid(cfg.from, cfg.to, cfg.step)?;
    let mut rows = Vec::with_capacity(xs.len());
    for x in xs {
        let v = kernels::f_goe_with(x, &Discretization::f_goe(x, cfg.refined)).map_err(LabError::domain)?;
        rows.push(vec![num(x), num(v.value), num(v.imag_residue), v.fingerprint]);
    }
    out.csv(&["x", "f_goe", "imag_residue", "fingerprint"], &rows, &json!({"command": "tabulate fgoe", "config": cfg}))?;
    Ok(Status::Success)
}

fn kpz(cfg: KpzConfig, out: &Sink) -> Result<Status, LabError> {
    if cfg.zeta_grid.is_empty() {
        return Err(LabError::Usage("zeta grid is empty".into()));
    }
    let disc = if cfg.refined { KpzDiscretization::refined() } else { KpzDiscretization::default() };
    let mut rows = Vec::with_capacity(cfg.zeta_grid.len());
    for &z in &cfg.zeta_grid {
        let v = kernels::kpz_laplace_with(z, cfg.tau_hat, &disc).map_err(LabError::domain)?;
        rows.push(vec![num(z), num(cfg.tau_hat), num(v.value), num(v.imag_residue), v.fingerprint]);
    }
    out.csv(
        &["zeta", "tau_hat", "value", "imag_residue", "fingerprint"],
        &rows,
        &json!({"command": "tabulate kpz", "config": cfg, "discretization": disc}),
    )?;
    Ok(Status::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_the_endpoint() {
        let g = grid(-6.0, 4.0, 0.1).unwrap();
        assert_eq!(g.len(), 101);
        assert!((g[100] - 4.0).abs() < 1e-12);
        assert!(grid(1.0, 0.0, 0.1).is_err());
        assert!(grid(0.0, 1.0, 0.0).is_err());
    }
}
