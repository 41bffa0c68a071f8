//! `simulate asep` and `simulate sixvertex`.

use clap::{Args, Subcommand};
use halfspace_core::asep::{self, ASEPRates, McEstimate};
use halfspace_core::halfspace::support_distribution;
use halfspace_core::lattice::{self, ENUMERATE_MAX_N};
use halfspace_core::numeric::Scalar;
use halfspace_core::symfunc::ModelParams;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::{exact_params, fill_alphabet};
use crate::config::{self, is_false};
use crate::error::{LabError, Status};
use crate::output::{num, Sink};

#[derive(Subcommand)]
pub enum SimulateCommand {
    /// Half-line ASEP from the empty state: one `N(τ)` per seed.
    Asep(AsepArgs),
    /// Path strings of the half-quadrant six-vertex model.
    Sixvertex(SixVertexArgs),
}

#[derive(Args, Serialize)]
pub struct AsepArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    tau: Option<f64>,
    /// Asymmetry; rates are the preset ones for this `t`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    runs: Option<usize>,
    /// Seeds are `first_seed .. first_seed + runs`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    first_seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AsepConfig {
    pub tau: f64,
    pub t: f64,
    pub runs: usize,
    pub first_seed: u64,
}

impl Default for AsepConfig {
    fn default() -> Self {
        AsepConfig { tau: 1.0, t: 0.4, runs: 1000, first_seed: 1 }
    }
}

#[derive(Args, Serialize)]
pub struct SixVertexArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    /// Exact law by enumeration (rational arithmetic) instead of sampling.
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    exact: bool,
    /// `p/q` or decimal.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<String>,
    /// Comma-separated alphabet, one entry per row (default all 1/2).
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    a: Vec<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    first_seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SixVertexConfig {
    pub n: usize,
    pub exact: bool,
    pub t: String,
    pub a: Vec<String>,
    pub samples: usize,
    pub first_seed: u64,
}

impl Default for SixVertexConfig {
    fn default() -> Self {
        SixVertexConfig { n: 4, exact: false, t: "1/2".into(), a: Vec::new(), samples: 10_000, first_seed: 1 }
    }
}

pub fn run(cmd: SimulateCommand, file: Option<&Value>, out: &Sink) -> Result<Status, LabError> {
    match cmd {
        SimulateCommand::Asep(a) => run_asep(config::resolve(file, &a)?, out),
        SimulateCommand::Sixvertex(a) => run_sixvertex(config::resolve(file, &a)?, out),
    }
}

fn run_asep(cfg: AsepConfig, out: &Sink) -> Result<Status, LabError> {
    if cfg.runs == 0 {
        return Err(LabError::Usage("runs must be positive".into()));
    }
    let rates = ASEPRates::preset(cfg.t).map_err(LabError::domain)?;
    let ns = asep::sample_currents(cfg.tau, &rates, cfg.first_seed, cfg.runs).map_err(LabError::domain)?;
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let est = McEstimate::from_samples(&xs, cfg.first_seed);
    let mut rows: Vec<Vec<String>> = ns
        .iter()
        .enumerate()
        .map(|(k, n)| vec!["sample".into(), (cfg.first_seed + k as u64).to_string(), n.to_string(), String::new(), String::new()])
        .collect();
    rows.push(vec![
        "summary".into(),
        cfg.first_seed.to_string(),
        String::new(),
        num(est.mean),
        num(est.se),
    ]);
    let doc = json!({"command": "simulate asep", "config": cfg, "rates": rates});
    out.csv(&["kind", "seed", "n_current", "mean", "se"], &rows, &doc)?;
    Ok(Status::Success)
}

fn run_sixvertex(mut cfg: SixVertexConfig, out: &Sink) -> Result<Status, LabError> {
    if cfg.n == 0 {
        return Err(LabError::Usage("n must be positive".into()));
    }
    fill_alphabet(&mut cfg.a, cfg.n);
    let params = exact_params(cfg.n, &cfg.t, &cfg.a)?;
    let mut law = Map::new();
    if cfg.exact {
        if cfg.n > ENUMERATE_MAX_N {
            return Err(LabError::Usage(format!("exact enumeration supports n <= {ENUMERATE_MAX_N}")));
        }
        let six = lattice::enumerate_exact(cfg.n, &params).map_err(LabError::domain)?;
        // the second route to the same law, reported alongside
        let hl = support_distribution(cfg.n, &params).map_err(LabError::domain)?;
        for (s, p) in &six.masses {
            law.insert(
                s.to_string(),
                json!({"exact": p.to_string(), "value": p.to_f64(), "matches_support_law": hl.get(s) == *p}),
            );
        }
    } else {
        if cfg.samples == 0 {
            return Err(LabError::Usage("samples must be positive".into()));
        }
        let t = params.t.to_f64();
        let a: Vec<f64> = params.alphabet.iter().map(|v| v.to_f64()).collect();
        let fp = ModelParams::hall_littlewood(t, a).map_err(LabError::domain)?;
        let emp = lattice::sample_path_strings(cfg.n, &fp, cfg.first_seed, cfg.samples).map_err(LabError::domain)?;
        for (s, (p, se)) in emp.frequencies {
            law.insert(s, json!({"frequency": p, "se": se}));
        }
    }
    out.json(&json!({"command": "simulate sixvertex", "config": cfg, "distribution": law}))?;
    Ok(Status::Success)
}
