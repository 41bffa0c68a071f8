//! `check-identities`: residuals of the symmetric-function identities and
//! the local vertex relations on seeded random draws.

use clap::Args;
use halfspace_core::lattice;
use halfspace_core::symfunc::{self, TruncationPolicy};
use halfspace_core::{par, Complex64, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{self, is_false};
use crate::error::{LabError, Status};
use crate::output::Sink;

#[derive(Args, Serialize)]
pub struct CheckArgs {
    /// Replace every per-identity threshold by this value.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<f64>,
    /// Largest part in the truncated partition sums.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    max_part: Option<u32>,
    /// Random parameter draws per identity.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    draws: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    /// Machine-readable report.
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    json: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckConfig {
    pub threshold: Option<f64>,
    pub max_part: u32,
    pub draws: usize,
    pub seed: u64,
    pub json: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { threshold: None, max_part: 12, draws: 5, seed: 1, json: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub identity: &'static str,
    pub draw: usize,
    pub params: Value,
    pub residual: f64,
    pub threshold: f64,
    pub truncation: Value,
    pub pass: bool,
}

const SYMFUNC_TOL: f64 = 1e-6;
const LATTICE_TOL: f64 = 1e-12;

fn uniform(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| rng.random_range(0.05..0.5)).collect()
}

fn small_partition(rng: &mut ChaCha8Rng) -> Partition {
    let len = rng.random_range(0..=2);
    let mut v: Vec<u32> = (0..len).map(|_| rng.random_range(1..=3)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(v).expect("sorted parts")
}

/// One draw of every identity; the draw's generator is seeded by
/// `seed` and the draw index, so reports do not depend on thread count.
fn one_draw(cfg: &CheckConfig, k: usize) -> Result<Vec<Record>, LabError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(k as u64);
    let pol = TruncationPolicy::with_max_part(cfg.max_part);
    let trunc = json!({"max_part": pol.max_part, "max_length": pol.max_length});
    let none = json!(null);
    let thr = |d: f64| cfg.threshold.unwrap_or(d);
    let mut out = Vec::new();
    let mut push = |identity, params: Value, residual: f64, tol: f64, truncation: &Value| {
        out.push(Record { identity, draw: k, params, residual, threshold: tol, truncation: truncation.clone(), pass: residual <= tol });
    };

    let (q, t): (f64, f64) = (rng.random_range(0.05..0.5), rng.random_range(0.05..0.5));
    let (x, y) = (uniform(&mut rng, 2), uniform(&mut rng, 2));
    let (nu, lam) = (small_partition(&mut rng), small_partition(&mut rng));
    let r = symfunc::check_skew_cauchy(&nu, &lam, &x, &y, q, t, &pol).map_err(LabError::domain)?;
    push("skew_cauchy", json!({"q": q, "t": t, "x": x, "y": y, "nu": nu.parts(), "lambda": lam.parts()}), r, thr(SYMFUNC_TOL), &trunc);

    let x3 = uniform(&mut rng, 3);
    let r = symfunc::check_littlewood(&x3, q, t, &pol).map_err(LabError::domain)?;
    push("littlewood", json!({"q": q, "t": t, "x": x3}), r, thr(SYMFUNC_TOL), &trunc);

    let r = symfunc::check_skew_littlewood(&lam, &x3, q, t, &pol).map_err(LabError::domain)?;
    push("skew_littlewood", json!({"q": q, "t": t, "x": x3, "lambda": lam.parts()}), r, thr(SYMFUNC_TOL), &trunc);

    for n in [2usize, 4] {
        let xs = uniform(&mut rng, n);
        let u = Complex64::from_polar(rng.random_range(0.0..1.0), rng.random_range(0.0..std::f64::consts::TAU));
        let p = json!({"q": q, "t": t, "x": xs, "u": [u.re, u.im]});
        let r = symfunc::check_refined_littlewood(n, u, &xs, q, t, &pol).map_err(LabError::domain)?;
        push(if n == 2 { "refined_littlewood_n2" } else { "refined_littlewood_n4" }, p.clone(), r, thr(SYMFUNC_TOL), &trunc);
        let r = symfunc::check_mm_schur_relation(n, u, &xs, q, t, &pol).map_err(LabError::domain)?;
        push(if n == 2 { "macdonald_schur_relation_n2" } else { "macdonald_schur_relation_n4" }, p, r, thr(SYMFUNC_TOL), &trunc);
    }

    let (ax, ay, az, t): (f64, f64, f64, f64) = (rng.random(), rng.random(), rng.random(), rng.random());
    let p = json!({"ax": ax, "ay": ay, "az": az, "t": t});
    push("six_vertex_yang_baxter", p, lattice::verify_ybe_sixvertex(ax, ay, az, t), thr(LATTICE_TOL), &none);
    push("reflection", json!({"ax": ax, "ay": ay, "t": t}), lattice::verify_reflection(ax, ay, t), thr(LATTICE_TOL), &none);
    let (a, b): (f64, f64) = (rng.random_range(0.01..1.0), rng.random_range(0.01..1.0));
    let m = rng.random_range(0..=12u32);
    let n = (m as i64 + rng.random_range(-2..=2i64)).clamp(0, 12) as u32;
    let r = lattice::verify_tboson_ybe(a, b, t, m, n).map_err(LabError::domain)?;
    push("t_boson_rll", json!({"a": a, "b": b, "t": t, "m": m, "n": n}), r, thr(LATTICE_TOL), &none);
    let bn = rng.random_range(0..=12u32);
    push("boundary_relation", json!({"a": ax, "t": t, "n": bn}), lattice::verify_boundary_relation(ax, t, bn), thr(LATTICE_TOL), &none);
    let r = lattice::verify_single_row(a, t, 6, 4);
    push("single_row_operators", json!({"a": a, "t": t}), r, thr(LATTICE_TOL), &json!({"max_part": 6, "max_length": 4}));
    Ok(out)
}

pub fn records(cfg: &CheckConfig) -> Result<Vec<Record>, LabError> {
    let per_draw = par::map_range(cfg.draws, |k| one_draw(cfg, k));
    let mut all = Vec::new();
    for d in per_draw {
        all.extend(d?);
    }
    Ok(all)
}

pub fn run(args: &CheckArgs, file: Option<&Value>, out: &Sink) -> Result<Status, LabError> {
    let cfg: CheckConfig = config::resolve(file, args)?;
    if cfg.draws == 0 {
        return Err(LabError::Usage("draws must be positive".into()));
    }
    if matches!(cfg.threshold, Some(t) if !(t >= 0.0)) {
        return Err(LabError::Usage("threshold must be non-negative".into()));
    }
    let recs = records(&cfg)?;
    let pass = recs.iter().all(|r| r.pass);
    let failures: Vec<String> = recs.iter().filter(|r| !r.pass).map(|r| format!("{} (draw {})", r.identity, r.draw)).collect();
    if cfg.json {
        out.json(&json!({
            "command": "check-identities",
            "config": cfg,
            "pass": pass,
            "failures": failures,
            "records": recs,
        }))?;
    } else {
        let mut s = format!("# config: {}\n", serde_json::to_string(&cfg).expect("plain config"));
        let mut names: Vec<&str> = Vec::new();
        for r in &recs {
            if !names.contains(&r.identity) {
                names.push(r.identity);
            }
        }
        for name in names {
            let rows: Vec<&Record> = recs.iter().filter(|r| r.identity == name).collect();
            let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
            let ok = rows.iter().all(|r| r.pass);
            let trunc = &rows[0].truncation;
            s += &format!(
                "{} {name}: max residual {worst:.3e} over {} draws (threshold {:.1e}, truncation {trunc})\n",
                if ok { "PASS" } else { "FAIL" },
                rows.len(),
                rows[0].threshold
            );
        }
        for f in &failures {
            s += &format!("failed: {f}\n");
        }
        out.text(&s)?;
    }
    Ok(Status::from_pass(pass))
}
