//! The stochastic six-vertex model on the half quadrant `{1 ≤ x ≤ y}`,
//! t-boson vertex weights, and residual checks of the local relations
//! (Yang–Baxter, reflection, boundary) they satisfy.
//!
//! Vertex `(x, y)` sits in row `y`, column `x`. Its inputs are the west edge
//! `i1` (the east output of `(x-1, y)`, or a path entering the row when
//! `x = 1`) and the south edge `i2` (the north output of `(x, y-1)`);
//! outputs are east `j1` and north `j2`. The diagonal vertex `(y, y)` is a
//! corner with one input (west) and one output (north), `j = 1 - i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::halfspace::{SupportDistribution, SupportVector};
use crate::numeric::Scalar;
use crate::par;
use crate::partitions::{enumerate_partitions, Partition};
use crate::symfunc::{skew_p_one, skew_q_one, ModelParams};

/// Size limit for [`enumerate_exact`].
pub const ENUMERATE_MAX_N: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("vertex ({x}, {y}) lies outside the triangle of size {n}")]
    OutsideTriangle { x: usize, y: usize, n: usize },
    #[error("exact enumeration is limited to n <= {ENUMERATE_MAX_N}, got {0}")]
    TooLarge(usize),
    #[error("configuration breaks a vertex rule at ({x}, {y})")]
    Inconsistent { x: usize, y: usize },
}

/// Edge occupations around a vertex: west, south in; east, north out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexState {
    pub i1: u8,
    pub i2: u8,
    pub j1: u8,
    pub j2: u8,
}

impl VertexState {
    pub const fn new(i1: u8, i2: u8, j1: u8, j2: u8) -> Self {
        VertexState { i1, i2, j1, j2 }
    }

    pub fn conserving(&self) -> bool {
        self.i1 + self.i2 == self.j1 + self.j2
    }

    /// All sixteen binary states.
    pub fn all() -> impl Iterator<Item = VertexState> {
        (0..16u8).map(|m| VertexState::new(m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1))
    }

    fn glyph(&self) -> char {
        match (self.i1, self.i2, self.j1, self.j2) {
            (0, 0, 0, 0) => '.',
            (1, 1, 1, 1) => '+',
            (1, 0, 1, 0) => '-',
            (0, 1, 0, 1) => '|',
            (1, 0, 0, 1) => 'J',
            (0, 1, 1, 0) => 'r',
            _ => '?',
        }
    }
}

/// Stochastic six-vertex weight with spectral parameter `u = a_x a_y`.
pub fn bulk_weight<S: Scalar>(s: VertexState, axy: &S, t: &S) -> S {
    let one = S::one();
    let den = one.clone() - t.clone() * axy.clone();
    match (s.i1, s.i2, s.j1, s.j2) {
        (0, 0, 0, 0) | (1, 1, 1, 1) => one,
        (1, 0, 1, 0) => (one - axy.clone()) / den,
        (0, 1, 0, 1) => t.clone() * (one - axy.clone()) / den,
        (1, 0, 0, 1) => (one - t.clone()) * axy.clone() / den,
        (0, 1, 1, 0) => (one - t.clone()) / den,
        _ => S::zero(),
    }
}

/// Corner weight `δ_{j, 1-i}`.
pub fn corner_weight(i: u8, j: u8) -> f64 {
    if i <= 1 && j == 1 - i {
        1.0
    } else {
        0.0
    }
}

/// A configuration on the triangle of size `n`. Row `y` stores the north
/// outputs of `(1..=y, y)` and the east outputs of `(1..y, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixVertexConfig {
    n: usize,
    north: Vec<Vec<u8>>,
    east: Vec<Vec<u8>>,
}

fn bulk_out(i1: u8, i2: u8, j2: u8) -> Option<u8> {
    let j1 = (i1 + i2).checked_sub(j2)?;
    (j1 <= 1).then_some(j1)
}

impl SixVertexConfig {
    /// Rebuild a configuration from the north outputs of every row; east
    /// edges follow from conservation. Fails if some vertex cannot conserve.
    pub fn from_north_rows(rows: Vec<Vec<u8>>) -> Result<Self, LatticeError> {
        let n = rows.len();
        let mut east = Vec::with_capacity(n);
        for y in 1..=n {
            let row = &rows[y - 1];
            if row.len() != y || row.iter().any(|&b| b > 1) {
                return Err(LatticeError::Domain(format!("row {y} must hold {y} bits")));
            }
            let mut e = Vec::with_capacity(y - 1);
            let mut west = 1u8;
            for x in 1..y {
                let south = rows[y - 2][x - 1];
                let j1 = bulk_out(west, south, row[x - 1]).ok_or(LatticeError::Inconsistent { x, y })?;
                e.push(j1);
                west = j1;
            }
            if row[y - 1] != 1 - west {
                return Err(LatticeError::Inconsistent { x: y, y });
            }
            east.push(e);
        }
        Ok(SixVertexConfig { n, north: rows, east })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, x: usize, y: usize) -> Result<(), LatticeError> {
        if x < 1 || x > y || y > self.n {
            return Err(LatticeError::OutsideTriangle { x, y, n: self.n });
        }
        Ok(())
    }

    /// Edge states at a bulk vertex, or `(i, 0; 0, j)` at a corner.
    pub fn vertex(&self, x: usize, y: usize) -> Result<VertexState, LatticeError> {
        self.check(x, y)?;
        let west = if x == 1 { 1 } else { self.east[y - 1][x - 2] };
        if x == y {
            return Ok(VertexState::new(west, 0, 0, self.north[y - 1][x - 1]));
        }
        Ok(VertexState::new(west, self.north[y - 2][x - 1], self.east[y - 1][x - 1], self.north[y - 1][x - 1]))
    }

    /// Paths crossing the north edges of `(1..=x, y)`; `x = 0` gives 0.
    pub fn height(&self, x: usize, y: usize) -> Result<usize, LatticeError> {
        if x == 0 && (1..=self.n).contains(&y) {
            return Ok(0);
        }
        self.check(x, y)?;
        Ok(self.north[y - 1][..x].iter().map(|&b| b as usize).sum())
    }

    /// North outputs of row `y`.
    pub fn path_string(&self, y: usize) -> Result<SupportVector, LatticeError> {
        self.check(1, y)?;
        Ok(SupportVector::new(self.north[y - 1].clone()).expect("bits are binary"))
    }

    /// Every vertex conserves paths and every corner flips its input.
    pub fn audit(&self) -> Result<(), LatticeError> {
        for y in 1..=self.n {
            for x in 1..=y {
                let v = self.vertex(x, y)?;
                let ok = if x == y { corner_weight(v.i1, v.j2) == 1.0 } else { v.conserving() };
                if !ok {
                    return Err(LatticeError::Inconsistent { x, y });
                }
            }
        }
        Ok(())
    }

    /// One character per vertex, top row first. Bulk: `.` empty, `+` full,
    /// `-` and `|` straight through, `J` west-to-north, `r` south-to-east;
    /// corners: `x` absorbs, `o` emits.
    pub fn to_grid(&self) -> String {
        let mut s = String::new();
        for y in (1..=self.n).rev() {
            for x in 1..=y {
                let v = self.vertex(x, y).expect("inside");
                s.push(if x == y { if v.i1 == 1 { 'x' } else { 'o' } } else { v.glyph() });
            }
            let _ = writeln!(s);
        }
        s
    }
}

fn check_params<S: Scalar>(n: usize, params: &ModelParams<S>) -> Result<(), LatticeError> {
    if n == 0 {
        return Err(LatticeError::Domain("triangle size must be positive".into()));
    }
    if params.n() < n {
        return Err(LatticeError::Domain(format!("alphabet has {} letters, need {n}", params.n())));
    }
    if !params.is_hall_littlewood() {
        return Err(LatticeError::Domain("six-vertex weights use q = 0".into()));
    }
    Ok(())
}

/// The uniform assigned to vertex `(x, y)`: a pure function of the seed.
fn vertex_uniform(seed: u64, x: usize, y: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((x as u64) << 32) | y as u64);
    rng.random::<f64>()
}

/// Sample a configuration by sweeping anti-diagonals `x + y = 2, 3, ...`.
pub fn sample_config(n: usize, params: &ModelParams, seed: u64) -> Result<SixVertexConfig, LatticeError> {
    check_params(n, params)?;
    let (a, t) = (&params.alphabet, params.t);
    let mut north: Vec<Vec<u8>> = (1..=n).map(|y| vec![0; y]).collect();
    let mut east: Vec<Vec<u8>> = (1..=n).map(|y| vec![0; y - 1]).collect();
    for d in 2..=2 * n {
        for x in 1..=d / 2 {
            let y = d - x;
            if y > n {
                continue;
            }
            let west = if x == 1 { 1 } else { east[y - 1][x - 2] };
            if x == y {
                north[y - 1][x - 1] = 1 - west;
                continue;
            }
            let south = north[y - 2][x - 1];
            let u = a[x - 1] * a[y - 1];
            let r = vertex_uniform(seed, x, y);
            let (j1, j2) = match (west, south) {
                (0, 0) => (0, 0),
                (1, 1) => (1, 1),
                (1, 0) => if r < (1.0 - t) * u / (1.0 - t * u) { (0, 1) } else { (1, 0) },
                _ => if r < (1.0 - t) / (1.0 - t * u) { (1, 0) } else { (0, 1) },
            };
            east[y - 1][x - 1] = j1;
            north[y - 1][x - 1] = j2;
        }
    }
    Ok(SixVertexConfig { n, north, east })
}

/// Exact law of the row-`n` path string, summing over all outgoing-edge
/// choices row by row (each row's law depends only on the row below).
pub fn enumerate_exact<S: Scalar>(n: usize, params: &ModelParams<S>) -> Result<SupportDistribution<S>, LatticeError> {
    if n > ENUMERATE_MAX_N {
        return Err(LatticeError::TooLarge(n));
    }
    check_params(n, params)?;
    let (a, t) = (&params.alphabet, &params.t);
    let mut rows: HashMap<Vec<u8>, S> = HashMap::from([(vec![0u8], S::one())]);
    for y in 2..=n {
        let mut next: HashMap<Vec<u8>, S> = HashMap::new();
        for (below, w) in &rows {
            // partial rows: (bits so far, west input of the next vertex)
            let mut partial: Vec<(Vec<u8>, u8, S)> = vec![(Vec::with_capacity(y), 1, w.clone())];
            for x in 1..y {
                let u = a[x - 1].clone() * a[y - 1].clone();
                let south = below[x - 1];
                let mut grown = Vec::with_capacity(partial.len() * 2);
                for (bits, west, pw) in partial {
                    for j2 in 0..=1u8 {
                        let Some(j1) = bulk_out(west, south, j2) else { continue };
                        let c = bulk_weight(VertexState::new(west, south, j1, j2), &u, t);
                        if c.is_zero() {
                            continue;
                        }
                        let mut b = bits.clone();
                        b.push(j2);
                        grown.push((b, j1, pw.clone() * c));
                    }
                }
                partial = grown;
            }
            for (mut bits, west, pw) in partial {
                bits.push(1 - west);
                let e = next.entry(bits).or_insert_with(S::zero);
                *e = e.clone() + pw;
            }
        }
        rows = next;
    }
    let mut masses: BTreeMap<SupportVector, S> = SupportVector::all(n).into_iter().map(|s| (s, S::zero())).collect();
    for (bits, w) in rows {
        masses.insert(SupportVector::new(bits).expect("binary"), w);
    }
    Ok(SupportDistribution { masses, discarded: 0.0 })
}

/// Empirical path-string frequencies over `seeds`, with binomial standard
/// errors.
#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalLaw {
    pub n: usize,
    pub samples: usize,
    pub first_seed: u64,
    pub frequencies: BTreeMap<String, (f64, f64)>,
}

pub fn sample_path_strings(
    n: usize,
    params: &ModelParams,
    first_seed: u64,
    samples: usize,
) -> Result<EmpiricalLaw, LatticeError> {
    check_params(n, params)?;
    let strings = par::map_range(samples, |k| {
        sample_config(n, params, first_seed + k as u64)
            .and_then(|c| c.path_string(n))
            .expect("validated parameters")
    });
    let mut counts: BTreeMap<String, usize> = SupportVector::all(n).into_iter().map(|s| (s.to_string(), 0)).collect();
    for s in strings {
        *counts.get_mut(&s.to_string()).expect("all strings present") += 1;
    }
    let m = samples as f64;
    let frequencies = counts
        .into_iter()
        .map(|(k, c)| {
            let p = c as f64 / m;
            (k, (p, (p * (1.0 - p) / m).sqrt()))
        })
        .collect();
    Ok(EmpiricalLaw { n, samples, first_seed, frequencies })
}

/// Which t-boson normalization a vertex uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Black,
    Red,
}

/// t-boson weight with vertical occupancies `m_in → m_out` and horizontal
/// bits `h_in → h_out`; `a` is the row parameter. Zero unless
/// `m_in + h_in = m_out + h_out`.
pub fn tboson_weight(m_in: u32, h_in: u8, m_out: u32, h_out: u8, a: f64, t: f64, norm: Normalization) -> f64 {
    if h_in > 1 || h_out > 1 || m_in + h_in as u32 != m_out + h_out as u32 {
        return 0.0;
    }
    let absorb = 1.0 - t.powi(m_in as i32 + 1);
    match (norm, h_in, h_out) {
        (Normalization::Black, 0, 0) => 1.0,
        (Normalization::Black, 1, 0) => absorb,
        (Normalization::Black, _, _) => a,
        (Normalization::Red, 0, 0) => a,
        (Normalization::Red, 1, 0) => a * absorb,
        (Normalization::Red, _, _) => 1.0,
    }
}

fn w6(u: f64, t: f64, i1: u8, i2: u8, j1: u8, j2: u8) -> f64 {
    bulk_weight(VertexState::new(i1, i2, j1, j2), &u, &t)
}

fn bits<const K: usize>() -> impl Iterator<Item = [u8; K]> {
    (0..1u32 << K).map(|m| std::array::from_fn(|k| (m >> k & 1) as u8))
}

/// Max residual of the six-vertex Yang–Baxter equation over all boundary
/// edge choices, with the three weights at `a_z/a_y`, `a_x a_z`, `a_x a_y`.
pub fn verify_ybe_sixvertex(ax: f64, ay: f64, az: f64, t: f64) -> f64 {
    let (r, s, p) = (az / ay, ax * az, ax * ay);
    bits::<6>()
        .map(|[i1, i2, i3, j1, j2, j3]| {
            let (mut lhs, mut rhs) = (0.0, 0.0);
            for [k1, k2, k3] in bits::<3>() {
                lhs += w6(r, t, i1, i2, k1, k2) * w6(s, t, k1, i3, j1, k3) * w6(p, t, k2, k3, j2, j3);
                rhs += w6(p, t, i2, i3, k2, k3) * w6(s, t, i1, k3, k1, j3) * w6(r, t, k1, k2, j1, j2);
            }
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// Max residual of the reflection equation: two bulk vertices at `a_y/a_x`
/// and `a_x a_y` around corners.
pub fn verify_reflection(ax: f64, ay: f64, t: f64) -> f64 {
    let c = |i: u8, j: u8| corner_weight(i, j);
    let (r, p) = (ay / ax, ax * ay);
    bits::<4>()
        .map(|[i1, i2, j1, j2]| {
            let (mut lhs, mut rhs) = (0.0, 0.0);
            for [k1, k2, l1, l2] in bits::<4>() {
                lhs += w6(r, t, i1, i2, k1, k2) * c(k1, l1) * w6(p, t, k2, l1, l2, j1) * c(l2, j2);
                rhs += c(i2, k2) * w6(p, t, i1, k2, k1, l2) * c(k1, l1) * w6(r, t, l2, l1, j2, j1);
            }
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// Max residual of the RLL relation between a six-vertex weight at `ab` and
/// black t-boson rows at `1/b` and `a`, for vertical occupancies `m → n`.
pub fn verify_tboson_ybe(a: f64, b: f64, t: f64, m: u32, n: u32) -> Result<f64, LatticeError> {
    if !(a * b).is_finite() || (a * b).abs() >= 1.0 || b == 0.0 {
        return Err(LatticeError::Domain(format!("need 0 < |ab| < 1, got a={a} b={b}")));
    }
    let bk = |mi: u32, hi: u8, mo: u32, ho: u8, x: f64| tboson_weight(mi, hi, mo, ho, x, t, Normalization::Black);
    let lo = m.saturating_sub(2);
    Ok(bits::<4>()
        .map(|[i1, i2, j1, j2]| {
            let (mut lhs, mut rhs) = (0.0, 0.0);
            for [k1, k2] in bits::<2>() {
                for p in lo..=m + 2 {
                    lhs += w6(a * b, t, i1, i2, k1, k2) * bk(m, k1, p, j1, 1.0 / b) * bk(p, k2, n, j2, a);
                    rhs += bk(m, i2, p, k2, a) * bk(p, i1, n, k1, 1.0 / b) * w6(a * b, t, k1, k2, j1, j2);
                }
            }
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max))
}

/// Max residual over `(i, j)` of the boundary relation
/// `Σ_m c_m B(2m, 1-i → n, j) = Σ_m c_m R(2m, i → n, 1-j)` with
/// `c_m = ∏_{k ≤ m} (1 - t^{2k-1})`.
pub fn verify_boundary_relation(a: f64, t: f64, n: u32) -> f64 {
    let c = |m: u32| (1..=m).map(|k| 1.0 - t.powi(2 * k as i32 - 1)).product::<f64>();
    let mut worst: f64 = 0.0;
    for [i, j] in bits::<2>() {
        let (mut lhs, mut rhs) = (0.0, 0.0);
        for m in 0..=n / 2 + 1 {
            lhs += c(m) * tboson_weight(2 * m, 1 - i, n, j, a, t, Normalization::Black);
            rhs += c(m) * tboson_weight(2 * m, i, n, 1 - j, a, t, Normalization::Red);
        }
        worst = worst.max((lhs - rhs).abs());
    }
    worst
}

/// Weight of one row of t-boson vertices over columns `L, L-1, ..., 1`
/// (left to right), with column `j` carrying the multiplicity of part `j`
/// below and above.
pub fn row_transfer(
    bottom: &Partition,
    top: &Partition,
    h_left: u8,
    h_right: u8,
    a: f64,
    t: f64,
    norm: Normalization,
) -> f64 {
    let cols = bottom.part(1).max(top.part(1)) + 1;
    let mut st = [0.0f64; 2];
    st[h_left as usize] = 1.0;
    for col in (1..=cols).rev() {
        let (mb, mt) = (bottom.multiplicity(col) as u32, top.multiplicity(col) as u32);
        let mut ns = [0.0; 2];
        for h in 0..=1u8 {
            if st[h as usize] == 0.0 {
                continue;
            }
            for ho in 0..=1u8 {
                ns[ho as usize] += st[h as usize] * tboson_weight(mb, h, mt, ho, a, t, norm);
            }
        }
        st = ns;
    }
    st[h_right as usize]
}

/// Max discrepancy between single t-boson rows and one-variable skew
/// Hall–Littlewood functions over partitions with parts `≤ max_part` and at
/// most `max_len` rows: a black row (bottom `λ`, top `μ`, entering 0,
/// leaving `s`) is `1{ℓ(λ)-ℓ(μ)=s} P_{λ/μ}(a)`; a red row (bottom `μ`, top
/// `λ`, entering 1) is `Q_{λ/μ}(a)` restricted to `ℓ(λ) = ℓ(μ) + 1` when it
/// leaves 0 and to `ℓ(λ) = ℓ(μ)` when it leaves 1.
pub fn verify_single_row(a: f64, t: f64, max_part: u32, max_len: usize) -> f64 {
    let parts = enumerate_partitions(max_part, max_len, false);
    let worst = par::map_slice(&parts, |lam| {
        let mut w: f64 = 0.0;
        for mu in &parts {
            let dl = lam.len() as i64 - mu.len() as i64;
            let p = skew_p_one(lam, mu, &a, &0.0, &t);
            let q = skew_q_one(lam, mu, &a, &0.0, &t);
            for s in 0..=1u8 {
                let black = if dl == s as i64 { p } else { 0.0 };
                w = w.max((row_transfer(lam, mu, 0, s, a, t, Normalization::Black) - black).abs());
                let red = if dl == 1 - s as i64 { q } else { 0.0 };
                w = w.max((row_transfer(mu, lam, 1, s, a, t, Normalization::Red) - red).abs());
            }
        }
        w
    });
    worst.into_iter().fold(0.0, f64::max)
}

/// `Σ_{j1,j2} w(i1,i2;j1,j2)` for each input pair; all ones.
pub fn row_sums<S: Scalar>(axy: &S, t: &S) -> Vec<S> {
    bits::<2>()
        .map(|[i1, i2]| {
            bits::<2>().fold(S::zero(), |acc, [j1, j2]| acc + bulk_weight(VertexState::new(i1, i2, j1, j2), axy, t))
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use num_rational::BigRational;
    use rand::Rng;

    fn params(t: f64, a: &[f64]) -> ModelParams {
        ModelParams::hall_littlewood(t, a.to_vec()).unwrap()
    }

    #[test]
    fn weight_table() {
        let (u, t) = (0.3, 0.4);
        let w = |s| bulk_weight(s, &u, &t);
        assert!((w(VertexState::new(1, 0, 1, 0)) - 0.7 / 0.88).abs() < 1e-15);
        assert_eq!(w(VertexState::new(0, 0, 0, 0)), 1.0);
        assert!((w(VertexState::new(1, 0, 0, 1)) + w(VertexState::new(1, 0, 1, 0)) - 1.0).abs() < 1e-15);
        assert_eq!(w(VertexState::new(1, 0, 1, 1)), 0.0);
        assert_eq!(corner_weight(1, 0), 1.0);
        assert_eq!(corner_weight(0, 1), 1.0);
        assert_eq!(corner_weight(1, 1), 0.0);
        for s in row_sums(&rat(2, 7), &rat(1, 3)) {
            assert_eq!(s, rat(1, 1));
        }
    }

    // the paths of the n = 7 example configuration, as lattice points
    fn figure_paths() -> Vec<Vec<(usize, usize)>> {
        vec![
            vec![(0, 1), (1, 1)],
            vec![(0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (4, 4)],
            vec![(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (3, 5), (3, 6), (5, 6), (5, 7), (7, 7)],
            vec![(2, 2), (2, 3), (3, 3)],
            vec![(5, 5), (5, 6), (6, 6)],
            vec![(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7), (5, 7), (5, 8)],
            vec![(0, 5), (1, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 8)],
            vec![(0, 6), (1, 6), (1, 7), (2, 7), (2, 8)],
            vec![(0, 7), (1, 7), (1, 8)],
        ]
    }

    fn figure_config() -> SixVertexConfig {
        let mut rows: Vec<Vec<u8>> = (1..=7).map(|y| vec![0; y]).collect();
        for path in figure_paths() {
            for w in path.windows(2) {
                let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                if x0 == x1 && y1 == y0 + 1 {
                    rows[y0 - 1][x0 - 1] = 1;
                }
            }
        }
        SixVertexConfig::from_north_rows(rows).unwrap()
    }

    #[test]
    fn example_configuration() {
        let c = figure_config();
        c.audit().unwrap();
        assert_eq!(c.path_string(7).unwrap().bits(), &[1, 1, 1, 0, 1, 0, 0]);
        assert_eq!(c.height(7, 7).unwrap(), 4);
        assert_eq!(c.height(0, 7).unwrap(), 0);
        for x in 1..=7 {
            let d = c.height(x, 7).unwrap() - c.height(x - 1, 7).unwrap();
            assert!(d <= 1);
        }
        assert!(c.height(5, 4).is_err());
        let g = c.to_grid();
        assert_eq!(g.lines().count(), 7);
        assert_eq!(g.lines().last(), Some("x"));
        let back: SixVertexConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn inconsistent_rows_rejected() {
        // corner of row 1 must absorb the entering path
        assert!(SixVertexConfig::from_north_rows(vec![vec![1]]).is_err());
        assert!(SixVertexConfig::from_north_rows(vec![vec![0], vec![1, 0]]).is_err());
        assert!(SixVertexConfig::from_north_rows(vec![vec![0], vec![1, 1]]).is_ok());
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let p = params(0.4, &[0.5, 0.6, 0.7, 0.3, 0.8]);
        let c1 = sample_config(1, &p, 3).unwrap();
        assert_eq!(c1.path_string(1).unwrap().bits(), &[0]);
        for seed in 0..200 {
            let c = sample_config(5, &p, seed).unwrap();
            c.audit().unwrap();
            assert_eq!(c, sample_config(5, &p, seed).unwrap());
            assert_eq!(c.path_string(5).unwrap().total(), c.height(5, 5).unwrap());
        }
        assert!(sample_config(6, &p, 0).is_err());
    }

    #[test]
    fn exact_small_laws() {
        let p: ModelParams<BigRational> = ModelParams::hall_littlewood(rat(1, 3), vec![rat(1, 2), rat(2, 5), rat(3, 4)]).unwrap();
        let d1 = enumerate_exact(1, &p).unwrap();
        assert_eq!(d1.get(&"0".parse().unwrap()), rat(1, 1));
        let d2 = enumerate_exact(2, &p).unwrap();
        assert_eq!(d2.get(&"11".parse().unwrap()), rat(2, 3) * rat(1, 5) / (rat(1, 1) - rat(1, 15)));
        assert_eq!(enumerate_exact(3, &p).unwrap().total(), rat(1, 1));
        let big = ModelParams::hall_littlewood(0.3, vec![0.5; 7]).unwrap();
        assert_eq!(enumerate_exact(7, &big), Err(LatticeError::TooLarge(7)));
    }

    #[test]
    fn empirical_two_row_law() {
        let p = params(0.3, &[0.6, 0.7]);
        let law = sample_path_strings(2, &p, 0, 20_000).unwrap();
        let u = 0.42;
        let want = 0.7 * u / (1.0 - 0.3 * u);
        let (f, se) = law.frequencies["11"];
        assert!((f - want).abs() < 4.0 * se, "{f} {want} {se}");
    }

    #[test]
    fn local_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let (ax, ay, az, t): (f64, f64, f64, f64) = (rng.random(), rng.random(), rng.random(), rng.random());
            assert!(verify_ybe_sixvertex(ax, ay, az, t) < 1e-13);
            assert!(verify_reflection(ax, ay, t) < 1e-13);
            assert!(verify_ybe_sixvertex(ax, ax, az, t) < 1e-13);
            assert!(verify_reflection(ax, ax, t) < 1e-13);
        }
        assert!(verify_ybe_sixvertex(0.3, 0.5, 0.7, 0.0) < 1e-14);
        assert!(verify_reflection(0.3, 0.5, 0.0) < 1e-14);
        assert!(verify_tboson_ybe(0.4, 0.7, 0.3, 0, 0).unwrap() < 1e-14);
        assert!(verify_tboson_ybe(0.9, 1.1, 0.3, 5, 6).unwrap() < 1e-10);
        assert!(verify_tboson_ybe(2.0, 0.6, 0.3, 1, 1).is_err());
        for n in 0..12 {
            assert!(verify_boundary_relation(0.6, 0.45, n) < 1e-14);
        }
    }

    #[test]
    fn boundary_cases() {
        let (a, t) = (0.6, 0.45);
        let c = |m: u32| (1..=m).map(|k| 1.0 - f64::powi(t, 2 * k as i32 - 1)).product::<f64>();
        for n in [0u32, 2, 4] {
            let lhs: f64 = (0..=n).map(|m| c(m) * tboson_weight(2 * m, 1, n, 0, a, t, Normalization::Black)).sum();
            assert_eq!(lhs, 0.0);
            let lhs: f64 = (0..=n).map(|m| c(m) * tboson_weight(2 * m, 1, n, 1, a, t, Normalization::Black)).sum();
            assert!((lhs - a * c(n / 2)).abs() < 1e-15);
        }
        assert_eq!(tboson_weight(3, 0, 3, 0, 0.2, t, Normalization::Black), 1.0);
        assert!((tboson_weight(3, 1, 4, 0, 0.2, t, Normalization::Black) - (1.0 - t.powi(4))).abs() < 1e-16);
        assert_eq!(tboson_weight(3, 0, 3, 0, 0.2, t, Normalization::Red), 0.2);
        assert_eq!(tboson_weight(3, 0, 4, 0, 0.2, t, Normalization::Red), 0.0);
    }

    #[test]
    fn single_rows_are_skew_hall_littlewood() {
        assert!(verify_single_row(0.37, 0.41, 5, 4) < 1e-15);
    }
}
