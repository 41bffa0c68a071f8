//! Pfaffians of skew-symmetric matrices and Fredholm Pfaffians of 2×2
//! matrix-valued kernels over finite (weighted) domains.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{gauss_legendre, sign_galerkin};
use crate::par;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PfaffianError {
    #[error("Pfaffian needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error("matrix is not skew-symmetric (defect {0:e})")]
    NotSkew(f64),
    #[error("data length {len} does not match dimension {n}")]
    Shape { n: usize, len: usize },
    #[error("pairing expansion refused above dimension {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("Fredholm series is not converging: term {k} has magnitude {magnitude:e}")]
    SeriesDiverges { k: usize, magnitude: f64 },
    #[error("need k_max >= 1")]
    BadTermCount,
    #[error("Hadamard tail needs 0 <= a < b and C > 0 (a={a}, b={b}, C={c})")]
    BadTailInput { a: f64, b: f64, c: f64 },
}

/// Dense skew-symmetric matrix, row-major.
#[derive(Clone, Debug)]
pub struct SkewMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl SkewMatrix {
    /// Validates antisymmetry to 1e-13 relative to the largest entry.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self, PfaffianError> {
        if data.len() != n * n {
            return Err(PfaffianError::Shape { n, len: data.len() });
        }
        let scale = data.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
        let mut defect: f64 = 0.0;
        for i in 0..n {
            defect = defect.max(data[i * n + i].norm());
            for j in 0..i {
                defect = defect.max((data[i * n + j] + data[j * n + i]).norm());
            }
        }
        if defect > 1e-13 * scale {
            return Err(PfaffianError::NotSkew(defect / scale));
        }
        Ok(SkewMatrix { n, data })
    }

    /// Build from the strict upper triangle, read row by row.
    pub fn from_upper(n: usize, upper: &[Complex64]) -> Result<Self, PfaffianError> {
        if upper.len() != n * (n.saturating_sub(1)) / 2 {
            return Err(PfaffianError::Shape { n, len: upper.len() });
        }
        let mut data = vec![ZERO; n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                data[i * n + j] = v;
                data[j * n + i] = -v;
            }
        }
        Ok(SkewMatrix { n, data })
    }

    pub(crate) fn from_raw(n: usize, data: Vec<Complex64>) -> Self {
        SkewMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// `BᵀAB` for a square `B` (row-major).
    pub fn congruence(&self, b: &[Complex64]) -> SkewMatrix {
        let n = self.n;
        let ab = matmul(n, &self.data, b);
        let mut bt = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                bt[i * n + j] = b[j * n + i];
            }
        }
        SkewMatrix::from_raw(n, matmul(n, &bt, &ab))
    }
}

pub const PF_DEFINITION_MAX: usize = 10;

/// Pfaffian straight from the signed sum over perfect matchings.
pub fn pf_definition(a: &SkewMatrix) -> Result<Complex64, PfaffianError> {
    if a.n % 2 == 1 {
        return Err(PfaffianError::OddDimension(a.n));
    }
    if a.n > PF_DEFINITION_MAX {
        return Err(PfaffianError::TooLarge { n: a.n, max: PF_DEFINITION_MAX });
    }
    let idx: Vec<usize> = (0..a.n).collect();
    Ok(matchings(a, &idx))
}

fn matchings(a: &SkewMatrix, idx: &[usize]) -> Complex64 {
    if idx.is_empty() {
        return ONE;
    }
    let first = idx[0];
    let mut s = ZERO;
    for k in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&j| j != idx[k]).collect();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        s += a.get(first, idx[k]) * sign * matchings(a, &rest);
    }
    s
}

/// Pfaffian by skew-symmetric Gaussian elimination with partial pivoting.
pub fn pf(a: &SkewMatrix) -> Result<Complex64, PfaffianError> {
    if a.n % 2 == 1 {
        return Err(PfaffianError::OddDimension(a.n));
    }
    Ok(pf_in_place(a.n, &mut a.data.clone()))
}

pub(crate) fn pf_in_place(n: usize, m: &mut [Complex64]) -> Complex64 {
    let mut result = ONE;
    let mut k = 0;
    while k + 1 < n {
        // pivot: largest entry in row k to the right of the diagonal
        let (mut p, mut best) = (k + 1, m[k * n + k + 1].norm());
        for j in k + 2..n {
            let v = m[k * n + j].norm();
            if v > best {
                best = v;
                p = j;
            }
        }
        if p != k + 1 {
            swap_rows_cols(n, m, k + 1, p);
            result = -result;
        }
        let piv = m[k * n + k + 1];
        if piv == ZERO {
            return ZERO;
        }
        result *= piv;
        if k + 2 < n {
            let tau: Vec<Complex64> = (k + 2..n).map(|j| m[k * n + j] / piv).collect();
            let row: Vec<Complex64> = (k + 2..n).map(|j| m[(k + 1) * n + j]).collect();
            let off = k + 2;
            let width = n - off;
            // A[i][j] += tau_j A[k+1][i] - tau_i A[k+1][j]; row-parallel for large blocks
            let update = |i: usize, r: &mut [Complex64]| {
                let ti = tau[i];
                let ri = row[i];
                for j in 0..width {
                    r[off + j] += tau[j] * ri - ti * row[j];
                }
            };
            let tail = &mut m[off * n..];
            if width >= 128 {
                par::fill_rows(tail, n, update);
            } else {
                for (i, r) in tail.chunks_mut(n).enumerate() {
                    update(i, r);
                }
            }
        }
        k += 2;
    }
    result
}

fn swap_rows_cols(n: usize, m: &mut [Complex64], a: usize, b: usize) {
    for j in 0..n {
        m.swap(a * n + j, b * n + j);
    }
    for i in 0..n {
        m.swap(i * n + a, i * n + b);
    }
}

/// Determinant by LU with partial pivoting (row-major, square).
pub fn det(n: usize, data: &[Complex64]) -> Complex64 {
    let mut m = data.to_vec();
    let mut d = ONE;
    for k in 0..n {
        let (mut p, mut best) = (k, m[k * n + k].norm());
        for i in k + 1..n {
            if m[i * n + k].norm() > best {
                best = m[i * n + k].norm();
                p = i;
            }
        }
        if best == 0.0 {
            return ZERO;
        }
        if p != k {
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            d = -d;
        }
        let piv = m[k * n + k];
        d *= piv;
        for i in k + 1..n {
            let f = m[i * n + k] / piv;
            if f == ZERO {
                continue;
            }
            for j in k..n {
                let v = m[k * n + j];
                m[i * n + j] -= f * v;
            }
        }
    }
    d
}

pub(crate) fn matmul(n: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![ZERO; n * n];
    par::fill_rows(&mut c, n, |i, row| {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == ZERO {
                continue;
            }
            for j in 0..n {
                row[j] += aik * b[k * n + j];
            }
        }
    });
    c
}

/// One 2×2 kernel block `K(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct Block {
    pub k11: Complex64,
    pub k12: Complex64,
    pub k21: Complex64,
    pub k22: Complex64,
}

impl Block {
    pub fn real(k11: f64, k12: f64, k21: f64, k22: f64) -> Self {
        Block {
            k11: Complex64::new(k11, 0.0),
            k12: Complex64::new(k12, 0.0),
            k21: Complex64::new(k21, 0.0),
            k22: Complex64::new(k22, 0.0),
        }
    }

    pub fn scale(self, s: Complex64) -> Self {
        Block {
            k11: self.k11 * s,
            k12: self.k12 * s,
            k21: self.k21 * s,
            k22: self.k22 * s,
        }
    }

    pub fn max_abs(&self) -> f64 {
        [self.k11, self.k12, self.k21, self.k22]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DomainTag {
    Discrete,
    Continuous,
}

/// A 2×2 matrix-valued kernel with `K11, K22` antisymmetric and
/// `K12(u,v) = -K21(v,u)`.
pub trait SkewKernel: Sync {
    fn block(&self, u: f64, v: f64) -> Block;

    fn domain(&self) -> DomainTag;

    /// Coefficient `c` of a `c·sgn(u - v)` term contained in `K22`. Continuous
    /// domains with Gauss panels discretize that part exactly.
    fn sign_jump(&self) -> f64 {
        0.0
    }

    /// All blocks on `points × points`, row-major. Kernels with a cheaper
    /// bulk evaluation override this.
    fn blocks(&self, points: &[f64]) -> Vec<Block> {
        let n = points.len();
        let mut out = vec![Block::default(); n * n];
        par::fill_rows(&mut out, n, |i, row| {
            for (j, b) in row.iter_mut().enumerate() {
                *b = self.block(points[i], points[j]);
            }
        });
        out
    }
}

/// A kernel given by a closure, mostly for tests and quick experiments.
pub struct FnKernel<F: Fn(f64, f64) -> Block + Sync> {
    pub f: F,
    pub tag: DomainTag,
}

impl<F: Fn(f64, f64) -> Block + Sync> SkewKernel for FnKernel<F> {
    fn block(&self, u: f64, v: f64) -> Block {
        (self.f)(u, v)
    }
    fn domain(&self) -> DomainTag {
        self.tag
    }
}

/// Points with positive weights and a multiplier, so that the Fredholm
/// Pfaffian computed is `Pf[J + f·K]` on `L²(points, weights)`.
#[derive(Clone, Debug, Serialize)]
pub struct WeightedDomain {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub multiplier: Vec<Complex64>,
    /// Index ranges of Gauss–Legendre panels, with their interval lengths.
    pub panels: Vec<(usize, usize, f64)>,
}

impl WeightedDomain {
    /// Counting measure on `0..n`.
    pub fn discrete(n: usize, f: impl Fn(usize) -> Complex64) -> Self {
        WeightedDomain {
            points: (0..n).map(|u| u as f64).collect(),
            weights: vec![1.0; n],
            multiplier: (0..n).map(f).collect(),
            panels: Vec::new(),
        }
    }

    /// Composite Gauss–Legendre rule on the consecutive intervals given by
    /// `breaks`, `m` nodes per panel.
    pub fn gauss_panels(breaks: &[f64], m: usize, f: impl Fn(f64) -> Complex64) -> Self {
        let (x, w) = gauss_legendre(m);
        let mut dom = WeightedDomain {
            points: Vec::new(),
            weights: Vec::new(),
            multiplier: Vec::new(),
            panels: Vec::new(),
        };
        for ab in breaks.windows(2) {
            let (a, b) = (ab[0], ab[1]);
            let h = b - a;
            let start = dom.points.len();
            for k in 0..m {
                let p = a + 0.5 * h * (x[k] + 1.0);
                dom.points.push(p);
                dom.weights.push(0.5 * h * w[k]);
                dom.multiplier.push(f(p));
            }
            dom.panels.push((start, start + m, h));
        }
        dom
    }

    pub fn gauss(a: f64, b: f64, m: usize, f: impl Fn(f64) -> Complex64) -> Self {
        Self::gauss_panels(&[a, b], m, f)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same domain restricted to points where `keep` holds.
    pub fn restrict(&self, keep: impl Fn(f64) -> bool) -> Self {
        assert!(self.panels.is_empty(), "restriction of panel domains is not supported");
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(self.points[i])).collect();
        WeightedDomain {
            points: idx.iter().map(|&i| self.points[i]).collect(),
            weights: idx.iter().map(|&i| self.weights[i]).collect(),
            multiplier: idx.iter().map(|&i| self.multiplier[i]).collect(),
            panels: Vec::new(),
        }
    }
}

/// `D K D` in interleaved order `(x1,1), (x1,2), (x2,1), ...` with
/// `D = diag(sqrt(w_i f_i))`; the `J` part is not included.
pub fn assemble_scaled(kernel: &dyn SkewKernel, dom: &WeightedDomain) -> SkewMatrix {
    let n = dom.len();
    let blocks = kernel.blocks(&dom.points);
    let d: Vec<Complex64> = (0..n)
        .map(|i| (dom.multiplier[i] * dom.weights[i]).sqrt())
        .collect();
    let c = kernel.sign_jump();
    let galerkin: Vec<(usize, usize, Vec<f64>)> = if c != 0.0 && kernel.domain() == DomainTag::Continuous {
        dom.panels
            .iter()
            .map(|&(s, e, h)| {
                let g = sign_galerkin(e - s);
                (s, e, g.into_iter().map(|v| 0.5 * h * v).collect())
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut m = vec![ZERO; 4 * n * n];
    let w = 2 * n;
    par::fill_rows(&mut m, 2 * w, |i, rows| {
        let (r1, r2) = rows.split_at_mut(w);
        for j in 0..n {
            let b = blocks[i * n + j];
            let s = d[i] * d[j];
            r1[2 * j] = b.k11 * s;
            r1[2 * j + 1] = b.k12 * s;
            r2[2 * j] = b.k21 * s;
            r2[2 * j + 1] = b.k22 * s;
        }
    });
    for (s, e, g) in &galerkin {
        let k = e - s;
        for a in 0..k {
            for b in 0..k {
                let (i, j) = (s + a, s + b);
                let sg = (dom.points[i] - dom.points[j]).signum() * f64::from(i != j);
                let nodal = (dom.weights[i] * dom.weights[j]).sqrt();
                let corr = c * (g[a * k + b] / nodal - sg);
                m[(2 * i + 1) * w + 2 * j + 1] += d[i] * d[j] * corr;
            }
        }
    }
    SkewMatrix::from_raw(w, m)
}

fn add_j(m: &mut SkewMatrix) {
    let w = m.n;
    for i in 0..w / 2 {
        m.data[(2 * i) * w + 2 * i + 1] += ONE;
        m.data[(2 * i + 1) * w + 2 * i] -= ONE;
    }
}

/// Result of a Fredholm Pfaffian evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct FredholmResult {
    pub value: Complex64,
    pub terms_used: usize,
    pub tail_bound: f64,
    /// Magnitudes of the series terms `k = 0..terms_used` (series path only).
    pub term_magnitudes: Vec<f64>,
}

impl FredholmResult {
    /// Real part, after checking the imaginary part is quadrature dust.
    pub fn real(&self) -> f64 {
        debug_assert!(
            self.value.im.abs() < 1e-9 * self.value.re.abs().max(1.0),
            "imaginary residue {:e}",
            self.value.im
        );
        self.value.re
    }

    /// Diagnostic dump of the term magnitudes.
    pub fn terms_csv(&self) -> String {
        let mut s = String::from("k,magnitude\n");
        for (k, m) in self.term_magnitudes.iter().enumerate() {
            s.push_str(&format!("{k},{m:e}\n"));
        }
        s
    }
}

/// `Pf[J + f·K]` as the Pfaffian of the assembled `2N × 2N` matrix.
pub fn fredholm_pf_matrix(kernel: &dyn SkewKernel, dom: &WeightedDomain) -> FredholmResult {
    let mut m = assemble_scaled(kernel, dom);
    add_j(&mut m);
    let n = m.n;
    let value = pf_in_place(n, &mut m.data);
    FredholmResult {
        value,
        terms_used: dom.len(),
        // every term of a finite domain is included
        tail_bound: 0.0,
        term_magnitudes: Vec::new(),
    }
}

// Σ_{j>k} e_j(c) with c_i = sqrt(|row(i,1)| |row(i,2)|): Hadamard bounds every
// principal Pfaffian minor by the product of its c_i.
fn hadamard_terms(m: &SkewMatrix, npts: usize) -> Vec<f64> {
    let w = m.n;
    let c: Vec<f64> = (0..npts)
        .map(|i| {
            let r = |r: usize| m.data[r * w..(r + 1) * w].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            (r(2 * i) * r(2 * i + 1)).sqrt()
        })
        .collect();
    let mut e = vec![0.0; npts + 1];
    e[0] = 1.0;
    for (i, ci) in c.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += e[j - 1] * ci;
        }
    }
    e
}

/// `Pf[J + f·K]` from the series `1 + Σ_k (1/k!) Σ Pf(K(x_i,x_j)) ∏ f w`,
/// truncated at `k_max` terms. The terms are extracted from the power sums
/// `tr((JB)^m)` through `Pf(J + zB) = exp(-½ Σ z^m tr((JB)^m)/m)`, which never
/// touches the elimination used by [`fredholm_pf_matrix`].
pub fn fredholm_pf(
    kernel: &dyn SkewKernel,
    dom: &WeightedDomain,
    k_max: usize,
    term_tol: f64,
) -> Result<FredholmResult, PfaffianError> {
    if k_max == 0 {
        return Err(PfaffianError::BadTermCount);
    }
    let b = assemble_scaled(kernel, dom);
    let npts = dom.len();
    let kk = k_max.min(npts);
    let w = b.n;
    // A = J B: row (2i) of A is row (2i+1) of B, row (2i+1) is -row (2i)
    let mut a = vec![ZERO; w * w];
    for i in 0..npts {
        for j in 0..w {
            a[(2 * i) * w + j] = b.data[(2 * i + 1) * w + j];
            a[(2 * i + 1) * w + j] = -b.data[(2 * i) * w + j];
        }
    }
    let mut s = vec![ZERO; kk + 1];
    let mut power = a.clone();
    for m in 1..=kk {
        if m > 1 {
            power = matmul(w, &power, &a);
        }
        let tr: Complex64 = (0..w).map(|i| power[i * w + i]).sum();
        s[m] = -tr / (2.0 * m as f64);
    }
    let mut c = vec![ZERO; kk + 1];
    c[0] = ONE;
    for k in 1..=kk {
        let mut acc = ZERO;
        for j in 1..=k {
            acc += s[j] * c[k - j] * j as f64;
        }
        c[k] = acc / k as f64;
    }
    let e = hadamard_terms(&b, npts);
    let tail: f64 = e.iter().skip(kk + 1).sum();
    let mags: Vec<f64> = c.iter().map(|z| z.norm()).collect();
    if kk < npts && tail > term_tol {
        let last = mags[kk];
        let prev = mags[kk - 1];
        if last > term_tol && last >= prev {
            return Err(PfaffianError::SeriesDiverges { k: kk, magnitude: last });
        }
    }
    Ok(FredholmResult {
        value: c.iter().sum(),
        terms_used: kk,
        tail_bound: if kk == npts { 0.0 } else { tail },
        term_magnitudes: mags,
    })
}

/// Bound on the k-th Fredholm term for a kernel with
/// `|K_ij(x,y)| ≤ C e^{-(b-a)x}`-type decay on `Z_{≥0}`:
/// `(2k)^{k/2} C^k S^k / k!` with `S = Σ_x e^{-(b-a)x} = 1/(1-e^{-(b-a)})`.
pub fn hadamard_tail(c: f64, a: f64, b: f64, k: u32) -> Result<f64, PfaffianError> {
    if !(a >= 0.0 && a < b && c > 0.0) {
        return Err(PfaffianError::BadTailInput { a, b, c });
    }
    let s = 1.0 / (1.0 - (-(b - a)).exp());
    let kf = k as f64;
    let log = 0.5 * kf * (2.0 * kf).ln() + kf * (c * s).ln() - ln_factorial(k);
    Ok(if k == 0 { 1.0 } else { log.exp() })
}

fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_skew(n: usize, rng: &mut ChaCha8Rng) -> SkewMatrix {
        let upper: Vec<Complex64> = (0..n * (n - 1) / 2)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        SkewMatrix::from_upper(n, &upper).unwrap()
    }

    #[test]
    fn definition_examples() {
        let a = SkewMatrix::from_upper(2, &[c(3.5)]).unwrap();
        assert_eq!(pf_definition(&a).unwrap(), c(3.5));
        let (a_, b_, c_, d_, e_, f_) = (2.0, 3.0, 5.0, 7.0, 11.0, 13.0);
        let m = SkewMatrix::from_upper(4, &[c(a_), c(b_), c(c_), c(d_), c(e_), c(f_)]).unwrap();
        let want = a_ * f_ - b_ * e_ + c_ * d_;
        assert_eq!(pf_definition(&m).unwrap(), c(want));
        assert!((pf(&m).unwrap() - c(want)).norm() < 1e-13);
        let mut j = vec![ZERO; 36];
        for i in 0..3 {
            j[(2 * i) * 6 + 2 * i + 1] = ONE;
            j[(2 * i + 1) * 6 + 2 * i] = -ONE;
        }
        let j = SkewMatrix::new(6, j).unwrap();
        assert_eq!(pf_definition(&j).unwrap(), ONE);
        assert_eq!(pf(&j).unwrap(), ONE);
    }

    #[test]
    fn rejects_bad_input() {
        let m = SkewMatrix::from_upper(3, &[c(1.0), c(2.0), c(3.0)]).unwrap();
        assert_eq!(pf(&m), Err(PfaffianError::OddDimension(3)));
        assert!(SkewMatrix::new(2, vec![ZERO, ONE, ONE, ZERO]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(pf_definition(&random_skew(12, &mut rng)), Err(PfaffianError::TooLarge { .. })));
    }

    #[test]
    fn elimination_matches_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_skew(8, &mut rng);
            let (x, y) = (pf(&a).unwrap(), pf_definition(&a).unwrap());
            assert!((x - y).norm() < 1e-12 * y.norm().max(1.0));
        }
    }

    #[test]
    fn equal_pairs_give_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_skew(6, &mut rng);
        // duplicate index 0 into index 2 (rows and columns)
        let n = 6;
        let mut d = a.data().to_vec();
        for j in 0..n {
            d[2 * n + j] = d[j];
        }
        for i in 0..n {
            d[i * n + 2] = d[i * n];
        }
        d[2 * n + 2] = ZERO;
        d[2 * n] = ZERO;
        d[2] = ZERO;
        let m = SkewMatrix::new(n, d).unwrap();
        assert!(pf(&m).unwrap().norm() < 1e-12);
    }

    #[test]
    fn zero_kernel_and_single_point() {
        let k = FnKernel { f: |_, _| Block::default(), tag: DomainTag::Discrete };
        let dom = WeightedDomain::discrete(5, |_| c(-0.5));
        assert_eq!(fredholm_pf_matrix(&k, &dom).value, ONE);
        assert_eq!(fredholm_pf(&k, &dom, 20, 1e-12).unwrap().value, ONE);
        let k = FnKernel { f: |u, v| Block::real(0.0, 0.3 + u, -(0.3 + v), 0.0), tag: DomainTag::Discrete };
        let dom = WeightedDomain::discrete(1, |_| c(-0.7));
        let want = 1.0 - 0.7 * 0.3;
        assert!((fredholm_pf_matrix(&k, &dom).value - c(want)).norm() < 1e-15);
        assert!((fredholm_pf(&k, &dom, 4, 1e-12).unwrap().value - c(want)).norm() < 1e-15);
    }

    #[test]
    fn hadamard_tail_examples() {
        let s = 1.0 / (1.0 - (-1.5f64).exp());
        assert!((hadamard_tail(0.4, 0.5, 2.0, 1).unwrap() - 2f64.sqrt() * 0.4 * s).abs() < 1e-14);
        assert!(hadamard_tail(1.0, 0.0, 1.0, 3).unwrap() > hadamard_tail(1.0, 0.0, 2.0, 3).unwrap());
        assert!(hadamard_tail(1.0, 2.0, 1.0, 3).is_err());
    }
}
