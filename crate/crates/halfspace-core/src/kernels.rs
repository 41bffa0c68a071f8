//! Correlation kernels and the Fredholm Pfaffians built from them.
//!
//! Discrete kernels (`K^∁` of the Pfaffian Schur point process shifted by
//! `n`, and its ASEP limit) share one structure: double contour integrals of
//! `φ(z)φ(w)` times a rational factor, where `φ` is either
//! `f(z) = ∏ (z-a_j)/(1-a_j z)` or `g(z) = exp(c(z+1)/(z-1))`. Both are
//! analytic in the unit disc, so every residue-form integral is a finite
//! combination of Taylor coefficients of `φ`. The default evaluation uses
//! those coefficients; trapezoid quadrature on circles is kept as an
//! independent path.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::gauss_legendre;
use crate::par;
use crate::pfaffian::{
    fredholm_pf_matrix, Block, DomainTag, FredholmResult, PfaffianError, SkewKernel, WeightedDomain,
};
use crate::symfunc::{qpochhammer, PochLen, SymfuncError};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// `2^{-4/3}`, the fluctuation scale of the current.
pub const SIGMA: f64 = 0.396_850_262_992_049_9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("contour rejected: {0}")]
    Contour(String),
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
    #[error(transparent)]
    Symfunc(#[from] SymfuncError),
    #[error("real quantity came out with imaginary part {0:e}")]
    ImaginaryResidue(f64),
}

/// Largest imaginary part tolerated on values that are real in exact
/// arithmetic; contour quadrature leaves rounding-level residue.
pub const IMAG_RESIDUE_TOL: f64 = 1e-9;

/// A quadrature contour, always positively oriented.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContourSpec {
    /// Trapezoid rule on `|z - center| = radius`.
    Circle { center: Complex64, radius: f64, nodes: usize },
    /// Two rays leaving `anchor` at angles `∓angle`, run from
    /// `anchor + ∞e^{-i angle}` to `anchor + ∞e^{+i angle}`, truncated at
    /// `length`, Gauss–Legendre on each ray.
    RayPair { anchor: Complex64, angle: f64, length: f64, nodes_per_ray: usize },
    /// Vertical segment `anchor + is`, `|s| ≤ rise`, continued by two rays at
    /// `∓angle` from its end points. Deforms the ray pair so that it passes
    /// the saddle points `±i√X` of `e^{z³/3 + Xz}`.
    Bent {
        anchor: f64,
        rise: f64,
        segment_nodes: usize,
        angle: f64,
        length: f64,
        nodes_per_ray: usize,
    },
}

impl ContourSpec {
    pub fn circle(radius: f64, nodes: usize) -> Self {
        ContourSpec::Circle { center: ZERO, radius, nodes }
    }

    /// The GOE contour `C_1^{π/3}` truncated at `length`.
    pub fn goe(length: f64, nodes_per_ray: usize) -> Self {
        ContourSpec::RayPair { anchor: ONE, angle: PI / 3.0, length, nodes_per_ray }
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        let bad = |m: &str| Err(KernelError::Contour(m.to_string()));
        match *self {
            ContourSpec::Circle { radius, nodes, .. } => {
                if radius <= 0.0 || !radius.is_finite() {
                    return bad("radius must be positive");
                }
                if nodes < 16 {
                    return bad("at least 16 nodes");
                }
            }
            ContourSpec::RayPair { angle, length, nodes_per_ray, .. } => {
                if !(angle > 0.0 && angle < PI / 2.0) {
                    return bad("ray angle must lie in (0, π/2)");
                }
                if length <= 0.0 {
                    return bad("ray length must be positive");
                }
                if nodes_per_ray < 16 {
                    return bad("at least 16 nodes per ray");
                }
            }
            ContourSpec::Bent { anchor, rise, segment_nodes, angle, length, nodes_per_ray } => {
                if anchor <= 0.0 {
                    return bad("bent contour must stay in the right half plane");
                }
                if rise < 0.0 || length <= 0.0 {
                    return bad("rise and length must be non-negative");
                }
                if !(angle > 0.0 && angle < PI / 2.0) {
                    return bad("ray angle must lie in (0, π/2)");
                }
                if nodes_per_ray < 16 || (rise > 0.0 && segment_nodes < 16) {
                    return bad("at least 16 nodes per piece");
                }
            }
        }
        Ok(())
    }

    /// Nodes `z_k` and weights `dz_k / (2πi)`.
    pub fn nodes(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        match *self {
            ContourSpec::Circle { center, radius, nodes } => {
                let mut z = Vec::with_capacity(nodes);
                let mut w = Vec::with_capacity(nodes);
                for k in 0..nodes {
                    let e = Complex64::from_polar(radius, 2.0 * PI * k as f64 / nodes as f64);
                    z.push(center + e);
                    w.push(e / nodes as f64);
                }
                (z, w)
            }
            ContourSpec::RayPair { anchor, angle, length, nodes_per_ray } => {
                let mut z = Vec::new();
                let mut w = Vec::new();
                push_rays(&mut z, &mut w, anchor, anchor, angle, length, nodes_per_ray);
                (z, w)
            }
            ContourSpec::Bent { anchor, rise, segment_nodes, angle, length, nodes_per_ray } => {
                let lo = Complex64::new(anchor, -rise);
                let hi = Complex64::new(anchor, rise);
                let mut z = Vec::new();
                let mut w = Vec::new();
                push_rays(&mut z, &mut w, lo, hi, angle, length, nodes_per_ray);
                if rise > 0.0 {
                    // split the segment into unit pieces; the integrand
                    // oscillates with frequency up to about rise^2 there
                    let pieces = (2.0 * rise).ceil().max(1.0) as usize;
                    let per = segment_nodes.div_ceil(pieces).max(8);
                    let (x, wt) = gauss_legendre(per);
                    let h = 2.0 * rise / pieces as f64;
                    for p in 0..pieces {
                        let s0 = -rise + p as f64 * h;
                        for k in 0..per {
                            let s = s0 + 0.5 * h * (x[k] + 1.0);
                            z.push(Complex64::new(anchor, s));
                            // dz = i ds
                            w.push(Complex64::new(0.0, 0.5 * h * wt[k]) / TWO_PI_I);
                        }
                    }
                }
                (z, w)
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes().0.len()
    }

    fn max_radius(&self) -> Option<f64> {
        match *self {
            ContourSpec::Circle { center, radius, .. } => Some(center.norm() + radius),
            _ => None,
        }
    }

    fn min_radius(&self) -> Option<f64> {
        match *self {
            ContourSpec::Circle { center, radius, .. } => Some(radius - center.norm()),
            _ => None,
        }
    }
}

fn push_rays(
    z: &mut Vec<Complex64>,
    w: &mut Vec<Complex64>,
    lower: Complex64,
    upper: Complex64,
    angle: f64,
    length: f64,
    n: usize,
) {
    let (x, wt) = gauss_legendre(n);
    let up = Complex64::from_polar(1.0, angle);
    let dn = up.conj();
    for k in 0..n {
        let s = 0.5 * length * (x[k] + 1.0);
        let ws = 0.5 * length * wt[k];
        // lower ray is run inwards, hence the sign
        z.push(lower + dn * s);
        w.push(-dn * ws / TWO_PI_I);
        z.push(upper + up * s);
        w.push(up * ws / TWO_PI_I);
    }
}

impl fmt::Display for ContourSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContourSpec::Circle { radius, nodes, .. } => write!(f, "circle r={radius} n={nodes}"),
            ContourSpec::RayPair { anchor, length, nodes_per_ray, .. } => {
                write!(f, "rays a={} L={length} n={nodes_per_ray}", anchor.re)
            }
            ContourSpec::Bent { anchor, rise, segment_nodes, length, nodes_per_ray, .. } => write!(
                f,
                "bent a={anchor} h={rise:.3} seg={segment_nodes} L={length} n={nodes_per_ray}"
            ),
        }
    }
}

/// `¼((-1)^u - (-1)^v) + ½ sgn(v-u) 1{v-u odd}`.
pub fn r_term(u: i64, v: i64) -> f64 {
    let sgn_pow = |k: i64| if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let mut r = 0.25 * (sgn_pow(u) - sgn_pow(v));
    if (v - u).rem_euclid(2) == 1 {
        r += 0.5 * (v - u).signum() as f64;
    }
    r
}

/// `h_y(j) = (ζt^{y+j+1}; t²)_∞ / (ζt^{y+j}; t²)_∞ - 1`.
pub fn h_weight(y: f64, j: i64, t: f64, zeta: Complex64) -> Result<Complex64, KernelError> {
    if !(t.abs() < 1.0) {
        return Err(KernelError::Domain(format!("need |t| < 1, got {t}")));
    }
    if zeta.im == 0.0 && zeta.re > 0.0 {
        return Err(KernelError::Domain("ζ must avoid the positive reals".into()));
    }
    let tp = |e: f64| if t == 0.0 { if e > 0.0 { 0.0 } else { 1.0 } } else { t.powf(e) };
    let num = qpochhammer(zeta * tp(y + j as f64 + 1.0), t * t, PochLen::Infinite, 1e-18)?;
    let den = qpochhammer(zeta * tp(y + j as f64), t * t, PochLen::Infinite, 1e-18)?;
    if den.norm() < 1e-300 {
        return Err(KernelError::Domain("pole of the Pochhammer denominator".into()));
    }
    Ok(num / den - ONE)
}

/// `f_x(j)`: the `ζ = -1` case of [`h_weight`].
pub fn f_weight(x: f64, j: i64, t: f64) -> Result<f64, KernelError> {
    Ok(h_weight(x, j, t, -ONE)?.re)
}

/// Which function the discrete kernel is built on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Symbol {
    /// `f(z) = ∏ (z - a_j)/(1 - a_j z)`.
    Blaschke(Vec<f64>),
    /// `g(z) = exp(c (z+1)/(z-1))` with `c = (1-t)τ/2`.
    Exponential { c: f64 },
}

impl Symbol {
    fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Symbol::Blaschke(a) => a.iter().fold(ONE, |acc, &aj| acc * (z - aj) / (ONE - z * aj)),
            Symbol::Exponential { c } => (*c * (z + 1.0) / (z - 1.0)).exp(),
        }
    }

    /// Taylor coefficients `φ_0..φ_M`.
    pub fn coefficients(&self, m: usize) -> Vec<f64> {
        match self {
            Symbol::Blaschke(a) => blaschke_coefficients(a, m),
            Symbol::Exponential { c } => exponential_coefficients(*c, m),
        }
    }
}

fn blaschke_coefficients(a: &[f64], m: usize) -> Vec<f64> {
    let mut c = vec![0.0; m + 1];
    c[0] = 1.0;
    for &aj in a {
        // h = c / (1 - a z), then c <- (z - a) h
        let mut h = vec![0.0; m + 1];
        let mut prev = 0.0;
        for k in 0..=m {
            h[k] = c[k] + aj * prev;
            prev = h[k];
        }
        for k in (0..=m).rev() {
            c[k] = if k > 0 { h[k - 1] } else { 0.0 } - aj * h[k];
        }
    }
    c
}

/// Coefficients of `exp(c(z+1)/(z-1))` by FFT on `|z| = 1 - 1/M`.
/// Since `|g| ≤ 1` on the disc, aliasing is bounded by `r^N/(1-r^N)`, and
/// `N ≥ 40M` makes that negligible.
fn exponential_coefficients(c: f64, m: usize) -> Vec<f64> {
    if c == 0.0 {
        let mut v = vec![0.0; m + 1];
        v[0] = 1.0;
        return v;
    }
    let mm = m.max(16);
    let delta = 1.0 / mm as f64;
    let r = 1.0 - delta;
    let n = (40 * mm + 64).next_power_of_two();
    let mut buf: Vec<Complex64> = (0..n)
        .map(|k| {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64);
            (c * (z + 1.0) / (z - 1.0)).exp()
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    (0..=m).map(|k| buf[k].re / n as f64 * r.powi(-(k as i32))).collect()
}

/// The coefficient recurrence `(m+1)g_{m+1} = (2m - 2c)g_m - (m-1)g_{m-1}`,
/// from `(z-1)²g' = -2cg`. Fine for moderate `c`; the FFT route is used for
/// production.
pub fn exponential_coefficients_recurrence(c: f64, m: usize) -> Vec<f64> {
    let mut g = vec![0.0; m + 1];
    g[0] = (-c).exp();
    if m >= 1 {
        g[1] = -2.0 * c * g[0];
    }
    for k in 1..m {
        g[k + 1] = ((2.0 * k as f64 - 2.0 * c) * g[k] - (k as f64 - 1.0) * g[k - 1]) / (k as f64 + 1.0);
    }
    g
}

/// How indicator terms `1{u even}`, `r(u,v)` enter a discrete kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityMode {
    /// Exactly as they stand.
    Literal,
    /// After the `(-1)^{u+v}` conjugation, replaced by their averages
    /// `(-1)^u 1{u even} → ½` and `(-1)^{u+v} r(u,v) → ¼ sgn(u-v)`, leaving
    /// the double integrals conjugated. Only meaningful for limit comparisons.
    Averaged,
}

/// The three double-integral parts of a discrete kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleParts {
    pub d11: f64,
    pub d12: f64,
    pub d22: f64,
}

/// A discrete residue-form kernel from the Taylor coefficients of its symbol.
#[derive(Clone, Debug)]
pub struct CoefficientKernel {
    symbol: Symbol,
    phi: Vec<f64>,
    acc: Vec<f64>,
    parity: ParityMode,
}

impl CoefficientKernel {
    /// Kernel valid for arguments `u, v ≤ max_index`.
    pub fn new(symbol: Symbol, max_index: usize) -> Self {
        let phi = symbol.coefficients(max_index + 2);
        let mut acc = vec![0.0; phi.len()];
        for m in 0..phi.len() {
            acc[m] = -phi[m] + if m >= 2 { acc[m - 2] } else { 0.0 };
        }
        CoefficientKernel { symbol, phi, acc, parity: ParityMode::Literal }
    }

    /// `K^∁` for alphabet `a` (even length, entries in `[0,1)`).
    pub fn schur_complement(alphabet: &[f64], max_index: usize) -> Result<Self, KernelError> {
        check_alphabet(alphabet)?;
        Ok(Self::new(Symbol::Blaschke(alphabet.to_vec()), max_index))
    }

    /// `K^ASEP` at time `tau` and asymmetry `t`.
    pub fn asep(tau: f64, t: f64, max_index: usize) -> Result<Self, KernelError> {
        if !(tau >= 0.0) || !(0.0..1.0).contains(&t) {
            return Err(KernelError::Domain(format!("need τ ≥ 0 and t in [0,1), got τ={tau}, t={t}")));
        }
        Ok(Self::new(Symbol::Exponential { c: 0.5 * (1.0 - t) * tau }, max_index))
    }

    pub fn with_parity(mut self, parity: ParityMode) -> Self {
        self.parity = parity;
        self
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn max_index(&self) -> usize {
        self.phi.len() - 3
    }

    fn p(&self, i: i64) -> f64 {
        if i < 0 {
            0.0
        } else {
            self.phi[i as usize]
        }
    }

    fn a(&self, i: i64) -> f64 {
        if i < 0 {
            0.0
        } else {
            self.acc[i as usize]
        }
    }

    pub fn double_parts(&self, u: i64, v: i64) -> DoubleParts {
        let (mut s11, mut s12, mut s22) = (0.0, 0.0, 0.0);
        for k in 0..=(u.max(v) + 1) {
            s22 += self.p(u - k) * self.p(v - k - 1) - self.p(u - k - 1) * self.p(v - k);
            s12 += self.a(u - k - 1) * self.p(v - k - 1) - self.a(u - k - 2) * self.p(v - k);
            s11 += self.a(u - k - 1) * self.a(v - k - 2) - self.a(u - k - 2) * self.a(v - k - 1);
        }
        DoubleParts { d11: -s11, d12: -s12, d22: -s22 }
    }

    /// `(K11, K12, K22)` at integer arguments.
    pub fn entries(&self, u: i64, v: i64) -> (f64, f64, f64) {
        let d = self.double_parts(u, v);
        let even = |k: i64| if k.rem_euclid(2) == 0 { 1.0 } else { 0.0 };
        match self.parity {
            ParityMode::Literal => (
                d.d11 + self.a(v - 1) * even(u) - self.a(u - 1) * even(v) + r_term(u, v),
                d.d12 + self.p(v) * even(u),
                d.d22,
            ),
            ParityMode::Averaged => {
                let s = |k: i64| if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let c = s(u) * s(v);
                (
                    c * d.d11 + 0.5 * s(v) * self.a(v - 1) - 0.5 * s(u) * self.a(u - 1)
                        + 0.25 * (u - v).signum() as f64,
                    c * d.d12 + 0.5 * s(v) * self.p(v),
                    c * d.d22,
                )
            }
        }
    }
}

fn check_alphabet(a: &[f64]) -> Result<(), KernelError> {
    if a.is_empty() || a.len() % 2 == 1 {
        return Err(KernelError::Domain(format!("need an even alphabet length, got {}", a.len())));
    }
    if a.iter().any(|&x| !(0.0..1.0).contains(&x)) {
        return Err(KernelError::Domain("alphabet entries must lie in [0,1)".into()));
    }
    Ok(())
}

impl SkewKernel for CoefficientKernel {
    fn block(&self, u: f64, v: f64) -> Block {
        let (u, v) = (u.round() as i64, v.round() as i64);
        let (k11, k12, k22) = self.entries(u, v);
        let (_, k21, _) = self.entries(v, u);
        Block::real(k11, k12, -k21, k22)
    }

    fn domain(&self) -> DomainTag {
        DomainTag::Discrete
    }
}

/// Residue-form kernel by trapezoid quadrature on one circle of radius < 1.
pub struct ContourKernel {
    z: Vec<Complex64>,
    w: Vec<Complex64>,
    phi: Vec<Complex64>,
}

impl ContourKernel {
    pub fn new(symbol: &Symbol, contour: &ContourSpec) -> Result<Self, KernelError> {
        contour.validate()?;
        match contour.max_radius() {
            Some(r) if r < 1.0 => {}
            Some(_) => {
                return Err(KernelError::Contour(
                    "residue form needs a circle inside the unit disc".into(),
                ))
            }
            None => return Err(KernelError::Contour("discrete kernels use circles".into())),
        }
        let (z, w) = contour.nodes();
        let phi = z.iter().map(|&zk| symbol.eval(zk)).collect();
        Ok(ContourKernel { z, w, phi })
    }

    fn pows(&self, u: i64) -> Vec<Complex64> {
        self.z
            .iter()
            .zip(&self.w)
            .zip(&self.phi)
            .map(|((z, w), p)| w * p * z.powi(-(u as i32)))
            .collect()
    }

    pub fn entries(&self, u: i64, v: i64) -> (Complex64, Complex64, Complex64) {
        let (pu, pv) = (self.pows(u), self.pows(v));
        let (mut k11, mut k12, mut k22) = (ZERO, ZERO, ZERO);
        for (a, &z) in self.z.iter().enumerate() {
            for (b, &w) in self.z.iter().enumerate() {
                let c = (w - z) * pu[a] * pv[b] / (z * w - 1.0);
                k11 += c / ((z * z - 1.0) * (w * w - 1.0));
                k12 += c / ((z * z - 1.0) * w);
                k22 += c / (z * w);
            }
        }
        let even = |k: i64| k.rem_euclid(2) == 0;
        let single = |p: &[Complex64]| -> Complex64 { p.iter().zip(&self.z).map(|(x, z)| x / (z * z - 1.0)).sum() };
        if even(u) {
            k11 += single(&pv);
            k12 += pv.iter().zip(&self.z).map(|(x, z)| x / z).sum::<Complex64>();
        }
        if even(v) {
            k11 -= single(&pu);
        }
        k11 += r_term(u, v);
        (k11, k12, k22)
    }

    pub fn block(&self, u: i64, v: i64) -> Block {
        let (k11, k12, k22) = self.entries(u, v);
        let (_, k21, _) = self.entries(v, u);
        Block { k11, k12, k21: -k21, k22 }
    }
}

/// `K^∁(u, v)` in residue form by trapezoid quadrature on `contour`.
pub fn k_schur_complement(u: i64, v: i64, alphabet: &[f64], contour: &ContourSpec) -> Result<Block, KernelError> {
    check_alphabet(alphabet)?;
    if u < 0 || v < 0 {
        return Err(KernelError::Domain("arguments must be non-negative".into()));
    }
    Ok(ContourKernel::new(&Symbol::Blaschke(alphabet.to_vec()), contour)?.block(u, v))
}

/// `K^ASEP(u, v)` by trapezoid quadrature on `contour` (radius < 1).
pub fn k_asep(u: i64, v: i64, tau: f64, t: f64, contour: &ContourSpec) -> Result<Block, KernelError> {
    if u < 0 || v < 0 || !(tau >= 0.0) || !(0.0..1.0).contains(&t) {
        return Err(KernelError::Domain("need u, v ≥ 0, τ ≥ 0 and t in [0,1)".into()));
    }
    Ok(ContourKernel::new(&Symbol::Exponential { c: 0.5 * (1.0 - t) * tau }, contour)?.block(u, v))
}

/// `K^∁(u, v)` in its original form: `K11, K12` on a circle of radius in
/// `(1, min 1/a_j)` (with `1{u=v}` added to `K12`), `K22` on a circle of
/// radius < 1. No single integrals, no `r`.
pub fn k_schur_original(
    u: i64,
    v: i64,
    alphabet: &[f64],
    outer: &ContourSpec,
    inner: &ContourSpec,
) -> Result<Block, KernelError> {
    check_alphabet(alphabet)?;
    outer.validate()?;
    inner.validate()?;
    let amax = alphabet.iter().cloned().fold(0.0, f64::max);
    let limit = if amax > 0.0 { 1.0 / amax } else { f64::INFINITY };
    match (outer.min_radius(), outer.max_radius(), inner.max_radius()) {
        (Some(lo), Some(hi), Some(ri)) if lo > 1.0 && hi < limit && ri < 1.0 => {}
        _ => return Err(KernelError::Contour("original form needs 1 < R < min 1/a_j and r < 1".into())),
    }
    let sym = Symbol::Blaschke(alphabet.to_vec());
    let dbl = |c: &ContourSpec, u: i64, v: i64, which: u8| -> Complex64 {
        let (z, w) = c.nodes();
        let phi: Vec<Complex64> = z.iter().map(|&x| sym.eval(x)).collect();
        let mut s = ZERO;
        for a in 0..z.len() {
            let fu = w[a] * phi[a] * z[a].powi(-(u as i32));
            for b in 0..z.len() {
                let (zz, ww) = (z[a], z[b]);
                let base = (ww - zz) * fu * w[b] * phi[b] * ww.powi(-(v as i32)) / (zz * ww - 1.0);
                s += match which {
                    1 => base / ((zz * zz - 1.0) * (ww * ww - 1.0)),
                    2 => base / ((zz * zz - 1.0) * ww),
                    _ => base / (zz * ww),
                };
            }
        }
        s
    };
    let delta = |a: i64, b: i64| if a == b { ONE } else { ZERO };
    Ok(Block {
        k11: dbl(outer, u, v, 1),
        k12: dbl(outer, u, v, 2) + delta(u, v),
        k21: -(dbl(outer, v, u, 2) + delta(u, v)),
        k22: dbl(inner, u, v, 3),
    })
}

/// Smallest `U` with `|w(j)| < tol` for all `j ≥ U` (checked pointwise; the
/// weights used here decrease in magnitude with `j`).
fn support_cutoff(w: impl Fn(i64) -> Complex64, tol: f64, cap: usize) -> usize {
    let mut u = 0usize;
    while u < cap && w(u as i64).norm() >= tol {
        u += 1;
    }
    u.max(1)
}

/// Discretization record for discrete Fredholm Pfaffians.
#[derive(Clone, Debug, Serialize)]
pub struct DiscreteRecord {
    pub result: FredholmResult,
    pub sites: usize,
    pub weight_tol: f64,
}

/// `Pf[J + w·K]` on `ℓ²(Z≥0)`, truncated where `|w| < weight_tol`.
pub fn discrete_fredholm(
    kernel_for: impl Fn(usize) -> Result<CoefficientKernel, KernelError>,
    w: impl Fn(i64) -> Result<Complex64, KernelError>,
    weight_tol: f64,
) -> Result<DiscreteRecord, KernelError> {
    // propagate weight errors before probing the cutoff
    w(0)?;
    let sites = support_cutoff(|j| w(j).unwrap_or(ZERO), weight_tol, 4000);
    let kernel = kernel_for(sites)?;
    let mult: Vec<Complex64> = (0..sites as i64).map(&w).collect::<Result<_, _>>()?;
    let dom = WeightedDomain::discrete(sites, |j| mult[j]);
    Ok(DiscreteRecord { result: fredholm_pf_matrix(&kernel, &dom), sites, weight_tol })
}

/// `Pf[J + f_x·K^∁]`, the Fredholm side of the Hall–Littlewood observable.
pub fn schur_complement_fredholm(x: f64, alphabet: &[f64], t: f64) -> Result<DiscreteRecord, KernelError> {
    check_alphabet(alphabet)?;
    discrete_fredholm(
        |n| CoefficientKernel::schur_complement(alphabet, n),
        |j| f_weight(x, j, t).map(|v| Complex64::new(v, 0.0)),
        1e-14,
    )
}

/// `Pf[J + h_y·K^ASEP]` (with `ζ = -1` this is the `f_x` version).
pub fn asep_fredholm(y: f64, tau: f64, t: f64, zeta: Complex64) -> Result<DiscreteRecord, KernelError> {
    discrete_fredholm(|n| CoefficientKernel::asep(tau, t, n), |j| h_weight(y, j, t, zeta), 1e-14)
}

/// Gap probability `Pf[J - K^∁]` on `ℓ²[0, x]`.
pub fn schur_complement_gap(x: usize, alphabet: &[f64]) -> Result<Complex64, KernelError> {
    let k = CoefficientKernel::schur_complement(alphabet, x + 1)?;
    let dom = WeightedDomain::discrete(x + 1, |_| -ONE);
    Ok(fredholm_pf_matrix(&k, &dom).value)
}

/// The GOE kernel on a given contour. Entries are bilinear forms
/// `E_x M E_yᵀ` with `E_x[a] = e^{z_a³/3 - x z_a} dz_a/(2πi)`.
pub struct GoeKernel {
    z: Vec<Complex64>,
    dz: Vec<Complex64>,
    contour: ContourSpec,
}

impl GoeKernel {
    pub fn new(contour: ContourSpec) -> Result<Self, KernelError> {
        contour.validate()?;
        if matches!(contour, ContourSpec::Circle { .. }) {
            return Err(KernelError::Contour("the GOE kernel needs an unbounded contour".into()));
        }
        let (z, dz) = contour.nodes();
        Ok(GoeKernel { z, dz, contour })
    }

    pub fn contour(&self) -> &ContourSpec {
        &self.contour
    }

    fn e_row(&self, x: f64) -> Vec<Complex64> {
        self.z
            .iter()
            .zip(&self.dz)
            .map(|(&z, &d)| (z * z * z / 3.0 - z * x).exp() * d)
            .collect()
    }

    fn matrices(&self) -> [Vec<Complex64>; 3] {
        let m = self.z.len();
        let mut out = [vec![ZERO; m * m], vec![ZERO; m * m], vec![ZERO; m * m]];
        for a in 0..m {
            for b in 0..m {
                let (z, w) = (self.z[a], self.z[b]);
                let s = z + w;
                out[0][a * m + b] = (z - w) / s;
                out[1][a * m + b] = (w - z) / (2.0 * w * s);
                out[2][a * m + b] = (z - w) / (4.0 * z * w * s);
            }
        }
        out
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl SkewKernel for GoeKernel {
    fn block(&self, x: f64, y: f64) -> Block {
        self.blocks(&[x, y])[1]
    }

    fn domain(&self) -> DomainTag {
        DomainTag::Continuous
    }

    fn sign_jump(&self) -> f64 {
        -0.25
    }

    fn blocks(&self, points: &[f64]) -> Vec<Block> {
        let n = points.len();
        let m = self.z.len();
        let e: Vec<Vec<Complex64>> = par::map_slice(points, |&x| self.e_row(x));
        let mats = self.matrices();
        // F_k = E M_k, one row per point
        let f: Vec<[Vec<Complex64>; 3]> = par::map_range(n, |i| {
            let mut rows = [vec![ZERO; m], vec![ZERO; m], vec![ZERO; m]];
            for a in 0..m {
                let ea = e[i][a];
                for (k, row) in rows.iter_mut().enumerate() {
                    let mk = &mats[k][a * m..(a + 1) * m];
                    for b in 0..m {
                        row[b] += ea * mk[b];
                    }
                }
            }
            rows
        });
        let s0: Vec<Complex64> = e.iter().map(|r| r.iter().sum()).collect();
        let s1: Vec<Complex64> = e.iter().map(|r| r.iter().zip(&self.z).map(|(x, z)| x / (4.0 * z)).sum()).collect();
        let mut out = vec![Block::default(); n * n];
        par::fill_rows(&mut out, n, |i, row| {
            for j in 0..n {
                let (x, y) = (points[i], points[j]);
                let k11 = dot(&f[i][0], &e[j]);
                let k12 = dot(&f[i][1], &e[j]) + 0.5 * s0[i];
                let k21 = -(dot(&f[j][1], &e[i]) + 0.5 * s0[j]);
                let sg = if x > y { 1.0 } else if x < y { -1.0 } else { 0.0 };
                let k22 = dot(&f[i][2], &e[j]) - s1[i] + s1[j] - 0.25 * sg;
                row[j] = Block { k11, k12, k21, k22 };
            }
        });
        out
    }
}

/// `K^GOE(x, y)` on the given contour (ray pair or bent).
pub fn k_goe(x: f64, y: f64, contour: &ContourSpec) -> Result<Block, KernelError> {
    Ok(GoeKernel::new(contour.clone())?.block(x, y))
}

/// Discretization of an `L²` Fredholm Pfaffian with the GOE kernel.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discretization {
    pub contour: ContourSpec,
    /// Panel breakpoints of the spatial domain.
    pub breaks: Vec<f64>,
    pub nodes_per_panel: usize,
}

impl fmt::Display for Discretization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}; domain=({:.3},{:.3}] panels={} gl={}",
            self.contour,
            self.breaks[0],
            self.breaks[self.breaks.len() - 1],
            self.breaks.len() - 1,
            self.nodes_per_panel
        )
    }
}

/// A Fredholm Pfaffian value with the discretization that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct TabulatedValue {
    pub value: f64,
    pub imag_residue: f64,
    pub fingerprint: String,
    pub discretization: Discretization,
}

impl Discretization {
    /// Default GOE CDF discretization at `x`; `refined` is the independent
    /// check (longer rays, more nodes, larger cutoff).
    pub fn f_goe(x: f64, refined: bool) -> Self {
        let neg = (-x).max(0.0);
        let (len, rays, cut, m) = if refined {
            (12.0, 200, 12.0 + neg + 4.0, (60.0 + 8.0 * neg) as usize)
        } else {
            (8.0, 100, 8.0 + neg + 4.0, (40.0 + 5.0 * neg) as usize)
        };
        Discretization { contour: ContourSpec::goe(len, rays), breaks: vec![x, x + cut], nodes_per_panel: m }
    }
}

fn goe_pfaffian(disc: &Discretization, mult: impl Fn(f64) -> Complex64) -> Result<TabulatedValue, KernelError> {
    let kernel = GoeKernel::new(disc.contour.clone())?;
    let dom = WeightedDomain::gauss_panels(&disc.breaks, disc.nodes_per_panel, mult);
    let r = fredholm_pf_matrix(&kernel, &dom);
    if !(r.value.im.abs() <= IMAG_RESIDUE_TOL) {
        return Err(KernelError::ImaginaryResidue(r.value.im));
    }
    Ok(TabulatedValue {
        value: r.value.re,
        imag_residue: r.value.im,
        fingerprint: disc.to_string(),
        discretization: disc.clone(),
    })
}

/// `F_GOE(x) = Pf[J - K^GOE]` on `L²(x, ∞)` with the default discretization.
pub fn f_goe(x: f64) -> Result<TabulatedValue, KernelError> {
    f_goe_with(x, &Discretization::f_goe(x, false))
}

pub fn f_goe_with(x: f64, disc: &Discretization) -> Result<TabulatedValue, KernelError> {
    if !x.is_finite() {
        return Err(KernelError::Domain("x must be finite".into()));
    }
    goe_pfaffian(disc, |_| -ONE)
}

/// `F_GOE(x)` under both discretizations.
#[derive(Clone, Debug, Serialize)]
pub struct CheckedValue {
    pub x: f64,
    pub coarse: TabulatedValue,
    pub refined: TabulatedValue,
    pub sensitivity: f64,
    /// Set when the two discretizations differ by more than `1e-7`.
    pub flagged: bool,
}

pub fn f_goe_checked(x: f64) -> Result<CheckedValue, KernelError> {
    let coarse = f_goe_with(x, &Discretization::f_goe(x, false))?;
    let refined = f_goe_with(x, &Discretization::f_goe(x, true))?;
    let sensitivity = (coarse.value - refined.value).abs();
    Ok(CheckedValue { x, coarse, refined, sensitivity, flagged: sensitivity > 1e-7 })
}

/// `x ↦ T/4 - 2^{-4/3} x T^{1/3}`.
pub fn scaling(x: f64, big_t: f64) -> f64 {
    big_t / 4.0 - SIGMA * x * big_t.cbrt()
}

/// Points `x` of `[lo, hi]` where the scaling is an integer.
pub fn lattice_points(lo: f64, hi: f64, big_t: f64) -> Vec<f64> {
    let st = SIGMA * big_t.cbrt();
    let (a, b) = (scaling(hi, big_t).ceil() as i64, scaling(lo, big_t).floor() as i64);
    (a..=b).rev().map(|u| (big_t / 4.0 - u as f64) / st).collect()
}

/// The rescaled kernel `K^(T)` built on `K^ASEP` at `c = T/2` (so it does
/// not depend on `t`).
pub struct RescaledKernel {
    inner: CoefficientKernel,
    big_t: f64,
}

impl RescaledKernel {
    /// Valid for `x ≥ x_min`.
    pub fn new(big_t: f64, x_min: f64, parity: ParityMode) -> Result<Self, KernelError> {
        if !(big_t > 0.0) {
            return Err(KernelError::Domain("T must be positive".into()));
        }
        let top = scaling(x_min, big_t).ceil();
        if !(top >= 0.0) {
            return Err(KernelError::Domain("scaling negative on the window".into()));
        }
        let inner = CoefficientKernel::new(Symbol::Exponential { c: 0.5 * big_t }, top as usize + 2).with_parity(parity);
        Ok(RescaledKernel { inner, big_t })
    }

    fn site(&self, x: f64) -> Result<i64, KernelError> {
        let s = scaling(x, self.big_t);
        let u = s.round();
        if (s - u).abs() > 1e-6 * s.abs().max(1.0) || u < 0.0 || u as usize > self.inner.max_index() {
            return Err(KernelError::Domain(format!("scaling({x}) = {s} is not an admissible site")));
        }
        Ok(u as i64)
    }

    /// `K^(T)(x, y)` exactly as defined, including the `(-1)^{s(x)+s(y)}`
    /// conjugation (already carried by the averaged parity mode).
    pub fn block(&self, x: f64, y: f64) -> Result<Block, KernelError> {
        let (u, v) = (self.site(x)?, self.site(y)?);
        let st = SIGMA * self.big_t.cbrt();
        let sign = match self.inner.parity {
            ParityMode::Literal => if (u + v).rem_euclid(2) == 0 { 1.0 } else { -1.0 },
            ParityMode::Averaged => 1.0,
        };
        let (k11, k12, k22) = self.inner.entries(u, v);
        let (_, k21, _) = self.inner.entries(v, u);
        Ok(Block::real(sign * k11 / st, sign * k12, -sign * k21, sign * st * k22))
    }

    /// `σT^{1/3} K^(T)`: the kernel against Lebesgue measure, since
    /// neighbouring sites are `1/(σT^{1/3})` apart in `x`.
    pub fn density_block(&self, x: f64, y: f64) -> Result<Block, KernelError> {
        let st = SIGMA * self.big_t.cbrt();
        Ok(self.block(x, y)?.scale(Complex64::new(st, 0.0)))
    }
}

/// `K^(T)(x, y)` with literal parity terms.
pub fn k_rescaled_t(x: f64, y: f64, big_t: f64) -> Result<Block, KernelError> {
    RescaledKernel::new(big_t, x.min(y), ParityMode::Literal)?.block(x, y)
}

/// The limit of `σT^{1/3}K^(T)` after parity averaging: the GOE entries with
/// the components exchanged, `[[K22, -K21], [-K12, K11]]`.
pub fn k_infinity(x: f64, y: f64, contour: &ContourSpec) -> Result<Block, KernelError> {
    let b = k_goe(x, y, contour)?;
    Ok(Block { k11: b.k22, k12: -b.k21, k21: -b.k12, k22: b.k11 })
}

/// `1/√(1 - ζ e^{σ̂x}) - 1`.
pub fn kpz_g(x: f64, zeta: f64, sigma_hat: f64) -> f64 {
    1.0 / (1.0 - zeta * (sigma_hat * x).exp()).sqrt() - 1.0
}

pub fn sigma_hat(tau_hat: f64) -> f64 {
    SIGMA * tau_hat.cbrt()
}

/// Window and contour for `Pf[J + g·K^GOE]` on `L²(R)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KpzDiscretization {
    /// `|g|` below this is dropped on the left.
    pub g_tol: f64,
    pub upper: f64,
    pub panel_width: f64,
    pub nodes_per_panel: usize,
    /// Multiplies all contour node counts.
    pub contour_density: f64,
}

impl Default for KpzDiscretization {
    fn default() -> Self {
        KpzDiscretization { g_tol: 1e-10, upper: 12.0, panel_width: 4.0, nodes_per_panel: 24, contour_density: 1.0 }
    }
}

impl KpzDiscretization {
    pub fn refined() -> Self {
        KpzDiscretization { g_tol: 1e-12, upper: 16.0, panel_width: 3.0, nodes_per_panel: 32, contour_density: 1.5 }
    }

    /// Resolve to a concrete window and contour for `(ζ, τ̂)`.
    pub fn resolve(&self, zeta: f64, tau_hat: f64) -> Discretization {
        let sh = sigma_hat(tau_hat);
        // |g| ≈ |ζ|e^{σ̂x}/2 on the far left
        let lower = ((2.0 * self.g_tol / zeta.abs()).ln() / sh).clamp(-200.0, -1.0);
        let panels = ((self.upper - lower) / self.panel_width).ceil() as usize;
        let h = (self.upper - lower) / panels as f64;
        let breaks: Vec<f64> = (0..=panels).map(|k| lower + k as f64 * h).collect();
        let big_x = -lower;
        let rise = big_x.sqrt();
        // about four nodes per unit of phase along the vertical segment
        let seg = ((big_x * 2.0 * rise / 3.0 + 16.0 * rise) * self.contour_density) as usize + 32;
        let contour = ContourSpec::Bent {
            anchor: 0.25,
            rise,
            segment_nodes: seg,
            angle: PI / 3.0,
            length: 8.0,
            nodes_per_ray: (100.0 * self.contour_density) as usize,
        };
        Discretization { contour, breaks, nodes_per_panel: self.nodes_per_panel }
    }
}

/// `Pf[J + g·K^GOE]` on `L²(R)` with `g(x) = 1/√(1 - ζe^{σ̂x}) - 1`.
pub fn kpz_laplace(zeta: f64, tau_hat: f64) -> Result<TabulatedValue, KernelError> {
    kpz_laplace_with(zeta, tau_hat, &KpzDiscretization::default())
}

pub fn kpz_laplace_with(zeta: f64, tau_hat: f64, disc: &KpzDiscretization) -> Result<TabulatedValue, KernelError> {
    if !(zeta < 0.0) || !(tau_hat > 0.0) {
        return Err(KernelError::Domain(format!("need ζ < 0 and τ̂ > 0, got ζ={zeta}, τ̂={tau_hat}")));
    }
    let sh = sigma_hat(tau_hat);
    let d = disc.resolve(zeta, tau_hat);
    goe_pfaffian(&d, |x| Complex64::new(kpz_g(x, zeta, sh), 0.0))
}

/// `E[∏ 1/√(1 + z e^{(τ/2)^{1/3} a_i})]` over the GOE point process, as the
/// same Fredholm Pfaffian with `ζ = -z`, `τ̂ = 8τ`.
pub fn goe_multiplicative(z: f64, tau: f64) -> Result<TabulatedValue, KernelError> {
    goe_multiplicative_with(z, tau, &KpzDiscretization::default())
}

pub fn goe_multiplicative_with(z: f64, tau: f64, disc: &KpzDiscretization) -> Result<TabulatedValue, KernelError> {
    if !(z > 0.0) || !(tau > 0.0) {
        return Err(KernelError::Domain(format!("need z > 0 and τ > 0, got z={z}, τ={tau}")));
    }
    let s = (0.5 * tau).cbrt();
    let d = disc.resolve(-z, 8.0 * tau);
    goe_pfaffian(&d, |x| Complex64::new(1.0 / (1.0 + z * (s * x).exp()).sqrt() - 1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: Complex64, b: f64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn r_term_examples() {
        assert_eq!(r_term(0, 1), 1.0);
        for u in -3..6 {
            assert_eq!(r_term(u, u), 0.0);
            for v in -3..6 {
                assert_eq!(r_term(u, v), -r_term(v, u));
            }
        }
    }

    #[test]
    fn weights() {
        for &t in &[0.1, 0.4, 0.8] {
            for &x in &[-1.5, 0.0, 0.7, 2.0] {
                for j in 0..10 {
                    let f = f_weight(x, j, t).unwrap();
                    assert!(f > -1.0 && f < 0.0, "{x} {j} {t} {f}");
                    let prod = (1.0 + f) * (1.0 + f_weight(x + 1.0, j, t).unwrap());
                    assert!((prod - 1.0 / (1.0 + t.powf(x + j as f64))).abs() < 1e-13);
                }
            }
            let j = (14.0 * 10f64.ln() / -t.ln()).ceil() as i64 + 1;
            assert!(f_weight(0.5, j, t).unwrap().abs() < 1e-14);
        }
        assert!(h_weight(0.0, 0, 0.5, ONE).is_err());
        assert!(f_weight(0.0, 0, 1.0).is_err());
    }

    #[test]
    fn blaschke_coefficients_match_series() {
        // (z - a)/(1 - a z) = -a + (1 - a²) z + (1 - a²) a z² + ...
        let c = blaschke_coefficients(&[0.3], 4);
        let want = [-0.3, 0.91, 0.273, 0.0819, 0.02457];
        for (x, y) in c.iter().zip(want) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn exponential_coefficients_two_ways() {
        for &c in &[0.0, 0.3, 1.5, 6.0] {
            let a = exponential_coefficients(c, 60);
            let b = exponential_coefficients_recurrence(c, 60);
            for k in 0..=60 {
                assert!((a[k] - b[k]).abs() < 1e-12, "c={c} k={k} {} {}", a[k], b[k]);
            }
        }
    }

    #[test]
    fn coefficient_kernel_matches_trapezoid() {
        let a = [0.5, 0.3];
        let kc = CoefficientKernel::schur_complement(&a, 10).unwrap();
        let c = ContourSpec::circle(0.5, 128);
        for u in 0..7 {
            for v in 0..7 {
                let b = k_schur_complement(u, v, &a, &c).unwrap();
                let e = kc.block(u as f64, v as f64);
                assert!((b.k11 - e.k11).norm() < 1e-12, "{u} {v} {:?} {:?}", b, e);
                assert!((b.k12 - e.k12).norm() < 1e-12);
                assert!((b.k21 - e.k21).norm() < 1e-12);
                assert!((b.k22 - e.k22).norm() < 1e-12);
            }
        }
        let ka = CoefficientKernel::asep(2.0, 0.4, 10).unwrap();
        for u in 0..6 {
            for v in 0..6 {
                let b = k_asep(u, v, 2.0, 0.4, &ContourSpec::circle(0.5, 256)).unwrap();
                let e = ka.block(u as f64, v as f64);
                assert!((b.k11 - e.k11).norm() < 1e-10 && (b.k22 - e.k22).norm() < 1e-10);
                assert!((b.k12 - e.k12).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn original_form_equals_residue_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4 {
            let a: [f64; 2] = [rng.random_range(0.1..0.6), rng.random_range(0.1..0.6)];
            let amax = a[0].max(a[1]);
            let outer = ContourSpec::circle(0.5 * (1.0 + 1.0 / amax), 96);
            let inner = ContourSpec::circle(0.5, 96);
            let res = ContourSpec::circle(0.5, 96);
            let (u, v) = (rng.random_range(0..=6), rng.random_range(0..=6));
            let o = k_schur_original(u, v, &a, &outer, &inner).unwrap();
            let r = k_schur_complement(u, v, &a, &res).unwrap();
            for (x, y) in [(o.k11, r.k11), (o.k12, r.k12), (o.k21, r.k21), (o.k22, r.k22)] {
                assert!((x - y).norm() < 1e-10, "{a:?} {u} {v} {x} {y}");
            }
        }
    }

    #[test]
    fn contour_validation() {
        assert!(k_schur_complement(0, 0, &[0.3, 0.2], &ContourSpec::circle(1.2, 64)).is_err());
        assert!(k_asep(0, 0, 1.0, 0.2, &ContourSpec::circle(1.0, 64)).is_err());
        assert!(k_schur_complement(0, 0, &[0.3], &ContourSpec::circle(0.5, 64)).is_err());
        assert!(ContourSpec::circle(0.5, 8).validate().is_err());
        assert!(ContourSpec::RayPair { anchor: ONE, angle: 2.0, length: 8.0, nodes_per_ray: 50 }.validate().is_err());
    }

    #[test]
    fn discrete_kernels_are_skew() {
        let k = CoefficientKernel::asep(1.5, 0.3, 20).unwrap();
        let s = CoefficientKernel::schur_complement(&[0.4, 0.4], 20).unwrap();
        for u in 0..15 {
            for v in 0..15 {
                for kern in [&k, &s] {
                    let (a, b) = (kern.block(u as f64, v as f64), kern.block(v as f64, u as f64));
                    assert!((a.k11 + b.k11).norm() < 1e-12);
                    assert!((a.k22 + b.k22).norm() < 1e-12);
                    assert!((a.k12 + b.k21).norm() < 1e-12);
                }
            }
            assert!(k.block(u as f64, u as f64).k22.norm() < 1e-12);
        }
    }

    #[test]
    fn asep_at_time_zero() {
        for &t in &[0.2, 0.4, 0.7] {
            for &x in &[0.5, 1.0] {
                let r = asep_fredholm(x, 0.0, t, -ONE).unwrap();
                let want = 1.0 / crate::symfunc::qpoch_inf(-t.powf(x), t * t);
                assert!(close(r.result.value, want, 1e-8), "{t} {x}");
            }
        }
    }

    #[test]
    fn trapezoid_doubling_is_stable() {
        for &tau in &[0.5, 2.0, 4.0] {
            for (u, v) in [(0, 3), (2, 5), (4, 1)] {
                let a = k_asep(u, v, tau, 0.3, &ContourSpec::circle(0.5, 128)).unwrap();
                let b = k_asep(u, v, tau, 0.3, &ContourSpec::circle(0.5, 256)).unwrap();
                assert!((a.k11 - b.k11).norm() < 1e-10 && (a.k12 - b.k12).norm() < 1e-10);
                assert!((a.k22 - b.k22).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn gap_probability_two_letters() {
        // n = 2 Pfaffian Schur measure charges λ = (m, m) with weight (a1 a2)^m
        let a = [0.4, 0.55];
        let p0 = 1.0 - a[0] * a[1];
        for (x, want) in [(0usize, p0), (1, p0), (2, 0.0), (3, 0.0)] {
            let g = schur_complement_gap(x, &a).unwrap();
            assert!(close(g, want, 1e-10), "{x} {g}");
        }
    }

    #[test]
    fn hall_littlewood_observable_two_letters() {
        // P(ℓ = 0) = 1/Φ; otherwise ℓ = 2
        for &t in &[0.0f64, 0.3, 0.6] {
            for &x in &[0.5, 1.0, 2.0] {
                let a = [0.4, 0.4];
                let p0 = (1.0 - 0.16) / (1.0 - t * 0.16);
                let q = |e: f64| crate::symfunc::qpoch_inf(-t.powf(e), t * t);
                let lhs = p0 / q(x + 2.0) + (1.0 - p0) / q(x);
                let rhs = schur_complement_fredholm(x, &a, t).unwrap();
                assert!(close(rhs.result.value, lhs, 1e-9), "{t} {x} {lhs} {}", rhs.result.value);
            }
        }
    }

    #[test]
    fn goe_kernel_is_skew() {
        let k = GoeKernel::new(ContourSpec::goe(8.0, 60)).unwrap();
        let pts = [-1.3, 0.2, 0.9, 2.5];
        let b = k.blocks(&pts);
        let n = pts.len();
        for i in 0..n {
            for j in 0..n {
                let (p, q) = (b[i * n + j], b[j * n + i]);
                assert!((p.k11 + q.k11).norm() < 1e-11);
                assert!((p.k22 + q.k22).norm() < 1e-11);
                assert!((p.k12 + q.k21).norm() < 1e-11);
            }
        }
        let single = k.block(0.2, 0.9);
        assert!((single.k12 - b[n + 2].k12).norm() < 1e-14);
    }

    #[test]
    fn goe_cdf_basics() {
        let hi = f_goe(6.0).unwrap();
        assert!(hi.value > 1.0 - 5e-6 && hi.value <= 1.0 + 1e-9);
        assert!(f_goe(-8.0).unwrap().value.abs() < 1e-6);
        let c = f_goe_checked(0.0).unwrap();
        assert!(c.sensitivity < 1e-6, "{}", c.sensitivity);
        assert!(c.coarse.fingerprint.contains("rays"));
        // frozen from the two discretizations above
        assert!((c.refined.value - 0.831_908_066).abs() < 1e-8, "{}", c.refined.value);
    }

    #[test]
    fn bent_contour_reproduces_goe_cdf() {
        for &x in &[-3.0, 0.0] {
            let a = f_goe(x).unwrap().value;
            let mut d = Discretization::f_goe(x, false);
            let big_x = 10.0;
            d.contour = ContourSpec::Bent {
                anchor: 0.25,
                rise: f64::sqrt(big_x),
                segment_nodes: 120,
                angle: PI / 3.0,
                length: 8.0,
                nodes_per_ray: 100,
            };
            let b = f_goe_with(x, &d).unwrap().value;
            assert!((a - b).abs() < 1e-8, "{x} {a} {b}");
        }
    }

    #[test]
    fn kpz_basics() {
        let near = kpz_laplace(-1e-8, 1.0).unwrap().value;
        assert!((near - 1.0).abs() < 1e-6);
        let v1 = kpz_laplace(-0.5, 1.0).unwrap().value;
        let v2 = kpz_laplace(-2.0, 1.0).unwrap().value;
        assert!(0.0 < v2 && v2 < v1 && v1 < 1.0, "{v1} {v2}");
        let m = goe_multiplicative(0.5, 1.0 / 8.0).unwrap().value;
        assert!((m - v1).abs() < 1e-8);
    }
}
