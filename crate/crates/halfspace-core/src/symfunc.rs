//! Macdonald-type symmetric functions on finite alphabets: one-variable
//! branching, chain sums, the series Π, Φ and E_λ, and residual checkers for
//! the summation identities they satisfy.
//!
//! Everything is generic over [`Scalar`], so the same traversal runs in exact
//! rational arithmetic or in `f64`.

use std::collections::HashMap;

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{powu, Scalar};
use crate::partitions::{b_el, enumerate_partitions, interlaces, strips_above, strips_below, Partition};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymfuncError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("infinite q-Pochhammer needs |q| < 1, got q = {0}")]
    PochhammerDiverges(f64),
    #[error("refined Littlewood identity needs an even alphabet length, got {0}")]
    OddAlphabet(usize),
    #[error("Pfaffian denominator vanishes (coincident variables)")]
    DegenerateDenominator,
}

/// `(q, t)` plus the alphabet `a_1..a_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelParams<S = f64> {
    pub q: S,
    pub t: S,
    pub alphabet: Vec<S>,
}

impl<S: Scalar> ModelParams<S> {
    pub fn new(q: S, t: S, alphabet: Vec<S>) -> Result<Self, SymfuncError> {
        let unit = |x: &S| *x >= S::zero() && *x < S::one();
        if !unit(&q) || !unit(&t) {
            return Err(SymfuncError::Domain(format!(
                "need 0 <= q,t < 1, got q={:?} t={:?}",
                q, t
            )));
        }
        if let Some(a) = alphabet.iter().find(|a| !(**a > S::zero() && **a < S::one())) {
            return Err(SymfuncError::Domain(format!("alphabet entry {a:?} outside (0,1)")));
        }
        Ok(ModelParams { q, t, alphabet })
    }

    /// Hall–Littlewood parameters (`q = 0`).
    pub fn hall_littlewood(t: S, alphabet: Vec<S>) -> Result<Self, SymfuncError> {
        Self::new(S::zero(), t, alphabet)
    }

    pub fn is_hall_littlewood(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_schur(&self) -> bool {
        self.q == self.t
    }

    pub fn n(&self) -> usize {
        self.alphabet.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationPolicy {
    pub max_part: u32,
    pub max_length: usize,
    pub pochhammer_tol: f64,
    pub tail_doubling: bool,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            max_part: 12,
            max_length: 12,
            pochhammer_tol: 1e-16,
            tail_doubling: false,
        }
    }
}

impl TruncationPolicy {
    pub fn with_max_part(max_part: u32) -> Self {
        TruncationPolicy {
            max_part,
            ..Default::default()
        }
    }
}

/// Length of a q-Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(u32),
    Infinite,
}

/// `(a; q)_n`. The infinite product stops once `|q^k a|` drops below `tol`;
/// for `q ≥ 0.99` the factors are accumulated as a (compensated) log-sum.
pub fn qpochhammer(a: Complex64, q: f64, n: PochLen, tol: f64) -> Result<Complex64, SymfuncError> {
    match n {
        PochLen::Finite(n) => {
            let mut acc = Complex64::new(1.0, 0.0);
            let mut qk = 1.0;
            for _ in 0..n {
                acc *= Complex64::new(1.0, 0.0) - a * qk;
                qk *= q;
            }
            Ok(acc)
        }
        PochLen::Infinite => {
            if q.abs() >= 1.0 {
                return Err(SymfuncError::PochhammerDiverges(q));
            }
            if a == Complex64::new(0.0, 0.0) {
                return Ok(Complex64::new(1.0, 0.0));
            }
            let mut qk = 1.0;
            if q >= 0.99 {
                // Kahan-summed logarithms: the plain product loses digits over
                // the thousands of factors needed as q → 1
                let (mut s, mut c) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
                while (a * qk).norm() >= tol {
                    let y = (Complex64::new(1.0, 0.0) - a * qk).ln() - c;
                    let t = s + y;
                    c = (t - s) - y;
                    s = t;
                    qk *= q;
                }
                Ok(s.exp())
            } else {
                let mut acc = Complex64::new(1.0, 0.0);
                while (a * qk).norm() >= tol {
                    acc *= Complex64::new(1.0, 0.0) - a * qk;
                    qk *= q;
                    if q == 0.0 {
                        break;
                    }
                }
                Ok(acc)
            }
        }
    }
}

/// Real-argument `(a; q)_∞` with the default tolerance.
pub fn qpoch_inf(a: f64, q: f64) -> f64 {
    qpochhammer(Complex64::new(a, 0.0), q, PochLen::Infinite, 1e-17)
        .map(|z| z.re)
        .unwrap_or(f64::NAN)
}

/// `φ(u) = (tu; q)_∞ / (u; q)_∞`.
pub fn phi_factor(u: f64, q: f64, t: f64) -> Result<f64, SymfuncError> {
    if u.abs() >= 1.0 {
        return Err(SymfuncError::Domain(format!("phi_factor needs |u| < 1, got {u}")));
    }
    let num = qpochhammer(Complex64::new(t * u, 0.0), q, PochLen::Infinite, 1e-17)?;
    let den = qpochhammer(Complex64::new(u, 0.0), q, PochLen::Infinite, 1e-17)?;
    Ok((num / den).re)
}

/// `Π(x; y) = ∏_{i,j} φ(x_i y_j)`.
#[allow(non_snake_case)]
pub fn Pi(x: &[f64], y: &[f64], q: f64, t: f64) -> Result<f64, SymfuncError> {
    let mut acc = 1.0;
    for xi in x {
        for yj in y {
            acc *= phi_factor(xi * yj, q, t)?;
        }
    }
    Ok(acc)
}

/// `Φ(x) = ∏_{i<j} φ(x_i x_j)`.
#[allow(non_snake_case)]
pub fn Phi(x: &[f64], q: f64, t: f64) -> Result<f64, SymfuncError> {
    let mut acc = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            acc *= phi_factor(x[i] * x[j], q, t)?;
        }
    }
    Ok(acc)
}

/// Exact `Φ(x)` at `q = 0`: `∏_{i<j} (1 - t x_i x_j)/(1 - x_i x_j)`.
pub fn phi_hall_littlewood<S: Scalar>(x: &[S], t: &S) -> S {
    let mut acc = S::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let u = x[i].clone() * x[j].clone();
            acc = acc * (S::one() - t.clone() * u.clone()) / (S::one() - u);
        }
    }
    acc
}

// f(q^a x) / f(q^c x) with f(u) = (tu;q)_∞/(qu;q)_∞; a finite ratio.
fn f_ratio<S: Scalar>(a: u32, c: u32, x: &S, q: &S, t: &S) -> S {
    if a < c {
        return S::one() / f_ratio(c, a, x, q, t);
    }
    let mut num = S::one();
    let mut den = S::one();
    for k in 0..(a - c) {
        num = num * (S::one() - powu(q, c + 1 + k) * x.clone());
        den = den * (S::one() - t.clone() * powu(q, c + k) * x.clone());
    }
    num / den
}

/// One-row branching coefficient `ψ_{λ/μ}(q,t)` (zero unless `μ ≺ λ`).
pub fn psi<S: Scalar>(lambda: &Partition, mu: &Partition, q: &S, t: &S) -> S {
    if !interlaces(mu, lambda) {
        return S::zero();
    }
    let mut acc = S::one();
    let n = mu.len();
    for i in 1..=n {
        for j in i..=n {
            let x = powu(t, (j - i) as u32);
            let (li, mi, mj, lj1) = (lambda.part(i), mu.part(i), mu.part(j), lambda.part(j + 1));
            acc = acc * f_ratio(mi - mj, li - mj, &x, q, t) * f_ratio(li - lj1, mi - lj1, &x, q, t);
        }
    }
    acc
}

/// One-row branching coefficient `φ_{λ/μ}(q,t)` (zero unless `μ ≺ λ`).
pub fn phi_coeff<S: Scalar>(lambda: &Partition, mu: &Partition, q: &S, t: &S) -> S {
    if !interlaces(mu, lambda) {
        return S::zero();
    }
    let mut acc = S::one();
    let n = lambda.len();
    for i in 1..=n {
        for j in i..=n {
            let x = powu(t, (j - i) as u32);
            let (li, lj, mi, mj, mj1, lj1) = (
                lambda.part(i),
                lambda.part(j),
                mu.part(i),
                mu.part(j),
                mu.part(j + 1),
                lambda.part(j + 1),
            );
            acc = acc * f_ratio(li - lj, li - mj, &x, q, t) * f_ratio(mi - mj1, mi - lj1, &x, q, t);
        }
    }
    acc
}

/// Which family a chain sum evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    P,
    Q,
}

fn one_var<S: Scalar>(fam: Family, lambda: &Partition, mu: &Partition, a: &S, q: &S, t: &S) -> S {
    let c = match fam {
        Family::P => psi(lambda, mu, q, t),
        Family::Q => phi_coeff(lambda, mu, q, t),
    };
    if c.is_zero() {
        return c;
    }
    c * powu(a, lambda.size() - mu.size())
}

/// `P_{λ/μ}(a)` in a single variable.
pub fn skew_p_one<S: Scalar>(lambda: &Partition, mu: &Partition, a: &S, q: &S, t: &S) -> S {
    one_var(Family::P, lambda, mu, a, q, t)
}

/// `Q_{λ/μ}(a)` in a single variable.
pub fn skew_q_one<S: Scalar>(lambda: &Partition, mu: &Partition, a: &S, q: &S, t: &S) -> S {
    one_var(Family::Q, lambda, mu, a, q, t)
}

/// All `ν ⊇ start` reachable by one horizontal strip per letter, with
/// weight `P_{ν/start}` (or `Q`) on the alphabet. Shapes are capped at
/// `ν_1 ≤ max_part` and, if given, `ν ⊆ outer`.
pub fn chains_up<S: Scalar>(
    fam: Family,
    start: &Partition,
    alphabet: &[S],
    q: &S,
    t: &S,
    max_part: u32,
    outer: Option<&Partition>,
) -> HashMap<Partition, S> {
    let mut cur: HashMap<Partition, S> = HashMap::from([(start.clone(), S::one())]);
    for a in alphabet {
        let mut next: HashMap<Partition, S> = HashMap::new();
        for (k, w) in &cur {
            for nu in strips_above(k, outer, max_part) {
                let c = one_var(fam, &nu, k, a, q, t);
                if c.is_zero() {
                    continue;
                }
                let e = next.entry(nu).or_insert_with(S::zero);
                *e = e.clone() + w.clone() * c;
            }
        }
        cur = next;
    }
    cur
}

/// All `κ ⊆ top` with weight `P_{top/κ}` (or `Q`) on the alphabet.
pub fn chains_down<S: Scalar>(
    fam: Family,
    top: &Partition,
    alphabet: &[S],
    q: &S,
    t: &S,
    inner: Option<&Partition>,
) -> HashMap<Partition, S> {
    let mut cur: HashMap<Partition, S> = HashMap::from([(top.clone(), S::one())]);
    for a in alphabet {
        let mut next: HashMap<Partition, S> = HashMap::new();
        for (nu, w) in &cur {
            for k in strips_below(nu, inner) {
                let c = one_var(fam, nu, &k, a, q, t);
                if c.is_zero() {
                    continue;
                }
                let e = next.entry(k).or_insert_with(S::zero);
                *e = e.clone() + w.clone() * c;
            }
        }
        cur = next;
    }
    cur
}

fn skew_multi<S: Scalar>(fam: Family, lambda: &Partition, mu: &Partition, params: &ModelParams<S>) -> S {
    if !lambda.contains(mu) {
        return S::zero();
    }
    let m = chains_up(
        fam,
        mu,
        &params.alphabet,
        &params.q,
        &params.t,
        lambda.part(1),
        Some(lambda),
    );
    m.get(lambda).cloned().unwrap_or_else(S::zero)
}

/// `P_{λ/μ}` on the whole alphabet, summed over interlacing chains.
pub fn skew_p_multi<S: Scalar>(lambda: &Partition, mu: &Partition, params: &ModelParams<S>) -> S {
    skew_multi(Family::P, lambda, mu, params)
}

pub fn skew_q_multi<S: Scalar>(lambda: &Partition, mu: &Partition, params: &ModelParams<S>) -> S {
    skew_multi(Family::Q, lambda, mu, params)
}

#[allow(non_snake_case)]
pub fn P_multi<S: Scalar>(lambda: &Partition, params: &ModelParams<S>) -> S {
    skew_p_multi(lambda, &Partition::empty(), params)
}

#[allow(non_snake_case)]
pub fn Q_multi<S: Scalar>(lambda: &Partition, params: &ModelParams<S>) -> S {
    skew_q_multi(lambda, &Partition::empty(), params)
}

/// `E_λ(x) = Σ_{μ' even} b^el_μ Q_{λ/μ}(x)`; finite since `μ ⊆ λ`.
#[allow(non_snake_case)]
pub fn E_lambda<S: Scalar>(lambda: &Partition, alphabet: &[S], q: &S, t: &S) -> S {
    chains_down(Family::Q, lambda, alphabet, q, t, None)
        .into_iter()
        .filter(|(mu, _)| mu.is_conjugate_even())
        .fold(S::zero(), |acc, (mu, w)| acc + w * b_el(&mu, q, t))
}

/// Result of one identity check, in the shape the CLI reports.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub identity: String,
    pub params: serde_json::Value,
    pub truncation: TruncationPolicy,
    pub residual: f64,
}

/// `|Σ_κ P_{κ/ν}(x) Q_{κ/λ}(y) − Π(x;y) Σ_τ Q_{ν/τ}(y) P_{λ/τ}(x)|`.
pub fn check_skew_cauchy(
    nu: &Partition,
    lambda: &Partition,
    x: &[f64],
    y: &[f64],
    q: f64,
    t: f64,
    policy: &TruncationPolicy,
) -> Result<f64, SymfuncError> {
    let mp = policy.max_part;
    let left = chains_up(Family::P, nu, x, &q, &t, mp, None);
    let right = chains_up(Family::Q, lambda, y, &q, &t, mp, None);
    let lhs: f64 = left
        .iter()
        .filter(|(k, _)| k.len() <= policy.max_length)
        .filter_map(|(k, w)| right.get(k).map(|v| w * v))
        .sum();
    let down_q = chains_down(Family::Q, nu, y, &q, &t, None);
    let down_p = chains_down(Family::P, lambda, x, &q, &t, None);
    let rhs: f64 = down_q
        .iter()
        .filter_map(|(k, w)| down_p.get(k).map(|v| w * v))
        .sum();
    Ok((lhs - Pi(x, y, q, t)? * rhs).abs())
}

/// `|Σ_{ν' even} b^el_ν P_{ν/λ}(x) − Φ(x) E_λ(x)|`.
pub fn check_skew_littlewood(
    lambda: &Partition,
    x: &[f64],
    q: f64,
    t: f64,
    policy: &TruncationPolicy,
) -> Result<f64, SymfuncError> {
    let lhs: f64 = chains_up(Family::P, lambda, x, &q, &t, policy.max_part, None)
        .into_iter()
        .filter(|(nu, _)| nu.is_conjugate_even() && nu.len() <= policy.max_length)
        .map(|(nu, w)| w * b_el(&nu, &q, &t))
        .sum();
    let rhs = Phi(x, q, t)? * E_lambda(lambda, x, &q, &t);
    Ok((lhs - rhs).abs())
}

/// `|Σ_{ν' even} b^el_ν P_ν(x) − Φ(x)|`, the plain Littlewood identity.
pub fn check_littlewood(x: &[f64], q: f64, t: f64, policy: &TruncationPolicy) -> Result<f64, SymfuncError> {
    check_skew_littlewood(&Partition::empty(), x, q, t, policy)
}

/// `Σ_{λ'even} w(λ) b^el_λ P_λ(x)` over the truncated range, as a closure-weighted sum.
fn littlewood_weighted_sum<F>(x: &[f64], q: f64, t: f64, policy: &TruncationPolicy, w: F) -> Complex64
where
    F: Fn(&Partition) -> Complex64,
{
    chains_up(Family::P, &Partition::empty(), x, &q, &t, policy.max_part, None)
        .into_iter()
        .filter(|(nu, _)| nu.is_conjugate_even() && nu.len() <= policy.max_length)
        .map(|(nu, p)| w(&nu) * (p * b_el(&nu, &q, &t)))
        .sum()
}

fn even_index_product(lambda: &Partition, n: usize, u: Complex64, factor: impl Fn(u32, usize) -> f64) -> Complex64 {
    (2..=n)
        .step_by(2)
        .map(|i| Complex64::new(1.0, 0.0) - u * factor(lambda.part(i), i))
        .product()
}

/// Right-hand side of the refined Littlewood identity: a ratio of two
/// Pfaffians built from the alphabet. Independent of `q`.
///
/// Both Pfaffians vanish to high order as letters approach each other, so
/// the ratio is formed in exact rational arithmetic from the (exactly
/// representable) inputs and rounded once.
pub fn refined_littlewood_rhs(u: Complex64, x: &[f64], t: f64) -> Result<Complex64, SymfuncError> {
    let n = x.len();
    if n % 2 == 1 {
        return Err(SymfuncError::OddAlphabet(n));
    }
    let exact = |v: f64| BigRational::from_float(v).ok_or_else(|| SymfuncError::Domain(format!("non-finite input {v}")));
    let xs: Vec<BigRational> = x.iter().map(|&v| exact(v)).collect::<Result<_, _>>()?;
    let (t, ur, ui) = (exact(t)?, exact(u.re)?, exact(u.im)?);
    let u = Complex::new(ur, ui);
    let one = BigRational::one();
    let zero = Complex::new(BigRational::zero(), BigRational::zero());
    let mut num = vec![zero.clone(); n * n];
    let mut den = vec![zero; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = &xs[i] - &xs[j];
            let p = &xs[i] * &xs[j];
            if p == one || &t * &p == one {
                return Err(SymfuncError::DegenerateDenominator);
            }
            let a = &d / (&one - &p);
            let b = &d / (&one - &t * &p);
            den[i * n + j] = Complex::new(a.clone(), BigRational::zero());
            num[i * n + j] = Complex::new(a, BigRational::zero()) - u.clone() * b;
        }
    }
    let den = pf_exact(n, den);
    if den.is_zero() {
        return Err(SymfuncError::DegenerateDenominator);
    }
    let r = pf_exact(n, num) / den;
    Ok(Complex64::new(r.re.to_f64(), r.im.to_f64()))
}

/// Pfaffian by skew elimination over an exact field.
fn pf_exact(n: usize, mut a: Vec<Complex<BigRational>>) -> Complex<BigRational> {
    let mut pf = Complex::new(BigRational::one(), BigRational::zero());
    for k in (0..n).step_by(2) {
        let Some(p) = (k + 1..n).find(|&j| !a[k * n + j].is_zero()) else {
            return Complex::new(BigRational::zero(), BigRational::zero());
        };
        if p != k + 1 {
            // swap index k+1 with p in rows and columns
            for r in 0..n {
                a.swap(r * n + k + 1, r * n + p);
            }
            for c in 0..n {
                a.swap((k + 1) * n + c, p * n + c);
            }
            pf = -pf;
        }
        let piv = a[k * n + k + 1].clone();
        pf *= piv.clone();
        for i in k + 2..n {
            let fi = a[k * n + i].clone() / piv.clone();
            let gi = a[(k + 1) * n + i].clone() / piv.clone();
            for j in k + 2..n {
                // Schur complement of the leading 2x2 block
                let v = a[k * n + j].clone() * gi.clone() - a[(k + 1) * n + j].clone() * fi.clone();
                a[i * n + j] = a[i * n + j].clone() + v;
            }
        }
    }
    pf
}

/// Left-hand side of the refined Littlewood identity, truncated by `policy`.
pub fn refined_littlewood_lhs(u: Complex64, x: &[f64], q: f64, t: f64, policy: &TruncationPolicy) -> Result<Complex64, SymfuncError> {
    let n = x.len();
    if n % 2 == 1 {
        return Err(SymfuncError::OddAlphabet(n));
    }
    let s = littlewood_weighted_sum(x, q, t, policy, |l| {
        even_index_product(l, n, u, |p, i| q.powi(p as i32) * t.powi((n - i) as i32))
    });
    Ok(s / Phi(x, q, t)?)
}

pub fn check_refined_littlewood(
    n: usize,
    u: Complex64,
    x: &[f64],
    q: f64,
    t: f64,
    policy: &TruncationPolicy,
) -> Result<f64, SymfuncError> {
    if n % 2 == 1 {
        return Err(SymfuncError::OddAlphabet(n));
    }
    if x.len() != n {
        return Err(SymfuncError::Domain(format!("alphabet length {} != n = {n}", x.len())));
    }
    let rhs = refined_littlewood_rhs(u, x, t)?;
    let lhs = refined_littlewood_lhs(u, x, q, t, policy)?;
    Ok((lhs - rhs).norm())
}

/// `|E^{(q,t)}[∏_{i even}(1 − u q^{λ_i} t^{n−i})] − E^{Schur}[∏_{i even}(1 − u t^{λ_i+n−i})]|`,
/// both expectations by truncated enumeration over the half-space measures.
pub fn check_mm_schur_relation(
    n: usize,
    u: Complex64,
    x: &[f64],
    q: f64,
    t: f64,
    policy: &TruncationPolicy,
) -> Result<f64, SymfuncError> {
    if n % 2 == 1 {
        return Err(SymfuncError::OddAlphabet(n));
    }
    if x.len() != n {
        return Err(SymfuncError::Domain(format!("alphabet length {} != n = {n}", x.len())));
    }
    let mac = littlewood_weighted_sum(x, q, t, policy, |l| {
        even_index_product(l, n, u, |p, i| q.powi(p as i32) * t.powi((n - i) as i32))
    }) / Phi(x, q, t)?;
    // the Schur measure does not depend on the common value q = t
    let s = 0.5;
    let schur = littlewood_weighted_sum(x, s, s, policy, |l| {
        even_index_product(l, n, u, |p, i| t.powi(p as i32 + (n - i) as i32))
    }) / Phi(x, s, s)?;
    Ok((mac - schur).norm())
}

/// Semistandard-tableau Schur polynomial, used as an independent oracle.
pub fn schur_by_tableaux(lambda: &Partition, x: &[f64]) -> f64 {
    // fill row by row, column-strict, weakly increasing rows
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| (0..p as usize).map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![0usize; lambda.part(1) as usize]; lambda.len()];
    fn rec(i: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, x: &[f64]) -> f64 {
        if i == cells.len() {
            return grid
                .iter()
                .flatten()
                .filter(|&&v| v > 0)
                .map(|&v| x[v - 1])
                .product();
        }
        let (r, c) = cells[i];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let lo = lo_row.max(lo_col);
        let mut s = 0.0;
        for v in lo..=x.len() {
            grid[r][c] = v;
            s += rec(i + 1, cells, grid, x);
        }
        grid[r][c] = 0;
        s
    }
    if lambda.len() > x.len() {
        return 0.0;
    }
    rec(0, &cells, &mut grid, x)
}

/// Brute-force `Σ_κ P_κ(x) Q_κ(y)` over partitions in a box.
pub fn cauchy_sum(x: &[f64], y: &[f64], q: f64, t: f64, max_part: u32, max_length: usize) -> f64 {
    let px = ModelParams { q, t, alphabet: x.to_vec() };
    let qy = ModelParams { q, t, alphabet: y.to_vec() };
    enumerate_partitions(max_part, max_length, false)
        .iter()
        .map(|k| P_multi(k, &px) * Q_multi(k, &qy))
        .sum()
}
