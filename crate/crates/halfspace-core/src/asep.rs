//! Half-line open ASEP on `{1, 2, ...}` started empty: particles enter site
//! 1 at rate `α`, leave it at rate `γ`, and jump right/left at rates `p`/`q`.
//! Trajectories run on a finite window `1..=L` that is validated after the
//! fact; an exact master-equation solve on tiny windows serves as oracle.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernels::{self, KernelError, SIGMA};
use crate::par;
use crate::symfunc::{qpochhammer, PochLen, SymfuncError};

/// Size limit for [`master_oracle`].
pub const ORACLE_MAX_L: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsepError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("master equation is limited to L <= {ORACLE_MAX_L}, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Symfunc(#[from] SymfuncError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ASEPRates {
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub gamma: f64,
}

impl ASEPRates {
    /// `(p, q, α, γ) = (1, t, 1/2, t/2)`.
    pub fn preset(t: f64) -> Result<Self, AsepError> {
        if !(0.0..1.0).contains(&t) {
            return Err(AsepError::Domain(format!("asymmetry t = {t} must lie in [0, 1)")));
        }
        ASEPRates::new(1.0, t, 0.5, 0.5 * t)
    }

    pub fn new(p: f64, q: f64, alpha: f64, gamma: f64) -> Result<Self, AsepError> {
        if [p, q, alpha, gamma].iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return Err(AsepError::Domain("rates must be finite and non-negative".into()));
        }
        Ok(ASEPRates { p, q, alpha, gamma })
    }

    /// Liggett's condition `α/p + γ/q = 1`, written as `αq + γp = pq` so
    /// that `q = γ = 0` is covered.
    pub fn liggett(&self) -> bool {
        let lhs = self.alpha * self.q + self.gamma * self.p;
        let rhs = self.p * self.q;
        (lhs - rhs).abs() <= 1e-14 * rhs.abs().max(1.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ASEPState {
    /// `η_1..η_L`.
    pub occupation: Vec<u8>,
    pub time: f64,
    pub injected: u64,
    pub ejected: u64,
    /// Largest site ever occupied, 0 if none.
    pub rightmost_ever: usize,
    /// Set when a particle reached site `L-1`, so the window edge may have
    /// mattered.
    pub truncation_suspect: bool,
}

impl ASEPState {
    pub fn empty(l: usize) -> Self {
        ASEPState {
            occupation: vec![0; l],
            time: 0.0,
            injected: 0,
            ejected: 0,
            rightmost_ever: 0,
            truncation_suspect: false,
        }
    }

    /// Total particle number `N = N_1`.
    pub fn particles(&self) -> u64 {
        self.injected - self.ejected
    }

    pub fn len(&self) -> usize {
        self.occupation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupation.is_empty()
    }
}

/// Index set with O(1) insert, remove and uniform pick.
#[derive(Clone, Debug)]
struct BondSet {
    items: Vec<usize>,
    pos: Vec<usize>,
}

impl BondSet {
    const NONE: usize = usize::MAX;

    fn new(cap: usize) -> Self {
        BondSet { items: Vec::new(), pos: vec![Self::NONE; cap] }
    }

    fn insert(&mut self, b: usize) {
        if self.pos[b] == Self::NONE {
            self.pos[b] = self.items.len();
            self.items.push(b);
        }
    }

    fn remove(&mut self, b: usize) {
        let i = self.pos[b];
        if i != Self::NONE {
            let last = self.items.pop().expect("non-empty");
            if last != b {
                self.items[i] = last;
                self.pos[last] = i;
            }
            self.pos[b] = Self::NONE;
        }
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}

struct Dynamics {
    eta: Vec<u8>,
    // bond b joins sites b+1, b+2 (zero-based b = 0..L-2)
    right: BondSet,
    left: BondSet,
}

impl Dynamics {
    fn refresh(&mut self, b: usize) {
        if b + 1 >= self.eta.len() {
            return;
        }
        self.right.remove(b);
        self.left.remove(b);
        match (self.eta[b], self.eta[b + 1]) {
            (1, 0) => self.right.insert(b),
            (0, 1) => self.left.insert(b),
            _ => {}
        }
    }

    fn flip(&mut self, site: usize, v: u8) {
        self.eta[site] = v;
        if site > 0 {
            self.refresh(site - 1);
        }
        self.refresh(site);
    }
}

/// Evolve the empty configuration on `1..=L` up to time `tau`.
pub fn simulate<R: Rng>(tau: f64, rates: &ASEPRates, l: usize, rng: &mut R) -> Result<ASEPState, AsepError> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(AsepError::Domain(format!("τ must be finite and non-negative, got {tau}")));
    }
    if l == 0 {
        return Err(AsepError::Domain("need L >= 1".into()));
    }
    let mut st = ASEPState::empty(l);
    let cap = l.max(2) - 1;
    let mut dy = Dynamics { eta: vec![0; l], right: BondSet::new(cap), left: BondSet::new(cap) };
    let mut time = 0.0;
    loop {
        let boundary = if dy.eta[0] == 0 { rates.alpha } else { rates.gamma };
        let r_right = rates.p * dy.right.len() as f64;
        let r_left = rates.q * dy.left.len() as f64;
        let total = boundary + r_right + r_left;
        if total <= 0.0 {
            break;
        }
        let u: f64 = rng.random();
        time += -(1.0 - u).ln() / total;
        if time > tau {
            break;
        }
        let pick = rng.random::<f64>() * total;
        if pick < boundary {
            if dy.eta[0] == 0 {
                dy.flip(0, 1);
                st.injected += 1;
                st.rightmost_ever = st.rightmost_ever.max(1);
            } else {
                dy.flip(0, 0);
                st.ejected += 1;
            }
        } else if pick < boundary + r_right {
            let k = (((pick - boundary) / rates.p) as usize).min(dy.right.len() - 1);
            let b = dy.right.items[k];
            dy.flip(b, 0);
            dy.flip(b + 1, 1);
            st.rightmost_ever = st.rightmost_ever.max(b + 2);
        } else {
            let k = (((pick - boundary - r_right) / rates.q) as usize).min(dy.left.len() - 1);
            let b = dy.left.items[k];
            dy.flip(b + 1, 0);
            dy.flip(b, 1);
        }
    }
    st.occupation = dy.eta;
    st.time = tau;
    st.truncation_suspect = l >= 2 && st.rightmost_ever + 1 >= l;
    Ok(st)
}

/// Default window `max(32, ⌈3τ⌉)`.
pub fn default_window(tau: f64) -> usize {
    32usize.max((3.0 * tau).ceil() as usize)
}

/// One trajectory from `seed` on the default window, redone on a doubled
/// window (same seed) while the edge was reached.
pub fn simulate_seeded(tau: f64, rates: &ASEPRates, seed: u64) -> Result<ASEPState, AsepError> {
    let mut l = default_window(tau);
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let st = simulate(tau, rates, l, &mut rng)?;
        if !st.truncation_suspect {
            return Ok(st);
        }
        l *= 2;
    }
}

/// `N_x = Σ_{i ≥ x} η_i`, zero beyond the window.
pub fn current(state: &ASEPState, x: usize) -> Result<u64, AsepError> {
    if x == 0 {
        return Err(AsepError::Domain("sites start at 1".into()));
    }
    Ok(state.occupation.iter().skip(x - 1).map(|&b| b as u64).sum())
}

/// `h_τ(x) = -2N_{x+1} - x` for `x ≥ 0`.
pub fn height(state: &ASEPState, x: usize) -> i64 {
    -2 * current(state, x + 1).expect("x + 1 >= 1") as i64 - x as i64
}

/// Smallest even integer `≥ k`.
pub fn ceil2(k: i64) -> i64 {
    k + k.rem_euclid(2)
}

/// `1/(ζ t^{x+⌈N⌉₂}; t²)_∞`, with `ζ = -1` giving the Pochhammer observable
/// of the current.
pub fn pochhammer_observable(n: u64, x: f64, t: f64, zeta: Complex64) -> Result<Complex64, AsepError> {
    if !(t.abs() < 1.0) {
        return Err(AsepError::Domain(format!("need |t| < 1, got {t}")));
    }
    let e = x + ceil2(n as i64) as f64;
    let arg = zeta * if t == 0.0 { if e > 0.0 { 0.0 } else { 1.0 } } else { t.powf(e) };
    let poch = qpochhammer(arg, t * t, PochLen::Infinite, 1e-18)?;
    if poch.norm() < 1e-300 {
        return Err(AsepError::Domain("observable hits a pole".into()));
    }
    Ok(Complex64::new(1.0, 0.0) / poch)
}

/// `t = e^{-ε}` and the simulation time `ε^{-3} τ̂ / (1 - t)`.
pub fn weak_scaling(eps: f64, tau_hat: f64) -> (f64, f64) {
    let t = (-eps).exp();
    (t, eps.powi(-3) * tau_hat / (1.0 - t))
}

/// `U_ε = t^{N - ε^{-3}τ̂/4} / (1 - t²)` with `t = e^{-ε}`.
pub fn u_eps(n: u64, eps: f64, tau_hat: f64) -> f64 {
    let t = (-eps).exp();
    t.powf(n as f64 - eps.powi(-3) * tau_hat / 4.0) / (1.0 - t * t)
}

/// Monte Carlo summary in standard-error units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub se: f64,
    pub n: usize,
    pub first_seed: u64,
    #[serde(skip)]
    m2: f64,
}

impl McEstimate {
    pub fn from_samples(xs: &[f64], first_seed: u64) -> Self {
        let n = xs.len();
        let mean = xs.iter().sum::<f64>() / n.max(1) as f64;
        let m2: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
        McEstimate::from_parts(mean, m2, n, first_seed)
    }

    fn from_parts(mean: f64, m2: f64, n: usize, first_seed: u64) -> Self {
        let se = if n > 1 { (m2 / (n - 1) as f64 / n as f64).sqrt() } else { f64::INFINITY };
        McEstimate { mean, se, n, first_seed, m2 }
    }

    /// Pool two independent estimates.
    pub fn merge(&self, o: &McEstimate) -> McEstimate {
        if self.n == 0 {
            return *o;
        }
        if o.n == 0 {
            return *self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        let mean = self.mean + d * o.n as f64 / n as f64;
        let m2 = self.m2 + o.m2 + d * d * (self.n as f64 * o.n as f64) / n as f64;
        McEstimate::from_parts(mean, m2, n, self.first_seed.min(o.first_seed))
    }

    /// `|mean - target| / se`. A constant sample (`se = 0`) scores 0 when it
    /// matches the target to rounding and infinity otherwise.
    pub fn z_score(&self, target: f64) -> f64 {
        let d = (self.mean - target).abs();
        if self.se == 0.0 {
            return if d <= 1e-12 * target.abs().max(1.0) { 0.0 } else { f64::INFINITY };
        }
        d / self.se
    }
}

/// `N(τ)` for seeds `first_seed..first_seed + runs`.
pub fn sample_currents(tau: f64, rates: &ASEPRates, first_seed: u64, runs: usize) -> Result<Vec<u64>, AsepError> {
    let out = par::map_range(runs, |k| simulate_seeded(tau, rates, first_seed + k as u64).map(|s| s.particles()));
    out.into_iter().collect()
}

/// Mean of `obs(N(τ))` over seeds.
pub fn mc_current_observable(
    tau: f64,
    rates: &ASEPRates,
    first_seed: u64,
    runs: usize,
    obs: impl Fn(u64) -> Result<f64, AsepError> + Sync,
) -> Result<McEstimate, AsepError> {
    let ns = sample_currents(tau, rates, first_seed, runs)?;
    let xs: Vec<f64> = ns.into_iter().map(obs).collect::<Result<_, _>>()?;
    Ok(McEstimate::from_samples(&xs, first_seed))
}

/// Per-site occupation frequencies on a fixed window (the window edge is
/// closed, as in [`master_oracle`]).
pub fn mc_site_marginals(
    tau: f64,
    rates: &ASEPRates,
    l: usize,
    first_seed: u64,
    runs: usize,
) -> Result<Vec<McEstimate>, AsepError> {
    let states = par::map_range(runs, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(first_seed + k as u64);
        simulate(tau, rates, l, &mut rng).map(|s| s.occupation)
    });
    let states: Vec<Vec<u8>> = states.into_iter().collect::<Result<_, _>>()?;
    Ok((0..l)
        .map(|x| {
            let xs: Vec<f64> = states.iter().map(|s| s[x] as f64).collect();
            McEstimate::from_samples(&xs, first_seed)
        })
        .collect())
}

/// Continuous-time chain on `{0,1}^L` (bit `x-1` is site `x`), closed at
/// site `L`.
pub struct MasterChain {
    rates: ASEPRates,
    l: usize,
}

impl MasterChain {
    pub fn new(rates: ASEPRates, l: usize) -> Result<Self, AsepError> {
        if l == 0 {
            return Err(AsepError::Domain("need L >= 1".into()));
        }
        if l > ORACLE_MAX_L {
            return Err(AsepError::TooLarge(l));
        }
        Ok(MasterChain { rates, l })
    }

    pub fn states(&self) -> usize {
        1 << self.l
    }

    /// Off-diagonal transitions out of `s` with their rates.
    pub fn moves(&self, s: usize) -> Vec<(usize, f64)> {
        let r = &self.rates;
        let mut out = Vec::new();
        if s & 1 == 0 {
            out.push((s | 1, r.alpha));
        } else {
            out.push((s & !1, r.gamma));
        }
        for x in 0..self.l.saturating_sub(1) {
            let (a, b) = (s >> x & 1, s >> (x + 1) & 1);
            let swapped = s ^ (0b11 << x);
            if a == 1 && b == 0 {
                out.push((swapped, r.p));
            } else if a == 0 && b == 1 {
                out.push((swapped, r.q));
            }
        }
        out.retain(|&(_, w)| w > 0.0);
        out
    }

    /// Uniformization rate: the largest total exit rate (at least 1e-300).
    pub fn uniform_rate(&self) -> f64 {
        (0..self.states())
            .map(|s| self.moves(s).iter().map(|m| m.1).sum::<f64>())
            .fold(1e-300, f64::max)
    }

    /// Row `s` of the uniformized transition matrix `I + Q/Λ`.
    pub fn transition_row(&self, s: usize) -> Vec<(usize, f64)> {
        let lam = self.uniform_rate();
        self.transition_row_with(s, lam)
    }

    fn transition_row_with(&self, s: usize, lam: f64) -> Vec<(usize, f64)> {
        let mv = self.moves(s);
        let exit: f64 = mv.iter().map(|m| m.1).sum();
        let mut row: Vec<(usize, f64)> = mv.into_iter().map(|(j, w)| (j, w / lam)).collect();
        row.push((s, 1.0 - exit / lam));
        row
    }
}

/// Exact law at time `tau` of the chain started empty, by uniformization;
/// the Poisson series is cut once its tail is below `1e-14`.
pub fn master_oracle(tau: f64, rates: &ASEPRates, l: usize) -> Result<Vec<f64>, AsepError> {
    let chain = MasterChain::new(*rates, l)?;
    if !(tau >= 0.0) {
        return Err(AsepError::Domain("τ must be non-negative".into()));
    }
    let ns = chain.states();
    let mut dist = vec![0.0; ns];
    let mut v = vec![0.0; ns];
    v[0] = 1.0;
    if tau == 0.0 {
        return Ok(v);
    }
    let lam = chain.uniform_rate();
    let rows: Vec<Vec<(usize, f64)>> = (0..ns).map(|s| chain.transition_row_with(s, lam)).collect();
    let mu = lam * tau;
    // Poisson weights in log space so large μ does not underflow the first term
    let mut k = 0u64;
    let mut acc = 0.0;
    loop {
        let logw = -mu + k as f64 * mu.ln() - ln_factorial(k);
        let w = logw.exp();
        for (d, x) in dist.iter_mut().zip(&v) {
            *d += w * x;
        }
        acc += w;
        if (k as f64) > mu && 1.0 - acc < 1e-14 {
            break;
        }
        let mut nv = vec![0.0; ns];
        for (s, row) in rows.iter().enumerate() {
            if v[s] != 0.0 {
                for &(j, p) in row {
                    nv[j] += v[s] * p;
                }
            }
        }
        v = nv;
        k += 1;
    }
    Ok(dist)
}

fn ln_factorial(k: u64) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

/// `P(η_x = 1)` for each site from a law on `{0,1}^L`.
pub fn site_marginals(dist: &[f64], l: usize) -> Vec<f64> {
    (0..l).map(|x| dist.iter().enumerate().filter(|(s, _)| s >> x & 1 == 1).map(|(_, p)| p).sum()).collect()
}

/// `(T/4 - N)/(2^{-4/3} T^{1/3})` at time `T/(1-t)`.
pub fn rescaled_current(n: u64, big_t: f64) -> f64 {
    (big_t / 4.0 - n as f64) / (SIGMA * big_t.cbrt())
}

/// Kolmogorov–Smirnov distance between samples and a continuous CDF.
/// The CDF is evaluated once per distinct sample value.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> Result<f64, AsepError> + Sync) -> Result<f64, AsepError> {
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let mut distinct: Vec<(f64, usize)> = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        match distinct.last_mut() {
            Some((v, last)) if *v == x => *last = i + 1,
            _ => distinct.push((x, i + 1)),
        }
    }
    let values = par::map_slice(&distinct, |&(x, _)| cdf(x));
    let m = xs.len() as f64;
    let mut below = 0.0;
    let mut d: f64 = 0.0;
    for (&(_, upto), f) in distinct.iter().zip(values) {
        let f = f?;
        let above = upto as f64 / m;
        d = d.max((f - below).abs()).max((f - above).abs());
        below = above;
    }
    Ok(d)
}

/// One row of the GOE trend report.
#[derive(Clone, Debug, Serialize)]
pub struct TrendRow {
    pub big_t: f64,
    pub tau: f64,
    pub samples: usize,
    pub first_seed: u64,
    pub ks: f64,
    pub mean: f64,
}

/// KS distance of the rescaled current to `F_GOE` for each `T`.
pub fn goe_trend(t: f64, big_ts: &[f64], samples: usize, first_seed: u64) -> Result<Vec<TrendRow>, AsepError> {
    let rates = ASEPRates::preset(t)?;
    let mut out = Vec::new();
    for &big_t in big_ts {
        if !(big_t > 0.0) {
            return Err(AsepError::Domain("T must be positive".into()));
        }
        let tau = big_t / (1.0 - t);
        let ns = sample_currents(tau, &rates, first_seed, samples)?;
        let xs: Vec<f64> = ns.iter().map(|&n| rescaled_current(n, big_t)).collect();
        let ks = ks_distance(&xs, |x| Ok(kernels::f_goe(x)?.value))?;
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        out.push(TrendRow { big_t, tau, samples, first_seed, ks, mean });
    }
    Ok(out)
}
