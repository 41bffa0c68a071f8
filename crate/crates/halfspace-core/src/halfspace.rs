//! Half-space Macdonald measures on alphabets and the ascending half-space
//! Hall–Littlewood process, by exact or truncated enumeration.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::numeric::{powu, Scalar};
use crate::partitions::{b_el, enumerate_partitions, interlaces, strips_above, Partition};
use crate::symfunc::{phi_hall_littlewood, qpochhammer, skew_p_one, ModelParams, PochLen, SymfuncError, TruncationPolicy, P_multi, Phi};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HalfspaceError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("chain has {chain} steps but the alphabet has {alphabet} letters")]
    LengthMismatch { chain: usize, alphabet: usize },
    #[error("chain is not interlacing at step {0}")]
    NotInterlacing(usize),
    #[error("not a support vector: {0}")]
    BadBits(String),
    #[error(transparent)]
    Symfunc(#[from] SymfuncError),
}

/// `λ^(1) ⊆ ... ⊆ λ^(n)` with `λ^(k-1) ≺ λ^(k)` (and `∅ ≺ λ^(1)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AscendingChain(Vec<Partition>);

impl AscendingChain {
    pub fn new(parts: Vec<Partition>) -> Result<Self, HalfspaceError> {
        let c = AscendingChain(parts);
        if let Some(k) = c.first_violation() {
            return Err(HalfspaceError::NotInterlacing(k));
        }
        Ok(c)
    }

    /// No interlacing check; such chains get probability zero.
    pub fn unchecked(parts: Vec<Partition>) -> Self {
        AscendingChain(parts)
    }

    fn first_violation(&self) -> Option<usize> {
        let empty = Partition::empty();
        (0..self.0.len()).find(|&k| {
            let below = if k == 0 { &empty } else { &self.0[k - 1] };
            !interlaces(below, &self.0[k])
        })
    }

    pub fn is_interlacing(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> Partition {
        self.0.last().cloned().unwrap_or_else(Partition::empty)
    }

    /// `(ℓ(λ^(k)) - ℓ(λ^(k-1)))_k`, meaningful for interlacing chains.
    pub fn support(&self) -> SupportVector {
        let mut prev = 0;
        SupportVector(
            self.0
                .iter()
                .map(|p| {
                    let b = (p.len() - prev) as u8;
                    prev = p.len();
                    b
                })
                .collect(),
        )
    }
}

/// Binary vector `s_1..s_n`; printed as a bit string.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportVector(Vec<u8>);

impl SupportVector {
    pub fn new(bits: Vec<u8>) -> Result<Self, HalfspaceError> {
        if bits.iter().any(|&b| b > 1) {
            return Err(HalfspaceError::BadBits(format!("{bits:?}")));
        }
        Ok(SupportVector(bits))
    }

    pub fn zeros(n: usize) -> Self {
        SupportVector(vec![0; n])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&b| b as usize).sum()
    }

    /// Partial sums `H(0) = 0, H(1), ..., H(n)`.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0];
        for &b in &self.0 {
            h.push(h[h.len() - 1] + b as usize);
        }
        h
    }

    /// Every binary vector of length `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<SupportVector> {
        (0..1u64 << n)
            .map(|m| SupportVector((0..n).map(|k| ((m >> (n - 1 - k)) & 1) as u8).collect()))
            .collect()
    }
}

impl fmt::Display for SupportVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SupportVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SupportVector({self})")
    }
}

impl FromStr for SupportVector {
    type Err = HalfspaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(HalfspaceError::BadBits(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(SupportVector)
    }
}

impl Serialize for SupportVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A law on support vectors. `discarded` is `1 - Σ masses` for truncated
/// enumerations and exactly zero for the closed-form route.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportDistribution<S = f64> {
    pub masses: BTreeMap<SupportVector, S>,
    pub discarded: f64,
}

impl<S: Scalar> SupportDistribution<S> {
    pub fn get(&self, s: &SupportVector) -> S {
        self.masses.get(s).cloned().unwrap_or_else(S::zero)
    }

    pub fn total(&self) -> S {
        self.masses.values().fold(S::zero(), |a, b| a + b.clone())
    }

    /// Law of `Σ s_k`.
    pub fn total_marginal(&self) -> BTreeMap<usize, S> {
        let mut m = BTreeMap::new();
        for (s, p) in &self.masses {
            let e = m.entry(s.total()).or_insert_with(S::zero);
            *e = e.clone() + p.clone();
        }
        m
    }

    pub fn to_f64(&self) -> SupportDistribution<f64> {
        SupportDistribution {
            masses: self.masses.iter().map(|(k, v)| (k.clone(), v.to_f64())).collect(),
            discarded: self.discarded,
        }
    }

    /// `{"bits": probability}` with probabilities as floats.
    pub fn to_json(&self) -> serde_json::Value {
        let m: serde_json::Map<String, serde_json::Value> =
            self.masses.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v.to_f64()))).collect();
        serde_json::Value::Object(m)
    }
}

fn require_hl<S: Scalar>(params: &ModelParams<S>) -> Result<(), HalfspaceError> {
    if !params.is_hall_littlewood() {
        return Err(HalfspaceError::Domain("Hall–Littlewood case needs q = 0".into()));
    }
    Ok(())
}

fn prefix<S: Scalar>(params: &ModelParams<S>, n: usize) -> Result<&[S], HalfspaceError> {
    if n > params.n() {
        return Err(HalfspaceError::LengthMismatch { chain: n, alphabet: params.n() });
    }
    Ok(&params.alphabet[..n])
}

/// Half-space Macdonald measure of `λ` for the alphabet specialization
/// (no dual variables): `P_λ(a) b^el_λ 1{λ' even} / Φ(a)`.
pub fn pmm_prob(lambda: &Partition, params: &ModelParams, _policy: &TruncationPolicy) -> Result<f64, HalfspaceError> {
    if !lambda.is_conjugate_even() {
        return Ok(0.0);
    }
    let phi = Phi(&params.alphabet, params.q, params.t)?;
    Ok(P_multi(lambda, params) * b_el(lambda, &params.q, &params.t) / phi)
}

/// Probability of one ascending half-space Hall–Littlewood chain.
pub fn ascending_hl_prob<S: Scalar>(chain: &AscendingChain, params: &ModelParams<S>) -> Result<S, HalfspaceError> {
    require_hl(params)?;
    if chain.len() != params.n() {
        return Err(HalfspaceError::LengthMismatch { chain: chain.len(), alphabet: params.n() });
    }
    let top = chain.top();
    if !chain.is_interlacing() || !top.is_conjugate_even() {
        return Ok(S::zero());
    }
    let mut w = S::one();
    let mut prev = Partition::empty();
    for (lam, a) in chain.partitions().iter().zip(&params.alphabet) {
        w = w * skew_p_one(lam, &prev, a, &params.q, &params.t);
        prev = lam.clone();
    }
    let phi = phi_hall_littlewood(&params.alphabet, &params.t);
    Ok(w * b_el(&top, &params.q, &params.t) / phi)
}

/// Exact law of the support vector of `λ^(1) ⊆ ... ⊆ λ^(n)`.
///
/// Reads the chain column by column: column `j` of the diagram grows by
/// `h_k ∈ {0,1}` at step `k`, and the first column's increments are the
/// support vector. A chain is a sequence of columns with weakly decreasing
/// height profiles; the one-variable `P` coefficients and `b^el` factor over
/// adjacent column pairs, and runs of equal columns sum geometrically. This
/// collapses the infinite chain sum to `2^{n-1}` unknowns solved in order of
/// total height.
pub fn support_distribution<S: Scalar>(n: usize, params: &ModelParams<S>) -> Result<SupportDistribution<S>, HalfspaceError> {
    require_hl(params)?;
    let a = prefix(params, n)?;
    let t = &params.t;
    let cols: Vec<SupportVector> = {
        let mut v: Vec<SupportVector> = SupportVector::all(n)
            .into_iter()
            .filter(|h| h.total() > 0 && h.total() % 2 == 0)
            .collect();
        v.sort_by_key(|h| h.heights().iter().sum::<usize>());
        v
    };
    let heights: Vec<Vec<usize>> = cols.iter().map(|h| h.heights()).collect();
    let weight = |i: usize, hp: Option<usize>| -> S {
        let hh = &heights[i];
        let zero = vec![0usize; n + 1];
        let hph = hp.map_or(&zero, |j| &heights[j]);
        let mut w = S::one();
        for k in 1..=n {
            let cur = hh[k] - hh[k - 1];
            let next = hph[k] - hph[k - 1];
            if cur == 0 && next == 1 {
                w = w * (S::one() - powu(t, (hh[k - 1] - hph[k - 1]) as u32));
            }
        }
        for j in 1..=(hh[n] - hph[n]) / 2 {
            w = w * (S::one() - powu(t, 2 * j as u32 - 1));
        }
        w
    };
    let dominated = |j: usize, i: usize| -> bool {
        j != i && heights[j].iter().zip(&heights[i]).all(|(x, y)| x <= y)
    };
    let mut f: Vec<S> = Vec::with_capacity(cols.len());
    for i in 0..cols.len() {
        let x = cols[i]
            .bits()
            .iter()
            .zip(a)
            .fold(S::one(), |acc, (&b, ak)| if b == 1 { acc * ak.clone() } else { acc });
        let mut inner = weight(i, None);
        for j in 0..i {
            if dominated(j, i) {
                inner = inner + weight(i, Some(j)) * f[j].clone();
            }
        }
        f.push(x.clone() / (S::one() - x) * inner);
    }
    let phi = phi_hall_littlewood(a, t);
    let mut masses = BTreeMap::new();
    masses.insert(SupportVector::zeros(n), S::one() / phi.clone());
    for (h, fv) in cols.into_iter().zip(f) {
        masses.insert(h, fv / phi.clone());
    }
    for h in SupportVector::all(n) {
        masses.entry(h).or_insert_with(S::zero);
    }
    Ok(SupportDistribution { masses, discarded: 0.0 })
}

/// Support law by direct enumeration of chains with every part at most
/// `policy.max_part`.
pub fn support_distribution_truncated<S: Scalar>(
    n: usize,
    params: &ModelParams<S>,
    policy: &TruncationPolicy,
) -> Result<SupportDistribution<S>, HalfspaceError> {
    require_hl(params)?;
    let a = prefix(params, n)?;
    let (q, t) = (&params.q, &params.t);
    let mut cur: HashMap<(Partition, SupportVector), S> =
        HashMap::from([((Partition::empty(), SupportVector(vec![])), S::one())]);
    for ak in a {
        let mut next: HashMap<(Partition, SupportVector), S> = HashMap::new();
        for ((mu, bits), w) in &cur {
            for nu in strips_above(mu, None, policy.max_part) {
                let c = skew_p_one(&nu, mu, ak, q, t);
                if c.is_zero() {
                    continue;
                }
                let mut b = bits.0.clone();
                b.push((nu.len() - mu.len()) as u8);
                let e = next.entry((nu, SupportVector(b))).or_insert_with(S::zero);
                *e = e.clone() + w.clone() * c;
            }
        }
        cur = next;
    }
    let phi = phi_hall_littlewood(a, t);
    let mut masses: BTreeMap<SupportVector, S> = SupportVector::all(n).into_iter().map(|s| (s, S::zero())).collect();
    for ((lam, bits), w) in cur {
        if lam.is_conjugate_even() {
            let e = masses.get_mut(&bits).expect("all vectors present");
            *e = e.clone() + w * b_el(&lam, q, t) / phi.clone();
        }
    }
    let total: f64 = masses.values().map(|v| v.to_f64()).sum();
    Ok(SupportDistribution { masses, discarded: 1.0 - total })
}

/// `E[1/(-t^{x+n-ℓ(λ)}; t²)_∞]` under the half-space Hall–Littlewood measure,
/// with the law of `ℓ(λ)` taken from [`support_distribution`].
pub fn hl_observable_exact(x: f64, n: usize, params: &ModelParams, policy: &TruncationPolicy) -> Result<f64, HalfspaceError> {
    if n % 2 == 1 {
        return Err(HalfspaceError::Domain(format!("n must be even, got {n}")));
    }
    let t = params.t;
    let law = support_distribution(n, params)?.total_marginal();
    let mut acc = 0.0;
    for (len, p) in law {
        let e = x + n as f64 - len as f64;
        let arg = if t == 0.0 { if e > 0.0 { 0.0 } else { 1.0 } } else { t.powf(e) };
        let poch = qpochhammer((-arg).into(), t * t, PochLen::Infinite, policy.pochhammer_tol)?;
        acc += p / poch.re;
    }
    Ok(acc)
}

/// Law of `ℓ(λ)` under [`pmm_prob`], summed over partitions with parts at
/// most `policy.max_part` and length at most `n`.
pub fn pmm_length_marginal(params: &ModelParams, policy: &TruncationPolicy) -> Result<BTreeMap<usize, f64>, HalfspaceError> {
    let mut m = BTreeMap::new();
    for lam in enumerate_partitions(policy.max_part, params.n(), true) {
        *m.entry(lam.len()).or_insert(0.0) += pmm_prob(&lam, params, policy)?;
    }
    Ok(m)
}
