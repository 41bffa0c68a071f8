//! Integer partitions and the small amount of diagram combinatorics the rest
//! of the crate needs.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{powu, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("box ({row},{col}) lies outside the diagram of {shape}")]
    BoxOutside { row: usize, col: usize, shape: Partition },
}

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// dropped on construction, so equal partitions compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A cell of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Box {
    pub row: usize,
    pub col: usize,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition(parts))
    }

    /// Construct from parts already known to be valid (zeros trimmed here too).
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_i` with 1-based `i`; zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return u32::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts equal to `j` (for `j ≥ 1`).
    pub fn multiplicity(&self, j: u32) -> usize {
        self.0.iter().filter(|&&p| p == j).count()
    }

    pub fn transpose(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|i| self.0.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Every column height even, i.e. parts come in equal pairs.
    pub fn is_conjugate_even(&self) -> bool {
        self.0.chunks(2).all(|c| c.len() == 2 && c[0] == c[1])
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn arm_leg(&self, b: Box) -> Result<(u32, u32), PartitionError> {
        if b.row == 0 || b.col == 0 || b.row > self.len() || b.col as u32 > self.part(b.row) {
            return Err(PartitionError::BoxOutside {
                row: b.row,
                col: b.col,
                shape: self.clone(),
            });
        }
        let arm = self.part(b.row) - b.col as u32;
        let leg = self.0.iter().filter(|&&p| p as usize >= b.col).count() - b.row;
        Ok((arm, leg as u32))
    }

    /// All cells as (arm, leg) pairs, row by row.
    pub fn arms_legs(&self) -> Vec<(u32, u32)> {
        let t = self.transpose();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (r, &p) in self.0.iter().enumerate() {
            for c in 0..p as usize {
                out.push((p - c as u32 - 1, t.0[c] - r as u32 - 1));
            }
        }
        out
    }
}

/// `λ_i ≥ μ_i ≥ λ_{i+1}` for all i.
pub fn interlaces(mu: &Partition, lambda: &Partition) -> bool {
    if mu.len() > lambda.len() {
        return false;
    }
    (1..=lambda.len()).all(|i| lambda.part(i) >= mu.part(i) && mu.part(i) >= lambda.part(i + 1))
}

pub fn transpose(lambda: &Partition) -> Partition {
    lambda.transpose()
}

pub fn arm_leg(lambda: &Partition, b: Box) -> Result<(u32, u32), PartitionError> {
    lambda.arm_leg(b)
}

/// The even-leg coefficient: product over boxes with even leg length of
/// `(1 - q^a t^(l+1)) / (1 - q^(a+1) t^l)`.
pub fn b_el<S: Scalar>(mu: &Partition, q: &S, t: &S) -> S {
    box_product(mu, q, t, |_, l| l % 2 == 0)
}

/// `b_λ(q,t)`, the ratio with `Q_λ = b_λ P_λ`: the same product over all boxes.
pub fn b_lambda<S: Scalar>(lambda: &Partition, q: &S, t: &S) -> S {
    box_product(lambda, q, t, |_, _| true)
}

fn box_product<S: Scalar>(mu: &Partition, q: &S, t: &S, keep: impl Fn(u32, u32) -> bool) -> S {
    let mut num = S::one();
    let mut den = S::one();
    for (a, l) in mu.arms_legs() {
        if keep(a, l) {
            num = num * (S::one() - powu(q, a) * powu(t, l + 1));
            den = den * (S::one() - powu(q, a + 1) * powu(t, l));
        }
    }
    num / den
}

/// All partitions with `λ_1 ≤ max_part` and `ℓ(λ) ≤ max_length`, ordered by
/// size and then reverse-lexicographically. With `even_conjugate_only`, only
/// those whose transpose has even parts.
pub fn enumerate_partitions(
    max_part: u32,
    max_length: usize,
    even_conjugate_only: bool,
) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    if even_conjugate_only {
        // parts come in pairs: enumerate the halved shape and double each row
        fill(max_part, max_length / 2, &mut cur, &mut out);
        for p in out.iter_mut() {
            p.0 = p.0.iter().flat_map(|&x| [x, x]).collect();
        }
    } else {
        fill(max_part, max_length, &mut cur, &mut out);
    }
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
    out
}

fn fill(bound: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition(cur.clone()));
    if slots == 0 {
        return;
    }
    for p in 1..=bound {
        cur.push(p);
        fill(p, slots - 1, cur, out);
        cur.pop();
    }
}

/// Partitions `ν` with `μ ≺ ν ⊆ outer` (outer `None` means only `ν_1 ≤ max_part`).
pub fn strips_above(mu: &Partition, outer: Option<&Partition>, max_part: u32) -> Vec<Partition> {
    let len = mu.len() + 1;
    let upper: Vec<u32> = (1..=len)
        .map(|i| {
            let interlace = if i == 1 { max_part } else { mu.part(i - 1) };
            match outer {
                Some(o) => interlace.min(o.part(i)),
                None => interlace,
            }
        })
        .collect();
    let lower: Vec<u32> = (1..=len).map(|i| mu.part(i)).collect();
    if lower.iter().zip(&upper).any(|(l, u)| l > u) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lower.clone();
    box_ranges(&lower, &upper, 0, &mut cur, &mut out);
    out
}

/// Partitions `κ` with `κ ≺ λ` (and `κ ⊇ inner` if given).
pub fn strips_below(lambda: &Partition, inner: Option<&Partition>) -> Vec<Partition> {
    let len = lambda.len();
    let upper: Vec<u32> = (1..=len).map(|i| lambda.part(i)).collect();
    let lower: Vec<u32> = (1..=len)
        .map(|i| {
            let l = lambda.part(i + 1);
            match inner {
                Some(m) => l.max(m.part(i)),
                None => l,
            }
        })
        .collect();
    if lower.iter().zip(&upper).any(|(l, u)| l > u) || inner.is_some_and(|m| m.len() > len) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lower.clone();
    box_ranges(&lower, &upper, 0, &mut cur, &mut out);
    out
}

// Interlacing ranges are already decreasing-compatible: any choice inside the
// boxes yields a partition, so a plain odometer suffices.
fn box_ranges(lower: &[u32], upper: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if i == lower.len() {
        out.push(Partition::from_sorted(cur.clone()));
        return;
    }
    for v in lower[i]..=upper[i] {
        cur[i] = v;
        box_ranges(lower, upper, i + 1, cur, out);
    }
}
