//! Candidate extremal trees and their closed-form counts.
//!
//! Both families hang `k` units off a hub. A unit is a top vertex joined to
//! a middle vertex that carries `ℓ_i` leaves. In the even family the hub is
//! the first top; in the odd family the hub is separate, adjacent to every
//! top, and carries one extra pendant middle.

use num_bigint::BigUint;
use thiserror::Error;

use crate::forest::Forest;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("a family needs at least one unit")]
    Empty,
    #[error("leaf count ℓ_{index} = 0; every unit needs at least one leaf")]
    NoLeaves { index: usize },
    #[error("could not parse leaf counts {0:?}")]
    Parse(String),
}

fn validate(ells: &[usize]) -> Result<(), ExtremalError> {
    if ells.is_empty() {
        return Err(ExtremalError::Empty);
    }
    match ells.iter().position(|&l| l == 0) {
        Some(i) => Err(ExtremalError::NoLeaves { index: i + 1 }),
        None => Ok(()),
    }
}

/// Parses a comma-separated leaf-count list such as `2,3`.
pub fn parse_ells(text: &str) -> Result<Vec<usize>, ExtremalError> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| ExtremalError::Parse(text.to_string())))
        .collect()
}

/// Leaf counts of an even-family tree; γ_t = 2k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenSpec {
    ells: Vec<usize>,
}

impl EvenSpec {
    pub fn new(ells: Vec<usize>) -> Result<EvenSpec, ExtremalError> {
        validate(&ells)?;
        Ok(EvenSpec { ells })
    }

    pub fn ells(&self) -> &[usize] {
        &self.ells
    }

    pub fn k(&self) -> usize {
        self.ells.len()
    }

    pub fn order(&self) -> usize {
        2 * self.k() + self.ells.iter().sum::<usize>()
    }

    pub fn gamma_t(&self) -> usize {
        2 * self.k()
    }
}

/// Leaf counts of an odd-family tree; γ_t = 2k + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddSpec {
    ells: Vec<usize>,
}

impl OddSpec {
    pub fn new(ells: Vec<usize>) -> Result<OddSpec, ExtremalError> {
        validate(&ells)?;
        Ok(OddSpec { ells })
    }

    pub fn ells(&self) -> &[usize] {
        &self.ells
    }

    pub fn k(&self) -> usize {
        self.ells.len()
    }

    pub fn order(&self) -> usize {
        2 * (self.k() + 1) + self.ells.iter().sum::<usize>()
    }

    pub fn gamma_t(&self) -> usize {
        2 * self.k() + 1
    }
}

/// Hub 0 doubles as top 1; tops 2..k are `1..k-1`, middles `k..2k-1`,
/// then the leaves of each middle in spec order.
pub fn build_t_even(spec: &EvenSpec) -> Forest {
    let k = spec.k();
    let top = |i: usize| if i == 0 { 0 } else { i };
    let middle = |i: usize| k + i;
    let mut edges = Vec::with_capacity(spec.order() - 1);
    for i in 1..k {
        edges.push((0, top(i)));
    }
    for i in 0..k {
        edges.push((top(i), middle(i)));
    }
    let mut next = 2 * k;
    for (i, &l) in spec.ells.iter().enumerate() {
        for _ in 0..l {
            edges.push((middle(i), next));
            next += 1;
        }
    }
    Forest::from_edges(next, &edges).expect("even family is a tree")
}

/// Hub 0, tops `1..=k`, pendant middle `k+1`, middles `k+2..=2k+1`, then
/// leaves in spec order.
pub fn build_t_odd(spec: &OddSpec) -> Forest {
    let k = spec.k();
    let pendant = k + 1;
    let middle = |i: usize| k + 2 + i;
    let mut edges = Vec::with_capacity(spec.order() - 1);
    for i in 1..=k {
        edges.push((0, i));
    }
    edges.push((0, pendant));
    for i in 0..k {
        edges.push((i + 1, middle(i)));
    }
    let mut next = 2 * k + 2;
    for (i, &l) in spec.ells.iter().enumerate() {
        for _ in 0..l {
            edges.push((middle(i), next));
            next += 1;
        }
    }
    Forest::from_edges(next, &edges).expect("odd family is a tree")
}

/// Π (ℓ_i + 1).
pub fn closed_count_even(spec: &EvenSpec) -> BigUint {
    spec.ells.iter().map(|&l| BigUint::from(l + 1)).product()
}

/// Σ_i Π_{j<i} ℓ_j · Π_{j>i} (ℓ_j + 1), evaluated term by term.
pub fn closed_count_odd(spec: &OddSpec) -> BigUint {
    let ells = &spec.ells;
    (0..ells.len())
        .map(|i| {
            let before: BigUint = ells[..i].iter().map(|&l| BigUint::from(l)).product();
            let after: BigUint = ells[i + 1..].iter().map(|&l| BigUint::from(l + 1)).product();
            before * after
        })
        .sum()
}

/// Π (ℓ_j + 1) − Π ℓ_j, the telescoped form of [`closed_count_odd`].
pub fn closed_count_odd_telescoped(spec: &OddSpec) -> BigUint {
    let plus: BigUint = spec.ells.iter().map(|&l| BigUint::from(l + 1)).product();
    let plain: BigUint = spec.ells.iter().map(|&l| BigUint::from(l)).product();
    plus - plain
}

/// `parts` disjoint copies of the star of order `star_order`, each listed
/// center first.
pub fn build_star_union(parts: usize, star_order: usize) -> Forest {
    assert!(parts >= 1 && star_order >= 2, "need parts >= 1 and star order >= 2");
    let mut edges = Vec::new();
    for p in 0..parts {
        let base = p * star_order;
        for leaf in 1..star_order {
            edges.push((base, base + leaf));
        }
    }
    Forest::from_edges(parts * star_order, &edges).expect("star union is a forest")
}

/// Best even-family count among caption-feasible specs of order `n` with
/// `k` units; `None` if no spec fits.
pub fn best_even_count(n: usize, k: usize) -> Option<BigUint> {
    // (ℓ_1+1) + … + (ℓ_k+1) = n − k with every part ≥ 2
    let total = n.checked_sub(k)?;
    best_over_partitions(total, k, |parts| parts.iter().map(|&p| BigUint::from(p)).product())
}

/// Best odd-family count among caption-feasible specs of order `n` with
/// `k` units.
pub fn best_odd_count(n: usize, k: usize) -> Option<BigUint> {
    // (ℓ_1+1) + … + (ℓ_k+1) = n − k − 2
    let total = n.checked_sub(k + 2)?;
    best_over_partitions(total, k, |parts| {
        let spec = OddSpec::new(parts.iter().map(|&p| p - 1).collect()).expect("parts are at least 2");
        closed_count_odd(&spec)
    })
}

/// Both counts are symmetric in the leaf counts, so only non-increasing
/// part lists are visited.
fn best_over_partitions(total: usize, k: usize, value: impl Fn(&[usize]) -> BigUint) -> Option<BigUint> {
    fn rec(
        remaining: usize,
        slots: usize,
        cap: usize,
        parts: &mut Vec<usize>,
        value: &dyn Fn(&[usize]) -> BigUint,
        best: &mut Option<BigUint>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                let v = value(parts);
                if best.as_ref().map_or(true, |b| v > *b) {
                    *best = Some(v);
                }
            }
            return;
        }
        if remaining < 2 * slots {
            return;
        }
        let hi = cap.min(remaining - 2 * (slots - 1));
        for p in (2..=hi).rev() {
            parts.push(p);
            rec(remaining - p, slots - 1, p, parts, value, best);
            parts.pop();
        }
    }
    if k == 0 {
        return None;
    }
    let mut best = None;
    rec(total, k, total, &mut Vec::with_capacity(k), &value, &mut best);
    best
}

/// Best family count for `(n, γ_t)` using the family matching the parity.
pub fn best_family_count(n: usize, gamma_t: usize) -> Option<BigUint> {
    if gamma_t % 2 == 0 {
        best_even_count(n, gamma_t / 2)
    } else {
        best_odd_count(n, (gamma_t - 1) / 2)
    }
}
