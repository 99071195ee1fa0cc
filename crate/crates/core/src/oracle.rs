//! Brute-force ground truth by subset enumeration over neighbor bitmasks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::Forest;

pub const DEFAULT_ORACLE_CAP: usize = 22;
pub const LEMMA1_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("forest has an isolated vertex; total domination is undefined")]
    IsolatedVertex,
    #[error("forest is empty")]
    Empty,
    #[error("order {n} exceeds the brute-force cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("input is not a single tree")]
    Disconnected,
}

/// A family of equal-size vertex sets, each sorted, listed in
/// lexicographic order without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    pub size: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetFamily {
    /// Sorts each set and the family; panics if sizes disagree.
    pub fn new(size: usize, mut sets: Vec<Vec<usize>>) -> SetFamily {
        for s in &mut sets {
            s.sort_unstable();
            assert_eq!(s.len(), size, "set family members must share one cardinality");
        }
        sets.sort();
        sets.dedup();
        SetFamily { size, sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteResult {
    pub gamma_t: usize,
    pub count: u64,
    pub family: SetFamily,
}

fn neighbor_masks(f: &Forest) -> Vec<u64> {
    (0..f.order())
        .map(|v| f.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect()
}

fn mask_to_set(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn dominates_mask(masks: &[u64], d: u64) -> bool {
    masks.iter().all(|&m| m & d != 0)
}

/// True iff every vertex of `f` has a neighbor in `d`.
pub fn is_total_dominating(f: &Forest, d: &[usize]) -> bool {
    let mut member = vec![false; f.order()];
    for &v in d {
        member[v] = true;
    }
    (0..f.order()).all(|v| f.neighbors(v).iter().any(|&w| member[w]))
}

/// Visits every `k`-subset of `0..n` as a bitmask (Gosper's hack).
fn for_each_k_subset(n: usize, k: usize, mut visit: impl FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    if k == 0 {
        visit(0);
        return;
    }
    let limit = 1u64 << n;
    let mut s = (1u64 << k) - 1;
    while s < limit {
        if !visit(s) {
            return;
        }
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

pub fn brute_gamma_t(f: &Forest) -> Result<BruteResult, OracleError> {
    brute_gamma_t_with_cap(f, DEFAULT_ORACLE_CAP)
}

/// Minimum total dominating sets by enumeration in order of increasing
/// cardinality. `cap` is clamped to 63.
pub fn brute_gamma_t_with_cap(f: &Forest, cap: usize) -> Result<BruteResult, OracleError> {
    let n = f.order();
    let cap = cap.min(63);
    if n == 0 {
        return Err(OracleError::Empty);
    }
    if f.has_isolated_vertex() {
        return Err(OracleError::IsolatedVertex);
    }
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let masks = neighbor_masks(f);
    for k in 2..=n {
        let mut found = false;
        for_each_k_subset(n, k, |s| {
            found = dominates_mask(&masks, s);
            !found
        });
        if !found {
            continue;
        }
        let mut sets = Vec::new();
        for_each_k_subset(n, k, |s| {
            if dominates_mask(&masks, s) {
                sets.push(mask_to_set(s));
            }
            true
        });
        let family = SetFamily::new(k, sets);
        return Ok(BruteResult { gamma_t: k, count: family.len() as u64, family });
    }
    unreachable!("the full vertex set totally dominates a forest without isolated vertices")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Result {
    pub max_size: usize,
    pub witness: Vec<usize>,
}

/// Largest `B` such that no edge has both ends in `B` and no vertex has two
/// neighbors in `B`, found by exhaustive search.
pub fn check_lemma1(t: &Forest) -> Result<Lemma1Result, OracleError> {
    let n = t.order();
    if n > LEMMA1_CAP {
        return Err(OracleError::CapExceeded { n, cap: LEMMA1_CAP });
    }
    if !t.is_tree() || n < 2 {
        return Err(OracleError::Disconnected);
    }
    let masks = neighbor_masks(t);
    let mut best = 0u64;
    for b in 0u64..(1 << n) {
        if b.count_ones() <= best.count_ones() {
            continue;
        }
        let ok = (0..n).all(|u| {
            let hit = masks[u] & b;
            hit.count_ones() <= 1 && (b >> u & 1 == 0 || hit == 0)
        });
        if ok {
            best = b;
        }
    }
    Ok(Lemma1Result { max_size: best.count_ones() as usize, witness: mask_to_set(best) })
}
