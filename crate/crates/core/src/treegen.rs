//! Non-isomorphic free trees as canonical level sequences.
//!
//! Rooted trees are generated in decreasing lexicographic order of their
//! canonical level sequences (each node's subtrees in non-increasing order).
//! A rooted sequence is kept as a free tree when its root is a centroid and,
//! for bicentroidal trees, when it is not smaller than the rooting at the
//! other centroid. The kept sequence is the canonical form of its class.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::{format_level_sequence, Forest};

pub const DEFAULT_MAX_ORDER: usize = 20;
pub const MAX_ORDER_ENV: &str = "GTLAB_MAX_N";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreegenError {
    #[error("order {n} outside 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("input is not a single tree")]
    NotATree,
    #[error("partition needs at least one part")]
    NoParts,
}

/// Treegen order cap, overridable through `GTLAB_MAX_N`.
pub fn max_order() -> usize {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalTree {
    pub n: usize,
    pub level_sequence: Vec<usize>,
}

impl CanonicalTree {
    pub fn to_forest(&self) -> Forest {
        Forest::from_level_sequence(&self.level_sequence).expect("canonical sequences are valid")
    }
}

impl std::fmt::Display for CanonicalTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_level_sequence(&self.level_sequence))
    }
}

/// Level sequence of `t` rooted at `root` with every node's subtrees in
/// non-increasing lexicographic order.
pub fn rooted_canonical(t: &Forest, root: usize) -> Vec<usize> {
    fn walk(t: &Forest, v: usize, from: usize) -> Vec<usize> {
        let mut subtrees: Vec<Vec<usize>> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| w != from)
            .map(|&w| walk(t, w, v))
            .collect();
        subtrees.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = Vec::with_capacity(1 + subtrees.iter().map(Vec::len).sum::<usize>());
        out.push(0);
        for s in subtrees {
            out.extend(s.into_iter().map(|d| d + 1));
        }
        out
    }
    walk(t, root, usize::MAX)
}

/// The one or two vertices minimizing the largest component left after
/// their removal.
pub fn centroids(t: &Forest) -> Vec<usize> {
    let n = t.order();
    let view = t.root_all();
    let mut size = vec![1usize; n];
    for &v in &view.order {
        if let Some(p) = view.parent[v] {
            size[p] += size[v];
        }
    }
    let heaviest: Vec<usize> = (0..n)
        .map(|v| {
            let below = t
                .neighbors(v)
                .iter()
                .filter(|&&w| view.parent[w] == Some(v))
                .map(|&w| size[w])
                .max()
                .unwrap_or(0);
            below.max(n - size[v])
        })
        .collect();
    let best = heaviest.iter().copied().min().unwrap_or(0);
    (0..n).filter(|&v| heaviest[v] == best).collect()
}

pub fn canonical_form(t: &Forest) -> Result<CanonicalTree, TreegenError> {
    if !t.is_tree() {
        return Err(TreegenError::NotATree);
    }
    let level_sequence = centroids(t)
        .into_iter()
        .map(|c| rooted_canonical(t, c))
        .max()
        .expect("a tree has a centroid");
    Ok(CanonicalTree { n: t.order(), level_sequence })
}

/// Advances to the next rooted canonical level sequence in decreasing
/// lexicographic order; false once the star has been passed.
fn next_rooted(seq: &mut [usize]) -> bool {
    let Some(p) = seq.iter().rposition(|&d| d > 1) else {
        return false;
    };
    let q = seq[..p].iter().rposition(|&d| d == seq[p] - 1).expect("parent precedes child");
    let gap = p - q;
    for i in p..seq.len() {
        seq[i] = seq[i - gap];
    }
    true
}

/// Does this rooted canonical sequence carry the free-tree canonical form?
fn is_free_canonical(seq: &[usize]) -> bool {
    let n = seq.len();
    let mut heaviest = 0;
    let mut heaviest_at = 0;
    let mut start = 1;
    while start < n {
        let end = seq[start + 1..].iter().position(|&d| d == 1).map_or(n, |off| start + 1 + off);
        if end - start > heaviest {
            heaviest = end - start;
            heaviest_at = start;
        }
        start = end;
    }
    if 2 * heaviest > n {
        return false;
    }
    if 2 * heaviest < n {
        return true;
    }
    let tree = Forest::from_level_sequence(seq).expect("generated sequences are valid");
    seq >= rooted_canonical(&tree, heaviest_at).as_slice()
}

/// Resumable position inside the rooted-sequence stream of one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CursorPosition {
    /// Index of `sequence` in the rooted stream.
    pub rooted_index: u64,
    /// Next rooted sequence to examine; `None` once exhausted.
    pub sequence: Option<Vec<usize>>,
}

/// Stream of canonical free trees of one order.
///
/// A cursor for part `p` of `parts` only examines rooted sequences whose
/// stream index is congruent to `p`, so the cursors of one partition are
/// disjoint and jointly cover every tree. Within a cursor, trees come in
/// decreasing lexicographic order.
#[derive(Debug, Clone)]
pub struct TreeCursor {
    n: usize,
    part: u64,
    parts: u64,
    position: CursorPosition,
    last_index: Option<u64>,
}

impl TreeCursor {
    fn start(n: usize, part: u64, parts: u64) -> TreeCursor {
        let first: Vec<usize> = (0..n).collect();
        TreeCursor::resume(n, part, parts, CursorPosition { rooted_index: 0, sequence: Some(first) })
    }

    pub fn resume(n: usize, part: u64, parts: u64, position: CursorPosition) -> TreeCursor {
        TreeCursor { n, part, parts, position, last_index: None }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn position(&self) -> &CursorPosition {
        &self.position
    }

    /// Rooted-stream index of the tree most recently returned.
    pub fn last_index(&self) -> Option<u64> {
        self.last_index
    }
}

impl Iterator for TreeCursor {
    type Item = CanonicalTree;

    fn next(&mut self) -> Option<CanonicalTree> {
        loop {
            let index = self.position.rooted_index;
            let seq = self.position.sequence.as_mut()?;
            let hit = (index % self.parts == self.part && is_free_canonical(seq)).then(|| seq.clone());
            if !next_rooted(seq) {
                self.position.sequence = None;
            }
            self.position.rooted_index += 1;
            if let Some(level_sequence) = hit {
                self.last_index = Some(index);
                return Some(CanonicalTree { n: self.n, level_sequence });
            }
        }
    }
}

/// Every tree of order `n` once, up to isomorphism.
pub fn gen_trees(n: usize) -> Result<TreeCursor, TreegenError> {
    gen_trees_capped(n, max_order())
}

pub fn gen_trees_capped(n: usize, max: usize) -> Result<TreeCursor, TreegenError> {
    if n == 0 || n > max {
        return Err(TreegenError::OrderOutOfRange { n, max });
    }
    Ok(TreeCursor::start(n, 0, 1))
}

pub fn partition_range(n: usize, parts: usize) -> Result<Vec<TreeCursor>, TreegenError> {
    let max = max_order();
    if n == 0 || n > max {
        return Err(TreegenError::OrderOutOfRange { n, max });
    }
    if parts == 0 {
        return Err(TreegenError::NoParts);
    }
    Ok((0..parts as u64).map(|p| TreeCursor::start(n, p, parts as u64)).collect())
}
