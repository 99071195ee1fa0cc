//! Linear-time total domination counting on forests.
//!
//! Each rooted subtree is summarized by four [`MinCount`] cells, one per
//! combination of "root in D" and "root already has a D-neighbor below it".
//! Cells live in the (min size, witness count) semiring, so one bottom-up
//! pass yields both the minimum size and the number of minimum sets.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::Forest;
use crate::oracle::SetFamily;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("forest has an isolated vertex; total domination is undefined")]
    IsolatedVertex,
    #[error("forest is empty")]
    Empty,
    #[error("{count} minimum total dominating sets exceed the listing cap {cap}")]
    CapExceeded { count: BigUint, cap: u64 },
}

/// Semiring scalar: smallest size reachable and how many sets reach it.
/// `size == None` is the infeasible element, always paired with count 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCount {
    size: Option<u32>,
    count: BigUint,
}

impl MinCount {
    pub fn infeasible() -> MinCount {
        MinCount { size: None, count: BigUint::zero() }
    }

    /// Multiplicative identity `(0, 1)`.
    pub fn unit() -> MinCount {
        MinCount::new(0, 1u32)
    }

    /// Panics if `count` is zero, which would break the cell invariant.
    pub fn new(size: u32, count: impl Into<BigUint>) -> MinCount {
        let count = count.into();
        assert!(!count.is_zero(), "a feasible cell needs a positive count");
        MinCount { size: Some(size), count }
    }

    pub fn size(&self) -> Option<u32> {
        self.size
    }

    pub fn count(&self) -> &BigUint {
        &self.count
    }

    pub fn is_feasible(&self) -> bool {
        self.size.is_some()
    }

    /// Keeps the smaller size, merging counts on ties.
    pub fn add(&self, other: &MinCount) -> MinCount {
        match (self.size, other.size) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) if a < b => self.clone(),
            (Some(a), Some(b)) if a > b => other.clone(),
            (Some(a), Some(_)) => MinCount { size: Some(a), count: &self.count + &other.count },
        }
    }

    /// Adds sizes and multiplies counts; infeasible absorbs.
    pub fn mul(&self, other: &MinCount) -> MinCount {
        match (self.size, other.size) {
            (Some(a), Some(b)) => MinCount { size: Some(a + b), count: &self.count * &other.count },
            _ => MinCount::infeasible(),
        }
    }
}

impl fmt::Display for MinCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.size {
            Some(s) => write!(f, "({s}, {})", self.count),
            None => f.write_str("(INF, 0)"),
        }
    }
}

/// DP state of a vertex `v` relative to the set `D` under construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum State {
    /// `v ∈ D` with a child in `D`.
    InSat = 0,
    /// `v ∈ D` with no child in `D` yet.
    InNeed = 1,
    /// `v ∉ D` with a child in `D`.
    OutSat = 2,
    /// `v ∉ D` with no child in `D` yet.
    OutNeed = 3,
}

impl State {
    pub const ALL: [State; 4] = [State::InSat, State::InNeed, State::OutSat, State::OutNeed];

    pub fn in_set(self) -> bool {
        matches!(self, State::InSat | State::InNeed)
    }

    pub fn satisfied(self) -> bool {
        matches!(self, State::InSat | State::OutSat)
    }

    fn from_parts(in_set: bool, satisfied: bool) -> State {
        match (in_set, satisfied) {
            (true, true) => State::InSat,
            (true, false) => State::InNeed,
            (false, true) => State::OutSat,
            (false, false) => State::OutNeed,
        }
    }
}

pub type Cells = [MinCount; 4];

/// May a child in state `child` sit below a parent with membership `parent_in`?
pub fn admissible(parent_in: bool, child: State) -> bool {
    parent_in || child.satisfied()
}

/// Does a child in state `child` give its parent a D-neighbor?
fn marks_parent(child: State) -> bool {
    child.in_set()
}

/// Folds children into the two-flag accumulator for one parent membership.
/// Returns `[unmet, met]` after every child, starting from `[(0,1), INF]`.
fn fold_prefixes(children: &[&Cells], parent_in: bool) -> Vec<[MinCount; 2]> {
    let mut acc = vec![[MinCount::unit(), MinCount::infeasible()]];
    for cells in children {
        let mut marking = MinCount::infeasible();
        let mut plain = MinCount::infeasible();
        for s in State::ALL {
            if !admissible(parent_in, s) {
                continue;
            }
            if marks_parent(s) {
                marking = marking.add(&cells[s as usize]);
            } else {
                plain = plain.add(&cells[s as usize]);
            }
        }
        let [unmet, met] = acc.last().expect("non-empty");
        let next_unmet = unmet.mul(&plain);
        let next_met = met.mul(&marking.add(&plain)).add(&unmet.mul(&marking));
        acc.push([next_unmet, next_met]);
    }
    acc
}

/// Cells of a vertex given the cells of its children. A leaf gets
/// `IN_NEED = (1,1)`, `OUT_NEED = (0,1)` and infeasible satisfied states.
pub fn combine_children(children: &[&Cells]) -> Cells {
    let mut out: Cells = std::array::from_fn(|_| MinCount::infeasible());
    let one = MinCount::new(1, 1u32);
    for parent_in in [true, false] {
        let acc = fold_prefixes(children, parent_in);
        let [unmet, met] = acc.last().expect("non-empty");
        let (unmet, met) = if parent_in { (unmet.mul(&one), met.mul(&one)) } else { (unmet.clone(), met.clone()) };
        out[State::from_parts(parent_in, false) as usize] = unmet;
        out[State::from_parts(parent_in, true) as usize] = met;
    }
    out
}

/// Per-vertex cells for a rooted forest.
#[derive(Debug, Clone)]
pub struct DpTable {
    pub cells: Vec<Cells>,
    pub roots: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl DpTable {
    pub fn build(f: &Forest) -> Result<DpTable, DpError> {
        if f.order() == 0 {
            return Err(DpError::Empty);
        }
        if f.has_isolated_vertex() {
            return Err(DpError::IsolatedVertex);
        }
        let view = f.root_all();
        let children = view.children();
        let mut cells: Vec<Option<Cells>> = vec![None; f.order()];
        for &v in &view.order {
            let kids: Vec<&Cells> = children[v]
                .iter()
                .map(|&c| cells[c].as_ref().expect("children precede parents"))
                .collect();
            cells[v] = Some(combine_children(&kids));
        }
        let cells = cells.into_iter().map(|c| c.expect("every vertex visited")).collect();
        Ok(DpTable { cells, roots: view.roots, children })
    }

    /// Acceptable root cells: the root must itself have a D-neighbor.
    pub fn root_value(&self, root: usize) -> MinCount {
        let c = &self.cells[root];
        c[State::InSat as usize].add(&c[State::OutSat as usize])
    }

    pub fn total(&self) -> MinCount {
        self.roots.iter().fold(MinCount::unit(), |acc, &r| acc.mul(&self.root_value(r)))
    }
}

/// Total domination number and the number of minimum total dominating sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCount {
    pub gamma_t: usize,
    #[serde(with = "crate::decimal")]
    pub count: BigUint,
}

pub fn dp_gamma_t(f: &Forest) -> Result<GammaCount, DpError> {
    let total = DpTable::build(f)?.total();
    let size = total.size().expect("forests without isolated vertices are totally dominated by V");
    Ok(GammaCount { gamma_t: size as usize, count: total.count().clone() })
}

/// Lists every minimum total dominating set, refusing when there are more
/// than `cap`.
pub fn list_gamma_t_sets(f: &Forest, cap: u64) -> Result<SetFamily, DpError> {
    let table = DpTable::build(f)?;
    let total = table.total();
    if total.count().to_u64().map_or(true, |c| c > cap) {
        return Err(DpError::CapExceeded { count: total.count().clone(), cap });
    }
    let mut sets = vec![Vec::new()];
    for &root in &table.roots {
        let best = table.root_value(root);
        let mut root_sets = Vec::new();
        for s in [State::InSat, State::OutSat] {
            if table.cells[root][s as usize].size() == best.size() {
                root_sets.extend(expand(&table, root, s));
            }
        }
        sets = product(&sets, &root_sets);
    }
    Ok(SetFamily::new(total.size().unwrap_or(0) as usize, sets))
}

fn product(left: &[Vec<usize>], right: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for a in left {
        for b in right {
            let mut s = a.clone();
            s.extend_from_slice(b);
            out.push(s);
        }
    }
    out
}

/// All optimal sets of the subtree of `v` in state `state`.
fn expand(table: &DpTable, v: usize, state: State) -> Vec<Vec<usize>> {
    let kids = &table.children[v];
    let child_cells: Vec<&Cells> = kids.iter().map(|&c| &table.cells[c]).collect();
    let prefixes = fold_prefixes(&child_cells, state.in_set());
    let target = table.cells[v][state as usize].size().expect("expanding a feasible cell");
    let target = target - u32::from(state.in_set());

    let mut out = Vec::new();
    let mut choice = vec![State::InSat; kids.len()];
    assign(table, kids, &prefixes, state, kids.len(), state.satisfied(), target, &mut choice, &mut out);
    if state.in_set() {
        for s in &mut out {
            s.push(v);
        }
    }
    out
}

/// Walks child states from the last child backwards so that each child
/// assignment reaching `(flag, size)` at position `i` is produced once.
#[allow(clippy::too_many_arguments)]
fn assign(
    table: &DpTable,
    kids: &[usize],
    prefixes: &[[MinCount; 2]],
    state: State,
    i: usize,
    flag: bool,
    size: u32,
    choice: &mut Vec<State>,
    out: &mut Vec<Vec<usize>>,
) {
    if i == 0 {
        if !flag && size == 0 {
            let mut acc = vec![Vec::new()];
            for (&c, &s) in kids.iter().zip(choice.iter()) {
                acc = product(&acc, &expand(table, c, s));
            }
            out.extend(acc);
        }
        return;
    }
    let c = kids[i - 1];
    for s in State::ALL {
        if !admissible(state.in_set(), s) {
            continue;
        }
        let Some(child_size) = table.cells[c][s as usize].size() else { continue };
        if child_size > size {
            continue;
        }
        let rest = size - child_size;
        // flag before this child: met stays met; a marking child can turn unmet into met
        let mut prior_flags = vec![];
        if flag {
            prior_flags.push(true);
            if marks_parent(s) {
                prior_flags.push(false);
            }
        } else if !marks_parent(s) {
            prior_flags.push(false);
        }
        for prior in prior_flags {
            if prefixes[i - 1][prior as usize].size() != Some(rest) {
                continue;
            }
            choice[i - 1] = s;
            assign(table, kids, prefixes, state, i - 1, prior, rest, choice, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_gamma_t;

    fn mc(size: u32, count: u32) -> MinCount {
        MinCount::new(size, count)
    }

    fn path(n: usize) -> Forest {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Forest::from_edges(n, &edges).unwrap()
    }

    fn star(n: usize) -> Forest {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Forest::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn semiring_examples() {
        assert_eq!(mc(3, 2).add(&mc(3, 5)), mc(3, 7));
        assert_eq!(mc(2, 1).add(&mc(3, 9)), mc(2, 1));
        assert_eq!(MinCount::infeasible().add(&mc(4, 1)), mc(4, 1));
        assert_eq!(mc(2, 3).mul(&mc(1, 2)), mc(3, 6));
        assert_eq!(MinCount::unit().mul(&mc(7, 11)), mc(7, 11));
        assert_eq!(MinCount::infeasible().mul(&mc(5, 7)), MinCount::infeasible());
    }

    #[test]
    fn leaf_cells() {
        let leaf = combine_children(&[]);
        assert_eq!(leaf[State::InNeed as usize], mc(1, 1));
        assert_eq!(leaf[State::OutNeed as usize], mc(0, 1));
        assert!(!leaf[State::InSat as usize].is_feasible());
        assert!(!leaf[State::OutSat as usize].is_feasible());
    }

    #[test]
    fn stars_paths_and_unions() {
        for n in 3..=9 {
            let r = dp_gamma_t(&star(n)).unwrap();
            assert_eq!((r.gamma_t, r.count), (2, BigUint::from(n as u32 - 1)));
        }
        let mut f = star(5);
        for _ in 0..3 {
            f = f.disjoint_union(&star(5));
        }
        let r = dp_gamma_t(&f).unwrap();
        assert_eq!((r.gamma_t, r.count), (8, BigUint::from(256u32)));

        let p6 = dp_gamma_t(&path(6)).unwrap();
        assert_eq!((p6.gamma_t, p6.count), (4, BigUint::from(4u32)));
    }

    #[test]
    fn rejects_isolated_and_empty() {
        assert_eq!(dp_gamma_t(&Forest::empty(1)), Err(DpError::IsolatedVertex));
        assert_eq!(dp_gamma_t(&path(2).disjoint_union(&Forest::empty(1))), Err(DpError::IsolatedVertex));
        assert_eq!(dp_gamma_t(&Forest::empty(0)), Err(DpError::Empty));
    }

    #[test]
    fn listing_matches_oracle_family() {
        assert_eq!(list_gamma_t_sets(&path(2), 10).unwrap().sets, vec![vec![0, 1]]);
        let k13 = Forest::from_edges(4, &[(1, 0), (1, 2), (1, 3)]).unwrap();
        assert_eq!(list_gamma_t_sets(&k13, 10).unwrap().sets, vec![vec![0, 1], vec![1, 2], vec![1, 3]]);
        for n in 2..=9 {
            let p = path(n);
            assert_eq!(list_gamma_t_sets(&p, 1000).unwrap(), brute_gamma_t(&p).unwrap().family, "P{n}");
        }
        let two = path(3).disjoint_union(&star(4));
        assert_eq!(list_gamma_t_sets(&two, 1000).unwrap(), brute_gamma_t(&two).unwrap().family);
    }

    #[test]
    fn listing_respects_cap() {
        let err = list_gamma_t_sets(&star(6), 4).unwrap_err();
        assert_eq!(err, DpError::CapExceeded { count: BigUint::from(5u32), cap: 4 });
        assert_eq!(list_gamma_t_sets(&star(6), 5).unwrap().len(), 5);
    }

    /// Enumerates every assignment of states to the children of a star
    /// center directly, without the two-flag accumulator.
    fn brute_center(q: usize, parent_in: bool, satisfied: bool) -> MinCount {
        let leaf = combine_children(&[]);
        let mut acc = MinCount::infeasible();
        let total = 4usize.pow(q as u32);
        for code in 0..total {
            let states: Vec<State> = (0..q).map(|i| State::ALL[code / 4usize.pow(i as u32) % 4]).collect();
            if states.iter().any(|&s| !admissible(parent_in, s)) {
                continue;
            }
            if states.iter().any(|s| s.in_set()) != satisfied {
                continue;
            }
            let mut term = if parent_in { mc(1, 1) } else { MinCount::unit() };
            for s in states {
                term = term.mul(&leaf[s as usize]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    #[test]
    fn at_least_one_child_fold_matches_assignment_sum() {
        let leaf = combine_children(&[]);
        for q in 0..=6 {
            let kids: Vec<&Cells> = (0..q).map(|_| &leaf).collect();
            let cells = combine_children(&kids);
            for s in State::ALL {
                assert_eq!(cells[s as usize], brute_center(q, s.in_set(), s.satisfied()), "q={q} {s:?}");
            }
        }
    }
}
