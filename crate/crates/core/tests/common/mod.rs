//! Independent oracles shared by the integration tests. Nothing here goes
//! through the library's DP, tree generator or canonical form.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use gtlab::Forest;
use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::Rng;

/// Adjacency lists from an edge list.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

pub fn forest_adjacency(f: &Forest) -> Vec<Vec<usize>> {
    (0..f.order()).map(|v| f.neighbors(v).to_vec()).collect()
}

/// Labeled tree from a Prüfer word over `0..n`, `n = word.len() + 2`.
pub fn prufer_decode(word: &[usize]) -> Vec<(usize, usize)> {
    let n = word.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in word {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in word {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Centers by repeated leaf stripping.
pub fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &w in &adj[leaf] {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let mut out = layer;
    out.sort_unstable();
    out
}

/// Parenthesis code of the subtree at `v` (children codes sorted).
fn paren_code(adj: &[Vec<usize>], v: usize, from: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != from).map(|&w| paren_code(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Center-rooted parenthesis code: equal exactly for isomorphic trees.
pub fn center_code(adj: &[Vec<usize>]) -> String {
    centers(adj).into_iter().map(|c| paren_code(adj, c, usize::MAX)).min().unwrap_or_default()
}

/// `(code, automorphisms)` of the subtree at `v`.
fn rooted_aut(adj: &[Vec<usize>], v: usize, from: usize) -> (String, u128) {
    let mut kids: Vec<(String, u128)> =
        adj[v].iter().filter(|&&w| w != from).map(|&w| rooted_aut(adj, w, v)).collect();
    kids.sort();
    let mut aut: u128 = kids.iter().map(|k| k.1).product();
    let mut groups: BTreeMap<&str, u128> = BTreeMap::new();
    for (code, _) in &kids {
        *groups.entry(code.as_str()).or_default() += 1;
    }
    for &m in groups.values() {
        aut *= (1..=m).product::<u128>();
    }
    let code = format!("({})", kids.iter().map(|k| k.0.as_str()).collect::<String>());
    (code, aut)
}

/// Size of the automorphism group of a tree.
pub fn automorphisms(adj: &[Vec<usize>]) -> u128 {
    let c = centers(adj);
    if c.len() == 1 {
        return rooted_aut(adj, c[0], usize::MAX).1;
    }
    let (a, b) = (c[0], c[1]);
    let (ca, xa) = rooted_aut(adj, a, b);
    let (cb, xb) = rooted_aut(adj, b, a);
    xa * xb * if ca == cb { 2 } else { 1 }
}

/// Number of isomorphism classes of trees of order `n`, by decoding Prüfer
/// words and bucketing by center code.
///
/// Every class has a labeling whose internal vertices are `0..i`; its word
/// then uses exactly the symbols `0..i`. So it suffices to decode words
/// over `0..n-2` whose symbol set is an initial segment.
pub fn prufer_class_count(n: usize) -> usize {
    match n {
        0 => return 0,
        1 | 2 => return 1,
        _ => {}
    }
    let len = n - 2;
    let alphabet = n - 2;
    let mut classes = HashSet::new();
    let mut word = vec![0usize; len];
    loop {
        let mut used = vec![false; alphabet];
        for &x in &word {
            used[x] = true;
        }
        let top = used.iter().rposition(|&u| u).unwrap_or(0);
        if used[..=top].iter().all(|&u| u) {
            let edges = prufer_decode(&word);
            classes.insert(center_code(&adjacency(n, &edges)));
        }
        // odometer increment
        let mut i = len;
        loop {
            if i == 0 {
                return classes.len();
            }
            i -= 1;
            word[i] += 1;
            if word[i] < alphabet {
                break;
            }
            word[i] = 0;
        }
    }
}

/// Backtracking isomorphism test with degree pruning.
pub fn brute_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut da: Vec<usize> = a.iter().map(Vec::len).collect();
    let mut db: Vec<usize> = b.iter().map(Vec::len).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    fn extend(a: &[Vec<usize>], b: &[Vec<usize>], map: &mut Vec<usize>, used: &mut Vec<bool>, v: usize) -> bool {
        if v == a.len() {
            return true;
        }
        for w in 0..b.len() {
            if used[w] || a[v].len() != b[w].len() {
                continue;
            }
            let consistent = (0..v).all(|u| a[v].contains(&u) == b[w].contains(&map[u]));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(a, b, map, used, v + 1) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    extend(a, b, &mut vec![usize::MAX; n], &mut vec![false; n], 0)
}

/// Uniform random labeled tree on `n` vertices.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => vec![],
        2 => vec![(0, 1)],
        _ => {
            let word: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(&word)
        }
    }
}

/// Random forest of order `n >= 2` with every component of order >= 2,
/// under a random labeling.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize) -> Forest {
    assert!(n >= 2);
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = if left <= 3 { left } else { rng.gen_range(2..=left) };
        let s = if left - s == 1 { s + 1 } else { s };
        sizes.push(s);
        left -= s;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges = Vec::new();
    let mut base = 0;
    for s in sizes {
        for (u, v) in random_tree(rng, s) {
            edges.push((perm[base + u], perm[base + v]));
        }
        base += s;
    }
    Forest::from_edges(n, &edges).expect("valid forest")
}

pub fn random_relabel<R: Rng>(rng: &mut R, f: &Forest) -> Forest {
    let mut perm: Vec<usize> = (0..f.order()).collect();
    perm.shuffle(rng);
    f.relabel(&perm)
}

/// Fixed-point decimal arithmetic with `digits` fractional digits.
pub struct Decimal {
    pub scale: BigInt,
}

impl Decimal {
    pub fn new(digits: u32) -> Decimal {
        Decimal { scale: BigInt::from(10u32).pow(digits) }
    }

    pub fn from_ratio(&self, num: u64, den: u64) -> BigInt {
        &self.scale * BigInt::from(num) / BigInt::from(den)
    }

    pub fn from_int(&self, x: &BigUint) -> BigInt {
        &self.scale * BigInt::from(x.clone())
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b / &self.scale
    }

    pub fn pow(&self, a: &BigInt, exp: usize) -> BigInt {
        (0..exp).fold(self.scale.clone(), |acc, _| self.mul(&acc, a))
    }

    pub fn sqrt2(&self) -> BigInt {
        (BigInt::from(2u32) * &self.scale * &self.scale).sqrt()
    }
}
