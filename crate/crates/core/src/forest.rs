//! Forests on dense 0-based vertex ids: validation, the edge-list and
//! level-sequence text formats, component splitting and rooting.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Errors produced while building a [`Forest`].
///
/// `line` is the 1-based line of the edge-list document. For forests built
/// programmatically it is the line the edge would occupy once serialized
/// (edge `i` sits on line `i + 2`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("empty document: expected the vertex count on the first line")]
    MissingHeader,
    #[error("line {line}: malformed input {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: edge {u} {v} closes a cycle")]
    Cycle { line: usize, u: usize, v: usize },
    #[error("invalid level sequence at position {position}: {reason}")]
    LevelSequence { position: usize, reason: &'static str },
}

/// An undirected simple acyclic graph.
///
/// Edges are stored normalized as `(min, max)` in insertion order; equality
/// ignores edge order.
#[derive(Debug, Clone)]
pub struct Forest {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    seen: HashSet<(usize, usize)>,
    sets: DisjointSets,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { n, edges: Vec::new(), seen: HashSet::new(), sets: DisjointSets::new(n) }
    }

    fn push(&mut self, line: usize, u: usize, v: usize) -> Result<(), ForestError> {
        for vertex in [u, v] {
            if vertex >= self.n {
                return Err(ForestError::OutOfRange { line, vertex, n: self.n });
            }
        }
        if u == v {
            return Err(ForestError::SelfLoop { line, vertex: u });
        }
        let key = (u.min(v), u.max(v));
        if !self.seen.insert(key) {
            return Err(ForestError::DuplicateEdge { line, u, v });
        }
        if !self.sets.union(u, v) {
            return Err(ForestError::Cycle { line, u, v });
        }
        self.edges.push(key);
        Ok(())
    }

    fn finish(self) -> Forest {
        let mut adjacency = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Forest { n: self.n, edges: self.edges, adjacency }
    }
}

impl Forest {
    /// Builds a validated forest from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Forest, ForestError> {
        let mut builder = Builder::new(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            builder.push(i + 2, u, v)?;
        }
        Ok(builder.finish())
    }

    /// Forest with `n` vertices and no edges.
    pub fn empty(n: usize) -> Forest {
        Builder::new(n).finish()
    }

    /// Parses the edge-list document: vertex count on the first line, then
    /// one `u v` pair per non-empty line.
    pub fn parse(text: &str) -> Result<Forest, ForestError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (header_idx, header) = lines.next().ok_or(ForestError::MissingHeader)?;
        let n: usize = header.trim().parse().map_err(|_| ForestError::Malformed {
            line: header_idx + 1,
            text: header.to_string(),
        })?;
        let mut builder = Builder::new(n);
        for (idx, raw) in lines {
            let line = idx + 1;
            let malformed = || ForestError::Malformed { line, text: raw.to_string() };
            let mut parts = raw.split_whitespace();
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(malformed());
            };
            let u: usize = a.parse().map_err(|_| malformed())?;
            let v: usize = b.parse().map_err(|_| malformed())?;
            builder.push(line, u, v)?;
        }
        Ok(builder.finish())
    }

    /// Builds the rooted tree whose DFS depth sequence is `seq`; vertex `i`
    /// is the `i`-th vertex visited.
    pub fn from_level_sequence(seq: &[usize]) -> Result<Forest, ForestError> {
        match seq.first() {
            None => return Err(ForestError::LevelSequence { position: 0, reason: "empty sequence" }),
            Some(&d) if d != 0 => {
                return Err(ForestError::LevelSequence { position: 0, reason: "root depth must be 0" })
            }
            _ => {}
        }
        let mut builder = Builder::new(seq.len());
        // stack[d] = most recent vertex at depth d
        let mut stack: Vec<usize> = vec![0];
        for (i, &depth) in seq.iter().enumerate().skip(1) {
            if depth == 0 {
                return Err(ForestError::LevelSequence { position: i, reason: "second root" });
            }
            if depth > stack.len() {
                return Err(ForestError::LevelSequence {
                    position: i,
                    reason: "depth exceeds previous depth + 1",
                });
            }
            stack.truncate(depth);
            builder.push(i + 2, stack[depth - 1], i)?;
            stack.push(i);
        }
        Ok(builder.finish())
    }

    /// Edge-list document accepted by [`Forest::parse`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adjacency.iter().any(Vec::is_empty)
    }

    pub fn component_count(&self) -> usize {
        self.n - self.edges.len()
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    /// Splits into connected components, ordered by smallest vertex id.
    pub fn components(&self) -> Vec<Component> {
        let mut label = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut vertices = vec![start];
            label[start] = 0;
            let mut head = 0;
            while head < vertices.len() {
                let v = vertices[head];
                head += 1;
                for &w in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = 0;
                        vertices.push(w);
                    }
                }
            }
            vertices.sort_unstable();
            for (i, &v) in vertices.iter().enumerate() {
                label[v] = i;
            }
            let edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .filter(|&&(u, _)| vertices.binary_search(&u).is_ok())
                .map(|&(u, v)| (label[u], label[v]))
                .collect();
            let forest = Forest::from_edges(vertices.len(), &edges)
                .expect("subgraph of a forest is a forest");
            out.push(Component { forest, labels: vertices });
        }
        out
    }

    /// Roots every component at its smallest vertex id.
    pub fn root_all(&self) -> RootedView {
        let mut parent = vec![None; self.n];
        let mut visited = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut roots = Vec::new();
        for root in 0..self.n {
            if visited[root] {
                continue;
            }
            roots.push(root);
            visited[root] = true;
            // (vertex, index of the next neighbor to try)
            let mut stack = vec![(root, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, next) = *top;
                if let Some(&w) = self.adjacency[v].get(next) {
                    top.1 += 1;
                    if !visited[w] {
                        visited[w] = true;
                        parent[w] = Some(v);
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                    stack.pop();
                }
            }
        }
        RootedView { roots, parent, order }
    }

    /// DFS depths from `root` visiting children in ascending id order,
    /// listed in visit order.
    pub fn dfs_depths(&self, root: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some((v, from, depth)) = stack.pop() {
            out.push(depth);
            for &w in self.adjacency[v].iter().rev() {
                if w != from {
                    stack.push((w, v, depth + 1));
                }
            }
        }
        out
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Forest) -> Forest {
        let shift = self.n;
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Forest::from_edges(self.n + other.n, &edges).expect("disjoint union of forests")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Forest {
        assert_eq!(perm.len(), self.n, "permutation length must equal order");
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Forest::from_edges(self.n, &edges).expect("relabeling by a permutation preserves validity")
    }

    fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

impl PartialEq for Forest {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sorted_edges() == other.sorted_edges()
    }
}

impl Eq for Forest {}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// A connected component relabeled to `0..len`; `labels[i]` is the original
/// id of local vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub forest: Forest,
    pub labels: Vec<usize>,
}

/// One rooting per component, with a children-before-parents order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedView {
    pub roots: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub order: Vec<usize>,
}

impl RootedView {
    /// Children of every vertex in ascending id order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        children
    }
}

/// Parses one level sequence per non-empty line.
pub fn parse_level_sequences(text: &str) -> Result<Vec<Vec<usize>>, ForestError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(idx, l)| {
            l.split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| ForestError::Malformed { line: idx + 1, text: l.to_string() })
                })
                .collect()
        })
        .collect()
}

pub fn format_level_sequence(seq: &[usize]) -> String {
    seq.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Forest {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Forest::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn parses_single_edge_and_path() {
        let k2 = Forest::parse("2\n0 1").unwrap();
        assert_eq!(k2.order(), 2);
        assert_eq!(k2.edges(), &[(0, 1)]);
        assert_eq!(Forest::parse("4\n0 1\n1 2\n2 3\n").unwrap(), path(4));
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert_eq!(
            Forest::parse("3\n0 1\n1 2\n2 0"),
            Err(ForestError::Cycle { line: 4, u: 2, v: 0 })
        );
        assert_eq!(
            Forest::parse("3\n0 1\n\n1 x"),
            Err(ForestError::Malformed { line: 4, text: "1 x".into() })
        );
        assert_eq!(
            Forest::parse("3\n0 3"),
            Err(ForestError::OutOfRange { line: 2, vertex: 3, n: 3 })
        );
        assert_eq!(
            Forest::parse("3\n0 1\n1 0"),
            Err(ForestError::DuplicateEdge { line: 3, u: 1, v: 0 })
        );
        assert_eq!(Forest::parse("3\n2 2"), Err(ForestError::SelfLoop { line: 2, vertex: 2 }));
        assert_eq!(Forest::parse("3\n0 1 2"), Err(ForestError::Malformed { line: 2, text: "0 1 2".into() }));
        assert_eq!(Forest::parse(""), Err(ForestError::MissingHeader));
        assert!(matches!(Forest::parse("x\n"), Err(ForestError::Malformed { line: 1, .. })));
    }

    #[test]
    fn level_sequences() {
        assert_eq!(Forest::from_level_sequence(&[0, 1, 2, 3]).unwrap(), path(4));
        let star = Forest::from_level_sequence(&[0, 1, 1, 1]).unwrap();
        assert_eq!(star, Forest::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        // root 0 has children 1 and 4; vertex 1 has children 2 and 3
        let spider = Forest::from_level_sequence(&[0, 1, 2, 2, 1]).unwrap();
        assert_eq!(spider, Forest::from_edges(5, &[(0, 1), (1, 2), (1, 3), (0, 4)]).unwrap());
        let mut degrees: Vec<usize> = (0..5).map(|v| spider.degree(v)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(degrees, vec![3, 2, 1, 1, 1]);

        assert!(Forest::from_level_sequence(&[]).is_err());
        assert!(Forest::from_level_sequence(&[1, 2]).is_err());
        assert!(Forest::from_level_sequence(&[0, 2]).is_err());
        assert!(Forest::from_level_sequence(&[0, 1, 0]).is_err());
    }

    #[test]
    fn components_partition() {
        assert_eq!(path(4).components().len(), 1);
        let two_k2 = Forest::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let comps = two_k2.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].labels, vec![0, 2]);
        assert_eq!(comps[1].labels, vec![1, 3]);
        for c in &comps {
            assert_eq!(c.forest, Forest::from_edges(2, &[(0, 1)]).unwrap());
        }
        assert!(Forest::empty(0).components().is_empty());
    }

    #[test]
    fn rooting_is_deterministic() {
        let k2 = path(2).root_all();
        assert_eq!(k2.roots, vec![0]);
        assert_eq!(k2.order, vec![1, 0]);
        assert_eq!(path(4).root_all().order, vec![3, 2, 1, 0]);

        let star = Forest::from_edges(4, &[(1, 0), (1, 2), (1, 3)]).unwrap();
        let view = star.root_all();
        assert_eq!(view.roots, vec![0]);
        assert_eq!(view.parent, vec![None, Some(0), Some(1), Some(1)]);
        assert_eq!(view.order, vec![2, 3, 1, 0]);
    }

    #[test]
    fn isolated_vertices() {
        assert!(!path(2).has_isolated_vertex());
        assert!(Forest::empty(1).has_isolated_vertex());
        assert!(path(2).disjoint_union(&Forest::empty(1)).has_isolated_vertex());
    }

    #[test]
    fn level_sequence_text() {
        let parsed = parse_level_sequences("0 1 2\n\n0 1 1\n").unwrap();
        assert_eq!(parsed, vec![vec![0, 1, 2], vec![0, 1, 1]]);
        assert_eq!(format_level_sequence(&parsed[0]), "0 1 2");
        assert!(parse_level_sequences("0 a").is_err());
    }
}
