//! Simple undirected graphs with canonical vertex indexing, matchings, and
//! the plain-text edge-list format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::GraphError;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

/// Normalizes an unordered pair to `(min, max)`.
#[inline]
pub fn edge_key(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v` and kept sorted, so two
/// graphs with the same vertex count and edge set compare equal and every
/// iteration order is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// repeated edges. Line numbers in errors are the 1-based edge positions.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut seen = BTreeSet::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            let line = i + 1;
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { line, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            let e = edge_key(u, v);
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge { line, u: e.0, v: e.1 });
            }
        }
        Ok(Self::from_sorted(n, seen.into_iter().collect()))
    }

    /// Like [`Graph::new`] but silently drops duplicates; panics on
    /// self-loops or out-of-range endpoints.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = Edge>,
    {
        let set: BTreeSet<Edge> = edges
            .into_iter()
            .map(|(u, v)| {
                assert!(u != v && u < n && v < n, "invalid edge {u}-{v} for n = {n}");
                edge_key(u, v)
            })
            .collect();
        Self::from_sorted(n, set.into_iter().collect())
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges_dedup(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges_dedup(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges_dedup(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges_dedup(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Self::from_edges_dedup(10, outer.chain(spokes).chain(inner))
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::from_edges_dedup(self.n + other.n, edges)
    }

    /// Adds edges to a copy of the graph; duplicates are ignored.
    pub fn with_edges<I: IntoIterator<Item = Edge>>(&self, extra: I) -> Graph {
        Self::from_edges_dedup(self.n, self.edges.iter().copied().chain(extra))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order. Returns the graph and the local-to-global map.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                edges.push(edge_key(local[u], local[v]));
            }
        }
        edges.sort_unstable();
        (Self::from_sorted(vertices.len(), edges), vertices.to_vec())
    }

    /// Copy of the graph with every edge at `v` removed.
    pub fn isolate(&self, v: Vertex) -> Graph {
        let edges = self.edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
        Self::from_sorted(self.n, edges)
    }

    /// Connected components of the subgraph induced by the vertices with
    /// `mask[v] == true`, each sorted, ordered by smallest vertex.
    pub fn components_within(&self, mask: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !mask[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if mask[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_within(&vec![true; self.n])
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Open neighbourhood of a vertex set, sorted.
    pub fn neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut out: BTreeSet<Vertex> = BTreeSet::new();
        for &v in set {
            out.extend(self.adj[v].iter().copied().filter(|&w| !inside[w]));
        }
        out.into_iter().collect()
    }

    /// The instance text: header `n m` and one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
/// Lines starting with `#` and blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, Edge)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let pair = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
            _ => None,
        };
        let Some((a, b)) = pair else {
            return Err(GraphError::Malformed { line, text: raw.to_string() });
        };
        match header {
            None => header = Some((a, b)),
            Some((n, _)) => {
                for w in [a, b] {
                    if w >= n {
                        return Err(GraphError::VertexOutOfRange { line, vertex: w, n });
                    }
                }
                if a == b {
                    return Err(GraphError::SelfLoop { line, vertex: a });
                }
                edges.push((line, (a, b)));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(GraphError::MissingHeader { line: last_line.max(1) });
    };
    let mut seen = BTreeSet::new();
    for &(line, (u, v)) in &edges {
        let e = edge_key(u, v);
        if !seen.insert(e) {
            return Err(GraphError::DuplicateEdge { line, u: e.0, v: e.1 });
        }
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCountMismatch { declared: m, found: edges.len() });
    }
    Ok(Graph::from_sorted(n, seen.into_iter().collect()))
}

/// A set of pairwise disjoint edges, stored normalized and sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    /// Validated constructor: every pair must be an edge of `g` and no vertex
    /// may be used twice.
    pub fn new<I: IntoIterator<Item = Edge>>(g: &Graph, pairs: I) -> Result<Self, GraphError> {
        let m = Self::from_pairs(pairs);
        m.validate(g)?;
        Ok(m)
    }

    /// Normalizes and sorts without validation.
    pub fn from_pairs<I: IntoIterator<Item = Edge>>(pairs: I) -> Self {
        let mut edges: Vec<Edge> = pairs.into_iter().map(|(u, v)| edge_key(u, v)).collect();
        edges.sort_unstable();
        Matching { edges }
    }

    /// Builds a matching from a mate array (`mate[v] = Some(u)` iff `uv` is matched).
    pub fn from_mates(mate: &[Option<Vertex>]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&u| v < u).map(|u| (v, u)))
            .collect();
        Matching { edges }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        let mut used = vec![false; g.n()];
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(GraphError::NotAnEdge { u, v });
            }
            for w in [u, v] {
                if used[w] {
                    return Err(GraphError::NotDisjoint { vertex: w });
                }
                used[w] = true;
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&edge_key(u, v)).is_ok()
    }

    /// Partner of each vertex in `0..n`.
    pub fn mates(&self, n: usize) -> Vec<Option<Vertex>> {
        let mut mate = vec![None; n];
        for &(u, v) in &self.edges {
            if u < n && v < n {
                mate[u] = Some(v);
                mate[v] = Some(u);
            }
        }
        mate
    }

    /// Vertices of `0..n` not covered by the matching.
    pub fn exposed(&self, n: usize) -> Vec<Vertex> {
        self.mates(n)
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.is_none().then_some(v))
            .collect()
    }

    /// Union with another matching on disjoint vertices.
    pub fn union(&self, other: &Matching) -> Matching {
        Matching::from_pairs(self.edges.iter().chain(other.edges.iter()).copied())
    }

    /// Relabels endpoints through `map` (local index to global vertex).
    pub fn relabel(&self, map: &[Vertex]) -> Matching {
        Matching::from_pairs(self.edges.iter().map(|&(u, v)| (map[u], map[v])))
    }
}
