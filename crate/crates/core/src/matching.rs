//! Matching primitives: maximum-cardinality matching in general graphs
//! (Edmonds' blossom algorithm), near-perfect matchings that expose a chosen
//! vertex, and maximum-weight bipartite matchings that cover one side.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;

use crate::graph::{Graph, Matching, Vertex};
use crate::scalar::Rat;

const NONE: usize = usize::MAX;

/// Maximum-cardinality matching, O(n³). Deterministic for a fixed graph.
pub fn max_cardinality_matching(g: &Graph) -> Matching {
    Matching::from_mates(&blossom_mates(g))
}

/// A maximum matching of `g` that leaves `w` exposed, if one exists.
pub fn matching_exposing(g: &Graph, w: Vertex) -> Option<Matching> {
    let nu = max_cardinality_matching(g).len();
    let without = max_cardinality_matching(&g.isolate(w));
    (without.len() == nu).then_some(without)
}

/// Matching number ν(g).
pub fn matching_number(g: &Graph) -> usize {
    max_cardinality_matching(g).len()
}

fn blossom_mates(g: &Graph) -> Vec<Option<Vertex>> {
    let n = g.n();
    let mut st = BlossomState {
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    for root in 0..n {
        if st.mate[root] != NONE {
            continue;
        }
        let mut v = st.find_path(g, root);
        while v != NONE {
            let pv = st.parent[v];
            let ppv = st.mate[pv];
            st.mate[v] = pv;
            st.mate[pv] = v;
            v = ppv;
        }
    }
    st.mate.iter().map(|&m| (m != NONE).then_some(m)).collect()
}

struct BlossomState {
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomState {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS over alternating trees from `root`; returns the exposed endpoint
    /// of an augmenting path or `NONE`.
    fn find_path(&mut self, g: &Graph, root: usize) -> usize {
        let n = self.mate.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        NONE
    }
}

/// Bipartite graph with non-negative rational edge weights whose `left`
/// side must be covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedBipartite {
    left: Vec<usize>,
    right: Vec<usize>,
    edges: BTreeMap<(usize, usize), Rat>,
}

impl WeightedBipartite {
    /// Panics on a repeated `(l, r)` pair, a negative weight, or an endpoint
    /// that is not listed on its side.
    pub fn new<I>(left: Vec<usize>, right: Vec<usize>, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut left = left;
        let mut right = right;
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        let mut map = BTreeMap::new();
        for (l, r, w) in edges {
            assert!(left.binary_search(&l).is_ok(), "unknown left label {l}");
            assert!(right.binary_search(&r).is_ok(), "unknown right label {r}");
            assert!(w >= Rat::from_integer(0), "negative weight on ({l}, {r})");
            let prev = map.insert((l, r), w);
            assert!(prev.is_none(), "duplicate edge ({l}, {r})");
        }
        WeightedBipartite { left, right, edges: map }
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn weight(&self, l: usize, r: usize) -> Option<Rat> {
        self.edges.get(&(l, r)).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Rat)> + '_ {
        self.edges.iter().map(|(&(l, r), &w)| (l, r, w))
    }

    /// Total weight of a set of `(l, r)` pairs; `None` if a pair is missing.
    pub fn total_weight(&self, pairs: &[(usize, usize)]) -> Option<Rat> {
        pairs.iter().map(|&(l, r)| self.weight(l, r)).sum()
    }
}

/// Among matchings covering every left vertex, one of maximum weight.
///
/// Returns `(l, r)` pairs sorted by `l`, or `None` when no matching covers
/// the left side. Ties go to the lexicographically smallest pair sequence.
pub fn max_weight_covering_matching(b: &WeightedBipartite) -> Option<Vec<(usize, usize)>> {
    let nl = b.left.len();
    let nr = b.right.len();
    if nl > nr {
        return None;
    }
    if nl == 0 {
        return Some(Vec::new());
    }
    let denom = b.edges.values().fold(1i64, |acc, w| acc.lcm(w.denom()));
    let scaled: BTreeMap<(usize, usize), i128> = b
        .edges
        .iter()
        .map(|(&k, w)| (k, (w.numer() * (denom / w.denom())) as i128))
        .collect();
    // Shift every real edge by more than the total weight so that the
    // maximum-weight matching is also of maximum cardinality.
    let shift: i128 = denom as i128 + scaled.values().sum::<i128>();
    let size = nr;
    let mut cost = vec![vec![0i128; size]; size];
    let mut real = vec![vec![false; size]; size];
    for (i, &l) in b.left.iter().enumerate() {
        for (j, &r) in b.right.iter().enumerate() {
            if let Some(&w) = scaled.get(&(l, r)) {
                cost[i][j] = -(w + shift);
                real[i][j] = true;
            }
        }
    }
    let sol = hungarian_min(&cost);
    if (0..nl).any(|i| !real[i][sol.row_to_col[i]]) {
        return None;
    }
    let assign = lexicographic_optimum(&cost, &sol, &real, nl);
    Some((0..nl).map(|i| (b.left[i], b.right[assign[i]])).collect())
}

/// Maximum total weight of a matching in a bipartite graph with
/// non-negative integer weights; `edges` are `(left, right, weight)`.
pub fn max_weight_bipartite_value(nl: usize, nr: usize, edges: &[(usize, usize, i64)]) -> i64 {
    let size = nl.max(nr);
    if size == 0 {
        return 0;
    }
    let mut cost = vec![vec![0i128; size]; size];
    for &(l, r, w) in edges {
        assert!(w >= 0, "negative weight");
        let c = &mut cost[l][r];
        *c = (*c).min(-(w as i128));
    }
    let sol = hungarian_min(&cost);
    let total: i128 = (0..size).map(|i| cost[i][sol.row_to_col[i]]).sum();
    (-total) as i64
}

struct Assignment {
    row_to_col: Vec<usize>,
    u: Vec<i128>,
    v: Vec<i128>,
}

/// Minimum-cost perfect assignment on a square matrix, with optimal duals
/// (`u[i] + v[j] <= cost[i][j]`, tight on the assignment).
fn hungarian_min(cost: &[Vec<i128>]) -> Assignment {
    let n = cost.len();
    let inf = i128::MAX / 4;
    // 1-based potentials; index 0 is the virtual column.
    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0; n];
    for j in 1..=n {
        row_to_col[p[j] - 1] = j - 1;
    }
    Assignment { row_to_col, u: u[1..].to_vec(), v: v[1..].to_vec() }
}

/// Re-routes an optimal assignment so that rows `0..fixed_rows` take the
/// lexicographically smallest columns among all optimal assignments.
///
/// Optimal assignments are exactly the perfect matchings of the tight
/// subgraph; row `i` keeps the first tight real column reachable through an
/// alternating cycle that avoids already fixed rows.
fn lexicographic_optimum(
    cost: &[Vec<i128>],
    sol: &Assignment,
    real: &[Vec<bool>],
    fixed_rows: usize,
) -> Vec<usize> {
    let n = cost.len();
    let tight: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| cost[i][j] == sol.u[i] + sol.v[j]).collect())
        .collect();
    let mut row_to_col = sol.row_to_col.clone();
    let mut col_to_row = vec![0; n];
    for (i, &j) in row_to_col.iter().enumerate() {
        col_to_row[j] = i;
    }
    let mut fixed = vec![false; n];
    for i in 0..fixed_rows {
        for j in 0..n {
            if !tight[i][j] || !real[i][j] {
                continue;
            }
            if row_to_col[i] == j {
                break;
            }
            let owner = col_to_row[j];
            if fixed[owner] {
                continue;
            }
            let freed = row_to_col[i];
            let mut visited = vec![false; n];
            visited[j] = true;
            let mut path = Vec::new();
            if reroute(owner, freed, i, &tight, &col_to_row, &fixed, &mut visited, &mut path) {
                // path holds (row, new column) pairs for the displaced rows.
                for &(r, c) in &path {
                    row_to_col[r] = c;
                    col_to_row[c] = r;
                }
                row_to_col[i] = j;
                col_to_row[j] = i;
                break;
            }
        }
        fixed[i] = true;
    }
    row_to_col
}

#[allow(clippy::too_many_arguments)]
fn reroute(
    row: usize,
    target: usize,
    skip_row: usize,
    tight: &[Vec<bool>],
    col_to_row: &[usize],
    fixed: &[bool],
    visited: &mut [bool],
    path: &mut Vec<(usize, usize)>,
) -> bool {
    for c in 0..tight.len() {
        if !tight[row][c] || visited[c] {
            continue;
        }
        visited[c] = true;
        if c == target {
            path.push((row, c));
            return true;
        }
        let next = col_to_row[c];
        if next == skip_row || fixed[next] {
            continue;
        }
        if reroute(next, target, skip_row, tight, col_to_row, fixed, visited, path) {
            path.push((row, c));
            return true;
        }
    }
    false
}
