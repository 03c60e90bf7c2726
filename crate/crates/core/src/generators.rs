//! Instance generators: the two reduction families, factor-critical graphs
//! from odd ears, and seeded random graphs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::StabilizerSolution;
use crate::error::GenError;
use crate::ged::is_factor_critical;
use crate::graph::{edge_key, Edge, Graph, Matching, Vertex};
use crate::scalar::HalfInt;

type Triangle = [Vertex; 3];

fn add_triangle(edges: &mut Vec<Edge>, t: Triangle) {
    edges.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
}

/// Reduction instance built from a base graph and a target edge count `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MkecInstance {
    #[serde(skip)]
    pub graph: Graph,
    #[serde(skip)]
    pub base: Graph,
    pub n: usize,
    pub k: usize,
    pub q: usize,
    /// One triangle per base edge, in sorted edge order.
    pub triangle_of_edge: Vec<(Edge, Triangle)>,
    /// `y_copies[i][v]` is copy `i` of Tutte vertex `v`; the first
    /// `|V(base)|` columns are the base vertices, the rest are padding.
    pub y_copies: Vec<Vec<Vertex>>,
    /// Extra triangles joined to every Tutte vertex, added when the base
    /// has too few edges.
    pub padding_triangles: Vec<Triangle>,
    /// The `|Y'|·(q − 1)` triangles joined to every Tutte vertex.
    pub copy_triangles: Vec<Triangle>,
}

impl MkecInstance {
    pub fn tutte_vertices(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.y_copies.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// Optimal stabilizer cost `k + q·x/2` for a cover of size `x`, doubled.
    pub fn predicted_cost(&self, x: usize) -> HalfInt {
        HalfInt::from_doubled((2 * self.k + self.q * x) as i64)
    }

    pub fn metadata_json(&self) -> String {
        serde_json::to_string(self).expect("metadata serializes")
    }
}

/// Builds the densest-subgraph reduction graph. `q = 0` selects
/// `max{k, max degree}`.
pub fn gen_mkec(base: &Graph, k: usize, q: usize) -> Result<MkecInstance, GenError> {
    let edges = base.edge_count();
    if k >= edges {
        return Err(GenError::KTooLarge { k, edges });
    }
    let max_degree = base.max_degree();
    let q = if q == 0 { k.max(max_degree) } else { q };
    if q < max_degree {
        return Err(GenError::QTooSmall { q, max_degree });
    }
    let target = base.n() + k;
    let extra_y = edges.saturating_sub(target);
    let extra_triangles = target.saturating_sub(edges);
    let width = base.n() + extra_y;

    let mut next = 0;
    let mut fresh = |count: usize| {
        let start = next;
        next += count;
        start..next
    };
    let y_copies: Vec<Vec<Vertex>> = (0..q).map(|_| fresh(width).collect()).collect();
    let mut triangle = || {
        let r = fresh(3);
        [r.start, r.start + 1, r.start + 2]
    };
    let triangle_of_edge: Vec<(Edge, Triangle)> = base.edges().iter().map(|&e| (e, triangle())).collect();
    let padding_triangles: Vec<Triangle> = (0..extra_triangles).map(|_| triangle()).collect();
    let copy_triangles: Vec<Triangle> = (0..width * (q - 1)).map(|_| triangle()).collect();
    let n = next;

    let mut out = Vec::new();
    let all_y: Vec<Vertex> = y_copies.iter().flatten().copied().collect();
    for &((u, v), t) in &triangle_of_edge {
        add_triangle(&mut out, t);
        for copy in &y_copies {
            for &x in &t {
                out.push((copy[u], x));
                out.push((copy[v], x));
                out.extend(copy[base.n()..].iter().map(|&p| (p, x)));
            }
        }
    }
    for &t in padding_triangles.iter().chain(&copy_triangles) {
        add_triangle(&mut out, t);
        for &x in &t {
            out.extend(all_y.iter().map(|&b| (b, x)));
        }
    }
    Ok(MkecInstance {
        graph: Graph::from_edges_dedup(n, out),
        base: base.clone(),
        n,
        k,
        q,
        triangle_of_edge,
        y_copies,
        padding_triangles,
        copy_triangles,
    })
}

/// Clique `C_j^i` attached to Tutte vertex `S_j^i` through `designated`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueInfo {
    pub set: usize,
    pub copy: usize,
    pub tutte: Vertex,
    pub designated: Vertex,
    pub vertices: Vec<Vertex>,
}

/// Odd cycle of an element; `vertices[k]` is joined to every copy of the
/// `k`-th set containing the element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleInfo {
    pub element: usize,
    pub sets: Vec<usize>,
    pub vertices: Vec<Vertex>,
    pub dummy: Option<Vertex>,
}

/// Reduction instance built from a set system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    #[serde(skip)]
    pub graph: Graph,
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
    pub n_elems: usize,
    pub clique_param: usize,
    /// Whether `N > (n_elems·m)²`, the size the hardness argument needs.
    pub meets_theoretical_bound: bool,
    /// `tutte[i][j]` is `S_j^i`.
    pub tutte: Vec<Vec<Vertex>>,
    pub cliques: Vec<CliqueInfo>,
    pub cycles: Vec<CycleInfo>,
}

impl SetCoverInstance {
    pub fn tutte_vertices(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.tutte.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn metadata_json(&self) -> String {
        serde_json::to_string(self).expect("metadata serializes")
    }
}

/// Builds the set-cover reduction graph with cliques of size `2N + 1`.
/// Elements are `0..n_elems`; `sets[j]` lists the elements of set `j`.
pub fn gen_setcover(sets: &[Vec<usize>], n_elems: usize, clique_param: usize) -> Result<SetCoverInstance, GenError> {
    if clique_param == 0 {
        return Err(GenError::CliqueSize);
    }
    let m = sets.len();
    let mut containing = vec![Vec::new(); n_elems];
    for (j, set) in sets.iter().enumerate() {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        for e in members {
            if e >= n_elems {
                return Err(GenError::UnknownElement { set: j, element: e, n_elems });
            }
            containing[e].push(j);
        }
    }
    if let Some((element, c)) = containing.iter().enumerate().find(|(_, c)| c.len() < 2) {
        return Err(GenError::LowFrequency { element, frequency: c.len() });
    }

    let copies = n_elems;
    let mut next = 0;
    let tutte: Vec<Vec<Vertex>> = (0..copies)
        .map(|_| {
            let row = (next..next + m).collect();
            next += m;
            row
        })
        .collect();
    let mut edges = Vec::new();
    let size = 2 * clique_param + 1;
    let mut cliques = Vec::new();
    for (copy, row) in tutte.iter().enumerate() {
        for (set, &s) in row.iter().enumerate() {
            let vertices: Vec<Vertex> = (next..next + size).collect();
            next += size;
            for (a, &u) in vertices.iter().enumerate() {
                edges.extend(vertices[a + 1..].iter().map(|&v| (u, v)));
            }
            edges.push((s, vertices[0]));
            cliques.push(CliqueInfo { set, copy, tutte: s, designated: vertices[0], vertices });
        }
    }
    let all_y: Vec<Vertex> = tutte.iter().flatten().copied().collect();
    let mut cycles = Vec::new();
    for (element, sets_of) in containing.into_iter().enumerate() {
        let len = sets_of.len() | 1;
        let vertices: Vec<Vertex> = (next..next + len).collect();
        next += len;
        for i in 0..len {
            edges.push((vertices[i], vertices[(i + 1) % len]));
        }
        for (k, &set) in sets_of.iter().enumerate() {
            edges.extend(tutte.iter().map(|row| (vertices[k], row[set])));
        }
        let dummy = (len > sets_of.len()).then(|| vertices[len - 1]);
        if let Some(d) = dummy {
            edges.extend(all_y.iter().map(|&b| (d, b)));
        }
        cycles.push(CycleInfo { element, sets: sets_of, vertices, dummy });
    }
    let nm = (n_elems * m) as u128;
    Ok(SetCoverInstance {
        graph: Graph::from_edges_dedup(next, edges),
        n: next,
        sets: sets.to_vec(),
        n_elems,
        clique_param,
        meets_theoretical_bound: clique_param as u128 > nm * nm,
        tutte,
        cliques,
        cycles,
    })
}

/// A three-element, three-set system with every element in at least two sets:
/// `S1 = {x1, x2}`, `S2 = {x2, x3}`, `S3 = {x1, x2, x3}`.
pub fn small_set_system() -> (Vec<Vec<usize>>, usize) {
    (vec![vec![0, 1], vec![1, 2], vec![0, 1, 2]], 3)
}

pub fn is_set_cover(sets: &[Vec<usize>], n_elems: usize, chosen: &[usize]) -> bool {
    let covered: BTreeSet<usize> = chosen.iter().flat_map(|&j| sets[j].iter().copied()).collect();
    (0..n_elems).all(|e| covered.contains(&e))
}

/// A smallest cover by subset enumeration; ties go to the lowest bitmask.
pub fn min_set_cover(sets: &[Vec<usize>], n_elems: usize) -> Option<Vec<usize>> {
    assert!(sets.len() < 32, "exhaustive cover search is limited to 31 sets");
    (0u32..1 << sets.len())
        .filter(|&mask| {
            let chosen: Vec<usize> = (0..sets.len()).filter(|&j| mask >> j & 1 == 1).collect();
            is_set_cover(sets, n_elems, &chosen)
        })
        .min_by_key(|mask| (mask.count_ones(), *mask))
        .map(|mask| (0..sets.len()).filter(|&j| mask >> j & 1 == 1).collect())
}

/// Near-perfect matching of a cycle that exposes `vertices[p]`.
fn cycle_matching_exposing(vertices: &[Vertex], p: usize) -> Vec<Edge> {
    let len = vertices.len();
    (0..len / 2).map(|i| (vertices[(p + 1 + 2 * i) % len], vertices[(p + 2 + 2 * i) % len])).collect()
}

/// The cost-`n(1 + |T|/2)` certificate for a set cover `T`: each element
/// exposes the cycle vertex of the first chosen set containing it.
pub fn setcover_certificate(inst: &SetCoverInstance, cover: &[usize]) -> Option<StabilizerSolution> {
    if !is_set_cover(&inst.sets, inst.n_elems, cover) {
        return None;
    }
    let mut y = vec![HalfInt::HALF; inst.n];
    let mut pairs = Vec::new();
    for clique in &inst.cliques {
        pairs.push((clique.tutte, clique.designated));
        pairs.extend(clique.vertices[1..].chunks(2).map(|p| (p[0], p[1])));
        if cover.contains(&clique.set) {
            y[clique.tutte] = HalfInt::ONE;
        }
    }
    for cycle in &inst.cycles {
        let p = cycle.sets.iter().position(|s| cover.contains(s)).expect("cover hits every element");
        let len = cycle.vertices.len();
        y[cycle.vertices[p]] = HalfInt::ZERO;
        y[cycle.vertices[(p + 1) % len]] = HalfInt::ONE;
        y[cycle.vertices[(p + len - 1) % len]] = HalfInt::ONE;
        pairs.extend(cycle_matching_exposing(&cycle.vertices, p));
    }
    Some(StabilizerSolution::from_cover(Matching::from_pairs(pairs), y))
}

/// `P = { j : S_j^1 is adjacent to an exposed vertex }`.
pub fn extract_cover(inst: &SetCoverInstance, s: &StabilizerSolution) -> Vec<usize> {
    let exposed = s.matching().exposed(inst.n);
    let first = &inst.tutte[0];
    (0..inst.sets.len())
        .filter(|&j| exposed.iter().any(|&x| inst.graph.has_edge(first[j], x)))
        .collect()
}

/// A factor-critical graph grown from one vertex by odd ears with seeded
/// random endpoints.
pub fn gen_factor_critical(ear_lengths: &[usize], seed: u64) -> Result<Graph, GenError> {
    if let Some(&even) = ear_lengths.iter().find(|&&l| l % 2 == 0) {
        return Err(GenError::EvenEar(even));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 1;
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for &len in ear_lengths {
        if len == 1 {
            let free: Vec<Edge> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|e| !edges.contains(e))
                .collect();
            let &e = free.choose(&mut rng).ok_or(GenError::NoRoomForEar)?;
            edges.insert(e);
            continue;
        }
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let mut path = vec![a];
        path.extend(n..n + len - 1);
        path.push(b);
        n += len - 1;
        for w in path.windows(2) {
            edges.insert(edge_key(w[0], w[1]));
        }
    }
    let g = Graph::from_edges_dedup(n, edges);
    assert!(is_factor_critical(&g), "odd ear decomposition produced a non-factor-critical graph");
    Ok(g)
}

/// Seeded random graph: each pair `u < v`, in order, is an edge with
/// probability `num/den`.
pub fn gen_random(n: usize, num: u64, den: u64, seed: u64) -> Result<Graph, GenError> {
    if den == 0 || num > den {
        return Err(GenError::Probability { num, den });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..den) < num {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges_dedup(n, edges))
}

/// Small named graphs used across tests and benchmarks.
pub mod named {
    use crate::graph::Graph;

    /// Triangles `{0,1,2}` and `{3,4,5}` both joined to vertex 6, which
    /// starts the path 6-7-8.
    pub fn two_triangles_with_tail() -> Graph {
        Graph::from_edges_dedup(
            9,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 0), (6, 3), (6, 7), (7, 8)],
        )
    }

    pub fn two_triangles_bridged() -> Graph {
        Graph::complete(3).disjoint_union(&Graph::complete(3)).with_edges([(0, 3)])
    }

    pub fn two_triangles() -> Graph {
        Graph::complete(3).disjoint_union(&Graph::complete(3))
    }

    /// Two triangles with every vertex joined to vertex 6.
    pub fn two_triangles_on_hub() -> Graph {
        let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        edges.extend((0..6).map(|v| (v, 6)));
        Graph::from_edges_dedup(7, edges)
    }

    /// Every named instance with a label.
    pub fn all() -> Vec<(&'static str, Graph)> {
        vec![
            ("K3", Graph::complete(3)),
            ("K4", Graph::complete(4)),
            ("K5", Graph::complete(5)),
            ("P3", Graph::path(3)),
            ("P4", Graph::path(4)),
            ("P5", Graph::path(5)),
            ("C5", Graph::cycle(5)),
            ("C7", Graph::cycle(7)),
            ("star3", Graph::star(3)),
            ("petersen", Graph::petersen()),
            ("two-triangles", two_triangles()),
            ("two-triangles-bridged", two_triangles_bridged()),
            ("two-triangles-with-tail", two_triangles_with_tail()),
            ("two-triangles-on-hub", two_triangles_on_hub()),
        ]
    }
}
