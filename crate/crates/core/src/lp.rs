//! Exact solvers for the covering programs that every stabilizer
//! computation reduces to.
//!
//! A covering program minimizes `Σ y_v` subject to `y_u + y_v ≥ 1` on every
//! edge, `y ≥ 0`, with some vertices pinned to zero and some bounded below
//! by one half. It is solved on the bipartite double cover: every vertex `v`
//! gets copies `v₁, v₂`, every edge `uv` becomes `u₁v₂` and `v₁u₂`, and a
//! lower bound `y_v ≥ ½` becomes the edge `v₁v₂`. The doubled program is a
//! bipartite vertex cover, solved integrally as a minimum cut, and averaging
//! the two copies gives a half-integral optimum of the original program.

use std::collections::BTreeMap;

use crate::flow::{Network, INF_CAP};
use crate::graph::{Edge, Graph, Matching};
use crate::matching::max_weight_bipartite_value;
use crate::scalar::{HalfInt, Rat};

/// A covering program over the vertices of `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringLp {
    graph: Graph,
    zero_fixed: Vec<bool>,
    half_lower: Vec<bool>,
}

/// Marker value: the program has no feasible point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Infeasible;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSolution {
    pub y: Vec<HalfInt>,
    pub objective: HalfInt,
}

impl CoveringLp {
    pub fn new(graph: Graph) -> Self {
        let n = graph.n();
        CoveringLp { graph, zero_fixed: vec![false; n], half_lower: vec![false; n] }
    }

    /// Panics if a vertex is both pinned to zero and bounded below by ½.
    pub fn with_bounds(graph: Graph, zero_fixed: &[usize], half_lower: &[usize]) -> Self {
        let mut lp = Self::new(graph);
        for &v in zero_fixed {
            lp = lp.fix_zero(v);
        }
        for &v in half_lower {
            lp = lp.lower_half(v);
        }
        lp
    }

    pub fn fix_zero(mut self, v: usize) -> Self {
        assert!(!self.half_lower[v], "vertex {v} is already bounded below by 1/2");
        self.zero_fixed[v] = true;
        self
    }

    pub fn lower_half(mut self, v: usize) -> Self {
        assert!(!self.zero_fixed[v], "vertex {v} is already pinned to zero");
        self.half_lower[v] = true;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn is_zero_fixed(&self, v: usize) -> bool {
        self.zero_fixed[v]
    }

    pub fn is_half_lower(&self, v: usize) -> bool {
        self.half_lower[v]
    }
}

/// Half-integral optimum of a covering program, or [`Infeasible`] when an
/// edge joins two zero-pinned vertices.
pub fn solve_covering_lp(p: &CoveringLp) -> Result<CoverSolution, Infeasible> {
    let n = p.graph.n();
    let (s, t) = (0, 1);
    let first = |v: usize| 2 + v;
    let second = |v: usize| 2 + n + v;
    let mut net = Network::new(2 + 2 * n);
    for v in 0..n {
        let cap = if p.zero_fixed[v] { INF_CAP } else { 1 };
        net.add_arc(s, first(v), cap);
        net.add_arc(second(v), t, cap);
        if p.half_lower[v] {
            net.add_arc(first(v), second(v), INF_CAP);
        }
    }
    for &(u, v) in p.graph.edges() {
        net.add_arc(first(u), second(v), INF_CAP);
        net.add_arc(first(v), second(u), INF_CAP);
    }
    let cut = net.max_flow(s, t);
    if cut >= INF_CAP {
        return Err(Infeasible);
    }
    let source = net.source_side(s);
    let y: Vec<HalfInt> = (0..n)
        .map(|v| {
            let z1 = i64::from(!source[first(v)]);
            let z2 = i64::from(source[second(v)]);
            HalfInt::from_doubled(z1 + z2)
        })
        .collect();
    let objective: HalfInt = y.iter().sum();
    assert_eq!(objective.doubled(), cut, "cut value and cover disagree");
    Ok(CoverSolution { y, objective })
}

/// Optimal `(c, y)` of the program that certifies a fixed matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmSolution {
    pub y: Vec<HalfInt>,
    /// Nonzero stabilizer entries, all on matching edges.
    pub c: BTreeMap<Edge, HalfInt>,
    pub cost: HalfInt,
}

/// Minimum-cost stabilizer that keeps `m` optimal: exposed vertices are
/// pinned to zero, `c_uv = y_u + y_v − 1` on matching edges, and the cost is
/// `Σ y − |M|`. Infeasible iff an edge joins two exposed vertices.
pub fn solve_lp_gm(g: &Graph, m: &Matching) -> Result<GmSolution, Infeasible> {
    let exposed = m.exposed(g.n());
    let lp = CoveringLp::with_bounds(g.clone(), &exposed, &[]);
    let cover = solve_covering_lp(&lp)?;
    let mut c = BTreeMap::new();
    for &(u, v) in m.edges() {
        let value = cover.y[u] + cover.y[v] - HalfInt::ONE;
        debug_assert!(value >= HalfInt::ZERO);
        if !value.is_zero() {
            c.insert((u, v), value);
        }
    }
    let cost = cover.objective - HalfInt::from_int(m.len() as i64);
    debug_assert_eq!(cost, c.values().sum::<HalfInt>());
    Ok(GmSolution { y: cover.y, c, cost })
}

/// τ_f(G, 1 + c): the minimum fractional (1 + c)-vertex cover value.
///
/// Computed through LP duality on the double cover: the optimum equals half
/// the maximum-weight matching of the doubled graph with weights `1 + c`.
pub fn tau_f(g: &Graph, c: &BTreeMap<Edge, HalfInt>) -> Rat {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for &(u, v) in g.edges() {
        // Weights in doubled units so they stay integral.
        let w = (HalfInt::ONE + c.get(&(u, v)).copied().unwrap_or_default()).doubled();
        edges.push((u, v, w));
        edges.push((v, u, w));
    }
    let doubled_cover = max_weight_bipartite_value(n, n, &edges);
    Rat::new(doubled_cover, 4)
}
