//! Factor-critical building blocks: the exposure bound `ℓ(K, w)`, its
//! minimum `f(K)`, the pinned exposure cost `κ(K, Ŝ)`, and the exact solver
//! for factor-critical graphs.

use std::collections::BTreeMap;

use crate::certificate::StabilizerSolution;
use crate::error::SolveError;
use crate::ged::is_factor_critical;
use crate::graph::{Graph, Vertex};
use crate::lp::{solve_covering_lp, CoveringLp};
use crate::matching::matching_exposing;
use crate::scalar::{HalfInt, Rat};

/// One factor-critical component `K`, its neighbourhood, and the vertices
/// of `K` that must keep `y ≥ ½` (a loop `{v, v}` in the covering program).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentContext {
    vertices: Vec<Vertex>,
    boundary: Vec<Vertex>,
    pins: Vec<Vertex>,
}

impl ComponentContext {
    /// Unpinned context; the boundary is `N_G(K)`.
    pub fn new(g: &Graph, vertices: &[Vertex]) -> Self {
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        let boundary = g.neighborhood(&vertices);
        ComponentContext { vertices, boundary, pins: Vec::new() }
    }

    /// Context for a Tutte split: vertices of `K` adjacent to a Tutte vertex
    /// outside `Ŝ` (listed in `outside`) are pinned.
    pub fn for_split(g: &Graph, vertices: &[Vertex], outside: &[bool]) -> Self {
        let mut ctx = Self::new(g, vertices);
        ctx.pins = ctx
            .vertices
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).iter().any(|&u| outside[u]))
            .collect();
        ctx
    }

    pub fn with_pins(mut self, pins: &[Vertex]) -> Self {
        let mut pins = pins.to_vec();
        pins.sort_unstable();
        pins.dedup();
        assert!(pins.iter().all(|p| self.vertices.binary_search(p).is_ok()), "pins must lie in K");
        self.pins = pins;
        self
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn boundary(&self) -> &[Vertex] {
        &self.boundary
    }

    pub fn pins(&self) -> &[Vertex] {
        &self.pins
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    fn is_pinned(&self, v: Vertex) -> bool {
        self.pins.binary_search(&v).is_ok()
    }
}

/// An optimal cover for one exposure choice: the objective value, the
/// exposed vertex, and `y` on `K` (and on the boundary, when it took part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCover {
    pub value: Rat,
    pub exposed: Vertex,
    pub y: BTreeMap<Vertex, HalfInt>,
}

/// Solves the covering program on `G[K ∪ extra]` with `y_w = 0` and the
/// given half-lower vertices; returns the objective and `y` in global ids.
fn pinned_cover(
    g: &Graph,
    vertices: &[Vertex],
    w: Vertex,
    half_lower: impl Fn(Vertex) -> bool,
) -> Option<(HalfInt, BTreeMap<Vertex, HalfInt>)> {
    let (sub, map) = g.induced(vertices);
    let mut lp = CoveringLp::new(sub);
    for (local, &v) in map.iter().enumerate() {
        if v == w {
            lp = lp.fix_zero(local);
        } else if half_lower(v) {
            lp = lp.lower_half(local);
        }
    }
    let sol = solve_covering_lp(&lp).ok()?;
    let y = map.iter().copied().zip(sol.y.iter().copied()).collect();
    Some((sol.objective, y))
}

/// `ℓ(K, w)` with its optimal cover: the covering program on
/// `G[K ∪ N(K)]` with `y_w = 0` and `y ≥ ½` on the boundary and the pins,
/// minus `(|K| − 1)/2` and `|N(K)|/2`.
pub fn ell_cover(g: &Graph, ctx: &ComponentContext, w: Vertex) -> Result<ComponentCover, SolveError> {
    if ctx.is_pinned(w) {
        return Err(SolveError::PinnedExposure { vertex: w });
    }
    assert!(ctx.vertices.binary_search(&w).is_ok(), "exposed vertex {w} is not in K");
    let mut all: Vec<Vertex> = ctx.vertices.iter().chain(&ctx.boundary).copied().collect();
    all.sort_unstable();
    let on_boundary = |v: Vertex| ctx.boundary.binary_search(&v).is_ok();
    let (objective, y) = pinned_cover(g, &all, w, |v| on_boundary(v) || ctx.is_pinned(v))
        .ok_or_else(|| SolveError::Internal(format!("exposure program for w = {w} is infeasible")))?;
    let offset = HalfInt::from_doubled((ctx.vertices.len() - 1 + ctx.boundary.len()) as i64);
    Ok(ComponentCover { value: (objective - offset).to_rat(), exposed: w, y })
}

pub fn ell(g: &Graph, ctx: &ComponentContext, w: Vertex) -> Result<Rat, SolveError> {
    ell_cover(g, ctx, w).map(|c| c.value)
}

/// The minimizing `ℓ(K, w)` cover; ties go to the smallest `w`.
pub fn best_ell_cover(g: &Graph, ctx: &ComponentContext) -> Result<ComponentCover, SolveError> {
    let mut best: Option<ComponentCover> = None;
    for &w in &ctx.vertices {
        if ctx.is_pinned(w) {
            continue;
        }
        let cover = ell_cover(g, ctx, w)?;
        if best.as_ref().is_none_or(|b| cover.value < b.value) {
            best = Some(cover);
        }
    }
    best.ok_or_else(|| SolveError::Internal("every vertex of the component is pinned".into()))
}

/// `f(K) = min_w ℓ(K, w)` and the smallest minimizing `w`.
pub fn f_of_k(g: &Graph, ctx: &ComponentContext) -> Result<(Rat, Vertex), SolveError> {
    best_ell_cover(g, ctx).map(|c| (c.value, c.exposed))
}

/// Cost of leaving a component unmatched under a Tutte split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kappa {
    Cost(ComponentCover),
    /// Every vertex is pinned, so the component cannot be exposed.
    MustBeMatched,
}

impl Kappa {
    pub fn value(&self) -> Option<Rat> {
        match self {
            Kappa::Cost(c) => Some(c.value),
            Kappa::MustBeMatched => None,
        }
    }
}

/// `κ(K, Ŝ)`: cheapest exposure of `K` with `y ≥ ½` on the pins, charged
/// as `Σ_{v∈K} y_v − (|K| − 1)/2`. Boundary vertices do not enter the
/// objective. Ties go to the smallest exposed vertex.
pub fn kappa(g: &Graph, ctx: &ComponentContext) -> Kappa {
    if ctx.pins.len() == ctx.vertices.len() {
        return Kappa::MustBeMatched;
    }
    let offset = HalfInt::from_doubled(ctx.vertices.len() as i64 - 1);
    let mut best: Option<ComponentCover> = None;
    for &w in &ctx.vertices {
        if ctx.is_pinned(w) {
            continue;
        }
        let (objective, y) = pinned_cover(g, &ctx.vertices, w, |v| ctx.is_pinned(v))
            .expect("a program with a single zero-pinned vertex is feasible");
        let value = (objective - offset).to_rat();
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(ComponentCover { value, exposed: w, y });
        }
    }
    Kappa::Cost(best.expect("an unpinned vertex exists"))
}

/// Exact minimum fractional additive stabilizer of a factor-critical graph:
/// expose the `ℓ`-minimizing vertex, keep its optimal cover, and set `c` by
/// complementary slackness.
pub fn solve_factor_critical(g: &Graph) -> Result<StabilizerSolution, SolveError> {
    if !is_factor_critical(g) {
        let reason = if g.n().is_multiple_of(2) {
            format!("{} vertices is even", g.n())
        } else {
            let w = (0..g.n()).find(|&w| matching_exposing(g, w).is_none()).unwrap_or(0);
            format!("no near-perfect matching avoids vertex {w}")
        };
        return Err(SolveError::NotFactorCritical(reason));
    }
    let all: Vec<Vertex> = (0..g.n()).collect();
    let ctx = ComponentContext::new(g, &all);
    let best = best_ell_cover(g, &ctx)?;
    let matching = matching_exposing(g, best.exposed)
        .ok_or_else(|| SolveError::Internal("factor-critical check disagrees with matching".into()))?;
    let y: Vec<HalfInt> = (0..g.n()).map(|v| best.y[&v]).collect();
    let s = StabilizerSolution::from_cover(matching, y);
    if s.cost().to_rat() != best.value {
        return Err(SolveError::Internal(format!(
            "stabilizer cost {} differs from f(K) = {}",
            s.cost(),
            best.value
        )));
    }
    Ok(s)
}
