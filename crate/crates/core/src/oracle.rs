//! Exhaustive ground truth for small graphs.

use crate::certificate::StabilizerSolution;
pub use crate::certificate::{verify_certificate, Verdict, Violation};
use crate::error::SolveError;
use crate::graph::{Graph, Matching, Vertex};
use crate::lp::solve_lp_gm;

pub const DEFAULT_ORACLE_MAX_N: usize = 12;
pub const ORACLE_MAX_N_VAR: &str = "STABILKIT_ORACLE_MAX_N";

/// Size bound from `STABILKIT_ORACLE_MAX_N`, or 12 when unset or unparsable.
pub fn oracle_max_n() -> usize {
    std::env::var(ORACLE_MAX_N_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_MAX_N)
}

fn check_bound(n: usize, max: usize) -> Result<(), SolveError> {
    if n > max {
        Err(SolveError::SizeBound { n, max })
    } else {
        Ok(())
    }
}

/// Largest matching size, by exhaustive branching on the smallest free vertex.
fn brute_nu(g: &Graph, used: &mut [bool], from: Vertex) -> usize {
    let Some(v) = (from..g.n()).find(|&v| !used[v]) else {
        return 0;
    };
    used[v] = true;
    let mut best = brute_nu(g, used, v + 1);
    for &u in g.neighbors(v) {
        if !used[u] {
            used[u] = true;
            best = best.max(1 + brute_nu(g, used, v + 1));
            used[u] = false;
        }
    }
    used[v] = false;
    best
}

/// Each vertex is either left exposed (while the exposure budget lasts) or
/// matched to a free neighbour.
fn collect(
    g: &Graph,
    used: &mut [bool],
    from: Vertex,
    budget: usize,
    current: &mut Vec<(Vertex, Vertex)>,
    out: &mut Vec<Matching>,
) {
    let Some(v) = (from..g.n()).find(|&v| !used[v]) else {
        out.push(Matching::from_pairs(current.iter().copied()));
        return;
    };
    used[v] = true;
    if budget > 0 {
        collect(g, used, v + 1, budget - 1, current, out);
    }
    for &u in g.neighbors(v) {
        if !used[u] {
            used[u] = true;
            current.push((v, u));
            collect(g, used, v + 1, budget, current, out);
            current.pop();
            used[u] = false;
        }
    }
    used[v] = false;
}

pub fn enumerate_maximum_matchings(g: &Graph) -> Result<Vec<Matching>, SolveError> {
    enumerate_maximum_matchings_bounded(g, oracle_max_n())
}

/// All maximum matchings, each once, sorted by edge sequence.
pub fn enumerate_maximum_matchings_bounded(g: &Graph, max_n: usize) -> Result<Vec<Matching>, SolveError> {
    check_bound(g.n(), max_n)?;
    let mut used = vec![false; g.n()];
    let nu = brute_nu(g, &mut used, 0);
    let mut out = Vec::new();
    collect(g, &mut used, 0, g.n() - 2 * nu, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.edges().cmp(b.edges()));
    Ok(out)
}

pub fn solve_oracle(g: &Graph) -> Result<StabilizerSolution, SolveError> {
    solve_oracle_bounded(g, oracle_max_n())
}

/// Minimum over all maximum matchings of the cheapest certificate keeping
/// that matching optimal. The first matching attaining the minimum wins.
pub fn solve_oracle_bounded(g: &Graph, max_n: usize) -> Result<StabilizerSolution, SolveError> {
    let mut best: Option<StabilizerSolution> = None;
    for m in enumerate_maximum_matchings_bounded(g, max_n)? {
        let Ok(sol) = solve_lp_gm(g, &m) else {
            continue;
        };
        if best.as_ref().is_none_or(|b| sol.cost < b.cost()) {
            best = Some(StabilizerSolution::from_parts(g.n(), m, sol.y, sol.c, sol.cost));
        }
    }
    best.ok_or_else(|| SolveError::Internal("no maximum matching is certifiable".into()))
}

/// Fewest vertices whose induced subgraph has at least `k` edges.
pub fn mkec_bruteforce(g: &Graph, k: usize) -> Result<usize, SolveError> {
    check_bound(g.n(), oracle_max_n())?;
    if k > g.edge_count() {
        return Err(SolveError::TooManyEdges { k, edges: g.edge_count() });
    }
    let masks = |e: &(Vertex, Vertex)| (1u32 << e.0) | (1u32 << e.1);
    let best = (0u32..1 << g.n())
        .filter(|&s| g.edges().iter().filter(|e| s & masks(e) == masks(e)).count() >= k)
        .map(|s| s.count_ones() as usize)
        .min()
        .expect("the full vertex set induces every edge");
    Ok(best)
}
