//! The contraction-based approximation for graphs whose inessential part
//! has no singleton components, and the reduction that strips `Z`.

use crate::certificate::StabilizerSolution;
use crate::error::SolveError;
use crate::fc::{best_ell_cover, ComponentContext, ComponentCover};
use crate::ged::{decompose, is_stable, GeDecomposition};
use crate::graph::{Graph, Matching, Vertex};
use crate::lp::solve_lp_gm;
use crate::matching::{
    matching_exposing, max_cardinality_matching, max_weight_covering_matching, WeightedBipartite,
};
use crate::scalar::{HalfInt, Rat};

/// `G[X ∪ Y]` together with a perfect matching of `G[Z]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZReduction {
    pub core: Graph,
    /// `map[local] = global` for the vertices of `core`.
    pub map: Vec<Vertex>,
    /// Perfect matching of `G[Z]` in global labels.
    pub z_matching: Matching,
    pub z: Vec<Vertex>,
    n: usize,
}

impl ZReduction {
    /// Lifts a solution on `core` to the whole graph: `y = ½` on `Z`, the
    /// `Z`-matching added with `c = 0`.
    pub fn extend(&self, core_solution: &StabilizerSolution) -> StabilizerSolution {
        let lifted = core_solution.embed(self.n, &self.map);
        let overrides: Vec<_> = self.z.iter().map(|&v| (v, HalfInt::HALF)).collect();
        lifted.extended(&self.z_matching, &overrides)
    }
}

pub fn reduce_by_z(g: &Graph) -> Result<ZReduction, SolveError> {
    reduce_by_z_with(g, &decompose(g))
}

pub fn reduce_by_z_with(g: &Graph, d: &GeDecomposition) -> Result<ZReduction, SolveError> {
    let mut map: Vec<Vertex> = d.x().iter().chain(d.y()).copied().collect();
    map.sort_unstable();
    let (core, _) = g.induced(&map);
    let (gz, zmap) = g.induced(d.z());
    let mz = max_cardinality_matching(&gz);
    if 2 * mz.len() != gz.n() {
        return Err(SolveError::Internal("G[Z] has no perfect matching".into()));
    }
    Ok(ZReduction { core, map, z_matching: mz.relabel(&zmap), z: d.z().to_vec(), n: g.n() })
}

/// Zero-cost certificate for a stable graph: any maximum matching with its
/// optimal cover.
pub(crate) fn zero_stabilizer(g: &Graph) -> Result<StabilizerSolution, SolveError> {
    let m = max_cardinality_matching(g);
    let sol = solve_lp_gm(g, &m).map_err(|_| SolveError::Internal("maximum matching is not certifiable".into()))?;
    if !sol.cost.is_zero() {
        return Err(SolveError::Internal(format!("stable graph certified at cost {}", sol.cost)));
    }
    Ok(StabilizerSolution::from_parts(g.n(), m, sol.y, sol.c, sol.cost))
}

/// A component left exposed by the covering matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExposedComponent {
    /// Vertices in the original labelling.
    pub vertices: Vec<Vertex>,
    pub f: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxOutcome {
    pub solution: StabilizerSolution,
    /// `r = #components − |Y|`.
    pub surplus: usize,
    pub exposed: Vec<ExposedComponent>,
}

impl ApproxOutcome {
    /// `r − 1 + max f(K)` over exposed components; a lower bound on the
    /// optimum when the graph is unstable.
    pub fn lower_bound(&self) -> Rat {
        let best = self.exposed.iter().map(|e| e.f).max().unwrap_or_else(|| Rat::from_integer(0));
        Rat::from_integer(self.surplus as i64 - 1) + best
    }
}

pub fn solve_approx(g: &Graph) -> Result<StabilizerSolution, SolveError> {
    solve_approx_detailed(g).map(|o| o.solution)
}

pub fn solve_approx_detailed(g: &Graph) -> Result<ApproxOutcome, SolveError> {
    let d = decompose(g);
    if let Some(k) = d.components().iter().find(|k| k.len() == 1) {
        return Err(SolveError::TrivialComponent { vertex: k[0] });
    }
    if is_stable(g) {
        let solution = zero_stabilizer(g)?;
        return Ok(ApproxOutcome { solution, surplus: d.surplus(), exposed: Vec::new() });
    }
    let red = reduce_by_z_with(g, &d)?;
    let core = &red.core;
    let cd = decompose(core);
    let comps = cd.components();

    let covers: Vec<ComponentCover> = comps
        .iter()
        .map(|k| best_ell_cover(core, &ComponentContext::new(core, k)))
        .collect::<Result<_, _>>()?;

    let mut edges = Vec::new();
    for &b in cd.y() {
        for &u in core.neighbors(b) {
            if let Some(i) = cd.component_of(u) {
                edges.push((b, i, covers[i].value));
            }
        }
    }
    edges.sort_by_key(|&(b, i, _)| (b, i));
    edges.dedup_by_key(|&mut (b, i, _)| (b, i));
    let bip = WeightedBipartite::new(cd.y().to_vec(), (0..comps.len()).collect(), edges);
    let pairs = max_weight_covering_matching(&bip)
        .ok_or_else(|| SolveError::Internal("Tutte set cannot be matched into components".into()))?;

    let n = core.n();
    let mut partner = vec![None; comps.len()];
    for &(b, i) in &pairs {
        partner[i] = Some(b);
    }
    let mut y = vec![HalfInt::HALF; n];
    let mut m_pairs = Vec::new();
    let mut exposed = Vec::new();
    for (i, k) in comps.iter().enumerate() {
        let expose = match partner[i] {
            Some(b) => {
                let u = *k.iter().find(|&&u| core.has_edge(u, b)).expect("matched along an edge");
                m_pairs.push((b, u));
                u
            }
            None => {
                for &v in k {
                    y[v] = covers[i].y[&v];
                }
                exposed.push(ExposedComponent {
                    vertices: k.iter().map(|&v| red.map[v]).collect(),
                    f: covers[i].value,
                });
                covers[i].exposed
            }
        };
        let (sub, map) = core.induced(k);
        let local = map.binary_search(&expose).expect("exposed vertex in component");
        let inner = matching_exposing(&sub, local)
            .ok_or_else(|| SolveError::Internal("component is not factor-critical".into()))?;
        m_pairs.extend(inner.relabel(&map).edges().iter().copied());
    }
    for &b in cd.y() {
        let from_exposed = comps
            .iter()
            .enumerate()
            .filter(|&(i, k)| partner[i].is_none() && k.iter().any(|&u| core.has_edge(u, b)))
            .map(|(i, _)| covers[i].y[&b])
            .max();
        if let Some(value) = from_exposed {
            y[b] = value;
        }
    }
    let core_solution = StabilizerSolution::from_cover(Matching::from_pairs(m_pairs), y);
    Ok(ApproxOutcome { solution: red.extend(&core_solution), surplus: cd.surplus(), exposed })
}
