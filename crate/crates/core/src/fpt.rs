//! Exact stabilization by enumerating which Tutte vertices take `y = 1`.
//!
//! For a fixed subset `Ŝ ⊆ Y` every Tutte vertex gets `y = 1` on `Ŝ` and
//! `y = ½` elsewhere. Components of `G[X]` are contracted, each one priced
//! by the cost `κ` of leaving it unmatched, and a covering matching decides
//! which components the Tutte set absorbs.

use itertools::Itertools;

use crate::approx::{reduce_by_z_with, zero_stabilizer};
use crate::certificate::StabilizerSolution;
use crate::error::SolveError;
use crate::fc::{kappa, ComponentContext, Kappa};
use crate::ged::{decompose, is_stable, GeDecomposition};
use crate::graph::{Graph, Matching, Vertex};
use crate::matching::{matching_exposing, max_weight_covering_matching, WeightedBipartite};
use crate::scalar::{HalfInt, Rat};

/// Result of the fixed-subset algorithm. `solution` is `None` when the
/// subset admits no stabilizer of the prescribed shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetOutcome {
    pub s_hat: Vec<Vertex>,
    pub f_value: Option<Rat>,
    pub solution: Option<StabilizerSolution>,
}

impl SubsetOutcome {
    pub fn is_feasible(&self) -> bool {
        self.solution.is_some()
    }

    fn infeasible(s_hat: &[Vertex]) -> Self {
        SubsetOutcome { s_hat: s_hat.to_vec(), f_value: None, solution: None }
    }
}

/// Best stabilizer with `y = 1` on `s_hat` and `y = ½` on the rest of the
/// Tutte set. `g` must have an empty `Z` part and `d = decompose(g)`.
pub fn mfasp_for_subset(g: &Graph, d: &GeDecomposition, s_hat: &[Vertex]) -> SubsetOutcome {
    assert!(d.z().is_empty(), "reduce by Z before fixing a Tutte subset");
    let n = g.n();
    let mut in_s = vec![false; n];
    for &v in s_hat {
        assert!(d.y().contains(&v), "{v} is not a Tutte vertex");
        in_s[v] = true;
    }
    let outside: Vec<bool> = (0..n).map(|v| d.y().contains(&v) && !in_s[v]).collect();
    let comps = d.components();

    let mut kappas = Vec::with_capacity(comps.len());
    let mut in_t = Vec::with_capacity(comps.len());
    for k in comps {
        let ctx = ComponentContext::for_split(g, k, &outside);
        in_t.push(k.len() == 1 && g.neighbors(k[0]).iter().all(|&b| in_s[b]));
        kappas.push(kappa(g, &ctx));
    }

    let half = Rat::new(1, 2);
    let finite: Vec<Option<Rat>> = comps
        .iter()
        .enumerate()
        .map(|(i, _)| if in_t[i] { Some(half) } else { kappas[i].value() })
        .collect();
    let big = Rat::from_integer(1 + d.y().len() as i64) + finite.iter().flatten().sum::<Rat>();
    let weight = |i: usize| finite[i].unwrap_or(big);

    let mut edges = Vec::new();
    for &b in d.y() {
        let mut seen: Vec<usize> = g.neighbors(b).iter().filter_map(|&u| d.component_of(u)).collect();
        seen.sort_unstable();
        seen.dedup();
        edges.extend(seen.into_iter().map(|i| (b, i, weight(i))));
    }
    let bip = WeightedBipartite::new(d.y().to_vec(), (0..comps.len()).collect(), edges);
    let Some(pairs) = max_weight_covering_matching(&bip) else {
        return SubsetOutcome::infeasible(s_hat);
    };
    let mut partner = vec![None; comps.len()];
    for &(b, i) in &pairs {
        partner[i] = Some(b);
    }
    if (0..comps.len()).any(|i| partner[i].is_none() && kappas[i] == Kappa::MustBeMatched) {
        return SubsetOutcome::infeasible(s_hat);
    }

    let mut f_value = Rat::new(s_hat.len() as i64, 2);
    for i in 0..comps.len() {
        if !in_t[i] {
            f_value += kappas[i].value().unwrap_or_default();
        }
        if partner[i].is_some() {
            f_value -= finite[i].unwrap_or_default();
        }
    }

    let mut y = vec![HalfInt::HALF; n];
    for &v in s_hat {
        y[v] = HalfInt::ONE;
    }
    let mut m_pairs = Vec::new();
    for (i, k) in comps.iter().enumerate() {
        let expose = match (partner[i], &kappas[i]) {
            (Some(b), _) => {
                let u = *k.iter().find(|&&u| g.has_edge(u, b)).expect("matched along an edge");
                m_pairs.push((b, u));
                if in_t[i] {
                    y[u] = HalfInt::ZERO;
                }
                u
            }
            (None, Kappa::Cost(cover)) => {
                for &v in k {
                    y[v] = cover.y[&v];
                }
                cover.exposed
            }
            (None, Kappa::MustBeMatched) => unreachable!("checked above"),
        };
        if k.len() > 1 {
            let (sub, map) = g.induced(k);
            let local = map.binary_search(&expose).expect("exposed vertex in component");
            let inner = matching_exposing(&sub, local).expect("components of G[X] are factor-critical");
            m_pairs.extend(inner.relabel(&map).edges().iter().copied());
        }
    }
    let solution = StabilizerSolution::from_cover(Matching::from_pairs(m_pairs), y);
    assert_eq!(solution.cost().to_rat(), f_value, "assembled cost differs from f(Ŝ) for Ŝ = {s_hat:?}");
    SubsetOutcome { s_hat: s_hat.to_vec(), f_value: Some(f_value), solution: Some(solution) }
}

/// Every `Ŝ ⊆ Y` in the order: by size, then lexicographically.
pub fn tutte_subsets(y: &[Vertex]) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    (0..=y.len()).flat_map(move |size| y.iter().copied().combinations(size))
}

/// Exact minimum fractional additive stabilizer.
pub fn solve_exact(g: &Graph) -> Result<StabilizerSolution, SolveError> {
    solve_exact_detailed(g).map(|(s, _)| s)
}

/// The optimum and the winning subset (`None` for stable inputs).
pub fn solve_exact_detailed(g: &Graph) -> Result<(StabilizerSolution, Option<Vec<Vertex>>), SolveError> {
    if is_stable(g) {
        return Ok((zero_stabilizer(g)?, None));
    }
    let red = reduce_by_z_with(g, &decompose(g))?;
    let d = decompose(&red.core);
    let mut best: Option<SubsetOutcome> = None;
    for s_hat in tutte_subsets(d.y()) {
        let out = mfasp_for_subset(&red.core, &d, &s_hat);
        if let Some(f) = out.f_value {
            if best.as_ref().is_none_or(|b| f < b.f_value.expect("feasible")) {
                best = Some(out);
            }
        }
    }
    let best = best.ok_or_else(|| SolveError::Internal("no Tutte subset is feasible".into()))?;
    let s_hat = best.s_hat.iter().map(|&v| red.map[v]).collect();
    Ok((red.extend(best.solution.as_ref().expect("feasible")), Some(s_hat)))
}

/// The `Ŝ = Y` solution, with the smallest `k ≥ 1` for which
/// `|C⁺| ≥ (1 + 1/k)|Y|` holds, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteAllOutcome {
    pub solution: StabilizerSolution,
    pub nontrivial_components: usize,
    pub tutte_size: usize,
    pub guarantee_k: Option<u64>,
}

impl TutteAllOutcome {
    /// `(k/2 + 1)` for the reported `k`.
    pub fn ratio(&self) -> Option<Rat> {
        self.guarantee_k.map(|k| Rat::new(k as i64, 2) + Rat::from_integer(1))
    }
}

pub fn solve_tutte_all(g: &Graph) -> Result<TutteAllOutcome, SolveError> {
    let red = reduce_by_z_with(g, &decompose(g))?;
    let d = decompose(&red.core);
    let out = mfasp_for_subset(&red.core, &d, d.y());
    let core_solution = out
        .solution
        .ok_or_else(|| SolveError::Internal("Ŝ = Y reported infeasible".into()))?;
    let c_plus = d.nontrivial_count();
    let y = d.y().len();
    Ok(TutteAllOutcome {
        solution: red.extend(&core_solution),
        nontrivial_components: c_plus,
        tutte_size: y,
        guarantee_k: guarantee_k(c_plus, y),
    })
}

fn guarantee_k(c_plus: usize, y: usize) -> Option<u64> {
    if y == 0 {
        return Some(1);
    }
    if c_plus <= y {
        return None;
    }
    let gap = (c_plus - y) as u64;
    Some((y as u64).div_ceil(gap).max(1))
}
