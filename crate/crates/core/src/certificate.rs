//! Stabilizer solutions `(M, y, c)`, their certificate file format, and
//! certificate verification.
//!
//! A certificate is one line of structured text with keys in fixed order,
//! every number stored doubled so it stays an exact integer:
//!
//! ```text
//! {"n":3,"matching":[[1,2]],"y2":[0,2,2],"c2":[[1,2,2]],"cost2":2}
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CertificateError;
use crate::graph::{edge_key, Edge, Graph, Matching, Vertex};
use crate::scalar::HalfInt;

/// A matching `M`, a fractional cover `y` and an edge-weight increase `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerSolution {
    n: usize,
    matching: Matching,
    y: Vec<HalfInt>,
    c: BTreeMap<Edge, HalfInt>,
    cost: HalfInt,
}

impl StabilizerSolution {
    /// Assembles a solution without checking it. Zero entries of `c` are
    /// dropped; `cost` is taken as declared.
    pub fn from_parts(
        n: usize,
        matching: Matching,
        y: Vec<HalfInt>,
        c: BTreeMap<Edge, HalfInt>,
        cost: HalfInt,
    ) -> Self {
        let c = c.into_iter().filter(|(_, v)| !v.is_zero()).map(|((u, v), x)| (edge_key(u, v), x)).collect();
        StabilizerSolution { n, matching, y, c, cost }
    }

    /// Derives `c` from `y` by complementary slackness: `c_uv = y_u + y_v − 1`
    /// on matching edges and zero elsewhere.
    pub fn from_cover(matching: Matching, y: Vec<HalfInt>) -> Self {
        let mut c = BTreeMap::new();
        for &(u, v) in matching.edges() {
            let value = y[u] + y[v] - HalfInt::ONE;
            if !value.is_zero() {
                c.insert((u, v), value);
            }
        }
        let cost = c.values().sum();
        StabilizerSolution { n: y.len(), matching, y, c, cost }
    }

    /// Checked constructor: the solution must certify `g`.
    pub fn new(
        g: &Graph,
        matching: Matching,
        y: Vec<HalfInt>,
        c: BTreeMap<Edge, HalfInt>,
    ) -> Result<Self, Verdict> {
        let cost = c.values().sum();
        let s = Self::from_parts(g.n(), matching, y, c, cost);
        let verdict = verify_certificate(g, &s);
        if verdict.is_valid() {
            Ok(s)
        } else {
            Err(verdict)
        }
    }

    /// The zero-cost solution of an empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_cover(Matching::default(), vec![HalfInt::ZERO; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn y(&self) -> &[HalfInt] {
        &self.y
    }

    pub fn y_of(&self, v: Vertex) -> HalfInt {
        self.y[v]
    }

    /// Nonzero stabilizer entries.
    pub fn c(&self) -> &BTreeMap<Edge, HalfInt> {
        &self.c
    }

    pub fn c_of(&self, u: Vertex, v: Vertex) -> HalfInt {
        self.c.get(&edge_key(u, v)).copied().unwrap_or_default()
    }

    pub fn cost(&self) -> HalfInt {
        self.cost
    }

    /// Maps a solution on a relabelled subgraph into a graph on `n`
    /// vertices; `map[local] = global`. Unmapped vertices get `y = 0`.
    pub fn embed(&self, n: usize, map: &[Vertex]) -> Self {
        let mut y = vec![HalfInt::ZERO; n];
        for (local, &global) in map.iter().enumerate() {
            y[global] = self.y[local];
        }
        let c = self.c.iter().map(|(&(u, v), &x)| (edge_key(map[u], map[v]), x)).collect();
        StabilizerSolution { n, matching: self.matching.relabel(map), y, c, cost: self.cost }
    }

    /// Returns a copy with `extra` edges added to the matching and the given
    /// `y` overrides applied.
    pub fn extended(&self, extra: &Matching, y_overrides: &[(Vertex, HalfInt)]) -> Self {
        let mut y = self.y.clone();
        for &(v, value) in y_overrides {
            y[v] = value;
        }
        StabilizerSolution {
            n: self.n,
            matching: self.matching.union(extra),
            y,
            c: self.c.clone(),
            cost: self.cost,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    n: usize,
    matching: Vec<[usize; 2]>,
    y2: Vec<i64>,
    c2: Vec<(usize, usize, i64)>,
    cost2: i64,
}

/// One-line certificate text (without trailing newline).
pub fn serialize_solution(s: &StabilizerSolution) -> String {
    let wire = CertificateWire {
        n: s.n,
        matching: s.matching.edges().iter().map(|&(u, v)| [u, v]).collect(),
        y2: s.y.iter().map(|y| y.doubled()).collect(),
        c2: s.c.iter().map(|(&(u, v), x)| (u, v, x.doubled())).collect(),
        cost2: s.cost.doubled(),
    };
    serde_json::to_string(&wire).expect("certificate serialization cannot fail")
}

/// Reads a certificate. Only shape is checked here; whether it certifies a
/// graph is decided by [`verify_certificate`].
pub fn parse_solution(text: &str) -> Result<StabilizerSolution, CertificateError> {
    let wire: CertificateWire = serde_json::from_str(text.trim())?;
    let n = wire.n;
    if wire.y2.len() != n {
        return Err(CertificateError::CoverLength { n, found: wire.y2.len() });
    }
    let in_range = |v: usize| if v < n { Ok(()) } else { Err(CertificateError::VertexOutOfRange { vertex: v, n }) };
    for &[u, v] in &wire.matching {
        in_range(u)?;
        in_range(v)?;
    }
    let mut c = BTreeMap::new();
    for &(u, v, x) in &wire.c2 {
        in_range(u)?;
        in_range(v)?;
        let key = edge_key(u, v);
        if c.insert(key, HalfInt::from_doubled(x)).is_some() {
            return Err(CertificateError::DuplicateEntry { u: key.0, v: key.1 });
        }
    }
    Ok(StabilizerSolution::from_parts(
        n,
        Matching::from_pairs(wire.matching.iter().map(|&[u, v]| (u, v))),
        wire.y2.iter().map(|&d| HalfInt::from_doubled(d)).collect(),
        c,
        HalfInt::from_doubled(wire.cost2),
    ))
}

/// One failed condition of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexCount { graph: usize, certificate: usize },
    MatchingEdgeMissing(Edge),
    MatchingNotDisjoint(Vertex),
    StabilizerOffMatching(Edge),
    StabilizerOutOfRange(Edge, HalfInt),
    NegativeCover(Vertex),
    CoverViolated(Edge),
    ExposedPositive(Vertex),
    MatchingEdgeNotTight(Edge),
    CostMismatch { declared: HalfInt, stabilizer_total: HalfInt },
    PrimalDualEquality { matching_weight: HalfInt, cover_total: HalfInt },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexCount { graph, certificate } => {
                write!(f, "vertex count mismatch: graph has {graph}, certificate has {certificate}")
            }
            Violation::MatchingEdgeMissing((u, v)) => write!(f, "matching edge {u}-{v} is not a graph edge"),
            Violation::MatchingNotDisjoint(v) => write!(f, "vertex {v} is matched twice"),
            Violation::StabilizerOffMatching((u, v)) => {
                write!(f, "stabilizer is nonzero on non-matching edge {u}-{v}")
            }
            Violation::StabilizerOutOfRange((u, v), x) => {
                write!(f, "stabilizer on {u}-{v} is {x}, outside [0, 1]")
            }
            Violation::NegativeCover(v) => write!(f, "cover value of vertex {v} is negative"),
            Violation::CoverViolated((u, v)) => write!(f, "cover constraint violated on edge {u}-{v}"),
            Violation::ExposedPositive(v) => write!(f, "exposed vertex {v} has positive cover value"),
            Violation::MatchingEdgeNotTight((u, v)) => write!(f, "matching edge {u}-{v} is not tight"),
            Violation::CostMismatch { declared, stabilizer_total } => {
                write!(f, "declared cost {declared} differs from stabilizer total {stabilizer_total}")
            }
            Violation::PrimalDualEquality { matching_weight, cover_total } => write!(
                f,
                "primal-dual equality violated: matching side {matching_weight}, cover side {cover_total}"
            ),
        }
    }
}

/// The list of violated conditions; empty means the certificate is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that `s` certifies `(G, 1 + c)` as stable with `M` optimal:
/// `M` is a matching of `g`; `c` lives on `M` within `[0, 1]`; `y ≥ 0` is a
/// fractional `(1 + c)`-cover; exposed vertices have `y = 0` and matching
/// edges are tight; and `Σ_M (1 + c) = Σ y` with the declared cost equal to
/// `Σ y − |M|` and to `Σ c`.
pub fn verify_certificate(g: &Graph, s: &StabilizerSolution) -> Verdict {
    let mut out = Vec::new();
    if s.n != g.n() || s.y.len() != g.n() {
        out.push(Violation::VertexCount { graph: g.n(), certificate: s.n });
        return Verdict { violations: out };
    }
    let n = g.n();
    let mut matched = vec![false; n];
    let mut reported = BTreeSet::new();
    for &(u, v) in s.matching.edges() {
        if u >= n || v >= n || !g.has_edge(u, v) {
            out.push(Violation::MatchingEdgeMissing((u, v)));
        }
        for w in [u, v] {
            if w < n {
                if matched[w] && reported.insert(w) {
                    out.push(Violation::MatchingNotDisjoint(w));
                }
                matched[w] = true;
            }
        }
    }
    for (&e, &x) in &s.c {
        if !s.matching.contains(e.0, e.1) {
            out.push(Violation::StabilizerOffMatching(e));
        }
        if x < HalfInt::ZERO || x > HalfInt::ONE {
            out.push(Violation::StabilizerOutOfRange(e, x));
        }
    }
    for (v, &yv) in s.y.iter().enumerate() {
        if yv < HalfInt::ZERO {
            out.push(Violation::NegativeCover(v));
        }
    }
    for &(u, v) in g.edges() {
        if s.y[u] + s.y[v] < HalfInt::ONE + s.c_of(u, v) {
            out.push(Violation::CoverViolated((u, v)));
        }
    }
    for (v, &m) in matched.iter().enumerate() {
        if !m && !s.y[v].is_zero() {
            out.push(Violation::ExposedPositive(v));
        }
    }
    for &(u, v) in s.matching.edges() {
        if u < n && v < n && s.y[u] + s.y[v] != HalfInt::ONE + s.c_of(u, v) {
            out.push(Violation::MatchingEdgeNotTight((u, v)));
        }
    }
    let stabilizer_total: HalfInt = s.c.values().sum();
    let on_matching: HalfInt = s.matching.edges().iter().map(|&(u, v)| s.c_of(u, v)).sum();
    let matching_weight = HalfInt::from_int(s.matching.len() as i64) + on_matching;
    let cover_total: HalfInt = s.y.iter().sum();
    if s.cost != stabilizer_total {
        out.push(Violation::CostMismatch { declared: s.cost, stabilizer_total });
    }
    let declared_weight = HalfInt::from_int(s.matching.len() as i64) + s.cost;
    if matching_weight != cover_total || declared_weight != cover_total {
        let matching_weight = if matching_weight != cover_total { matching_weight } else { declared_weight };
        out.push(Violation::PrimalDualEquality { matching_weight, cover_total });
    }
    Verdict { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: i64) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    fn k3_certificate() -> StabilizerSolution {
        StabilizerSolution::from_cover(Matching::from_pairs([(1, 2)]), vec![h(0), h(2), h(2)])
    }

    #[test]
    fn single_edge_zero_stabilizer() {
        let g = Graph::path(2);
        let s = StabilizerSolution::from_cover(Matching::from_pairs([(0, 1)]), vec![h(1), h(1)]);
        assert!(verify_certificate(&g, &s).is_valid());
        assert_eq!(serialize_solution(&s), r#"{"n":2,"matching":[[0,1]],"y2":[1,1],"c2":[],"cost2":0}"#);
    }

    #[test]
    fn k3_certificate_is_valid() {
        let g = Graph::complete(3);
        let s = k3_certificate();
        assert_eq!(s.cost(), HalfInt::ONE);
        assert!(verify_certificate(&g, &s).is_valid());
        assert_eq!(
            serialize_solution(&s),
            r#"{"n":3,"matching":[[1,2]],"y2":[0,2,2],"c2":[[1,2,2]],"cost2":2}"#
        );
    }

    #[test]
    fn k3_all_halves_is_rejected() {
        let g = Graph::complete(3);
        let s = StabilizerSolution::from_cover(Matching::from_pairs([(0, 1)]), vec![h(1); 3]);
        let verdict = verify_certificate(&g, &s);
        assert!(verdict.violations.contains(&Violation::ExposedPositive(2)));
        assert!(verdict
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PrimalDualEquality { .. })));
    }

    #[test]
    fn tampered_cost_is_a_primal_dual_violation() {
        let g = Graph::complete(3);
        let s = k3_certificate();
        let text = serialize_solution(&s).replace("\"cost2\":2", "\"cost2\":4");
        let tampered = parse_solution(&text).unwrap();
        let verdict = verify_certificate(&g, &tampered);
        assert!(verdict.to_string().contains("primal-dual equality violated"));
    }

    #[test]
    fn wrong_graph_is_rejected() {
        let s = k3_certificate();
        assert!(!verify_certificate(&Graph::star(2), &s).is_valid());
        assert!(!verify_certificate(&Graph::complete(4), &s).is_valid());
    }

    #[test]
    fn checked_constructor() {
        let g = Graph::complete(3);
        let mut c = BTreeMap::new();
        c.insert((1, 2), HalfInt::ONE);
        let s = StabilizerSolution::new(&g, Matching::from_pairs([(1, 2)]), vec![h(0), h(2), h(2)], c).unwrap();
        assert_eq!(s, k3_certificate());
        let bad = StabilizerSolution::new(&g, Matching::from_pairs([(1, 2)]), vec![h(0), h(1), h(1)], BTreeMap::new());
        assert!(bad.is_err());
    }

    #[test]
    fn parse_rejects_bad_shapes() {
        assert!(matches!(
            parse_solution(r#"{"n":2,"matching":[],"y2":[0],"c2":[],"cost2":0}"#),
            Err(CertificateError::CoverLength { .. })
        ));
        assert!(matches!(
            parse_solution(r#"{"n":2,"matching":[[0,5]],"y2":[0,0],"c2":[],"cost2":0}"#),
            Err(CertificateError::VertexOutOfRange { .. })
        ));
        assert!(matches!(parse_solution("not json"), Err(CertificateError::Syntax(_))));
    }
}
