//! Stability of matching games and minimum fractional additive stabilizers.
//!
//! A graph is stable when its maximum matching size equals its minimum
//! fractional vertex cover. A fractional additive stabilizer raises edge
//! weights by a vector `c ≥ 0` so that `(G, 1 + c)` becomes stable; this
//! crate computes cheapest ones exactly, approximately, and by brute force,
//! and emits certificates `(M, y, c)` that can be checked independently.
//!
//! All values are exact: covers and stabilizers are [`HalfInt`], LP
//! intermediates are [`Rat`].

pub mod approx;
pub mod certificate;
pub mod error;
pub mod fc;
mod flow;
pub mod fpt;
pub mod ged;
pub mod generators;
pub mod graph;
pub mod lp;
pub mod matching;
pub mod oracle;
pub mod scalar;

pub use approx::{reduce_by_z, solve_approx, solve_approx_detailed, ApproxOutcome, ZReduction};
pub use certificate::{
    parse_solution, serialize_solution, verify_certificate, StabilizerSolution, Verdict, Violation,
};
pub use error::{CertificateError, GenError, GraphError, SolveError};
pub use fc::{ell, f_of_k, kappa, solve_factor_critical, ComponentContext, Kappa};
pub use fpt::{mfasp_for_subset, solve_exact, solve_tutte_all, SubsetOutcome, TutteAllOutcome};
pub use ged::{decompose, inessential_vertices, is_factor_critical, is_stable, GeDecomposition, Part};
pub use generators::{gen_factor_critical, gen_mkec, gen_random, gen_setcover, MkecInstance, SetCoverInstance};
pub use graph::{parse_graph, Edge, Graph, Matching, Vertex};
pub use lp::{solve_covering_lp, solve_lp_gm, tau_f, CoveringLp, CoverSolution, GmSolution, Infeasible};
pub use matching::{
    matching_exposing, matching_number, max_cardinality_matching, max_weight_covering_matching,
    WeightedBipartite,
};
pub use oracle::{enumerate_maximum_matchings, mkec_bruteforce, solve_oracle};
pub use scalar::{format_rat, HalfInt, Rat};
