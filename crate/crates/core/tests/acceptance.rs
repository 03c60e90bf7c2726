//! Acceptance suite: runs every criterion with exact arithmetic and prints
//! one PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use stabilkit_core::fpt::solve_exact_detailed;
use stabilkit_core::generators::{extract_cover, small_set_system, is_set_cover, min_set_cover, setcover_certificate};
use stabilkit_core::{
    decompose, gen_mkec, gen_setcover, is_stable, mkec_bruteforce, serialize_solution, solve_approx_detailed,
    solve_exact, solve_factor_critical, solve_oracle, solve_tutte_all, tau_f, verify_certificate, GenError,
    GeDecomposition, Graph, HalfInt, Rat, StabilizerSolution,
};

type Outcome = Result<String, Vec<String>>;

/// Every solution produced anywhere in the run, checked for soundness.
#[derive(Default)]
struct Emitted {
    checked: usize,
    failures: Vec<String>,
}

impl Emitted {
    fn record(&mut self, label: &str, g: &Graph, s: &StabilizerSolution) {
        self.checked += 1;
        let verdict = verify_certificate(g, s);
        if !verdict.is_valid() {
            self.failures.push(format!("{label} on {:?}: {verdict}", g.edges()));
        }
    }
}

struct Instance {
    label: String,
    graph: Graph,
    oracle: StabilizerSolution,
}

fn rat(h: HalfInt) -> Rat {
    h.to_rat()
}

fn fail_if(errors: Vec<String>, summary: String) -> Outcome {
    if errors.is_empty() {
        Ok(summary)
    } else {
        Err(errors)
    }
}

fn exposed_nontrivial_pay(g: &Graph, d: &GeDecomposition, s: &StabilizerSolution) -> Vec<String> {
    let exposed = s.matching().exposed(g.n());
    let mut errors = Vec::new();
    for k in d.components().iter().filter(|k| k.len() > 1) {
        if !k.iter().any(|v| exposed.contains(v)) {
            continue;
        }
        let inside: HalfInt = s
            .c()
            .iter()
            .filter(|((u, v), _)| k.binary_search(u).is_ok() && k.binary_search(v).is_ok())
            .map(|(_, &x)| x)
            .sum();
        if inside < HalfInt::ONE {
            errors.push(format!("exposed component {k:?} pays {inside} < 1 on {:?}", g.edges()));
        }
    }
    errors
}

fn structural(g: &Graph, s: &StabilizerSolution, nu: usize, label: &str) -> Vec<String> {
    let mut errors = Vec::new();
    if s.matching().len() != nu {
        errors.push(format!("{label}: |M| = {} but nu = {nu} on {:?}", s.matching().len(), g.edges()));
    }
    for (&(u, v), &x) in s.c() {
        if !s.matching().contains(u, v) || x < HalfInt::ZERO || x > HalfInt::ONE {
            errors.push(format!("{label}: c({u},{v}) = {x} breaks support or range"));
        }
    }
    errors
}

fn criterion_1(connected: &[Instance], random: &[Instance], emitted: &mut Emitted) -> Outcome {
    let start = Instant::now();
    let mut errors = Vec::new();
    for inst in connected.iter().chain(random) {
        let exact = solve_exact(&inst.graph).map_err(|e| vec![format!("{}: {e}", inst.label)])?;
        emitted.record("exact", &inst.graph, &exact);
        if exact.cost() != inst.oracle.cost() {
            errors.push(format!(
                "{}: exact {} vs oracle {} on {:?}",
                inst.label,
                exact.cost(),
                inst.oracle.cost(),
                inst.graph.edges()
            ));
        }
    }
    fail_if(
        errors,
        format!(
            "{} connected graphs (n <= 8) and {} random graphs (n <= 10) agree; {:.1}s",
            connected.len(),
            random.len(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_2(emitted: &mut Emitted) -> Outcome {
    let mut errors = Vec::new();
    let suite = common::factor_critical_suite(50, 11, 2024);
    for g in &suite {
        let oracle = solve_oracle(g).map_err(|e| vec![e.to_string()])?;
        emitted.record("oracle", g, &oracle);
        match solve_factor_critical(g) {
            Ok(s) => {
                emitted.record("factor-critical", g, &s);
                if s.cost() != oracle.cost() {
                    errors.push(format!("fc {} vs oracle {} on {:?}", s.cost(), oracle.cost(), g.edges()));
                }
            }
            Err(e) => errors.push(format!("{e} on {:?}", g.edges())),
        }
    }
    for (name, g) in [("K3", Graph::complete(3)), ("C5", Graph::cycle(5)), ("C7", Graph::cycle(7))] {
        let s = solve_factor_critical(&g).map_err(|e| vec![e.to_string()])?;
        let o = solve_oracle(&g).map_err(|e| vec![e.to_string()])?;
        emitted.record("factor-critical", &g, &s);
        if s.cost() != HalfInt::ONE || o.cost() != HalfInt::ONE {
            errors.push(format!("{name}: fc {} oracle {}, expected 1", s.cost(), o.cost()));
        }
    }
    let max_n = suite.iter().map(Graph::n).max().unwrap_or(0);
    fail_if(errors, format!("{} generated graphs (n <= {max_n}) plus K3, C5, C7 all match", suite.len()))
}

fn criterion_4(all: &[Instance], emitted: &mut Emitted) -> Outcome {
    let mut errors = Vec::new();
    let mut components_checked = 0;
    for inst in all {
        let g = &inst.graph;
        let nu = common::brute_nu(g);
        let d = decompose(g);
        errors.extend(structural(g, &inst.oracle, nu, "oracle"));
        let (exact, _) = solve_exact_detailed(g).map_err(|e| vec![e.to_string()])?;
        emitted.record("exact", g, &exact);
        errors.extend(structural(g, &exact, nu, "exact"));
        for s in [&inst.oracle, &exact] {
            if d.y().iter().all(|&b| s.y_of(b) >= HalfInt::HALF) {
                components_checked += d.nontrivial_count();
                errors.extend(exposed_nontrivial_pay(g, &d, s));
            }
        }
    }
    fail_if(
        errors,
        format!("{} instances; exposed-component bound checked over {components_checked} components", all.len()),
    )
}

fn criterion_5(all: &[Instance], emitted: &mut Emitted) -> Outcome {
    let mut errors = Vec::new();
    let (mut approx_count, mut tutte_count) = (0, 0);
    for inst in all.iter().filter(|i| i.graph.n() <= 11 && !is_stable(&i.graph)) {
        let g = &inst.graph;
        let opt = rat(inst.oracle.cost());
        let d = decompose(g);
        if d.components().iter().all(|k| k.len() > 1) {
            approx_count += 1;
            let out = solve_approx_detailed(g).map_err(|e| vec![e.to_string()])?;
            emitted.record("approx", g, &out.solution);
            let cost = rat(out.solution.cost());
            if cost < opt || cost > opt * opt {
                errors.push(format!("approx {cost} outside [{opt}, {}] on {:?}", opt * opt, g.edges()));
            }
            if opt < out.lower_bound() {
                errors.push(format!("optimum {opt} below r - 1 + max f = {} on {:?}", out.lower_bound(), g.edges()));
            }
            if out.exposed.len() != d.surplus() {
                errors.push(format!("{} exposed components, expected {}", out.exposed.len(), d.surplus()));
            }
        }
        let tutte = solve_tutte_all(g).map_err(|e| vec![e.to_string()])?;
        emitted.record("tutte-all", g, &tutte.solution);
        if let Some(ratio) = tutte.ratio() {
            tutte_count += 1;
            if rat(tutte.solution.cost()) > ratio * opt {
                errors.push(format!(
                    "tutte-all {} above {ratio} * {opt} on {:?}",
                    tutte.solution.cost(),
                    g.edges()
                ));
            }
        }
    }
    fail_if(
        errors,
        format!("{approx_count} no-singleton instances within [OPT, OPT^2]; {tutte_count} instances within (k/2+1) OPT"),
    )
}

fn criterion_6(emitted: &mut Emitted) -> Outcome {
    let start = Instant::now();
    let mut errors = Vec::new();
    let mut runs = Vec::new();
    let bases = [("P3", Graph::path(3)), ("K3", Graph::complete(3)), ("C4", Graph::cycle(4)), ("K1,3", Graph::star(3))];
    for (name, base) in &bases {
        for k in [1, 2] {
            let q = base.max_degree();
            let inst = match gen_mkec(base, k, q) {
                Ok(inst) => inst,
                Err(GenError::KTooLarge { .. }) if k >= base.edge_count() => {
                    runs.push(format!("{name}/k={k}: rejected (k >= |E|)"));
                    continue;
                }
                Err(e) => {
                    errors.push(format!("{name}/k={k}: {e}"));
                    continue;
                }
            };
            let d = decompose(&inst.graph);
            let tutte = inst.tutte_vertices();
            let x: Vec<usize> = (0..inst.n).filter(|v| tutte.binary_search(v).is_err()).collect();
            if d.y() != tutte.as_slice() || d.x() != x.as_slice() || !d.z().is_empty() {
                errors.push(format!("{name}/k={k}: decomposition does not match Y'' / rest / empty"));
            }
            let nu = stabilkit_core::matching_number(&inst.graph);
            if nu != 2 * tutte.len() + k {
                errors.push(format!("{name}/k={k}: nu = {nu}, expected {}", 2 * tutte.len() + k));
            }
            let x_star = mkec_bruteforce(base, k).map_err(|e| vec![e.to_string()])?;
            let s = solve_exact(&inst.graph).map_err(|e| vec![e.to_string()])?;
            emitted.record("exact", &inst.graph, &s);
            let expected = inst.predicted_cost(x_star);
            if s.cost() != expected {
                errors.push(format!("{name}/k={k}: exact {} vs k + q x*/2 = {expected}", s.cost()));
            }
            runs.push(format!("{name}/k={k}: q={q} x*={x_star} cost={}", s.cost()));
        }
    }
    fail_if(errors, format!("{}; {:.1}s", runs.join(", "), start.elapsed().as_secs_f64()))
}

fn criterion_7(emitted: &mut Emitted) -> Outcome {
    let (sets, n_elems) = small_set_system();
    let best = min_set_cover(&sets, n_elems).expect("the sample system is coverable");
    let mut errors = Vec::new();
    let mut notes = Vec::new();
    for clique_param in [1, 2] {
        let inst = gen_setcover(&sets, n_elems, clique_param).map_err(|e| vec![e.to_string()])?;
        let d = decompose(&inst.graph);
        if d.y() != inst.tutte_vertices().as_slice() || !d.z().is_empty() {
            errors.push(format!("N={clique_param}: Tutte set differs from the S_j^i vertices"));
        }
        let cert = setcover_certificate(&inst, &best).expect("optimal cover");
        emitted.record("setcover-certificate", &inst.graph, &cert);
        let expected = HalfInt::from_doubled((n_elems * (2 + best.len())) as i64);
        if cert.cost() != expected || !verify_certificate(&inst.graph, &cert).is_valid() {
            errors.push(format!("N={clique_param}: cover certificate cost {} (expected {expected})", cert.cost()));
        }
        let s = solve_exact(&inst.graph).map_err(|e| vec![e.to_string()])?;
        emitted.record("exact", &inst.graph, &s);
        let p = extract_cover(&inst, &s);
        if is_set_cover(&sets, n_elems, &p) {
            notes.push(format!("N={clique_param}: optimum {} extracts cover {p:?}", s.cost()));
        } else {
            errors.push(format!(
                "N={clique_param}: optimum {} exposes no cycle vertex next to S^1, extraction gives {p:?}, not a cover",
                s.cost()
            ));
        }
    }
    fail_if(errors, format!("T* = {best:?}; {}", notes.join(", ")))
}

fn criterion_8(instances: &[Instance]) -> Outcome {
    let mut errors = Vec::new();
    let zero = BTreeMap::new();
    for inst in instances {
        let g = &inst.graph;
        let stable = is_stable(g);
        let by_oracle = inst.oracle.cost().is_zero();
        let by_lp = tau_f(g, &zero) == Rat::from_integer(common::brute_nu(g) as i64);
        if stable != by_oracle || stable != by_lp {
            errors.push(format!("stable={stable} oracle={by_oracle} lp={by_lp} on {:?}", g.edges()));
        }
    }
    fail_if(errors, format!("{} instances agree on all three tests", instances.len()))
}

fn criterion_9(instances: &[Instance]) -> Outcome {
    let mut errors = Vec::new();
    let run = |g: &Graph| -> Vec<String> {
        let mut out = vec![serialize_solution(&solve_oracle(g).unwrap()), serialize_solution(&solve_exact(g).unwrap())];
        out.push(serialize_solution(&solve_tutte_all(g).unwrap().solution));
        if let Ok(a) = solve_approx_detailed(g) {
            out.push(serialize_solution(&a.solution));
        }
        if let Ok(s) = solve_factor_critical(g) {
            out.push(serialize_solution(&s));
        }
        out.push(format!("{:?}", decompose(g)));
        out
    };
    for inst in instances.iter().step_by(7) {
        if run(&inst.graph) != run(&inst.graph) {
            errors.push(format!("outputs differ between runs on {:?}", inst.graph.edges()));
        }
    }
    let gen_once = || {
        let mkec = gen_mkec(&Graph::path(3), 1, 2).unwrap();
        let (sets, n) = small_set_system();
        let sc = gen_setcover(&sets, n, 2).unwrap();
        (
            mkec.graph.to_edge_list(),
            mkec.metadata_json(),
            sc.graph.to_edge_list(),
            sc.metadata_json(),
            stabilkit_core::gen_random(8, 1, 2, 42).unwrap().to_edge_list(),
            stabilkit_core::gen_factor_critical(&[3, 5, 3], 9).unwrap().to_edge_list(),
        )
    };
    if gen_once() != gen_once() {
        errors.push("generator outputs differ between runs".into());
    }
    fail_if(errors, "solver, decomposition and generator outputs are byte-identical across runs".into())
}

fn with_oracle(label: String, graph: Graph) -> Instance {
    let oracle = solve_oracle(&graph).expect("oracle within its size bound");
    Instance { label, graph, oracle }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut emitted = Emitted::default();
    let connected: Vec<Instance> = common::connected_graphs_up_to(8)
        .into_iter()
        .enumerate()
        .map(|(i, g)| with_oracle(format!("connected#{i}"), g))
        .collect();
    let random: Vec<Instance> = common::random_suite(200, 10, 7)
        .into_iter()
        .enumerate()
        .map(|(i, g)| with_oracle(format!("random#{i}"), g))
        .collect();
    let named: Vec<Instance> =
        common::named_suite().into_iter().map(|(name, g)| with_oracle(name.to_string(), g)).collect();
    for inst in connected.iter().chain(&random).chain(&named) {
        emitted.record("oracle", &inst.graph, &inst.oracle);
    }
    let suite_one: Vec<&Instance> = connected.iter().chain(&random).collect();
    let everything: Vec<Instance> = connected
        .iter()
        .chain(&random)
        .chain(&named)
        .map(|i| Instance { label: i.label.clone(), graph: i.graph.clone(), oracle: i.oracle.clone() })
        .collect();
    let suite_one_owned: Vec<Instance> = suite_one
        .iter()
        .map(|i| Instance { label: i.label.clone(), graph: i.graph.clone(), oracle: i.oracle.clone() })
        .collect();

    let mut results: Vec<(u8, &str, Outcome)> = vec![
        (1, "oracle agreement", criterion_1(&connected, &random, &mut emitted)),
        (2, "factor-critical exactness", criterion_2(&mut emitted)),
        (4, "structural properties of optima", criterion_4(&everything, &mut emitted)),
        (5, "approximation bounds", criterion_5(&everything, &mut emitted)),
        (6, "MkEC round trip", criterion_6(&mut emitted)),
        (7, "set-cover structure", criterion_7(&mut emitted)),
        (8, "stability equivalence", criterion_8(&suite_one_owned)),
        (9, "determinism", criterion_9(&everything)),
    ];
    let soundness = if emitted.failures.is_empty() {
        Ok(format!("{} emitted solutions verified", emitted.checked))
    } else {
        Err(emitted.failures.clone())
    };
    results.insert(2, (3, "certificate soundness", soundness));

    let mut failed = false;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(summary) => println!("criterion {id} ({name}): PASS: {summary}"),
            Err(errors) => {
                failed = true;
                println!("criterion {id} ({name}): FAIL: {} problem(s)", errors.len());
                for e in errors.iter().take(5) {
                    println!("    {e}");
                }
            }
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
