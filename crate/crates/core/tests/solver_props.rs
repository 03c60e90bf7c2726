mod common;

use stabilkit_core::fc::{best_ell_cover, ell};
use stabilkit_core::fpt::tutte_subsets;
use stabilkit_core::{
    decompose, f_of_k, kappa, mfasp_for_subset, reduce_by_z, solve_approx, solve_exact, solve_oracle,
    solve_tutte_all, tau_f, verify_certificate, ComponentContext, Graph, HalfInt, Kappa, Rat,
};

fn unstable_no_singleton(g: &Graph) -> bool {
    let d = decompose(g);
    !d.components().is_empty() && d.components().iter().all(|k| k.len() > 1)
}

#[test]
fn component_bounds() {
    for g in common::factor_critical_suite(40, 11, 99).into_iter().filter(|g| g.n() > 1) {
        let all: Vec<usize> = (0..g.n()).collect();
        let ctx = ComponentContext::new(&g, &all);
        for w in 0..g.n() {
            assert!(ell(&g, &ctx, w).unwrap() >= Rat::from_integer(0));
        }
        assert!(f_of_k(&g, &ctx).unwrap().0 >= Rat::from_integer(1));
        match kappa(&g, &ctx) {
            Kappa::Cost(c) => assert!(c.value >= Rat::from_integer(1)),
            Kappa::MustBeMatched => panic!("unpinned component must be exposable"),
        }
    }
}

#[test]
fn ell_bounds_in_context() {
    for g in common::random_suite(80, 10, 21) {
        let d = decompose(&g);
        for k in d.components().iter().filter(|k| k.len() > 1) {
            let ctx = ComponentContext::new(&g, k);
            let best = best_ell_cover(&g, &ctx).unwrap();
            assert!(best.value >= Rat::from_integer(1));
            assert!(ctx.boundary().iter().all(|b| best.y[b] >= HalfInt::HALF));
        }
    }
}

#[test]
fn subset_outcomes_are_certified() {
    for g in common::random_suite(60, 9, 31).into_iter().chain(common::connected_graphs_up_to(6)) {
        let red = reduce_by_z(&g).unwrap();
        let d = decompose(&red.core);
        for s_hat in tutte_subsets(d.y()) {
            let out = mfasp_for_subset(&red.core, &d, &s_hat);
            let Some(s) = out.solution else { continue };
            assert!(verify_certificate(&red.core, &s).is_valid(), "{s_hat:?} on {:?}", red.core.edges());
            assert_eq!(out.f_value, Some(s.cost().to_rat()));
            for &b in d.y() {
                let expected = if s_hat.contains(&b) { HalfInt::ONE } else { HalfInt::HALF };
                assert_eq!(s.y_of(b), expected);
            }
        }
    }
}

#[test]
fn oracle_value_matches_duality() {
    for g in common::random_suite(120, 10, 41) {
        let s = solve_oracle(&g).unwrap();
        let nu = Rat::from_integer(common::brute_nu(&g) as i64);
        assert_eq!(s.cost().to_rat(), tau_f(&g, s.c()) - nu, "{:?}", g.edges());
    }
}

#[test]
fn exact_is_below_both_heuristics() {
    let mut seen = 0;
    for g in common::connected_graphs_up_to(7).into_iter().chain(common::random_suite(200, 10, 51)) {
        if !unstable_no_singleton(&g) {
            continue;
        }
        seen += 1;
        let exact = solve_exact(&g).unwrap().cost();
        let tutte = solve_tutte_all(&g).unwrap().solution;
        let approx = solve_approx(&g).unwrap();
        assert!(verify_certificate(&g, &tutte).is_valid());
        assert!(verify_certificate(&g, &approx).is_valid());
        assert!(exact <= tutte.cost() && exact <= approx.cost(), "{:?}", g.edges());
    }
    assert!(seen > 50);
}

#[test]
fn approx_cover_shape() {
    for g in common::connected_graphs_up_to(7).into_iter().filter(unstable_no_singleton) {
        let s = solve_approx(&g).unwrap();
        let d = decompose(&g);
        assert!(d.y().iter().all(|&b| s.y_of(b) >= HalfInt::HALF));
        let exposed = s.matching().exposed(g.n());
        for k in d.components() {
            if !k.iter().any(|v| exposed.contains(v)) {
                assert!(k.iter().all(|&v| s.y_of(v) == HalfInt::HALF));
            }
        }
    }
}

#[test]
fn named_instances_agree_with_oracle() {
    for (name, g) in common::named_suite() {
        let oracle = solve_oracle(&g).unwrap();
        let exact = solve_exact(&g).unwrap();
        assert_eq!(exact.cost(), oracle.cost(), "{name}");
        assert!(verify_certificate(&g, &exact).is_valid(), "{name}");
    }
}
