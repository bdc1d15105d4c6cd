mod common;

use common::*;
use num_rational::BigRational;
use proptest::prelude::*;
use wguide::generators as gen;
use wguide::lp::{build_guidance_lp, fractional_guidance, solve, solve_exact, LpStatus, DEFAULT_TOL};
use wguide::verify::{evaluate_dual, evaluate_dual_exact};
use wguide::{DistanceIndex, Graph, MaxOutdegree, Radius};

fn idx(g: &Graph, r: usize) -> DistanceIndex {
    DistanceIndex::build(g, Radius::Bounded(r))
}

fn triangle() -> Graph {
    Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
}

#[test]
fn program_shape() {
    let p3 = gen::path(3);
    let lp = build_guidance_lp(&p3, &idx(&p3, 2), 2).unwrap();
    assert_eq!((lp.pair_variable_count(), lp.capacity_row_count(), lp.covering_row_count()), (4, 3, 1));
    let k3 = triangle();
    assert_eq!(build_guidance_lp(&k3, &idx(&k3, 2), 2).unwrap().covering_row_count(), 0);
    let c5 = gen::cycle(5);
    let lp = build_guidance_lp(&c5, &idx(&c5, 2), 2).unwrap();
    assert_eq!((lp.pair_variable_count(), lp.covering_row_count()), (10, 5));
    let row = &lp.covers()[0];
    assert_eq!((row.u, row.v, row.dist), (0, 2, 2));
}

#[test]
fn lp_needs_index_radius() {
    let p3 = gen::path(3);
    assert!(build_guidance_lp(&p3, &idx(&p3, 1), 2).is_err());
}

#[test]
fn optimum_examples() {
    for (g, r, want) in [(gen::path(3), 2, 0.5), (gen::path(4), 3, 0.5), (gen::cycle(5), 2, 1.0), (triangle(), 2, 0.0)] {
        let sol = solve(&build_guidance_lp(&g, &idx(&g, r), r).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.c - want).abs() < 1e-9, "{} vs {want}", sol.c);
    }
}

#[test]
fn exact_optimum_examples() {
    let p3 = gen::path(3);
    let sol = solve_exact(&build_guidance_lp(&p3, &idx(&p3, 2), 2).unwrap()).unwrap();
    assert_eq!(sol.c, BigRational::new(1.into(), 2.into()));
    let fano = gen::projective_split_graph(2).unwrap().graph;
    let ix = idx(&fano, 2);
    let sol = solve_exact(&build_guidance_lp(&fano, &ix, 2).unwrap()).unwrap();
    assert_eq!(sol.c, BigRational::new(3.into(), 2.into()));
    // the exact dual certifies the exact primal
    assert_eq!(evaluate_dual_exact(&fano, &ix, 2, &sol.dual_y).unwrap(), sol.c);
}

#[test]
fn universal_vertex_needs_at_most_one() {
    let (g, _) = gen::universal_vertex_graph(&gen::random_graph(7, 0.3, 4).unwrap());
    let (_, c, _) = fractional_guidance(&g, 2, DEFAULT_TOL).unwrap();
    assert!(c <= 1.0 + 1e-9);
}

#[test]
fn lower_bound_families() {
    let fano = gen::projective_split_graph(2).unwrap().graph;
    assert!(fractional_guidance(&fano, 2, DEFAULT_TOL).unwrap().1 >= 1.5 - 1e-6);
    let h = gen::halfgraph_hard_instance(2, 4).unwrap().graph;
    assert!(fractional_guidance(&h, 2, DEFAULT_TOL).unwrap().1 >= 4.0 / 3.0 - 1e-6);
}

#[test]
fn lp_text_lists_rows() {
    let p3 = gen::path(3);
    let text = build_guidance_lp(&p3, &idx(&p3, 2), 2).unwrap().to_lp_text();
    assert!(text.lines().any(|l| l == "Minimize"));
    assert!(text.contains("cov_0_2: p_0_1 + p_2_1 >= 1"));
    assert!(text.contains("Subject To"));
    assert!(text.trim_end().ends_with("End"));
}

/// Medium random graphs whose programs are highly degenerate; a plain
/// float tableau cycles on them.
#[test]
fn degenerate_instances_solve() {
    let g = gen::random_graph(25, 0.3, 8).unwrap();
    let lp = build_guidance_lp(&g, &idx(&g, 2), 2).unwrap();
    let f = solve(&lp, DEFAULT_TOL).unwrap();
    assert_eq!(f.status, LpStatus::Optimal);
    assert!((f.c - 1615.0 / 843.0).abs() < 1e-7, "{}", f.c);
    assert_eq!(solve_exact(&lp).unwrap().c, BigRational::new(1615.into(), 843.into()));

    for (n, seed) in [(26, 3), (32, 9)] {
        let g = gen::random_graph(n, 0.3, seed).unwrap();
        let ix = idx(&g, 3);
        let sol = solve(&build_guidance_lp(&g, &ix, 3).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!(fractional_bad_pairs(&g, &sol.p, 3, 1e-6).is_empty());
        assert!(max_fractional_outdegree(&g, &sol.p) <= sol.c + 1e-6);
        let cert = evaluate_dual(&g, &ix, 3, &sol.dual_y).unwrap();
        assert!((cert.value - sol.c).abs() < 1e-6, "dual {} primal {}", cert.value, sol.c);
    }
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=9, 0.15f64..0.8, any::<u64>()).prop_map(|(n, q, s)| gen::random_graph(n, q, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn solution_is_feasible_and_tight(g in small_graph(), r in 2usize..4) {
        let ix = idx(&g, r);
        let sol = solve(&build_guidance_lp(&g, &ix, r).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert_eq!(sol.status, LpStatus::Optimal);
        prop_assert!(fractional_bad_pairs(&g, &sol.p, r, 1e-6).is_empty());
        prop_assert!(max_fractional_outdegree(&g, &sol.p) <= sol.c + 1e-6);
        prop_assert!((sol.p.max_outdegree() - max_fractional_outdegree(&g, &sol.p)).abs() < 1e-9);
        // strong duality: the dual is a certificate of the same value
        let cert = evaluate_dual(&g, &ix, r, &sol.dual_y).unwrap();
        prop_assert!((cert.value - sol.c).abs() < 1e-6, "dual {} primal {}", cert.value, sol.c);
    }

    #[test]
    fn exact_agrees_with_float(g in (2usize..=7, any::<u64>()).prop_map(|(n, s)| gen::random_graph(n, 0.4, s).unwrap())) {
        let lp = build_guidance_lp(&g, &idx(&g, 2), 2).unwrap();
        let x = solve_exact(&lp).unwrap();
        let f = solve(&lp, DEFAULT_TOL).unwrap();
        prop_assert!((x.c_f64() - f.c).abs() < 1e-7);
        let p = x.fractional(g.n());
        prop_assert!(fractional_bad_pairs(&g, &p, 2, 1e-9).is_empty());
        prop_assert_eq!(evaluate_dual_exact(&g, &idx(&g, 2), 2, &x.dual_y).unwrap(), x.c);
    }
}
