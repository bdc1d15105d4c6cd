mod common;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use wguide::domination::*;
use wguide::generators as gen;
use wguide::lp::{fractional_guidance, DEFAULT_TOL};
use wguide::synthesize::{complete_to_guidance, round_fractional};
use wguide::{DistanceIndex, Graph, PartialOrientation, Radius};

fn idx(g: &Graph, r: usize) -> DistanceIndex {
    DistanceIndex::build(g, Radius::Bounded(r))
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn sigma_values() {
    assert_eq!(sigma(1, 2, 1).unwrap(), big(0));
    assert_eq!(sigma(2, 2, 1).unwrap(), big(8));
    assert_eq!(sigma(3, 2, 1).unwrap(), big(72));
    // c = 3, r = 2: step 3^5 = 243
    assert_eq!(sigma(3, 3, 2).unwrap(), big(243 * (243 + 1)));
}

#[test]
fn bound_values() {
    assert_eq!(bound_b(2, 1, 1).unwrap(), big(260));
    assert_eq!(bound_b(2, 1, 2).unwrap(), big(2308));
    for k in 1..6 {
        assert!(sigma(k + 1, 2, 2).unwrap() < sigma(k + 2, 2, 2).unwrap());
        assert!(bound_b(2, 2, k).unwrap() < bound_b(2, 2, k + 1).unwrap());
    }
    // large parameters stay exact
    assert!(bound_b(10, 4, 6).unwrap().bits() > 128);
}

#[test]
fn star_domination() {
    let (star, h) = gen::universal_vertex_graph(&Graph::empty(6));
    for h in [h.clone(), complete_to_guidance(&star, &idx(&star, 2), &h, 2).unwrap()] {
        let res = dominate_via_guidance(&star, &idx(&star, 2), &h, 1).unwrap();
        assert!(dominates(&star, &res.d, 1));
        assert_eq!(res.a.len(), 1);
        let c = (h.max_out() + 1) as f64;
        assert!(res.ratio <= c * c);
    }
}

#[test]
fn single_vertex() {
    let g = Graph::empty(1);
    let res = dominate_via_guidance(&g, &idx(&g, 2), &PartialOrientation::empty(1), 1).unwrap();
    assert_eq!((res.d.as_slice(), res.a.as_slice(), res.ratio), ([0].as_slice(), [0].as_slice(), 1.0));
}

#[test]
fn matching_domination() {
    let g = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
    let res = dominate_via_guidance(&g, &idx(&g, 2), &PartialOrientation::both_ways(&g), 1).unwrap();
    assert_eq!(res.a.len(), 3);
    assert!(res.d.len() <= 6);
    assert!(dominates(&g, &res.d, 1));
}

#[test]
fn guidance_precondition() {
    let p5 = gen::path(5);
    let err = dominate_via_guidance(&p5, &idx(&p5, 2), &PartialOrientation::empty(5), 1);
    assert!(matches!(err, Err(wguide::Error::Precondition(_))));
}

#[test]
fn weak_examples() {
    let c20 = gen::cycle(20);
    let h = PartialOrientation::from_arcs(&c20, (0..20).map(|i| (i, (i + 1) % 20)).collect::<Vec<_>>()).unwrap();
    let res = dominate_weak(&c20, &idx(&c20, 4), &h, 2, 2, 2).unwrap();
    assert!(dominates(&c20, &res.d, 2) && far_apart(&c20, &res.a, 2));
    let b = bound_b(2, 2, 2).unwrap();
    assert!(BigUint::from(res.d.len()) <= b * BigUint::from(res.a.len()));
    assert_eq!(res.bound_held, Some(true));

    let p30 = gen::path(30);
    let res = dominate_weak(&p30, &idx(&p30, 2), &PartialOrientation::both_ways(&p30), 1, 2, 1).unwrap();
    assert!(dominates(&p30, &res.d, 1));
    assert!(res.picked_independent);
    assert_eq!(res.a, res.picked);
    // picks 0, 3, .., 27, each adding its closed neighbourhood
    assert_eq!(res.picked, (0..30).step_by(3).collect::<Vec<_>>());
    assert_eq!(res.d, (0..29).collect::<Vec<_>>());
}

#[test]
fn weak_needs_bounded_outdegree() {
    let g = gen::star(5);
    let h = PartialOrientation::both_ways(&g);
    assert!(dominate_weak(&g, &idx(&g, 2), &h, 1, 2, 1).is_err());
}

#[test]
fn halfgraph_examples() {
    let p5 = gen::path(5);
    match find_halfgraph(&p5, &idx(&p5, 2), 2, 1, 10_000).unwrap() {
        HalfgraphSearch::Found(w) => {
            assert_eq!(w.u.len(), 1);
            assert!(w.check(&idx(&p5, 2), 2));
        }
        other => panic!("{other:?}"),
    }
    let e = Graph::empty(4);
    assert_eq!(find_halfgraph(&e, &idx(&e, 1), 1, 1, 10_000).unwrap(), HalfgraphSearch::NoneExists);

    // u_i ~ v_j iff j >= i
    let ladder = Graph::from_edges(6, (0..3).flat_map(|i| (i..3).map(move |j| (i, 3 + j))).collect::<Vec<_>>()).unwrap();
    match find_halfgraph(&ladder, &idx(&ladder, 1), 1, 3, 100_000).unwrap() {
        HalfgraphSearch::Found(w) => assert!(w.check(&idx(&ladder, 1), 1)),
        other => panic!("{other:?}"),
    }
    assert_eq!(find_halfgraph(&ladder, &idx(&ladder, 1), 1, 4, 100_000).unwrap(), HalfgraphSearch::NoneExists);
    assert_eq!(find_halfgraph(&ladder, &idx(&ladder, 1), 1, 3, 1).unwrap(), HalfgraphSearch::BudgetExhausted);
}

#[test]
fn exact_domination_is_capped() {
    assert!(min_r_dominating_set(&gen::path(EXACT_DOMINATION_LIMIT + 1), 1).is_err());
    assert_eq!(min_r_dominating_set(&gen::path(7), 1).unwrap().len(), 3);
}

/// Witness condition from the definition: `d(u_i, v_j) <= r` iff `j >= i`.
fn halfgraph_oracle(g: &Graph, r: usize, u: &[usize], v: &[usize]) -> bool {
    let dist = all_pairs(g);
    (0..u.len()).all(|i| (0..v.len()).all(|j| dist[u[i]][v[j]].is_some_and(|d| d <= r) == (j >= i)))
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=12, 0.1f64..0.6, any::<u64>()).prop_map(|(n, q, s)| gen::random_graph(n, q, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn guided_domination_sandwich(g in small_graph(), r in 1usize..3) {
        let ix = idx(&g, 2 * r);
        let h = PartialOrientation::both_ways(&g);
        let res = dominate_via_guidance(&g, &ix, &h, r).unwrap();
        let gamma = gamma_r(&g, r);
        prop_assert!(dominates(&g, &res.d, r));
        prop_assert!(far_apart(&g, &res.a, r));
        prop_assert!(res.a.len() <= gamma && gamma <= res.d.len());
        prop_assert_eq!(is_r_dominating(&g, &res.d, r), true);
        prop_assert_eq!(is_2r_independent(&g, &res.a, r), true);
        prop_assert_eq!(min_r_dominating_set(&g, r).unwrap().len(), gamma);
    }

    #[test]
    fn weak_domination_sandwich(g in small_graph(), r in 1usize..3, k in 1usize..3) {
        let ix = idx(&g, 2 * r);
        let (p, c, _) = fractional_guidance(&g, 2 * r, DEFAULT_TOL).unwrap();
        let h = round_fractional(&g, &ix, &p, 2 * r, c).unwrap().h;
        let res = dominate_weak(&g, &ix, &h, r, h.max_out().max(2) as u64, k).unwrap();
        let gamma = gamma_r(&g, r);
        prop_assert!(dominates(&g, &res.d, r));
        prop_assert!(far_apart(&g, &res.a, r));
        prop_assert!(res.a.len() <= gamma && gamma <= res.d.len());
    }

    #[test]
    fn membership_checks_match(g in small_graph(), mask in any::<u16>(), r in 1usize..3) {
        let s: Vec<usize> = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        prop_assert_eq!(is_r_dominating(&g, &s, r), dominates(&g, &s, r));
        prop_assert_eq!(is_2r_independent(&g, &s, r), far_apart(&g, &s, r));
    }

    #[test]
    fn halfgraph_witnesses_hold(g in small_graph(), r in 1usize..3, k in 1usize..4) {
        let ix = idx(&g, r);
        if let HalfgraphSearch::Found(w) = find_halfgraph(&g, &ix, r, k, 200_000).unwrap() {
            prop_assert_eq!((w.u.len(), w.v.len()), (k, k));
            prop_assert!(halfgraph_oracle(&g, r, &w.u, &w.v));
            prop_assert!(w.check(&ix, r));
        }
    }
}
