use std::collections::BTreeMap;

use proptest::prelude::*;
use wguide::generators as gen;
use wguide::io::*;
use wguide::query::{QueryAnswer, QueryOutcome};
use wguide::synthesize::{HierarchyNode, PartitionHierarchy};
use wguide::{Error, FractionalOrientation, Graph, PartialOrientation};

fn parse_line(e: Error) -> usize {
    match e {
        Error::Parse { line, .. } => line,
        other => panic!("expected a parse error, got {other}"),
    }
}

#[test]
fn graph_text_shape() {
    let text = write_graph(&gen::path(3));
    assert_eq!(text, "p 3 2\ne 0 1\ne 1 2\n");
    let g = parse_graph("# a comment\n\np 3 2\n  e 0 1\ne 2 1\n").unwrap();
    assert_eq!(g, gen::path(3));
}

#[test]
fn graph_errors_name_the_line() {
    assert_eq!(parse_line(parse_graph("p 3 1\ne 0 0\n").unwrap_err()), 2);
    assert_eq!(parse_line(parse_graph("p 3 2\ne 0 1\ne 1 0\n").unwrap_err()), 3);
    assert_eq!(parse_line(parse_graph("p 3 1\ne 0 7\n").unwrap_err()), 2);
    assert_eq!(parse_line(parse_graph("p 3 1\ne 0 x\n").unwrap_err()), 2);
    assert_eq!(parse_line(parse_graph("p 3 1\ne 0 1 2\n").unwrap_err()), 2);
    assert_eq!(parse_line(parse_graph("p 3 1\nq 0 1\n").unwrap_err()), 2);
    assert!(parse_graph("p 3 2\ne 0 1\n").is_err());
    assert!(parse_graph("e 0 1\n").is_err());
}

#[test]
fn orientation_needs_edges() {
    let g = gen::path(3);
    assert!(parse_orientation("a 0 2\n", &g).is_err());
    assert!(parse_fractional("w 0 1 -1\n", &g).is_err());
    let h = parse_orientation("a 0 1\na 2 1\n", &g).unwrap();
    assert_eq!(h.arcs().collect::<Vec<_>>(), vec![(0, 1), (2, 1)]);
}

#[test]
fn dual_rejects_repeats() {
    assert!(parse_dual("y 0 2 1\ny 2 0 1\n").is_err());
    let y = parse_dual("y 2 0 0.5\n").unwrap();
    assert_eq!(y, BTreeMap::from([((0, 2), 0.5)]));
}

#[test]
fn query_lines() {
    let hit = QueryAnswer { outcome: QueryOutcome::Distance(2), path: vec![0, 1, 2], probabilistic: false };
    assert_eq!(format_query_line(0, 2, &hit), "0 2 2 0 1 2");
    let miss = QueryAnswer { outcome: QueryOutcome::GreaterThan(3), path: vec![], probabilistic: false };
    assert_eq!(format_query_line(0, 5, &miss), "0 5 >3");
    assert_eq!(join_list(&[3, 1, 4]), "3 1 4");
}

#[test]
fn hierarchy_round_trip() {
    let h = PartitionHierarchy {
        nodes: BTreeMap::from([
            (0, HierarchyNode::Split(1, 2)),
            (1, HierarchyNode::Leaf(vec![0, 1])),
            (2, HierarchyNode::Leaf(vec![2])),
        ]),
        root: 0,
    };
    let text = write_hierarchy(&h);
    assert_eq!(parse_hierarchy(&text).unwrap(), h);
    assert!(parse_hierarchy("leaf 1 0\n").is_err());
}

#[test]
fn metadata_round_trip() {
    let meta: Metadata = [("family".to_string(), "cycle".to_string()), ("seed".to_string(), "4".to_string())].into();
    assert_eq!(parse_metadata(&write_metadata(&meta)).unwrap(), meta);
}

fn graph() -> impl Strategy<Value = Graph> {
    (0usize..=14, 0.0f64..1.0, any::<u64>()).prop_map(|(n, q, s)| gen::random_graph(n, q, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graphs_round_trip(g in graph()) {
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn orientations_round_trip(g in graph(), mask in any::<u64>()) {
        let arcs: Vec<_> = g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).enumerate()
            .filter(|&(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, a)| a).collect();
        let h = PartialOrientation::from_arcs(&g, arcs).unwrap();
        prop_assert_eq!(parse_orientation(&write_orientation(&h), &g).unwrap(), h);
    }

    #[test]
    fn fractional_round_trip(g in graph(), seed in any::<u64>()) {
        use rand::Rng as _;
        let mut rng = wguide::rng::seeded(seed);
        let w: Vec<_> = g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).map(|(u, v)| (u, v, rng.random_range(0.0..3.0))).collect();
        let p = FractionalOrientation::from_weights(&g, w).unwrap();
        let back = parse_fractional(&write_fractional(&p), &g).unwrap();
        for (u, v, x) in p.entries() {
            prop_assert_eq!(back.weight(u, v), x);
        }
    }

    #[test]
    fn pairs_and_duals_round_trip(pairs in proptest::collection::vec((0usize..50, 0usize..50), 0..20), ws in proptest::collection::btree_map((0usize..20, 20usize..40), 0.0f64..5.0, 0..20)) {
        prop_assert_eq!(parse_pairs(&write_pairs(&pairs)).unwrap(), pairs);
        prop_assert_eq!(parse_dual(&write_dual(&ws)).unwrap(), ws);
    }

    #[test]
    fn intervals_round_trip(n in 0usize..30, seed in any::<u64>()) {
        let set = gen::random_interval_set(n, seed);
        prop_assert_eq!(parse_intervals(&write_intervals(&set)).unwrap(), set);
    }

    #[test]
    fn tree_models_round_trip(m in 1usize..4, d in 1usize..4, leaves in 1usize..12, seed in any::<u64>()) {
        let t = gen::random_tree_model(m, d, leaves, seed).unwrap();
        let text = write_tree_model(&t);
        let back = parse_tree_model(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(write_tree_model(&back), text);
    }
}
