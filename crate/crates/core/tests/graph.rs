mod common;

use common::*;
use proptest::prelude::*;
use wguide::generators as gen;
use wguide::graph::{degeneracy, distance_power, gate_set, reach_set, shortest_path_region};
use wguide::{DistanceIndex, Error, FractionalOrientation, Graph, MaxOutdegree, PartialOrientation, Radius};

fn idx(g: &Graph, r: usize) -> DistanceIndex {
    DistanceIndex::build(g, Radius::Bounded(r))
}

fn k(n: usize) -> Graph {
    let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, e).unwrap()
}

#[test]
fn index_truncates_at_radius() {
    let p3 = gen::path(3);
    assert_eq!(idx(&p3, 2).dist(0, 2), Some(2));
    let p4 = gen::path(4);
    assert_eq!(idx(&p4, 2).dist(0, 3), None);
    let c5 = DistanceIndex::build(&gen::cycle(5), Radius::Unbounded);
    assert_eq!(c5.dist(0, 3), Some(2));
}

#[test]
fn gate_examples() {
    let p3 = gen::path(3);
    assert_eq!(gate_set(&p3, &idx(&p3, 2), 0, 2).unwrap(), vec![1]);
    let c4 = gen::cycle(4);
    assert_eq!(gate_set(&c4, &idx(&c4, 2), 0, 2).unwrap(), vec![1, 3]);
    let s = gen::star(2);
    assert_eq!(gate_set(&s, &idx(&s, 2), 1, 2).unwrap(), vec![0]);
}

#[test]
fn gate_needs_known_distance() {
    let p4 = gen::path(4);
    assert!(matches!(gate_set(&p4, &idx(&p4, 2), 0, 3), Err(Error::DistanceUnknown { .. })));
    assert!(gate_set(&p4, &idx(&p4, 2), 1, 1).is_err());
    assert!(gate_set(&p4, &idx(&p4, 2), 0, 9).is_err());
}

#[test]
fn reach_examples() {
    let p3 = gen::path(3);
    let h = PartialOrientation::from_arcs(&p3, vec![(0, 1), (1, 2)]).unwrap();
    assert_eq!(reach_set(&h, 0, 0), vec![0]);
    assert_eq!(reach_set(&h, 0, 2), vec![0, 1, 2]);
    let k2 = gen::path(2);
    let two = PartialOrientation::both_ways(&k2);
    assert_eq!(reach_set(&two, 0, 5), vec![0, 1]);
}

#[test]
fn region_examples() {
    let p4 = gen::path(4);
    assert_eq!(shortest_path_region(&p4, &idx(&p4, 3), 0, 1, 3).unwrap(), vec![2, 3]);
    let c4 = gen::cycle(4);
    assert_eq!(shortest_path_region(&c4, &idx(&c4, 2), 0, 1, 2).unwrap(), vec![2]);
    let k3 = k(3);
    assert!(shortest_path_region(&k3, &idx(&k3, 2), 0, 1, 2).unwrap().is_empty());
}

#[test]
fn degeneracy_examples() {
    assert_eq!(degeneracy(&k(4)).degeneracy, 3);
    assert_eq!(degeneracy(&random_tree(20, 1)).degeneracy, 1);
    assert_eq!(degeneracy(&gen::cycle(5)).degeneracy, 2);
}

#[test]
fn outdegree_examples() {
    assert_eq!(PartialOrientation::empty(4).max_outdegree(), 0.0);
    let (star, h) = gen::universal_vertex_graph(&Graph::empty(4));
    assert_eq!(star.n(), 5);
    assert_eq!(h.max_outdegree(), 1.0);
    let c5 = gen::cycle(5);
    let half = FractionalOrientation::from_weights(&c5, c5.edges().flat_map(|(u, v)| [(u, v, 0.5), (v, u, 0.5)]))
        .unwrap();
    assert!((half.max_outdegree() - 1.0).abs() < 1e-12);
}

#[test]
fn power_examples() {
    let g = gen::petersen();
    assert_eq!(distance_power(&g, 1), g);
    let sq = distance_power(&gen::path(4), 2);
    assert_eq!(sq.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
    assert_eq!(distance_power(&gen::cycle(6), 3), k(6));
}

#[test]
fn orientation_rejects_non_edges() {
    let p3 = gen::path(3);
    assert!(matches!(PartialOrientation::from_arcs(&p3, vec![(0, 2)]), Err(Error::NotAnEdge { .. })));
    assert!(FractionalOrientation::from_weights(&p3, [(0, 1, -0.5)]).is_err());
}

/// Largest minimum degree over all induced subgraphs.
fn degeneracy_oracle(g: &Graph) -> usize {
    let n = g.n();
    (1u32..1 << n)
        .map(|s| {
            (0..n)
                .filter(|&v| s >> v & 1 == 1)
                .map(|v| g.neighbors(v).iter().filter(|&&w| s >> w & 1 == 1).count())
                .min()
                .unwrap()
        })
        .max()
        .unwrap_or(0)
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=11, 0.0f64..1.0, any::<u64>()).prop_map(|(n, q, s)| gen::random_graph(n, q, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_matches_bfs(g in small_graph(), r in 1usize..5) {
        let ix = idx(&g, r);
        let dist = all_pairs(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                let want = dist[u][v].filter(|&d| d <= r);
                prop_assert_eq!(ix.dist(u, v), want);
            }
        }
    }

    #[test]
    fn gates_are_closer_neighbours(g in small_graph()) {
        let ix = idx(&g, 4);
        let dist = all_pairs(&g);
        for (u, v, l) in pairs_at(&dist, 1, 4) {
            let want: Vec<usize> =
                g.neighbors(u).iter().copied().filter(|&w| dist[w][v] == Some(l - 1)).collect();
            prop_assert_eq!(gate_set(&g, &ix, u, v).unwrap(), want);
        }
    }

    #[test]
    fn degeneracy_is_exact(g in small_graph()) {
        let d = degeneracy(&g);
        prop_assert_eq!(d.degeneracy, degeneracy_oracle(&g));
        let mut sorted = d.order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, g.vertices().collect::<Vec<_>>());
        for v in g.vertices() {
            let later = g.neighbors(v).iter().filter(|&&w| d.position[w] > d.position[v]).count();
            prop_assert!(later <= d.degeneracy);
        }
    }

    #[test]
    fn power_matches_distances(g in small_graph(), k in 1usize..4) {
        let p = distance_power(&g, k);
        let dist = all_pairs(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                let want = u != v && dist[u][v].is_some_and(|d| d <= k);
                prop_assert_eq!(p.has_edge(u, v), want);
            }
        }
    }

    #[test]
    fn reach_matches_ball(g in small_graph(), seed in any::<u64>(), a in 0usize..5) {
        use rand::Rng as _;
        let mut rng = wguide::rng::seeded(seed);
        let arcs: Vec<_> = g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).filter(|_| rng.random_bool(0.4)).collect();
        let h = PartialOrientation::from_arcs(&g, arcs).unwrap();
        for u in g.vertices() {
            prop_assert_eq!(reach_set(&h, u, a), ball(&h, u, a).into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn region_matches_gates(g in small_graph(), r in 2usize..5) {
        let ix = idx(&g, r);
        let dist = all_pairs(&g);
        for u in g.vertices() {
            for &z in g.neighbors(u) {
                let want: Vec<usize> = g
                    .vertices()
                    .filter(|&v| dist[u][v].is_some_and(|l| (2..=r).contains(&l)) && dist[z][v] == dist[u][v].map(|l| l - 1))
                    .collect();
                prop_assert_eq!(shortest_path_region(&g, &ix, u, z, r).unwrap(), want);
            }
        }
    }
}
