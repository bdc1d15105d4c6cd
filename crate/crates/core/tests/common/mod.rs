//! Shared corpus and independent oracles for the integration tests.
//!
//! The oracles recompute everything from their own BFS and follow the
//! definitions literally (path enumeration, reach balls, gate masses), so
//! they share no code with the library beyond the graph container.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use wguide::generators as gen;
use wguide::{FractionalOrientation, Graph, PartialOrientation};

pub fn bfs(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; g.n()];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &y in g.neighbors(x) {
            if d[y].is_none() {
                d[y] = Some(d[x].unwrap() + 1);
                q.push_back(y);
            }
        }
    }
    d
}

pub fn all_pairs(g: &Graph) -> Vec<Vec<Option<usize>>> {
    g.vertices().map(|s| bfs(g, s)).collect()
}

/// Directed BFS ball `B_H(u, a)`.
pub fn ball(h: &PartialOrientation, u: usize, a: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([u]);
    let mut frontier = vec![u];
    for _ in 0..a {
        let mut next = Vec::new();
        for x in frontier {
            for &y in h.out_neighbors(x) {
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Every shortest `u`-`v` path, as vertex sequences.
pub fn shortest_paths(g: &Graph, dist: &[Vec<Option<usize>>], u: usize, v: usize) -> Vec<Vec<usize>> {
    let Some(l) = dist[u][v] else { return Vec::new() };
    let mut out = Vec::new();
    let mut stack = vec![vec![u]];
    while let Some(p) = stack.pop() {
        let x = *p.last().unwrap();
        if x == v {
            out.push(p);
            continue;
        }
        let left = l - (p.len() - 1);
        for &y in g.neighbors(x) {
            if dist[y][v] == Some(left - 1) {
                let mut q = p.clone();
                q.push(y);
                stack.push(q);
            }
        }
    }
    out
}

/// Pairs `(u, v, l)`, `u < v`, at distance `lo..=hi`.
pub fn pairs_at(dist: &[Vec<Option<usize>>], lo: usize, hi: usize) -> Vec<(usize, usize, usize)> {
    let n = dist.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if let Some(l) = dist[u][v] {
                if (lo..=hi).contains(&l) {
                    out.push((u, v, l));
                }
            }
        }
    }
    out
}

/// Literal weak condition: a shortest path whose edges, all but one, point
/// towards the exceptional edge.
pub fn weak_bad_pairs(g: &Graph, h: &PartialOrientation, r: usize) -> Vec<(usize, usize, usize)> {
    let dist = all_pairs(g);
    pairs_at(&dist, 2, r)
        .into_iter()
        .filter(|&(u, v, _)| {
            !shortest_paths(g, &dist, u, v).iter().any(|p| {
                (0..p.len() - 1).any(|t| {
                    (0..t).all(|i| h.has_arc(p[i], p[i + 1])) && (t + 1..p.len() - 1).all(|i| h.has_arc(p[i + 1], p[i]))
                })
            })
        })
        .collect()
}

/// Pairs where neither end has an out-arc one step closer to the other.
pub fn gate_bad_pairs(g: &Graph, h: &PartialOrientation, r: usize) -> Vec<(usize, usize, usize)> {
    let dist = all_pairs(g);
    let closer = |x: usize, y: usize, l: usize| h.out_neighbors(x).iter().any(|&w| dist[w][y] == Some(l - 1));
    pairs_at(&dist, 2, r).into_iter().filter(|&(u, v, l)| !closer(u, v, l) && !closer(v, u, l)).collect()
}

/// Literal strict condition over distances `lo..=r`.
pub fn strict_bad_pairs(g: &Graph, h: &PartialOrientation, r: usize, lo: usize) -> Vec<(usize, usize, usize)> {
    let dist = all_pairs(g);
    pairs_at(&dist, lo, r)
        .into_iter()
        .filter(|&(u, v, l)| !(0..=l).any(|a| !ball(h, u, a).is_disjoint(&ball(h, v, l - a))))
        .collect()
}

/// Gate mass of `u` towards `v`.
pub fn gate_mass(g: &Graph, dist: &[Vec<Option<usize>>], p: &FractionalOrientation, u: usize, v: usize) -> f64 {
    let l = dist[u][v].unwrap();
    g.neighbors(u).iter().filter(|&&w| dist[w][v] == Some(l - 1)).map(|&w| p.weight(u, w)).sum()
}

pub fn fractional_bad_pairs(g: &Graph, p: &FractionalOrientation, r: usize, tol: f64) -> Vec<(usize, usize, usize)> {
    let dist = all_pairs(g);
    pairs_at(&dist, 2, r)
        .into_iter()
        .filter(|&(u, v, _)| gate_mass(g, &dist, p, u, v) + gate_mass(g, &dist, p, v, u) < 1.0 - tol)
        .collect()
}

pub fn max_fractional_outdegree(g: &Graph, p: &FractionalOrientation) -> f64 {
    g.vertices().map(|u| g.neighbors(u).iter().map(|&w| p.weight(u, w)).sum::<f64>()).fold(0.0, f64::max)
}

pub fn grid(w: usize, h: usize) -> Graph {
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            if x + 1 < w {
                edges.push((v, v + 1));
            }
            if y + 1 < h {
                edges.push((v, v + w));
            }
        }
    }
    Graph::from_edges(w * h, edges).unwrap()
}

/// Uniform random labelled tree by random attachment.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    use rand::Rng as _;
    let mut rng = wguide::rng::seeded(seed);
    Graph::from_edges(n, (1..n).map(|v| (rng.random_range(0..v), v)).collect::<Vec<_>>()).unwrap()
}

/// Named desk-scale instances used by several criteria.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("P6".into(), gen::path(6)),
        ("P9".into(), gen::path(9)),
        ("C5".into(), gen::cycle(5)),
        ("C8".into(), gen::cycle(8)),
        ("C12".into(), gen::cycle(12)),
        ("K1,5".into(), gen::star(5)),
        ("petersen".into(), gen::petersen()),
        ("grid3x4".into(), grid(3, 4)),
        ("fano-split".into(), gen::projective_split_graph(2).unwrap().graph),
        ("star-power3".into(), gen::subdivided_star_power(3).unwrap().graph),
        ("H1,2".into(), gen::halfgraph_hard_instance(1, 2).unwrap().graph),
        ("wheel5".into(), gen::universal_vertex_graph(&gen::cycle(5)).0),
        ("tree12".into(), random_tree(12, 3)),
    ];
    for seed in 0..8 {
        let n = 8 + (seed as usize % 5) * 2;
        out.push((format!("G({n},0.3)#{seed}"), gen::random_graph(n, 0.3, 100 + seed).unwrap()));
    }
    out
}

fn ball_mask(dist: &[Vec<Option<usize>>], x: usize, r: usize) -> u32 {
    (0..dist.len()).filter(|&y| dist[x][y].is_some_and(|d| d <= r)).fold(0, |m, y| m | 1 << y)
}

/// Exact `γ_r` by enumerating vertex subsets (`n <= 16`).
pub fn gamma_r(g: &Graph, r: usize) -> usize {
    let n = g.n();
    assert!(n <= 16);
    let dist = all_pairs(g);
    let balls: Vec<u32> = (0..n).map(|x| ball_mask(&dist, x, r)).collect();
    let full = (1u32 << n) - 1;
    (0u32..1 << n)
        .filter(|s| (0..n).filter(|&x| s >> x & 1 == 1).fold(0, |m, x| m | balls[x]) == full)
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

pub fn dominates(g: &Graph, d: &[usize], r: usize) -> bool {
    let dist = all_pairs(g);
    g.vertices().all(|v| d.iter().any(|&x| dist[x][v].is_some_and(|k| k <= r)))
}

pub fn far_apart(g: &Graph, a: &[usize], r: usize) -> bool {
    let dist = all_pairs(g);
    a.iter().all(|&x| a.iter().all(|&y| x == y || dist[x][y].is_none_or(|k| k > 2 * r)))
}
