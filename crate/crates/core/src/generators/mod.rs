//! Seeded and deterministic instance builders.

mod gak;
mod halfgraph;
mod split;
mod star_power;

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::graph::{Graph, PartialOrientation};
use crate::rng;
use crate::synthesize::{Interval, TreeModel};
use crate::{Error, Result};

pub use gak::{gak_instance, GakInstance};
pub use halfgraph::{halfgraph_hard_instance, halfgraph_size, LabeledGraph};
pub use split::{projective_split_graph, SplitGraph};
pub use star_power::{check_star_power, subdivided_star_power, StarPower};

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("simple")
}

/// `C_n` for `n >= 3`; smaller `n` gives a path.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("simple")
}

/// `K_{1,n}` with center 0.
pub fn star(n: usize) -> Graph {
    Graph::from_edges(n + 1, (1..=n).map(|i| (0, i))).expect("simple")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i – i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edges(10, outer.chain(inner).chain(spokes)).expect("simple")
}

/// `G(n, q)`: each pair `u < v` (lexicographic order) joined with
/// probability `q`.
pub fn random_graph(n: usize, q: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("edge probability {q} outside [0, 1]")));
    }
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(q) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// `base` plus a new vertex `n` adjacent to everything, with every edge at
/// the new vertex directed into it.
pub fn universal_vertex_graph(base: &Graph) -> (Graph, PartialOrientation) {
    let u = base.n();
    let edges = base.edges().chain((0..u).map(|v| (v, u)));
    let g = Graph::from_edges(u + 1, edges.collect::<Vec<_>>()).expect("simple");
    let h = PartialOrientation::from_arcs(&g, (0..u).map(|v| (v, u))).expect("edges exist");
    (g, h)
}

/// `n` open intervals with left end uniform in `[0, n)` and length uniform
/// in `[0.5, 3)`; all `2n` endpoints distinct.
pub fn random_interval_set(n: usize, seed: u64) -> Vec<Interval> {
    let mut rng = rng::seeded(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let l: f64 = rng.random_range(0.0..n as f64);
        let r = l + rng.random_range(0.5..3.0);
        if l < r && !seen.contains(&l.to_bits()) && !seen.contains(&r.to_bits()) {
            seen.insert(l.to_bits());
            seen.insert(r.to_bits());
            out.push((l, r));
        }
    }
    out
}

/// Random `(m, d)`-tree model. The tree is grown bottom-up: at each level
/// the current nodes are shuffled and cut into a random number of non-empty
/// groups, each under a fresh parent (one group at the top). Labels are
/// uniform in `1..=m`; each label pair enters each `S(i)` with probability
/// 1/2.
pub fn random_tree_model(m: usize, d: usize, leaves: usize, seed: u64) -> Result<TreeModel> {
    if m == 0 || d == 0 || leaves == 0 {
        return Err(Error::InvalidParameter("m, d and leaves must be positive".into()));
    }
    let mut rng = rng::seeded(seed);
    let mut parent: Vec<Option<usize>> = vec![None; leaves];
    let mut level: Vec<usize> = (0..leaves).collect();
    for depth in (0..d).rev() {
        let groups = if depth == 0 { 1 } else { rng.random_range(1..=level.len()) };
        level.shuffle(&mut rng);
        let mut cuts: Vec<usize> = (1..level.len()).collect();
        cuts.shuffle(&mut rng);
        cuts.truncate(groups - 1);
        cuts.sort_unstable();
        cuts.push(level.len());
        let mut next = Vec::with_capacity(groups);
        let mut start = 0;
        for end in cuts {
            let id = parent.len();
            parent.push(None);
            for &x in &level[start..end] {
                parent[x] = Some(id);
            }
            next.push(id);
            start = end;
        }
        level = next;
    }
    let label: Vec<usize> = (0..leaves).map(|_| rng.random_range(1..=m)).collect();
    let signature: Vec<Vec<(usize, usize)>> = (0..d)
        .map(|_| {
            let mut s = Vec::new();
            for a in 1..=m {
                for b in a..=m {
                    if rng.random_bool(0.5) {
                        s.push((a, b));
                    }
                }
            }
            s
        })
        .collect();
    TreeModel::new(m, d, leaves, parent, label, signature)
}
