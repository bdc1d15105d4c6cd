use rand::Rng as _;

use crate::graph::{FractionalOrientation, Graph};
use crate::rng;
use crate::{Error, Result};

/// The random bipartite instance `G_{a,k}` and its explicit fractional
/// 2-guidance candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct GakInstance {
    pub a: usize,
    pub k: usize,
    /// `k·2^{k+1}`.
    pub m: usize,
    pub graph: Graph,
    pub l: Vec<usize>,
    pub r: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
    pub hubs: Vec<usize>,
    /// `3/a` from each hub to its part, `2.5/a` from `R` to adjacent `L`,
    /// `2.5/a` from `L` to adjacent vertices of the first part.
    pub p_explicit: FractionalOrientation,
}

/// `L = 0..a`, then `R` in `m` consecutive blocks of `a`, then the hubs.
/// Each `L×R` pair is an edge with probability 1/2, drawn in lexicographic
/// order from `seed`.
pub fn gak_instance(a: usize, k: usize, seed: u64) -> Result<GakInstance> {
    if a < 2 || k == 0 {
        return Err(Error::InvalidParameter(format!("need a >= 2 and k >= 1, got a = {a}, k = {k}")));
    }
    if k > 20 {
        return Err(Error::InvalidParameter(format!("k = {k} is too large")));
    }
    let m = k << (k + 1);
    let l: Vec<usize> = (0..a).collect();
    let r: Vec<usize> = (a..a + m * a).collect();
    let parts: Vec<Vec<usize>> = r.chunks(a).map(<[usize]>::to_vec).collect();
    let hubs: Vec<usize> = (a + m * a..a + m * a + m).collect();
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for &z in &l {
        for &u in &r {
            if rng.random_bool(0.5) {
                edges.push((z, u));
            }
        }
    }
    for (i, part) in parts.iter().enumerate() {
        edges.extend(part.iter().map(|&u| (hubs[i], u)));
    }
    let graph = Graph::from_edges(a + m * a + m, edges)?;

    let af = a as f64;
    let mut p = FractionalOrientation::zeros(graph.n());
    for (i, part) in parts.iter().enumerate() {
        for &u in part {
            p.set_unchecked(hubs[i], u, 3.0 / af);
        }
    }
    let first = a..2 * a;
    for &z in &l {
        for &u in graph.neighbors(z) {
            if u >= a && u < a + m * a {
                p.set_unchecked(u, z, 2.5 / af);
                if first.contains(&u) {
                    p.set_unchecked(z, u, 2.5 / af);
                }
            }
        }
    }
    Ok(GakInstance { a, k, m, graph, l, r, parts, hubs, p_explicit: p })
}
