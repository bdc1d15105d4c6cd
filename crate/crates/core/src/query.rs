//! Distance-at-most-r queries answered through a guidance system.

use std::collections::VecDeque;

use crate::graph::{FractionalOrientation, Graph, MaxOutdegree, PartialOrientation};
use crate::rng::Rng;
use crate::synthesize::p_random_neighbor;
use crate::{Error, Result};

use rand::Rng as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryOutcome {
    Distance(usize),
    /// No path of length at most the given radius.
    GreaterThan(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryAnswer {
    pub outcome: QueryOutcome,
    /// `u ..= v` when a distance was found, empty otherwise.
    pub path: Vec<usize>,
    /// Set when a "greater than" answer may be wrong.
    pub probabilistic: bool,
}

impl QueryAnswer {
    fn found(path: Vec<usize>, probabilistic: bool) -> Self {
        QueryAnswer { outcome: QueryOutcome::Distance(path.len() - 1), path, probabilistic }
    }

    fn greater(r: usize, probabilistic: bool) -> Self {
        QueryAnswer { outcome: QueryOutcome::GreaterThan(r), path: Vec::new(), probabilistic }
    }

    pub fn distance(&self) -> Option<usize> {
        match self.outcome {
            QueryOutcome::Distance(d) => Some(d),
            QueryOutcome::GreaterThan(_) => None,
        }
    }
}

/// BFS layers over the arcs of `h` with first-visit parents.
struct Layers {
    layers: Vec<Vec<usize>>,
    depth: Vec<Option<usize>>,
    parent: Vec<usize>,
}

impl Layers {
    fn build(h: &PartialOrientation, s: usize, limit: usize) -> Self {
        let n = h.n();
        let mut depth = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        depth[s] = Some(0);
        let mut layers = vec![vec![s]];
        while layers.len() <= limit {
            let mut next = Vec::new();
            for &x in layers.last().unwrap() {
                for &y in h.out_neighbors(x) {
                    if depth[y].is_none() {
                        depth[y] = Some(layers.len());
                        parent[y] = x;
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        Layers { layers, depth, parent }
    }

    /// `s ..= x` along parents.
    fn path_to(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![x];
        while self.depth[x] != Some(0) {
            x = self.parent[x];
            out.push(x);
        }
        out.reverse();
        out
    }
}

/// Exact distance when it is at most `r`, found by joining directed walks
/// from both ends across one edge of `g`. Correct whenever `h` is a weak
/// `r`-guidance system of `g`; any returned path is a genuine walk of `g`.
pub fn query_distance(g: &Graph, h: &PartialOrientation, u: usize, v: usize, r: usize) -> Result<QueryAnswer> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if h.n() != g.n() {
        return Err(Error::InvalidParameter("orientation and graph sizes differ".into()));
    }
    if u == v {
        return Ok(QueryAnswer::found(vec![u], false));
    }
    if r == 0 {
        return Ok(QueryAnswer::greater(0, false));
    }
    if g.has_edge(u, v) {
        return Ok(QueryAnswer::found(vec![u, v], false));
    }
    let lu = Layers::build(h, u, r - 1);
    let lv = Layers::build(h, v, r - 1);
    for l in 2..=r {
        for a in 0..l {
            let b = l - 1 - a;
            let Some(layer) = lu.layers.get(a) else { break };
            if b >= lv.layers.len() {
                continue;
            }
            for &x in layer {
                for &y in g.neighbors(x) {
                    if lv.depth[y] == Some(b) {
                        let mut path = lu.path_to(x);
                        let mut tail = lv.path_to(y);
                        tail.reverse();
                        path.extend(tail);
                        return Ok(QueryAnswer::found(path, false));
                    }
                }
            }
        }
    }
    Ok(QueryAnswer::greater(r, false))
}

/// Pair of walks from a random `(p, r)`-exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exploration {
    pub pu: Vec<usize>,
    pub pv: Vec<usize>,
}

impl Exploration {
    /// `P_u ∪ P_v` as a `u ..= v` path when the walks meet and no vertex
    /// repeats.
    pub fn as_path(&self) -> Option<Vec<usize>> {
        if self.pu.last() != self.pv.last() {
            return None;
        }
        let mut path = self.pu.clone();
        path.extend(self.pv.iter().rev().skip(1));
        let mut seen = path.clone();
        seen.sort_unstable();
        seen.dedup();
        (seen.len() == path.len()).then_some(path)
    }
}

/// The recursive exploration, unrolled: each step extends one of the two
/// walks by a `p`-random neighbour of its current end.
pub fn random_exploration(
    g: &Graph,
    p: &FractionalOrientation,
    u: usize,
    v: usize,
    r: usize,
    rng: &mut Rng,
) -> Result<Exploration> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::Precondition("exploration needs distinct endpoints".into()));
    }
    let mut pu = vec![u];
    let mut pv = vec![v];
    let mut left = r;
    loop {
        let (a, b) = (*pu.last().unwrap(), *pv.last().unwrap());
        if g.has_edge(a, b) {
            pu.push(b);
            break;
        }
        if left <= 1 || g.degree(a) == 0 || g.degree(b) == 0 {
            break;
        }
        if rng.random_bool(0.5) {
            pu.push(p_random_neighbor(g, p, a, rng)?);
        } else {
            pv.push(p_random_neighbor(g, p, b, rng)?);
        }
        left -= 1;
    }
    Ok(Exploration { pu, pv })
}

/// `⌈k (4c)^{r-1}⌉` explorations, at least one.
pub fn exploration_trials(c: f64, r: usize, k: f64) -> u64 {
    let t = (k * (4.0 * c).powi(r.saturating_sub(1) as i32)).ceil();
    if t.is_finite() {
        (t as u64).max(1)
    } else {
        u64::MAX
    }
}

/// Shortest path produced by repeated explorations. A found path is always
/// genuine; "greater than r" is wrong with probability at most `e^{-k}`
/// when `p` is a fractional `r`-guidance system.
pub fn query_probabilistic(
    g: &Graph,
    p: &FractionalOrientation,
    u: usize,
    v: usize,
    r: usize,
    k: f64,
    rng: &mut Rng,
) -> Result<QueryAnswer> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Ok(QueryAnswer::found(vec![u], false));
    }
    if r == 0 {
        return Ok(QueryAnswer::greater(0, false));
    }
    if g.has_edge(u, v) {
        return Ok(QueryAnswer::found(vec![u, v], false));
    }
    if g.degree(u) == 0 || g.degree(v) == 0 {
        return Ok(QueryAnswer::greater(r, false));
    }
    let trials = exploration_trials(p.max_outdegree(), r, k);
    let mut best: Option<Vec<usize>> = None;
    for _ in 0..trials {
        let path = random_exploration(g, p, u, v, r, rng)?.as_path();
        if let Some(path) = path {
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
                if best.as_ref().unwrap().len() == 3 {
                    break;
                }
            }
        }
    }
    Ok(match best {
        Some(path) => QueryAnswer::found(path, true),
        None => QueryAnswer::greater(r, true),
    })
}

/// BFS distance truncated at `r`, for cross-checking answers.
pub fn bfs_distance(g: &Graph, u: usize, v: usize, r: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            return Some(dist[x]);
        }
        if dist[x] == r {
            continue;
        }
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    None
}
