use std::collections::VecDeque;

use super::Graph;
use crate::{Error, Result};

/// Spanning directed subgraph of an orientation of a [`Graph`].
///
/// Both `(u, v)` and `(v, u)` may be present; an edge may also be left
/// unoriented.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialOrientation {
    out: Vec<Vec<usize>>,
}

impl PartialOrientation {
    pub fn empty(n: usize) -> Self {
        PartialOrientation { out: vec![Vec::new(); n] }
    }

    /// Builds an orientation from arcs, checking that each arc is an edge of
    /// `g`. Repeated arcs are merged.
    pub fn from_arcs<I>(g: &Graph, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut h = Self::empty(g.n());
        for (u, v) in arcs {
            h.add_arc(g, u, v)?;
        }
        Ok(h)
    }

    /// Every edge directed both ways. Always a weak guidance system for every
    /// radius, with outdegree equal to the maximum degree.
    pub fn both_ways(g: &Graph) -> Self {
        PartialOrientation { out: g.vertices().map(|u| g.neighbors(u).to_vec()).collect() }
    }

    pub fn add_arc(&mut self, g: &Graph, u: usize, v: usize) -> Result<bool> {
        if !g.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        if self.out.len() != g.n() {
            return Err(Error::InvalidParameter("orientation and graph sizes differ".into()));
        }
        Ok(self.insert(u, v))
    }

    /// Inserts without consulting the graph; the caller guarantees `uv` is an
    /// edge.
    pub(crate) fn insert(&mut self, u: usize, v: usize) -> bool {
        match self.out[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.out[u].insert(pos, v);
                true
            }
        }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn outdegree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn max_out(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    pub fn union_with(&mut self, other: &PartialOrientation) {
        for (u, v) in other.arcs() {
            self.insert(u, v);
        }
    }

    /// True when every edge of `g` carries at least one direction.
    pub fn is_full_orientation_of(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| self.has_arc(u, v) || self.has_arc(v, u))
    }

    /// Restriction to the arcs with both ends in `vertices`, renumbered into
    /// local ids given by `map` (local id -> original id, sorted).
    pub fn restrict(&self, map: &[usize]) -> PartialOrientation {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let mut h = Self::empty(map.len());
        for (i, &u) in map.iter().enumerate() {
            for &v in &self.out[u] {
                if local[v] != usize::MAX {
                    h.out[i].push(local[v]);
                }
            }
            h.out[i].sort_unstable();
        }
        h
    }

    /// Directed BFS depth (number of arcs) from `u` to every vertex reachable
    /// within `limit` arcs.
    pub fn directed_depths(&self, u: usize, limit: usize) -> Vec<Option<usize>> {
        let mut depth = vec![None; self.n()];
        depth[u] = Some(0);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let dx = depth[x].unwrap();
            if dx == limit {
                continue;
            }
            for &y in &self.out[x] {
                if depth[y].is_none() {
                    depth[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        depth
    }
}

/// `B_H(u, a)`: vertices reachable from `u` by a directed path of length at
/// most `a`, sorted. Always contains `u`.
pub fn reach_set(h: &PartialOrientation, u: usize, a: usize) -> Vec<usize> {
    let mut seen = vec![false; h.n()];
    seen[u] = true;
    let mut frontier = vec![u];
    let mut all = vec![u];
    for _ in 0..a {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in h.out_neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend_from_slice(&next);
        frontier = next;
    }
    all.sort_unstable();
    all
}

/// Non-negative weight per ordered adjacent pair; absent pairs weigh 0.
///
/// Stored sparsely: per vertex, its positive-weight out-pairs sorted by
/// neighbor.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FractionalOrientation {
    out: Vec<Vec<(usize, f64)>>,
}

impl FractionalOrientation {
    pub fn zeros(n: usize) -> Self {
        FractionalOrientation { out: vec![Vec::new(); n] }
    }

    pub fn from_weights<I>(g: &Graph, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut p = Self::zeros(g.n());
        for (u, v, w) in weights {
            p.set(g, u, v, w)?;
        }
        Ok(p)
    }

    /// Sets `p(u, v)`. A weight of zero removes the entry.
    pub fn set(&mut self, g: &Graph, u: usize, v: usize, w: f64) -> Result<()> {
        if !g.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        if !(w >= 0.0) || !w.is_finite() {
            return Err(Error::InvalidParameter(format!("weight p({u},{v}) = {w} must be finite and non-negative")));
        }
        self.set_unchecked(u, v, w);
        Ok(())
    }

    pub(crate) fn set_unchecked(&mut self, u: usize, v: usize, w: f64) {
        let list = &mut self.out[u];
        match list.binary_search_by_key(&v, |&(x, _)| x) {
            Ok(i) if w == 0.0 => {
                list.remove(i);
            }
            Ok(i) => list[i].1 = w,
            Err(_) if w == 0.0 => {}
            Err(i) => list.insert(i, (v, w)),
        }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn weight(&self, u: usize, v: usize) -> f64 {
        match self.out[u].binary_search_by_key(&v, |&(x, _)| x) {
            Ok(i) => self.out[u][i].1,
            Err(_) => 0.0,
        }
    }

    /// Positive-weight out-pairs of `u`, sorted by neighbor.
    pub fn out_weights(&self, u: usize) -> &[(usize, f64)] {
        &self.out[u]
    }

    /// `d⁺_p(u)`.
    pub fn outdegree(&self, u: usize) -> f64 {
        self.out[u].iter().map(|&(_, w)| w).sum()
    }

    /// Entries `(u, v, p(u, v))` with positive weight, lexicographic.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&(v, w)| (u, v, w)))
    }
}

/// Maximum (fractional) outdegree.
pub trait MaxOutdegree {
    fn max_outdegree(&self) -> f64;
}

impl MaxOutdegree for PartialOrientation {
    fn max_outdegree(&self) -> f64 {
        self.max_out() as f64
    }
}

impl MaxOutdegree for FractionalOrientation {
    fn max_outdegree(&self) -> f64 {
        (0..self.n()).map(|u| self.outdegree(u)).fold(0.0, f64::max)
    }
}

impl From<&PartialOrientation> for FractionalOrientation {
    fn from(h: &PartialOrientation) -> Self {
        FractionalOrientation {
            out: h.out.iter().map(|l| l.iter().map(|&v| (v, 1.0)).collect()).collect(),
        }
    }
}
