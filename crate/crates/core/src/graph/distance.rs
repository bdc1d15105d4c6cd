use std::fmt;

use super::Graph;
use crate::{Error, Result};

const ABSENT: u16 = u16::MAX;
const MAX_TRACKED: usize = (u16::MAX - 1) as usize;

/// How far a [`DistanceIndex`] looks from every source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Radius {
    Bounded(usize),
    Unbounded,
}

impl Radius {
    /// True when every distance up to `r` is recorded.
    pub fn covers(self, r: usize) -> bool {
        match self {
            Radius::Unbounded => true,
            Radius::Bounded(x) => x >= r,
        }
    }

    fn limit(self, n: usize) -> usize {
        match self {
            Radius::Bounded(r) => r.min(MAX_TRACKED),
            Radius::Unbounded => n.saturating_sub(1).min(MAX_TRACKED),
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Bounded(r) => write!(f, "{r}"),
            Radius::Unbounded => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Radius {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "unbounded" => Ok(Radius::Unbounded),
            _ => s
                .parse::<usize>()
                .map(Radius::Bounded)
                .map_err(|_| Error::InvalidParameter(format!("bad radius {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
enum Row {
    /// Distance per vertex, `ABSENT` beyond the radius.
    Dense(Vec<u16>),
    /// `(vertex, distance)` sorted by vertex.
    Sparse(Vec<(u32, u16)>),
}

/// Truncated BFS tables, one per source.
///
/// Rows that reach a large fraction of the graph are stored densely; the
/// rest as sorted `(vertex, distance)` lists.
#[derive(Clone, Debug)]
pub struct DistanceIndex {
    radius: Radius,
    limit: usize,
    rows: Vec<Row>,
}

impl DistanceIndex {
    pub fn build(g: &Graph, radius: Radius) -> Self {
        let n = g.n();
        let limit = radius.limit(n);
        let mut scratch = vec![ABSENT; n];
        let mut touched = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for s in g.vertices() {
            touched.clear();
            scratch[s] = 0;
            touched.push(s);
            let mut head = 0;
            while head < touched.len() {
                let u = touched[head];
                head += 1;
                let du = scratch[u] as usize;
                if du == limit {
                    continue;
                }
                for &w in g.neighbors(u) {
                    if scratch[w] == ABSENT {
                        scratch[w] = (du + 1) as u16;
                        touched.push(w);
                    }
                }
            }
            let row = if 3 * touched.len() > n {
                Row::Dense(scratch.clone())
            } else {
                let mut list: Vec<(u32, u16)> =
                    touched.iter().map(|&v| (v as u32, scratch[v])).collect();
                list.sort_unstable();
                Row::Sparse(list)
            };
            for &v in &touched {
                scratch[v] = ABSENT;
            }
            rows.push(row);
        }
        DistanceIndex { radius, limit, rows }
    }

    pub fn radius(&self) -> Radius {
        self.radius
    }

    /// Largest distance the index records.
    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// True when the index records all distances up to `r`.
    pub fn covers(&self, r: usize) -> bool {
        r <= self.limit
    }

    pub(crate) fn require(&self, r: usize) -> Result<()> {
        if self.covers(r) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "distance index radius {} does not cover r = {r}",
                self.radius
            )))
        }
    }

    /// Distance between `u` and `v`, or `None` beyond the radius.
    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> Option<usize> {
        let d = match &self.rows[u] {
            Row::Dense(row) => row[v],
            Row::Sparse(list) => match list.binary_search_by_key(&(v as u32), |&(x, _)| x) {
                Ok(i) => list[i].1,
                Err(_) => ABSENT,
            },
        };
        (d != ABSENT).then_some(d as usize)
    }

    /// Vertices within the radius of `u` with their distances, sorted by
    /// vertex.
    pub fn within(&self, u: usize) -> Box<dyn Iterator<Item = (usize, usize)> + '_> {
        match &self.rows[u] {
            Row::Dense(row) => Box::new(
                row.iter().enumerate().filter(|&(_, &d)| d != ABSENT).map(|(v, &d)| (v, d as usize)),
            ),
            Row::Sparse(list) => Box::new(list.iter().map(|&(v, d)| (v as usize, d as usize))),
        }
    }

    /// Unordered pairs `(u, v, d)` with `u < v` and `lo <= d <= hi`,
    /// lexicographic by `(u, v)`.
    pub fn pairs(&self, lo: usize, hi: usize) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.within(u).filter(move |&(v, d)| v > u && d >= lo && d <= hi).map(move |(v, d)| (u, v, d))
        })
    }

    /// Writes the distances from `u` into `out` (length `n`), `u16::MAX`
    /// meaning beyond the radius.
    pub(crate) fn fill_row(&self, u: usize, out: &mut Vec<u16>) {
        out.clear();
        match &self.rows[u] {
            Row::Dense(row) => out.extend_from_slice(row),
            Row::Sparse(list) => {
                out.resize(self.n(), ABSENT);
                for &(v, d) in list {
                    out[v as usize] = d;
                }
            }
        }
    }
}

/// Gate set: neighbors of `u` lying on a shortest path from `u` to `v`,
/// i.e. `{w ∈ N(u) : d(w, v) = d(u, v) - 1}`.
pub fn gate_set(g: &Graph, idx: &DistanceIndex, u: usize, v: usize) -> Result<Vec<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let l = idx.dist(u, v).ok_or(Error::DistanceUnknown { u, v })?;
    if l == 0 {
        return Err(Error::Precondition(format!("gate({u},{v}) needs distinct vertices")));
    }
    Ok(gate_unchecked(g, idx, u, v, l))
}

#[inline]
pub(crate) fn gate_unchecked(g: &Graph, idx: &DistanceIndex, u: usize, v: usize, l: usize) -> Vec<usize> {
    g.neighbors(u).iter().copied().filter(|&w| idx.dist(w, v) == Some(l - 1)).collect()
}

/// `R_r(u, z)`: vertices at distance `2..=r` from `u` that have `z` in their
/// gate set from `u`. Sorted.
pub fn shortest_path_region(
    g: &Graph,
    idx: &DistanceIndex,
    u: usize,
    z: usize,
    r: usize,
) -> Result<Vec<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(z)?;
    if !g.has_edge(u, z) {
        return Err(Error::NotAnEdge { u, v: z });
    }
    idx.require(r)?;
    Ok(idx
        .within(u)
        .filter(|&(v, d)| d >= 2 && d <= r && idx.dist(z, v) == Some(d - 1))
        .map(|(v, _)| v)
        .collect())
}

/// `G^k`: same vertices, `u ~ v` iff `1 <= d_G(u, v) <= k`.
pub fn distance_power(g: &Graph, k: usize) -> Graph {
    let idx = DistanceIndex::build(g, Radius::Bounded(k));
    let edges: Vec<_> = idx.pairs(1, k).map(|(u, v, _)| (u, v)).collect();
    Graph::from_edges(g.n(), edges).expect("pairs are distinct and loop-free")
}
