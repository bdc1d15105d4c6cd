use crate::graph::{Graph, PartialOrientation};
use crate::{Error, Result};

/// An open interval `(left, right)`.
pub type Interval = (f64, f64);

/// Intersection graph of open intervals.
pub fn interval_graph(intervals: &[Interval]) -> Result<Graph> {
    for (i, &(l, r)) in intervals.iter().enumerate() {
        if !(l.is_finite() && r.is_finite() && l < r) {
            return Err(Error::InvalidParameter(format!("interval {i} = ({l}, {r}) is degenerate")));
        }
    }
    let n = intervals.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let ((l1, r1), (l2, r2)) = (intervals[a], intervals[b]);
            if l1 < r2 && l2 < r1 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Weak ∞-guidance system of an interval graph: each vertex points to the
/// neighbor reaching furthest right and to the one reaching furthest left
/// (smallest index on ties). Outdegree at most 2.
pub fn interval_guidance(intervals: &[Interval]) -> Result<(Graph, PartialOrientation)> {
    let g = interval_graph(intervals)?;
    let mut h = PartialOrientation::empty(g.n());
    for u in g.vertices() {
        let nbrs = g.neighbors(u);
        // neighbor lists are sorted, so strict comparisons keep the smallest index
        let right = nbrs.iter().copied().reduce(|a, b| if intervals[b].1 > intervals[a].1 { b } else { a });
        let left = nbrs.iter().copied().reduce(|a, b| if intervals[b].0 < intervals[a].0 { b } else { a });
        for v in right.into_iter().chain(left) {
            h.insert(u, v);
        }
    }
    Ok((g, h))
}
