use crate::graph::{distance_power, DistanceIndex, Graph, Radius};
use crate::{Error, Result};

/// `T²` for the star `K_{1,n}` with every edge subdivided twice.
#[derive(Clone, Debug, PartialEq)]
pub struct StarPower {
    pub graph: Graph,
    /// The `n` leaves of `T`.
    pub x: Vec<usize>,
    /// The `n` neighbors of the center; a clique in `T²`.
    pub y: Vec<usize>,
}

/// Center `0`; branch `i` is `0 – 1+3i – 2+3i – 3+3i`.
pub fn subdivided_star_power(n: usize) -> Result<StarPower> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    let edges = (0..n).flat_map(|i| {
        let y = 1 + 3 * i;
        [(0, y), (y, y + 1), (y + 1, y + 2)]
    });
    let t = Graph::from_edges(1 + 3 * n, edges.collect::<Vec<_>>())?;
    Ok(StarPower {
        graph: distance_power(&t, 2),
        x: (0..n).map(|i| 3 + 3 * i).collect(),
        y: (0..n).map(|i| 1 + 3 * i).collect(),
    })
}

/// Every two vertices of `X` are at distance 3 and joined by exactly one
/// path of length 3, which uses exactly one edge inside `Y`.
pub fn check_star_power(sp: &StarPower) -> Result<()> {
    let g = &sp.graph;
    let idx = DistanceIndex::build(g, Radius::Bounded(3));
    let mut in_y = vec![false; g.n()];
    for &v in &sp.y {
        in_y[v] = true;
    }
    for (i, &a) in sp.x.iter().enumerate() {
        for &b in &sp.x[i + 1..] {
            if idx.dist(a, b) != Some(3) {
                return Err(Error::Invariant(format!("X-vertices {a}, {b} not at distance 3")));
            }
            let mut paths = Vec::new();
            for &p in g.neighbors(a) {
                for &q in g.neighbors(p) {
                    if q != a && q != b && g.has_edge(q, b) && p != b {
                        paths.push([a, p, q, b]);
                    }
                }
            }
            if paths.len() != 1 {
                return Err(Error::Invariant(format!("{} paths of length 3 between {a} and {b}", paths.len())));
            }
            let y_edges = paths[0].windows(2).filter(|e| in_y[e[0]] && in_y[e[1]]).count();
            if y_edges != 1 {
                return Err(Error::Invariant(format!("path {:?} uses {y_edges} Y-edges", paths[0])));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let sp = subdivided_star_power(2).unwrap();
        assert_eq!(sp.graph.n(), 7);
        let idx = DistanceIndex::build(&sp.graph, Radius::Unbounded);
        assert_eq!(idx.dist(sp.x[0], sp.x[1]), Some(3));
        let sp5 = subdivided_star_power(5).unwrap();
        for (i, &a) in sp5.y.iter().enumerate() {
            assert!(sp5.y[i + 1..].iter().all(|&b| sp5.graph.has_edge(a, b)));
        }
        check_star_power(&subdivided_star_power(6).unwrap()).unwrap();
        assert!(subdivided_star_power(1).is_err());
    }
}
