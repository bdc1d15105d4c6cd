use crate::graph::Graph;
use crate::{Error, Result};

/// Split graph of the projective plane of prime order `n`: points form a
/// clique, lines an independent set, and each line is joined to its points.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitGraph {
    pub order: usize,
    pub graph: Graph,
    /// Point vertices `0..n²+n+1`.
    pub a: Vec<usize>,
    /// Line vertices, following the points.
    pub b: Vec<usize>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Nonzero vectors of `F_n^3` whose first nonzero coordinate is 1, in
/// lexicographic order: one per projective point.
fn projective_points(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(n * n + n + 1);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = [x, y, z];
                if v.iter().find(|&&c| c != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

pub fn projective_split_graph(n: usize) -> Result<SplitGraph> {
    if !is_prime(n) {
        return Err(Error::InvalidParameter(format!("projective plane order {n} must be prime")));
    }
    let pts = projective_points(n);
    let q = pts.len();
    debug_assert_eq!(q, n * n + n + 1);
    let mut edges = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            edges.push((i, j));
        }
    }
    let mut lines: Vec<Vec<usize>> = vec![Vec::new(); q];
    for (li, l) in pts.iter().enumerate() {
        for (pi, p) in pts.iter().enumerate() {
            if (0..3).map(|c| l[c] * p[c]).sum::<usize>() % n == 0 {
                lines[li].push(pi);
                edges.push((pi, q + li));
            }
        }
    }
    for (i, l1) in lines.iter().enumerate() {
        if l1.len() != n + 1 {
            return Err(Error::Invariant(format!("line {i} has {} points", l1.len())));
        }
        for l2 in &lines[i + 1..] {
            let common = l1.iter().filter(|p| l2.binary_search(p).is_ok()).count();
            if common != 1 {
                return Err(Error::Invariant(format!("two lines share {common} points")));
            }
        }
    }
    Ok(SplitGraph { order: n, graph: Graph::from_edges(2 * q, edges)?, a: (0..q).collect(), b: (q..2 * q).collect() })
}
