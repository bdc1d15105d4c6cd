use crate::graph::Graph;
use crate::{Error, Result};

/// Graph with a label in `1..=6` per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub label: Vec<u8>,
}

/// `|V(H_{d,a})|` from `|H_0| = 2`, `|H_d| = a(|H_{d-1}| + 2) + 2`.
pub fn halfgraph_size(d: usize, a: usize) -> usize {
    (0..d).fold(2, |s, _| a * (s + 2) + 2)
}

/// `H_{d,a}`, built as: `H_0 = K_2` labeled 1, 2. From `H_{d-1}` add `v3`
/// (label 3) joined to every label-2 vertex and `v4` (label 4) joined to
/// every label-1 vertex; take `a` disjoint copies; add `v5` joined to every
/// label-3 vertex and `v6` to every label-4 vertex; relabel 3, 5 to 1 and 4,
/// 6 to 2.
///
/// Vertex order: the copies in turn (each copy's `H_{d-1}` vertices, then
/// its `v3`, `v4`), then `v5`, `v6`.
pub fn halfgraph_hard_instance(d: usize, a: usize) -> Result<LabeledGraph> {
    if d > 0 && a < 2.max(2 * d - 1) {
        return Err(Error::InvalidParameter(format!("need a >= max(2, 2d - 1), got d = {d}, a = {a}")));
    }
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    let mut label: Vec<u8> = vec![1, 2];
    for _ in 0..d {
        let base = label.len();
        let mut new_edges = Vec::new();
        let mut new_label = Vec::new();
        for copy in 0..a {
            let off = copy * (base + 2);
            new_edges.extend(edges.iter().map(|&(u, v)| (u + off, v + off)));
            new_label.extend_from_slice(&label);
            let (v3, v4) = (off + base, off + base + 1);
            for (i, &l) in label.iter().enumerate() {
                match l {
                    2 => new_edges.push((i + off, v3)),
                    1 => new_edges.push((i + off, v4)),
                    _ => unreachable!("labels are 1 or 2 between rounds"),
                }
            }
            new_label.extend_from_slice(&[3, 4]);
        }
        let (v5, v6) = (new_label.len(), new_label.len() + 1);
        for (i, &l) in new_label.iter().enumerate() {
            match l {
                3 => new_edges.push((i, v5)),
                4 => new_edges.push((i, v6)),
                _ => {}
            }
        }
        new_label.extend_from_slice(&[5, 6]);
        for l in &mut new_label {
            *l = match *l {
                3 | 5 => 1,
                4 | 6 => 2,
                x => x,
            };
        }
        edges = new_edges;
        label = new_label;
    }
    Ok(LabeledGraph { graph: Graph::from_edges(label.len(), edges)?, label })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(halfgraph_hard_instance(0, 2).unwrap().graph.n(), 2);
        let h = halfgraph_hard_instance(1, 2).unwrap();
        assert_eq!(h.graph.n(), 10);
        assert_eq!(halfgraph_size(1, 2), 10);
        let h24 = halfgraph_hard_instance(2, 4).unwrap();
        assert_eq!(h24.graph.n(), halfgraph_size(2, 4));
        assert!(h24.graph.n() <= 8 * 16 - 6);
        let ones = h24.label.iter().filter(|&&l| l == 1).count();
        assert_eq!(2 * ones, h24.graph.n());
        assert!(halfgraph_hard_instance(3, 4).is_err());
    }
}
