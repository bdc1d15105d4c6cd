use std::collections::{BTreeMap, BTreeSet};

use crate::graph::distance::gate_unchecked;
use crate::graph::{DistanceIndex, Graph, PartialOrientation, Radius};
use crate::verify::verify_weak;
use crate::{Error, Result};

/// A partition `(A, B)` of the vertex set; both sides sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutPartition {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl CutPartition {
    /// `A = a`, `B` = the remaining vertices.
    pub fn new(g: &Graph, a: &[usize]) -> Result<Self> {
        let mut side = vec![false; g.n()];
        for &v in a {
            g.check_vertex(v)?;
            if side[v] {
                return Err(Error::InvalidParameter(format!("vertex {v} listed twice in A")));
            }
            side[v] = true;
        }
        let (a, b): (Vec<usize>, Vec<usize>) = g.vertices().partition(|&v| side[v]);
        Ok(CutPartition { a, b })
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }
}

/// Classes of `≡_(A,B)`: vertices of `A` with the same neighbors in `B`, and
/// vertices of `B` with the same neighbors in `A`. Sorted by first member.
pub fn equivalence_classes(g: &Graph, cut: &CutPartition) -> Vec<Vec<usize>> {
    let mut in_a = vec![false; g.n()];
    for &v in &cut.a {
        in_a[v] = true;
    }
    let mut groups: BTreeMap<(bool, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for v in g.vertices() {
        let across: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| in_a[w] != in_a[v]).collect();
        groups.entry((in_a[v], across)).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    classes.sort();
    classes
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutComposition {
    pub h: PartialOrientation,
    pub classes: usize,
    /// `max(out hA, out hB) + classes`.
    pub bound: usize,
}

/// Checks that `h` (global ids) only uses arcs inside `part` and is a weak
/// r-guidance system of `G[part]`.
fn check_side(g: &Graph, part: &[usize], h: &PartialOrientation, r: usize, name: &str) -> Result<()> {
    let mut inside = vec![false; g.n()];
    for &v in part {
        inside[v] = true;
    }
    if let Some((u, v)) = h.arcs().find(|&(u, v)| !inside[u] || !inside[v]) {
        return Err(Error::Precondition(format!("{name} has arc ({u}, {v}) leaving its side")));
    }
    let (sub, map) = g.induced_subgraph(part);
    let idx = DistanceIndex::build(&sub, Radius::Bounded(r));
    let report = verify_weak(&sub, &idx, &h.restrict(&map), r)?;
    match report.dissatisfied.first() {
        None => Ok(()),
        Some(&(u, v, d)) => Err(Error::Precondition(format!(
            "{name} is not a weak {r}-guidance system of its side: ({}, {}) at distance {d}",
            map[u], map[v]
        ))),
    }
}

/// Combines weak r-guidance systems of `G[A]` and `G[B]` (given in global
/// ids) into one of `G`: every vertex `u` additionally points, for each class
/// `C` within distance `r`, to the smallest gate vertex toward the nearest
/// (then smallest) member of `C`.
pub fn cut_compose(
    g: &Graph,
    idx: &DistanceIndex,
    cut: &CutPartition,
    ha: &PartialOrientation,
    hb: &PartialOrientation,
    r: usize,
) -> Result<CutComposition> {
    idx.require(r)?;
    check_side(g, &cut.a, ha, r, "hA")?;
    check_side(g, &cut.b, hb, r, "hB")?;
    let classes = equivalence_classes(g, cut);
    let mut class_of = vec![0; g.n()];
    for (i, class) in classes.iter().enumerate() {
        for &v in class {
            class_of[v] = i;
        }
    }
    let mut h = ha.clone();
    h.union_with(hb);
    for u in g.vertices() {
        // nearest member per class: within() is sorted by vertex, so the
        // first minimum is the smallest index
        let mut nearest: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for (v, d) in idx.within(u) {
            if d > r {
                continue;
            }
            let e = nearest.entry(class_of[v]).or_insert((d, v));
            if d < e.0 {
                *e = (d, v);
            }
        }
        for &(d, target) in nearest.values() {
            if d >= 1 {
                let gate = gate_unchecked(g, idx, u, target, d);
                h.insert(u, gate[0]);
            }
        }
    }
    let bound = ha.max_out().max(hb.max_out()) + classes.len();
    Ok(CutComposition { h, classes: classes.len(), bound })
}

/// A binary hierarchy of vertex sets: leaves hold vertex lists, internal
/// nodes split into two children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HierarchyNode {
    Leaf(Vec<usize>),
    Split(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionHierarchy {
    pub nodes: BTreeMap<usize, HierarchyNode>,
    pub root: usize,
}

impl PartitionHierarchy {
    /// Vertex set below `id`, sorted.
    pub fn vertices(&self, id: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        let mut steps = 0;
        while let Some(x) = stack.pop() {
            steps += 1;
            if steps > self.nodes.len() {
                return Err(Error::InvalidParameter("partition hierarchy contains a cycle".into()));
            }
            match self.nodes.get(&x) {
                Some(HierarchyNode::Leaf(vs)) => out.extend_from_slice(vs),
                Some(HierarchyNode::Split(l, r)) => stack.extend([*r, *l]),
                None => return Err(Error::InvalidParameter(format!("hierarchy node {x} is undefined"))),
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Checks that the leaves below the root partition `0..n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let all = self.vertices(self.root)?;
        if all != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter(format!(
                "hierarchy leaves must partition the {n} vertices exactly once"
            )));
        }
        let mut used = BTreeSet::new();
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            if !used.insert(x) {
                return Err(Error::InvalidParameter(format!("hierarchy node {x} used twice")));
            }
            if let Some(HierarchyNode::Split(l, r)) = self.nodes.get(&x) {
                stack.extend([*l, *r]);
            }
        }
        Ok(())
    }
}

/// Applies [`cut_compose`] bottom-up along a partition hierarchy. Leaf sets
/// start from all edges directed both ways.
pub fn compose_hierarchy(g: &Graph, hierarchy: &PartitionHierarchy, r: usize) -> Result<PartialOrientation> {
    hierarchy.validate(g.n())?;
    build_node(g, hierarchy, hierarchy.root, r)
}

fn build_node(g: &Graph, hierarchy: &PartitionHierarchy, id: usize, r: usize) -> Result<PartialOrientation> {
    match &hierarchy.nodes[&id] {
        HierarchyNode::Leaf(vs) => {
            let (sub, map) = g.induced_subgraph(vs);
            let mut h = PartialOrientation::empty(g.n());
            for (u, v) in PartialOrientation::both_ways(&sub).arcs() {
                h.insert(map[u], map[v]);
            }
            Ok(h)
        }
        &HierarchyNode::Split(left, right) => {
            let ha = build_node(g, hierarchy, left, r)?;
            let hb = build_node(g, hierarchy, right, r)?;
            let a = hierarchy.vertices(left)?;
            let mut all = a.clone();
            all.extend(hierarchy.vertices(right)?);
            let (sub, map) = g.induced_subgraph(&all);
            let mut local = vec![usize::MAX; g.n()];
            for (i, &v) in map.iter().enumerate() {
                local[v] = i;
            }
            let to_local = |h: &PartialOrientation| {
                let mut out = PartialOrientation::empty(sub.n());
                for (u, v) in h.arcs() {
                    out.insert(local[u], local[v]);
                }
                out
            };
            let cut = CutPartition::new(&sub, &a.iter().map(|&v| local[v]).collect::<Vec<_>>())?;
            let idx = DistanceIndex::build(&sub, Radius::Bounded(r));
            let composed = cut_compose(&sub, &idx, &cut, &to_local(&ha), &to_local(&hb), r)?;
            let mut h = PartialOrientation::empty(g.n());
            for (u, v) in composed.h.arcs() {
                h.insert(map[u], map[v]);
            }
            Ok(h)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn k23() -> Graph {
        Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn classes() {
        let g = k23();
        assert_eq!(equivalence_classes(&g, &CutPartition::new(&g, &[0, 1]).unwrap()).len(), 2);
        let e = Graph::empty(4);
        assert_eq!(equivalence_classes(&e, &CutPartition::new(&e, &[0, 2]).unwrap()), vec![vec![0, 2], vec![1, 3]]);
        let p = path(4);
        assert_eq!(equivalence_classes(&p, &CutPartition::new(&p, &[0, 1]).unwrap()).len(), 4);
    }

    #[test]
    fn compose_k23() {
        let g = k23();
        let idx = DistanceIndex::build(&g, Radius::Bounded(2));
        let cut = CutPartition::new(&g, &[0, 1]).unwrap();
        let none = PartialOrientation::empty(5);
        let out = cut_compose(&g, &idx, &cut, &none, &none, 2).unwrap();
        assert!(verify_weak(&g, &idx, &out.h, 2).unwrap().valid);
        assert!(out.h.max_out() <= 2);
        assert!(out.h.max_out() <= out.bound);
    }

    #[test]
    fn compose_path_and_empty_side() {
        let g = path(4);
        let idx = DistanceIndex::build(&g, Radius::Bounded(3));
        let cut = CutPartition::new(&g, &[0, 1]).unwrap();
        let none = PartialOrientation::empty(4);
        let out = cut_compose(&g, &idx, &cut, &none, &none, 3).unwrap();
        assert!(verify_weak(&g, &idx, &out.h, 3).unwrap().valid);

        let all = CutPartition::new(&g, &[0, 1, 2, 3]).unwrap();
        let ha = PartialOrientation::from_arcs(&g, [(0, 1), (3, 2)]).unwrap();
        let out = cut_compose(&g, &idx, &all, &ha, &none, 3).unwrap();
        assert!(verify_weak(&g, &idx, &out.h, 3).unwrap().valid);
        // a wrong side system is rejected
        let bad = PartialOrientation::from_arcs(&g, [(1, 2)]).unwrap();
        assert!(cut_compose(&g, &idx, &cut, &bad, &none, 3).is_err());
    }

    #[test]
    fn hierarchy_driver() {
        let g = Graph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8))).unwrap();
        let nodes = BTreeMap::from([
            (0, HierarchyNode::Leaf(vec![0, 1])),
            (1, HierarchyNode::Leaf(vec![2, 3])),
            (2, HierarchyNode::Leaf(vec![4, 5, 6, 7])),
            (3, HierarchyNode::Split(0, 1)),
            (4, HierarchyNode::Split(3, 2)),
        ]);
        let hier = PartitionHierarchy { nodes, root: 4 };
        let h = compose_hierarchy(&g, &hier, 3).unwrap();
        let idx = DistanceIndex::build(&g, Radius::Bounded(3));
        assert!(verify_weak(&g, &idx, &h, 3).unwrap().valid);
        let broken = PartitionHierarchy { nodes: hier.nodes.clone(), root: 3 };
        assert!(compose_hierarchy(&g, &broken, 3).is_err());
    }
}
