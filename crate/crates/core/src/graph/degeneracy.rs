use std::collections::BTreeSet;

use super::Graph;

/// Min-degree elimination order. Every vertex has at most `degeneracy`
/// neighbors later in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrder {
    pub order: Vec<usize>,
    pub degeneracy: usize,
    /// `position[v]` is the index of `v` in `order`.
    pub position: Vec<usize>,
}

impl DegeneracyOrder {
    /// Neighbors of `v` that come later in the order.
    pub fn later_neighbors<'a>(&'a self, g: &'a Graph, v: usize) -> impl Iterator<Item = usize> + 'a {
        let pv = self.position[v];
        g.neighbors(v).iter().copied().filter(move |&w| self.position[w] > pv)
    }
}

/// Repeatedly removes a vertex of minimum remaining degree (smallest index on
/// ties). The largest degree seen at removal is the degeneracy.
pub fn degeneracy(g: &Graph) -> DegeneracyOrder {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = g.vertices().map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut t = 0;
    while let Some((d, v)) = queue.pop_first() {
        t = t.max(d);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    DegeneracyOrder { order, degeneracy: t, position }
}
