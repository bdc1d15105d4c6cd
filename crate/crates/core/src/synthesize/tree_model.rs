use std::collections::{BTreeSet, HashMap};

use crate::graph::{Graph, PartialOrientation};
use crate::{Error, Result};

/// Default cap on the number of leaf subsets enumerated by
/// [`tree_model_guidance`].
pub const DEFAULT_TYPE_BUDGET: u64 = 5_000_000;

/// An `(m, d)`-tree model: a rooted tree whose leaves are the graph's
/// vertices, all at depth `d`, a label in `1..=m` per leaf, and a symmetric
/// relation `S(i)` on labels per level `i` in `1..=d`. Leaves `u`, `v` whose
/// nearest common ancestor is `i` levels up are adjacent iff
/// `(label u, label v) ∈ S(i)`.
///
/// Tree nodes `0..leaves` are the leaves; internal nodes have larger ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeModel {
    m: usize,
    d: usize,
    leaves: usize,
    parent: Vec<Option<usize>>,
    label: Vec<usize>,
    /// `signature[i - 1]`, pairs stored with `l1 <= l2`.
    signature: Vec<BTreeSet<(usize, usize)>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl TreeModel {
    /// Validates the tree shape, labels and signature. Signature pairs may be
    /// given in either order.
    pub fn new(
        m: usize,
        d: usize,
        leaves: usize,
        parent: Vec<Option<usize>>,
        label: Vec<usize>,
        signature: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameter(format!("tree model: {msg}")));
        if m == 0 || d == 0 || leaves == 0 {
            return bad("m, d and the leaf count must be positive".into());
        }
        let nodes = parent.len();
        if nodes < leaves + 1 {
            return bad(format!("{nodes} nodes cannot hold {leaves} leaves and a root"));
        }
        if label.len() != leaves {
            return bad(format!("{} labels for {leaves} leaves", label.len()));
        }
        if let Some(&l) = label.iter().find(|&&l| l == 0 || l > m) {
            return bad(format!("label {l} outside 1..={m}"));
        }
        if signature.len() != d {
            return bad(format!("signature has {} levels, expected {d}", signature.len()));
        }
        let mut sig = Vec::with_capacity(d);
        for level in &signature {
            let mut set = BTreeSet::new();
            for &(a, b) in level {
                if a == 0 || a > m || b == 0 || b > m {
                    return bad(format!("signature pair ({a}, {b}) outside 1..={m}"));
                }
                set.insert((a.min(b), a.max(b)));
            }
            sig.push(set);
        }
        let mut children = vec![Vec::new(); nodes];
        let mut roots = Vec::new();
        for (x, p) in parent.iter().enumerate() {
            match *p {
                None => roots.push(x),
                Some(p) if p >= nodes || p == x => return bad(format!("node {x} has invalid parent {p}")),
                Some(p) if p < leaves => return bad(format!("leaf {p} cannot be a parent")),
                Some(p) => children[p].push(x),
            }
        }
        if roots.len() != 1 {
            return bad(format!("expected one root, found {}", roots.len()));
        }
        let root = roots[0];
        // every node reachable from the root
        let mut depth = vec![usize::MAX; nodes];
        depth[root] = 0;
        let mut stack = vec![root];
        let mut seen = 1;
        while let Some(x) = stack.pop() {
            for &c in &children[x] {
                depth[c] = depth[x] + 1;
                seen += 1;
                stack.push(c);
            }
        }
        if seen != nodes {
            return bad("tree is not connected".into());
        }
        for x in 0..nodes {
            if x < leaves && depth[x] != d {
                return bad(format!("leaf {x} at depth {}, expected {d}", depth[x]));
            }
            if x >= leaves && children[x].is_empty() {
                return bad(format!("internal node {x} has no children"));
            }
        }
        Ok(TreeModel { m, d, leaves, parent, label, signature: sig, children, root })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    pub fn label(&self, leaf: usize) -> usize {
        self.label[leaf]
    }

    /// `S(i)` for `i` in `1..=d`, pairs with `l1 <= l2`.
    pub fn signature(&self, i: usize) -> &BTreeSet<(usize, usize)> {
        &self.signature[i - 1]
    }

    /// Half the tree distance between two leaves.
    pub fn half_distance(&self, a: usize, b: usize) -> usize {
        let (mut x, mut y, mut i) = (a, b, 0);
        while x != y {
            x = self.parent[x].expect("leaves share the root");
            y = self.parent[y].expect("leaves share the root");
            i += 1;
        }
        i
    }

    /// Proper ancestors of `x`, nearest first.
    pub fn ancestors(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.parent[x];
        while let Some(p) = cur {
            out.push(p);
            cur = self.parent[p];
        }
        out
    }

    /// Leaves below `x`, sorted.
    pub fn leaves_below(&self, x: usize) -> Vec<usize> {
        if x < self.leaves {
            return vec![x];
        }
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            if y < self.leaves {
                out.push(y);
            } else {
                stack.extend_from_slice(&self.children[y]);
            }
        }
        out.sort_unstable();
        out
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        let (la, lb) = (self.label[a], self.label[b]);
        self.signature[self.half_distance(a, b) - 1].contains(&(la.min(lb), la.max(lb)))
    }
}

/// The graph a tree model describes, on vertices `0..leaves`.
pub fn graph_from_tree_model(model: &TreeModel) -> Graph {
    let n = model.leaves;
    let edges: Vec<_> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| model.adjacent(a, b)).collect();
    Graph::from_edges(n, edges).expect("pairs are distinct")
}

#[derive(Clone, Debug)]
pub struct TreeModelGuidance {
    pub graph: Graph,
    pub h: PartialOrientation,
    /// `B(y)` per tree node, sorted (empty for leaves).
    pub b_sets: Vec<Vec<usize>>,
    /// `r³·m^r·(d+1)^{r²}·d`, saturating.
    pub bound: u128,
    /// Leaf subsets enumerated.
    pub enumerated: u64,
}

/// Canonical type of a set of leaves: the lexicographically least
/// `(labels, half-distance matrix)` over all orderings. Types of orderings of
/// the same set share their representative, so storing one canonical type
/// per set loses nothing.
fn canonical_type(model: &TreeModel, set: &[usize]) -> Vec<usize> {
    let k = set.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<usize>> = None;
    loop {
        let mut t = Vec::with_capacity(k + k * k);
        t.extend(perm.iter().map(|&i| model.label[set[i]]));
        for &i in &perm {
            for &j in &perm {
                t.push(if i == j { 0 } else { model.half_distance(set[i], set[j]) });
            }
        }
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Calls `f` on every subset of `items` with `1..=max` elements, in
/// lexicographic order per size. Stops early when `f` returns an error.
fn for_each_subset(items: &[usize], max: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let n = items.len();
    for k in 1..=max.min(n) {
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let set: Vec<usize> = pick.iter().map(|&i| items[i]).collect();
            f(&set)?;
            let mut i = k;
            while i > 0 && pick[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            pick[i - 1] += 1;
            for j in i..k {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    Ok(())
}

/// Weak r-guidance system from a tree model.
///
/// For every node `x` and type `t` of at most `r` leaves, `A(x, t)` is the
/// first leaf set below `x` of type `t` (sets ordered by size, then
/// lexicographically). For every internal `y` and type `t`, `R(y, t)` is the
/// first `r + 1` children `x` (by id) with `A(x, t)` non-empty, and `B(y)` is
/// the union of all `A(x, t)` with `x ∈ R(y, t)`. Every edge `uv` with
/// `v ∈ B(y)` for a proper ancestor `y` of `u` is directed `u → v`.
pub fn tree_model_guidance(model: &TreeModel, r: usize, budget: u64) -> Result<TreeModelGuidance> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let g = graph_from_tree_model(model);
    let nodes = model.node_count();
    let mut enumerated = 0u64;
    // A(x, ·) for every node
    let mut reps: Vec<HashMap<Vec<usize>, Vec<usize>>> = vec![HashMap::new(); nodes];
    for x in 0..nodes {
        let below = model.leaves_below(x);
        let map = &mut reps[x];
        for_each_subset(&below, r, |set| {
            enumerated += 1;
            if enumerated > budget {
                return Err(Error::BudgetExhausted { budget });
            }
            map.entry(canonical_type(model, set)).or_insert_with(|| set.to_vec());
            Ok(())
        })?;
    }
    let mut b_sets = vec![Vec::new(); nodes];
    for y in model.leaves..nodes {
        let mut chosen: HashMap<&Vec<usize>, usize> = HashMap::new();
        let mut b = BTreeSet::new();
        for &x in model.children(y) {
            for (t, a) in &reps[x] {
                let count = chosen.entry(t).or_insert(0);
                if *count <= r {
                    *count += 1;
                    b.extend(a.iter().copied());
                }
            }
        }
        b_sets[y] = b.into_iter().collect();
    }
    let mut h = PartialOrientation::empty(g.n());
    for u in g.vertices() {
        for y in model.ancestors(u) {
            for &v in &b_sets[y] {
                if g.has_edge(u, v) {
                    h.insert(u, v);
                }
            }
        }
    }
    Ok(TreeModelGuidance { graph: g, h, b_sets, bound: outdegree_bound(model.m, model.d, r), enumerated })
}

/// `r³·m^r·(d+1)^{r²}·d`, saturating at `u128::MAX`.
pub fn outdegree_bound(m: usize, d: usize, r: usize) -> u128 {
    let pow = |b: usize, e: usize| -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..e {
            acc = acc.saturating_mul(b as u128);
        }
        acc
    };
    pow(r, 3).saturating_mul(pow(m, r)).saturating_mul(pow(d + 1, r * r)).saturating_mul(d as u128)
}
