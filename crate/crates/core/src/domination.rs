//! r-domination and 2r-independence from guidance systems.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::graph::{degeneracy, reach_set, DistanceIndex, Graph, PartialOrientation};
use crate::verify::{same_size, verify_strict, verify_weak, StrictMode};
use crate::{Error, Result};

/// Output of either greedy algorithm. `d` and `a` are sorted and have been
/// checked before return.
#[derive(Clone, Debug, PartialEq)]
pub struct DominationResult {
    /// r-dominating set.
    pub d: Vec<usize>,
    /// 2r-independent set.
    pub a: Vec<usize>,
    /// `|D| / |A|`.
    pub ratio: f64,
    /// Vertices picked by the greedy loop, in pick order.
    pub picked: Vec<usize>,
    /// `|B_H(x, r)|` for each picked `x`.
    pub reach_sizes: Vec<usize>,
    /// Whether the picked vertices were already 2r-independent.
    pub picked_independent: bool,
    /// `b(c, r, k)`, for the weak algorithm.
    pub bound_b: Option<BigUint>,
    /// `|D| <= b |A|`, for the weak algorithm.
    pub bound_held: Option<bool>,
}

/// `σ(1) = 0`, `σ(p) = c^{2r+1} (σ(p-1) + 1)`.
pub fn sigma(p: usize, c: u64, r: usize) -> Result<BigUint> {
    if p == 0 || c < 2 {
        return Err(Error::InvalidParameter(format!("sigma needs p >= 1 and c >= 2, got p = {p}, c = {c}")));
    }
    let step = BigUint::from(c).pow(2 * r as u32 + 1);
    let mut s = BigUint::zero();
    for _ in 1..p {
        s = &step * (s + 1u32);
    }
    Ok(s)
}

/// `b = c^{r+1} (c^{2r+1} σ(k+1) + 1)`.
pub fn bound_b(c: u64, r: usize, k: usize) -> Result<BigUint> {
    if c < 2 || r == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!("bound_b needs c >= 2, r, k >= 1, got c = {c}, r = {r}, k = {k}")));
    }
    let s = sigma(k + 1, c, r)?;
    let c = BigUint::from(c);
    Ok(c.pow(r as u32 + 1) * (c.pow(2 * r as u32 + 1) * s + 1u32))
}

/// Multi-source BFS distances truncated at `limit`.
fn ball_distances(g: &Graph, sources: &[usize], limit: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap();
        if dx == limit {
            continue;
        }
        for &y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Every vertex within distance `r` of `d`, checked by BFS.
pub fn is_r_dominating(g: &Graph, d: &[usize], r: usize) -> bool {
    ball_distances(g, d, r).iter().all(Option::is_some)
}

/// Members pairwise at distance more than `2r`, checked by BFS.
pub fn is_2r_independent(g: &Graph, a: &[usize], r: usize) -> bool {
    a.iter().enumerate().all(|(i, &x)| {
        let dist = ball_distances(g, &[x], 2 * r);
        a.iter().enumerate().all(|(j, &y)| i == j || dist[y].is_none())
    })
}

struct Greedy {
    d: Vec<usize>,
    picked: Vec<usize>,
    reach: Vec<Vec<usize>>,
}

/// Repeatedly picks the smallest vertex at distance more than `r` from `D`
/// and adds it with its `r`-step `h`-reach to `D`.
fn greedy(g: &Graph, h: &PartialOrientation, r: usize) -> Greedy {
    let n = g.n();
    let mut in_d = vec![false; n];
    let mut covered = vec![false; n];
    let mut picked = Vec::new();
    let mut reach = Vec::new();
    let mut next = 0;
    while let Some(x) = (next..n).find(|&v| !covered[v]) {
        next = x;
        let ball = reach_set(h, x, r);
        let fresh: Vec<usize> = ball.iter().copied().filter(|&v| !in_d[v]).collect();
        for &v in &fresh {
            in_d[v] = true;
        }
        for (v, dv) in ball_distances(g, &fresh, r).into_iter().enumerate() {
            covered[v] |= dv.is_some();
        }
        picked.push(x);
        reach.push(ball);
    }
    let d = (0..n).filter(|&v| in_d[v]).collect();
    Greedy { d, picked, reach }
}

/// Largest colour class of a smallest-last greedy colouring of the graph on
/// `picked` joining pairs within distance `2r`.
fn conflict_extraction(idx: &DistanceIndex, picked: &[usize], r: usize) -> Result<Vec<usize>> {
    let k = picked.len();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if idx.dist(picked[i], picked[j]).is_some_and(|d| d <= 2 * r) {
                edges.push((i, j));
            }
        }
    }
    let f = Graph::from_edges(k, edges)?;
    let order = degeneracy(&f);
    let mut colour = vec![usize::MAX; k];
    for &v in order.order.iter().rev() {
        let used: Vec<usize> = f.neighbors(v).iter().map(|&w| colour[w]).filter(|&c| c != usize::MAX).collect();
        colour[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    let classes = colour.iter().copied().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; classes];
    for &c in &colour {
        sizes[c] += 1;
    }
    let Some(best) = (0..classes).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))) else {
        return Ok(Vec::new());
    };
    let mut a: Vec<usize> = (0..k).filter(|&i| colour[i] == best).map(|i| picked[i]).collect();
    a.sort_unstable();
    Ok(a)
}

fn finish(g: &Graph, idx: &DistanceIndex, run: Greedy, r: usize) -> Result<DominationResult> {
    let picked_independent = is_2r_independent(g, &run.picked, r);
    let a = if picked_independent {
        let mut a = run.picked.clone();
        a.sort_unstable();
        a
    } else {
        conflict_extraction(idx, &run.picked, r)?
    };
    if !is_r_dominating(g, &run.d, r) {
        return Err(Error::Invariant("greedy set is not r-dominating".into()));
    }
    if !is_2r_independent(g, &a, r) {
        return Err(Error::Invariant("extracted set is not 2r-independent".into()));
    }
    let ratio = if a.is_empty() { 0.0 } else { run.d.len() as f64 / a.len() as f64 };
    Ok(DominationResult {
        d: run.d,
        a,
        ratio,
        reach_sizes: run.reach.iter().map(Vec::len).collect(),
        picked: run.picked,
        picked_independent,
        bound_b: None,
        bound_held: None,
    })
}

/// Greedy domination from a `2r`-guidance system (every pair at distance
/// `1..=2r` routed through a meeting vertex). With maximum outdegree below
/// `c` the result is expected to satisfy `|D| <= c² |A|`; the ratio is
/// reported, not assumed.
pub fn dominate_via_guidance(
    g: &Graph,
    idx: &DistanceIndex,
    h: &PartialOrientation,
    r: usize,
) -> Result<DominationResult> {
    let report = verify_strict(g, idx, h, 2 * r, StrictMode::Full)?;
    if !report.valid {
        let (u, v, d) = report.dissatisfied[0];
        return Err(Error::Precondition(format!(
            "not a {}-guidance system: pair ({u}, {v}) at distance {d} is not routed",
            2 * r
        )));
    }
    finish(g, idx, greedy(g, h, r), r)
}

/// `(†)`: for `x` picked before `y`, every vertex of `B_H(x, r)` is at
/// distance more than `r` from `y`.
fn order_property_holds(idx: &DistanceIndex, run: &Greedy, r: usize) -> bool {
    run.picked.iter().enumerate().all(|(i, _)| {
        run.picked[i + 1..]
            .iter()
            .all(|&y| run.reach[i].iter().all(|&z| idx.dist(z, y).is_none_or(|d| d > r)))
    })
}

/// Greedy domination from a weak `2r`-guidance system of maximum outdegree
/// at most `c`. When the graph is `(r, k)`-stable, `|D| <= b(c, r, k) |A|`.
pub fn dominate_weak(
    g: &Graph,
    idx: &DistanceIndex,
    h: &PartialOrientation,
    r: usize,
    c: u64,
    k: usize,
) -> Result<DominationResult> {
    let b = bound_b(c, r, k)?;
    let report = verify_weak(g, idx, h, 2 * r)?;
    if !report.valid {
        let (u, v, d) = report.dissatisfied[0];
        return Err(Error::Precondition(format!(
            "not a weak {}-guidance system: pair ({u}, {v}) at distance {d}",
            2 * r
        )));
    }
    if h.max_out() as u64 > c {
        return Err(Error::Precondition(format!("maximum outdegree {} exceeds c = {c}", h.max_out())));
    }
    let run = greedy(g, h, r);
    if !order_property_holds(idx, &run, r) {
        return Err(Error::Invariant("greedy order property violated".into()));
    }
    let mut res = finish(g, idx, run, r)?;
    // A is never empty for n >= 1: some colour class is non-empty.
    res.bound_held = Some(BigUint::from(res.d.len()) <= &b * BigUint::from(res.a.len()));
    res.bound_b = Some(b);
    Ok(res)
}

/// `u_1..u_k, v_1..v_k` with `dist(u_i, v_j) > r` for `j < i` and exactly
/// `r` for `j >= i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfgraphWitness {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl HalfgraphWitness {
    pub fn check(&self, idx: &DistanceIndex, r: usize) -> bool {
        let k = self.u.len();
        self.v.len() == k
            && (0..k).all(|i| {
                (0..k).all(|j| {
                    let d = idx.dist(self.u[i], self.v[j]);
                    if j < i {
                        d.is_none_or(|d| d > r)
                    } else {
                        d == Some(r)
                    }
                })
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfgraphSearch {
    Found(HalfgraphWitness),
    /// The search finished: the graph is `(r, k)`-stable.
    NoneExists,
    /// The node budget ran out first; nothing is known.
    BudgetExhausted,
}

type Bits = Vec<u64>;

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_iter(a: &Bits) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(w, &word)| {
        (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
    })
}

struct HalfgraphSearcher<'a> {
    n: usize,
    k: usize,
    /// Vertices at distance exactly `r`.
    exact: Vec<Bits>,
    /// Vertices at distance more than `r`.
    far: Vec<Bits>,
    idx: &'a DistanceIndex,
    nodes: u64,
    budget: u64,
}

impl HalfgraphSearcher<'_> {
    /// `allowed_v` is the intersection of `exact` over the chosen `u`s.
    fn extend(&mut self, u: &mut Vec<usize>, v: &mut Vec<usize>, allowed_v: &Bits) -> Option<bool> {
        if u.len() == self.k {
            return Some(true);
        }
        for x in 0..self.n {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            if !v.iter().all(|&y| self.far[x][y / 64] >> (y % 64) & 1 == 1) {
                continue;
            }
            let cand = bits_and(allowed_v, &self.exact[x]);
            if cand.iter().all(|&w| w == 0) {
                continue;
            }
            u.push(x);
            for y in bits_iter(&cand).collect::<Vec<_>>() {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return None;
                }
                v.push(y);
                if self.extend(u, v, &cand)? {
                    return Some(true);
                }
                v.pop();
            }
            u.pop();
        }
        Some(false)
    }
}

/// Backtracking search for an `(r, k)`-halfgraph, counting one node per
/// tentative vertex.
pub fn find_halfgraph(g: &Graph, idx: &DistanceIndex, r: usize, k: usize, budget: u64) -> Result<HalfgraphSearch> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    idx.require(r)?;
    same_size(g, idx, g.n())?;
    let n = g.n();
    let words = n.div_ceil(64).max(1);
    let mut exact = vec![vec![0u64; words]; n];
    let mut far = vec![vec![!0u64; words]; n];
    for x in 0..n {
        for (y, d) in idx.within(x) {
            far[x][y / 64] &= !(1 << (y % 64));
            if d == r {
                exact[x][y / 64] |= 1 << (y % 64);
            }
        }
    }
    let mut s = HalfgraphSearcher { n, k, exact, far, idx, nodes: 0, budget };
    let all = vec![!0u64; words];
    let (mut u, mut v) = (Vec::new(), Vec::new());
    Ok(match s.extend(&mut u, &mut v, &all) {
        None => HalfgraphSearch::BudgetExhausted,
        Some(false) => HalfgraphSearch::NoneExists,
        Some(true) => {
            let w = HalfgraphWitness { u, v };
            debug_assert!(w.check(s.idx, r));
            HalfgraphSearch::Found(w)
        }
    })
}

/// Largest graph accepted by [`min_r_dominating_set`].
pub const EXACT_DOMINATION_LIMIT: usize = 20;

/// Minimum r-dominating set by exhaustive search over subsets of
/// increasing size; lexicographically first among the optima.
pub fn min_r_dominating_set(g: &Graph, r: usize) -> Result<Vec<usize>> {
    let n = g.n();
    if n > EXACT_DOMINATION_LIMIT {
        return Err(Error::InvalidParameter(format!("exact domination limited to {EXACT_DOMINATION_LIMIT} vertices, got {n}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let ball: Vec<u32> = (0..n)
        .map(|x| {
            ball_distances(g, &[x], r)
                .iter()
                .enumerate()
                .filter(|(_, d)| d.is_some())
                .fold(0u32, |m, (y, _)| m | 1 << y)
        })
        .collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for size in 1..=n {
        let mut chosen = Vec::with_capacity(size);
        if let Some(set) = first_cover(&ball, full, 0, 0, size, &mut chosen) {
            return Ok(set);
        }
    }
    unreachable!("the whole vertex set dominates")
}

fn first_cover(ball: &[u32], full: u32, start: usize, covered: u32, left: usize, chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
    if covered == full {
        return Some(chosen.clone());
    }
    if left == 0 {
        return None;
    }
    for x in start..ball.len() {
        chosen.push(x);
        if let Some(s) = first_cover(ball, full, x + 1, covered | ball[x], left - 1, chosen) {
            return Some(s);
        }
        chosen.pop();
    }
    None
}
