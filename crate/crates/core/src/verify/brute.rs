use crate::graph::distance::gate_unchecked;
use crate::graph::{DistanceIndex, Graph, PartialOrientation};
use crate::{Error, Result};

use super::{verify_strict, verify_weak, StrictMode};

/// Search nodes explored before [`brute_force_optimum`] gives up.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Which guidance notion an exhaustive search targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Notion {
    Weak,
    Strict(StrictMode),
}

impl Notion {
    pub fn holds(self, g: &Graph, idx: &DistanceIndex, h: &PartialOrientation, r: usize) -> Result<bool> {
        Ok(match self {
            Notion::Weak => verify_weak(g, idx, h, r)?.valid,
            Notion::Strict(mode) => verify_strict(g, idx, h, r, mode)?.valid,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BruteForceOutcome {
    /// Minimum max outdegree, or `None` when it exceeds the cap.
    pub optimum: Option<usize>,
    /// An orientation attaining the optimum.
    pub witness: Option<PartialOrientation>,
    pub nodes: u64,
}

/// Exact minimum of the maximum outdegree over all partial orientations
/// satisfying `notion`, searched for `c = 0, 1, …, cap`.
///
/// Only for small graphs (at most 64 vertices). Each vertex picks a subset
/// of size `min(c, ·)` of its candidate out-neighbors; larger sets never hurt
/// because every notion is monotone under adding arcs. For the weak notion
/// candidates are restricted to gate members and pairs are checked as soon as
/// both endpoints are decided; strict notions prune by checking the
/// optimistic completion (undecided vertices pointing everywhere).
pub fn brute_force_optimum(
    g: &Graph,
    idx: &DistanceIndex,
    r: usize,
    cap: usize,
    notion: Notion,
    budget: u64,
) -> Result<BruteForceOutcome> {
    idx.require(r)?;
    if g.n() > 64 {
        return Err(Error::InvalidParameter(format!("exhaustive search limited to 64 vertices, got {}", g.n())));
    }
    let mut search = Search::new(g, idx, r, notion, budget);
    for c in 0..=cap {
        if let Some(choice) = search.run(c)? {
            let mut h = PartialOrientation::empty(g.n());
            for (u, &mask) in choice.iter().enumerate() {
                for w in bits(mask) {
                    h.insert(u, w);
                }
            }
            return Ok(BruteForceOutcome { optimum: Some(c), witness: Some(h), nodes: search.nodes });
        }
    }
    Ok(BruteForceOutcome { optimum: None, witness: None, nodes: search.nodes })
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

fn mask_of(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | (1u64 << v))
}

/// All `k`-subsets of the bits of `ground`, in lexicographic order.
fn subsets(ground: u64, k: usize) -> Vec<u64> {
    let elems: Vec<usize> = bits(ground).collect();
    if k >= elems.len() {
        return vec![ground];
    }
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        out.push(pick.iter().fold(0, |m, &i| m | (1u64 << elems[i])));
        let mut i = k;
        while i > 0 && pick[i - 1] == elems.len() - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        pick[i - 1] += 1;
        for j in i..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    idx: &'a DistanceIndex,
    r: usize,
    notion: Notion,
    budget: u64,
    nodes: u64,
    /// Candidate out-neighbors per vertex.
    ground: Vec<u64>,
    /// For the weak notion: pairs `(j, gate(i,j), gate(j,i))` with `j < i`.
    back: Vec<Vec<(usize, u64, u64)>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, idx: &'a DistanceIndex, r: usize, notion: Notion, budget: u64) -> Self {
        let n = g.n();
        let mut ground = vec![0u64; n];
        let mut back = vec![Vec::new(); n];
        match notion {
            Notion::Weak => {
                for (u, v, l) in idx.pairs(2, r) {
                    let guv = mask_of(&gate_unchecked(g, idx, u, v, l));
                    let gvu = mask_of(&gate_unchecked(g, idx, v, u, l));
                    ground[u] |= guv;
                    ground[v] |= gvu;
                    back[v].push((u, gvu, guv));
                }
            }
            Notion::Strict(_) => {
                for u in g.vertices() {
                    ground[u] = mask_of(g.neighbors(u));
                }
            }
        }
        Search { g, idx, r, notion, budget, nodes: 0, ground, back }
    }

    fn run(&mut self, c: usize) -> Result<Option<Vec<u64>>> {
        let options: Vec<Vec<u64>> = self.ground.iter().map(|&m| subsets(m, c)).collect();
        let mut choice = vec![0u64; self.g.n()];
        Ok(self.dfs(0, &options, &mut choice)?.then_some(choice))
    }

    fn dfs(&mut self, i: usize, options: &[Vec<u64>], choice: &mut Vec<u64>) -> Result<bool> {
        if i == choice.len() {
            return match self.notion {
                Notion::Weak => Ok(true),
                Notion::Strict(_) => self.optimistic_ok(choice, i),
            };
        }
        for &opt in &options[i] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted { budget: self.budget });
            }
            choice[i] = opt;
            let ok = match self.notion {
                Notion::Weak => self.back[i].iter().all(|&(j, gij, gji)| opt & gij != 0 || choice[j] & gji != 0),
                Notion::Strict(_) => self.optimistic_ok(choice, i + 1)?,
            };
            if ok && self.dfs(i + 1, options, choice)? {
                return Ok(true);
            }
        }
        choice[i] = 0;
        Ok(false)
    }

    /// Checks the orientation where vertices `< decided` use `choice` and
    /// the rest point to every candidate.
    fn optimistic_ok(&self, choice: &[u64], decided: usize) -> Result<bool> {
        let mut h = PartialOrientation::empty(self.g.n());
        for u in self.g.vertices() {
            let m = if u < decided { choice[u] } else { self.ground[u] };
            for w in bits(m) {
                h.insert(u, w);
            }
        }
        self.notion.holds(self.g, self.idx, &h, self.r)
    }
}

/// Edges `{u, v}` (with `u < v`) that every orientation satisfying `notion`
/// must direct at least one way: removing both directions of the edge from
/// the all-arcs orientation already breaks the notion. By monotonicity no
/// subset of that orientation can succeed either.
pub fn forced_edges(g: &Graph, idx: &DistanceIndex, r: usize, notion: Notion) -> Result<Vec<(usize, usize)>> {
    idx.require(r)?;
    let mut forced = Vec::new();
    for (u, v) in g.edges() {
        let mut h = PartialOrientation::empty(g.n());
        for (a, b) in PartialOrientation::both_ways(g).arcs() {
            if (a, b) != (u, v) && (a, b) != (v, u) {
                h.insert(a, b);
            }
        }
        if !notion.holds(g, idx, &h, r)? {
            forced.push((u, v));
        }
    }
    Ok(forced)
}
