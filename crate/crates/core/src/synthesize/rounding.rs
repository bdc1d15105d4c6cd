use rand::Rng as _;

use crate::graph::distance::gate_unchecked;
use crate::graph::{DistanceIndex, FractionalOrientation, Graph, PartialOrientation};
use crate::rng::Rng;
use crate::{Error, Result};

/// A rounded system and the number of unsatisfied pairs before the first
/// round and after each round.
#[derive(Clone, Debug, PartialEq)]
pub struct Rounding {
    pub h: PartialOrientation,
    /// `remaining[0] = |X_0|`, `remaining[i] = |X_i|`.
    pub remaining: Vec<usize>,
    /// Round budget `⌈4c·ln n⌉`.
    pub rounds_allowed: usize,
}

impl Rounding {
    pub fn rounds_used(&self) -> usize {
        self.remaining.len() - 1
    }
}

/// `⌈4c·ln n⌉` (natural logarithm), 0 for `n < 2`.
pub fn round_budget(c: f64, n: usize) -> usize {
    if n < 2 {
        0
    } else {
        (4.0 * c * (n as f64).ln()).ceil() as usize
    }
}

struct Pair {
    ends: [usize; 2],
    /// `gates[s]` is the gate from `ends[s]` toward the other end.
    gates: [Vec<usize>; 2],
    /// Probability that a p-random neighbor of `ends[s]` lies in `gates[s]`.
    q: [f64; 2],
}

/// Chance a p-random neighbor of `u` lands in `set`.
fn hit_probability(g: &Graph, p: &FractionalOrientation, u: usize, set: &[usize]) -> f64 {
    let total = p.outdegree(u);
    if total > 0.0 {
        set.iter().map(|&z| p.weight(u, z)).sum::<f64>() / total
    } else {
        set.len() as f64 / g.degree(u) as f64
    }
}

/// Derandomized rounding of a fractional r-guidance system.
///
/// Each round gives every vertex still involved in an unsatisfied pair one
/// out-arc, chosen in increasing vertex order to minimize the conditional
/// expected number of pairs left unsatisfied when the undecided vertices
/// pick p-random neighbors. Ties go to the smallest neighbor. Each round
/// leaves at most a `1 − 1/(2c)` fraction of the pairs, so `⌈4c·ln n⌉`
/// rounds suffice.
pub fn round_fractional(
    g: &Graph,
    idx: &DistanceIndex,
    p: &FractionalOrientation,
    r: usize,
    c: f64,
) -> Result<Rounding> {
    idx.require(r)?;
    let n = g.n();
    let mut pairs: Vec<Pair> = idx
        .pairs(2, r)
        .map(|(u, v, l)| {
            let gu = gate_unchecked(g, idx, u, v, l);
            let gv = gate_unchecked(g, idx, v, u, l);
            let q = [hit_probability(g, p, u, &gu), hit_probability(g, p, v, &gv)];
            Pair { ends: [u, v], gates: [gu, gv], q }
        })
        .collect();
    let mut remaining = vec![pairs.len()];
    let rounds_allowed = round_budget(c, n);
    let mut h = PartialOrientation::empty(n);
    if pairs.is_empty() {
        return Ok(Rounding { h, remaining, rounds_allowed });
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let factor = 1.0 - 1.0 / (2.0 * c);

    let mut score = vec![0.0f64; n];
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    while !pairs.is_empty() {
        if remaining.len() > rounds_allowed {
            return Err(Error::Invariant(format!(
                "{} pairs still unsatisfied after {rounds_allowed} rounds",
                pairs.len()
            )));
        }
        for list in &mut incident {
            list.clear();
        }
        for (k, pair) in pairs.iter().enumerate() {
            incident[pair.ends[0]].push((k, 0));
            incident[pair.ends[1]].push((k, 1));
        }
        let mut choice: Vec<Option<usize>> = vec![None; n];
        for u in 0..n {
            if incident[u].is_empty() {
                continue;
            }
            // conditional probability that the other side misses
            let mut total = 0.0;
            for &(k, s) in &incident[u] {
                let pair = &pairs[k];
                let other = pair.ends[1 - s];
                let miss = match choice[other] {
                    Some(w) => f64::from(u8::from(pair.gates[1 - s].binary_search(&w).is_err())),
                    None => 1.0 - pair.q[1 - s],
                };
                total += miss;
                for &z in &pair.gates[s] {
                    score[z] -= miss;
                }
            }
            let mut best: Option<(usize, f64)> = None;
            for &w in g.neighbors(u) {
                let value = total + score[w];
                score[w] = 0.0;
                if best.is_none_or(|(_, b)| value < b - 1e-12) {
                    best = Some((w, value));
                }
            }
            let w = best.expect("vertex in a pair has neighbors").0;
            choice[u] = Some(w);
            h.insert(u, w);
        }
        let before = pairs.len();
        pairs.retain(|pair| {
            (0..2).all(|s| match choice[pair.ends[s]] {
                Some(w) => pair.gates[s].binary_search(&w).is_err(),
                None => true,
            })
        });
        remaining.push(pairs.len());
        if pairs.len() as f64 > factor * before as f64 + 1e-9 {
            return Err(Error::Invariant(format!(
                "round {} kept {} of {before} pairs, above the 1 - 1/(2c) = {factor} contraction",
                remaining.len() - 1,
                pairs.len()
            )));
        }
    }
    Ok(Rounding { h, remaining, rounds_allowed })
}

/// A neighbor of `u` drawn with probability `p(u,v) / d⁺_p(u)`, or uniformly
/// when `u` has no outgoing weight.
pub fn p_random_neighbor(g: &Graph, p: &FractionalOrientation, u: usize, rng: &mut Rng) -> Result<usize> {
    g.check_vertex(u)?;
    let nbrs = g.neighbors(u);
    if nbrs.is_empty() {
        return Err(Error::Precondition(format!("vertex {u} is isolated")));
    }
    let out = p.out_weights(u);
    let total: f64 = out.iter().map(|&(_, w)| w).sum();
    if total > 0.0 {
        let mut x = rng.random::<f64>() * total;
        for &(v, w) in out {
            if x < w {
                return Ok(v);
            }
            x -= w;
        }
        Ok(out.last().unwrap().0)
    } else {
        Ok(nbrs[rng.random_range(0..nbrs.len())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Radius;
    use crate::rng;
    use crate::verify::verify_weak;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn budget_uses_natural_log() {
        assert_eq!(round_budget(0.5, 4), 3);
        assert_eq!(round_budget(1.0, 5), 7);
        assert_eq!(round_budget(1.0, 1), 0);
    }

    #[test]
    fn c5_halves() {
        let g = cycle(5);
        let idx = DistanceIndex::build(&g, Radius::Bounded(2));
        let p = FractionalOrientation::from_weights(&g, g.edges().flat_map(|(u, v)| [(u, v, 0.5), (v, u, 0.5)]))
            .unwrap();
        let out = round_fractional(&g, &idx, &p, 2, 1.0).unwrap();
        assert!(verify_weak(&g, &idx, &out.h, 2).unwrap().valid);
        assert!(out.h.max_out() <= 7);
        assert_eq!(*out.remaining.last().unwrap(), 0);
    }

    #[test]
    fn no_pairs_gives_empty() {
        let k3 = cycle(3);
        let idx = DistanceIndex::build(&k3, Radius::Bounded(2));
        let out = round_fractional(&k3, &idx, &FractionalOrientation::zeros(3), 2, 0.0).unwrap();
        assert_eq!(out.h.arc_count(), 0);
        assert_eq!(out.remaining, vec![0]);
    }

    #[test]
    fn random_neighbor_follows_weights() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut rng = rng::seeded(1);
        let single = FractionalOrientation::from_weights(&g, [(0, 2, 1.0)]).unwrap();
        assert!((0..100).all(|_| p_random_neighbor(&g, &single, 0, &mut rng).unwrap() == 2));
        let skew = FractionalOrientation::from_weights(&g, [(0, 1, 2.0), (0, 3, 1.0)]).unwrap();
        let hits = (0..30_000).filter(|_| p_random_neighbor(&g, &skew, 0, &mut rng).unwrap() == 1).count();
        assert!((hits as f64 / 30_000.0 - 2.0 / 3.0).abs() < 0.02);
        let iso = Graph::from_edges(2, []).unwrap();
        assert!(p_random_neighbor(&iso, &FractionalOrientation::zeros(2), 0, &mut rng).is_err());
    }
}
