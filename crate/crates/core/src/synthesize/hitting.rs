use std::collections::{BTreeMap, BTreeSet};

use rand::Rng as _;

use crate::graph::distance::gate_unchecked;
use crate::graph::{DistanceIndex, FractionalOrientation, Graph, PartialOrientation};
use crate::rng::{self, Rng};
use crate::{Error, Result};

/// Slack allowed when checking `w(S) >= 1`, and the matching relaxation of
/// the `1/2` threshold in [`vc_round`].
pub const FEAS_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HittingStrategy {
    /// Repeatedly take the element hitting the most unhit sets (ties: larger
    /// weight, then smaller element).
    Greedy,
    /// Sample elements proportionally to `w`, doubling the sample size until
    /// the sample hits everything.
    EpsilonNet,
}

/// A set meeting every member of `system`, given a fractional hitting set
/// `w` (`w(S) >= 1` for every member; missing elements weigh 0).
pub fn hitting_set(
    system: &[Vec<usize>],
    w: &BTreeMap<usize, f64>,
    strategy: HittingStrategy,
    rng: &mut Rng,
) -> Result<Vec<usize>> {
    for set in system {
        if set.is_empty() {
            return Err(Error::InvalidParameter("set system contains an empty set".into()));
        }
        let mass: f64 = set.iter().map(|z| w.get(z).copied().unwrap_or(0.0)).sum();
        if mass < 1.0 - FEAS_TOL {
            return Err(Error::Precondition(format!("fractional weight {mass} < 1 on a member set")));
        }
    }
    if system.is_empty() {
        return Ok(Vec::new());
    }
    match strategy {
        HittingStrategy::Greedy => Ok(greedy(system, w)),
        HittingStrategy::EpsilonNet => Ok(epsilon_net(system, w, rng)),
    }
}

fn hits_all(system: &[Vec<usize>], chosen: &BTreeSet<usize>) -> bool {
    system.iter().all(|s| s.iter().any(|z| chosen.contains(z)))
}

fn greedy(system: &[Vec<usize>], w: &BTreeMap<usize, f64>) -> Vec<usize> {
    let mut alive: Vec<&Vec<usize>> = system.iter().collect();
    let mut out = Vec::new();
    while !alive.is_empty() {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for set in &alive {
            for &z in set.iter() {
                *count.entry(z).or_insert(0) += 1;
            }
        }
        let weight = |z: usize| w.get(&z).copied().unwrap_or(0.0);
        let (&best, _) = count
            .iter()
            .max_by(|(&a, &ca), (&b, &cb)| {
                ca.cmp(&cb).then(weight(a).total_cmp(&weight(b))).then(b.cmp(&a))
            })
            .expect("alive sets are non-empty");
        out.push(best);
        alive.retain(|s| !s.contains(&best));
    }
    out.sort_unstable();
    out
}

fn epsilon_net(system: &[Vec<usize>], w: &BTreeMap<usize, f64>, rng: &mut Rng) -> Vec<usize> {
    let support: Vec<(usize, f64)> = w.iter().filter(|&(_, &x)| x > 0.0).map(|(&z, &x)| (z, x)).collect();
    let total: f64 = support.iter().map(|&(_, x)| x).sum();
    let mut size = total.ceil().max(1.0) as usize;
    let limit = 64 * support.len().max(1);
    while size <= limit {
        let mut sample = BTreeSet::new();
        for _ in 0..size {
            let mut x = rng.random::<f64>() * total;
            let mut pick = support.last().unwrap().0;
            for &(z, wz) in &support {
                if x < wz {
                    pick = z;
                    break;
                }
                x -= wz;
            }
            sample.insert(pick);
        }
        if hits_all(system, &sample) {
            return sample.into_iter().collect();
        }
        size *= 2;
    }
    // every member carries positive weight, so the support always hits
    support.into_iter().map(|(z, _)| z).collect()
}

/// Rounds a fractional system through per-vertex hitting sets.
///
/// For each `u`, `R_u` holds the `v` at distance `2..=r` with gate mass
/// `Σ_{z∈gate(u,v)} p(u,z) >= 1/2` (relaxed by [`FEAS_TOL`]); `u` is directed
/// to a hitting set of `{gate(u,v) : v ∈ R_u}` computed from the fractional
/// hitting set `2p(u,·)`. Every qualifying pair has one endpoint with mass at
/// least `1/2`, so the result is a weak r-guidance system. Vertex `u` draws
/// from its own stream `(seed, u)`.
pub fn vc_round(
    g: &Graph,
    idx: &DistanceIndex,
    p: &FractionalOrientation,
    r: usize,
    seed: u64,
    strategy: HittingStrategy,
) -> Result<PartialOrientation> {
    idx.require(r)?;
    let threshold = 0.5 * (1.0 - FEAS_TOL);
    let mut h = PartialOrientation::empty(g.n());
    for u in g.vertices() {
        let mut system: Vec<Vec<usize>> = Vec::new();
        for (v, l) in idx.within(u) {
            if l < 2 || l > r {
                continue;
            }
            let gate = gate_unchecked(g, idx, u, v, l);
            let mass: f64 = gate.iter().map(|&z| p.weight(u, z)).sum();
            if mass >= threshold {
                system.push(gate);
            }
        }
        if system.is_empty() {
            continue;
        }
        system.sort();
        system.dedup();
        let w: BTreeMap<usize, f64> =
            p.out_weights(u).iter().map(|&(z, x)| (z, 2.0 * x / (1.0 - FEAS_TOL))).collect();
        let mut stream = rng::stream(seed, u as u64);
        for z in hitting_set(&system, &w, strategy, &mut stream)? {
            h.insert(u, z);
        }
    }
    Ok(h)
}
