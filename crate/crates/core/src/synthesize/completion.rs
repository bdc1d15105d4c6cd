use crate::graph::{degeneracy, distance_power, reach_set, DistanceIndex, Graph, PartialOrientation};
use crate::verify::verify_weak;
use crate::{Error, Result};

fn require_weak(g: &Graph, idx: &DistanceIndex, h: &PartialOrientation, r: usize, what: &str) -> Result<()> {
    let report = verify_weak(g, idx, h, r)?;
    match report.dissatisfied.first() {
        None => Ok(()),
        Some(&(u, v, d)) => Err(Error::Precondition(format!(
            "{what} is not a weak {r}-guidance system: pair ({u}, {v}) at distance {d} is unsatisfied"
        ))),
    }
}

/// Adds every edge directed from its earlier to its later endpoint in a
/// degeneracy order. Turns a weak r-guidance system of outdegree `c` into an
/// r-guidance system of outdegree at most `c + t` for a `t`-degenerate graph.
pub fn complete_to_guidance(
    g: &Graph,
    idx: &DistanceIndex,
    h: &PartialOrientation,
    r: usize,
) -> Result<PartialOrientation> {
    require_weak(g, idx, h, r, "input")?;
    let order = degeneracy(g);
    let mut out = h.clone();
    for u in g.vertices() {
        for w in order.later_neighbors(g, u) {
            out.insert(u, w);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerLift {
    /// `G^k`.
    pub graph: Graph,
    pub h: PartialOrientation,
    /// Max outdegree of the input system.
    pub c: usize,
    /// `2c^k` for `c >= 2`, else `Σ_{l=1..k} c^l`. Saturating.
    pub bound: u128,
}

/// Outdegree bound of [`power_lift`] for an input of outdegree `c`.
pub fn power_lift_bound(c: usize, k: usize) -> u128 {
    let c = c as u128;
    if c >= 2 {
        2u128.saturating_mul(c.saturating_pow(k as u32))
    } else {
        (1..=k as u32).map(|l| c.pow(l)).sum()
    }
}

/// From a weak `kr`-guidance system of `G`, the weak r-guidance system of
/// `G^k` that directs `u → v` whenever `v ≠ u` is reachable from `u` within
/// `k` arcs.
pub fn power_lift(g: &Graph, idx: &DistanceIndex, h: &PartialOrientation, k: usize, r: usize) -> Result<PowerLift> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    require_weak(g, idx, h, k * r, "input")?;
    let graph = distance_power(g, k);
    let mut lifted = PartialOrientation::empty(g.n());
    for u in g.vertices() {
        for v in reach_set(h, u, k) {
            if v != u {
                lifted.insert(u, v);
            }
        }
    }
    let c = h.max_out();
    Ok(PowerLift { graph, h: lifted, c, bound: power_lift_bound(c, k) })
}
