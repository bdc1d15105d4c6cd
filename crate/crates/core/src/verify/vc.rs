use std::collections::HashSet;

use crate::graph::distance::gate_unchecked;
use crate::graph::{DistanceIndex, Graph};
use crate::Result;

pub const DEFAULT_VC_CAP: usize = 6;

/// `min(cap, max_u VC({gate(u, v) : 2 <= d(u, v) <= r}))` by exhaustive
/// shattering search.
pub fn vc_dimension(g: &Graph, idx: &DistanceIndex, r: usize, cap: usize) -> Result<usize> {
    idx.require(r)?;
    let mut best = 0;
    for u in g.vertices() {
        if best >= cap {
            break;
        }
        let mut system: Vec<Vec<usize>> = idx
            .within(u)
            .filter(|&(_, d)| d >= 2 && d <= r)
            .map(|(v, d)| gate_unchecked(g, idx, u, v, d))
            .collect();
        system.sort();
        system.dedup();
        best = best.max(system_vc_dimension(&system, cap));
    }
    Ok(best.min(cap))
}

/// VC dimension of a set system (members sorted), capped. A set `A` is
/// shattered when `{S ∩ A}` contains all `2^|A|` subsets of `A`.
pub fn system_vc_dimension(system: &[Vec<usize>], cap: usize) -> usize {
    let mut ground: Vec<usize> = system.iter().flatten().copied().collect();
    ground.sort_unstable();
    ground.dedup();
    let mut best = 0;
    // a set of size s needs 2^s distinct members
    let mut s = 1;
    while s <= cap && s < 63 && s <= ground.len() && (1usize << s) <= system.len() {
        if !some_shattered(system, &ground, s) {
            break;
        }
        best = s;
        s += 1;
    }
    best
}

fn some_shattered(system: &[Vec<usize>], ground: &[usize], s: usize) -> bool {
    let mut pick: Vec<usize> = (0..s).collect();
    let n = ground.len();
    loop {
        let a: Vec<usize> = pick.iter().map(|&i| ground[i]).collect();
        let traces: HashSet<u64> = system
            .iter()
            .map(|set| {
                a.iter().enumerate().filter(|(_, x)| set.binary_search(x).is_ok()).fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        if traces.len() == 1 << s {
            return true;
        }
        let mut i = s;
        while i > 0 && pick[i - 1] == n - s + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        pick[i - 1] += 1;
        for j in i..s {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Radius;

    #[test]
    fn small_systems() {
        assert_eq!(system_vc_dimension(&[], 6), 0);
        assert_eq!(system_vc_dimension(&[vec![1]], 6), 0);
        assert_eq!(system_vc_dimension(&[vec![], vec![1]], 6), 1);
        let all4 = vec![vec![], vec![1], vec![2], vec![1, 2]];
        assert_eq!(system_vc_dimension(&all4, 6), 2);
        assert_eq!(system_vc_dimension(&all4, 1), 1);
    }

    #[test]
    fn graph_examples() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let idx = DistanceIndex::build(&p3, Radius::Bounded(2));
        assert_eq!(vc_dimension(&p3, &idx, 2, 6).unwrap(), 0);
        let e = Graph::empty(4);
        let idx = DistanceIndex::build(&e, Radius::Bounded(2));
        assert_eq!(vc_dimension(&e, &idx, 2, 6).unwrap(), 0);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let idx = DistanceIndex::build(&c4, Radius::Bounded(2));
        assert_eq!(vc_dimension(&c4, &idx, 2, 6).unwrap(), 0);
    }
}
