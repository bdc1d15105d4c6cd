//! Ground-truth checkers.
//!
//! A partial orientation is a weak r-guidance system exactly when every pair
//! `{u, v}` at distance `2..=r` has `u` pointing into `gate(u, v)` or `v`
//! pointing into `gate(v, u)`. [`verify_weak`] checks that local condition;
//! [`verify_strict`] checks the (plus) r-guidance notions through directed
//! reachability; [`verify_fractional`] checks the covering inequalities of a
//! fractional orientation.

mod brute;
mod dual;
mod vc;

use std::fmt::Write as _;

use crate::graph::{DistanceIndex, FractionalOrientation, Graph, MaxOutdegree, PartialOrientation};
use crate::Result;

pub use brute::{brute_force_optimum, forced_edges, BruteForceOutcome, Notion, DEFAULT_NODE_BUDGET};
pub use dual::{
    evaluate_dual, evaluate_dual_exact, girth5_certificate, girth5_weights_exact, DualCertificate,
};
pub use vc::{system_vc_dimension, vc_dimension, DEFAULT_VC_CAP};

/// A vertex pair violating a guidance condition, with its distance.
pub type BadPair = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub valid: bool,
    /// Every violating pair `(u, v, d)` with `u < v`, sorted.
    pub dissatisfied: Vec<BadPair>,
    pub max_outdegree: f64,
    pub pairs_checked: usize,
}

impl VerificationReport {
    fn new(mut dissatisfied: Vec<BadPair>, max_outdegree: f64, pairs_checked: usize) -> Self {
        dissatisfied.sort_unstable();
        VerificationReport { valid: dissatisfied.is_empty(), dissatisfied, max_outdegree, pairs_checked }
    }

    /// Fraction of checked pairs that satisfy the condition (1 when nothing
    /// was checked).
    pub fn satisfaction_rate(&self) -> f64 {
        if self.pairs_checked == 0 {
            1.0
        } else {
            1.0 - self.dissatisfied.len() as f64 / self.pairs_checked as f64
        }
    }

    /// `valid …`, `maxout …`, then one `bad u v d` line per violation.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "valid {}", self.valid).unwrap();
        writeln!(s, "maxout {}", self.max_outdegree).unwrap();
        for &(u, v, d) in &self.dissatisfied {
            writeln!(s, "bad {u} {v} {d}").unwrap();
        }
        s
    }
}

/// Checks the weak r-guidance condition on every pair at distance `2..=r`.
pub fn verify_weak(
    g: &Graph,
    idx: &DistanceIndex,
    h: &PartialOrientation,
    r: usize,
) -> Result<VerificationReport> {
    idx.require(r)?;
    same_size(g, idx, h.n())?;
    let mut bad = Vec::new();
    let mut checked = 0;
    for (u, v, l) in idx.pairs(2, r) {
        checked += 1;
        if !pair_satisfied(idx, h, u, v, l) {
            bad.push((u, v, l));
        }
    }
    Ok(VerificationReport::new(bad, h.max_outdegree(), checked))
}

pub(crate) fn same_size(g: &Graph, idx: &DistanceIndex, n: usize) -> Result<()> {
    if g.n() == idx.n() && g.n() == n {
        Ok(())
    } else {
        Err(crate::Error::InvalidParameter(format!(
            "size mismatch: graph {}, index {}, orientation {n}",
            g.n(),
            idx.n()
        )))
    }
}

#[inline]
pub(crate) fn pair_satisfied(idx: &DistanceIndex, h: &PartialOrientation, u: usize, v: usize, l: usize) -> bool {
    h.out_neighbors(u).iter().any(|&w| idx.dist(v, w) == Some(l - 1))
        || h.out_neighbors(v).iter().any(|&w| idx.dist(u, w) == Some(l - 1))
}

/// Which pairs a strict guidance system must route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrictMode {
    /// r-guidance: distances `1..=r`.
    Full,
    /// r⁺-guidance: distances `2..=r`.
    Plus,
}

/// Checks that every pair at distance `l` in the mode's range has some
/// `a + b = l` with `B_H(u, a) ∩ B_H(v, b)` non-empty.
pub fn verify_strict(
    g: &Graph,
    idx: &DistanceIndex,
    h: &PartialOrientation,
    r: usize,
    mode: StrictMode,
) -> Result<VerificationReport> {
    idx.require(r)?;
    same_size(g, idx, h.n())?;
    let lo = match mode {
        StrictMode::Full => 1,
        StrictMode::Plus => 2,
    };
    // directed depths within r, per vertex
    let depths: Vec<Vec<(usize, usize)>> = g
        .vertices()
        .map(|u| {
            h.directed_depths(u, r)
                .into_iter()
                .enumerate()
                .filter_map(|(x, d)| d.map(|d| (x, d)))
                .collect()
        })
        .collect();
    let mut row = vec![usize::MAX; g.n()];
    let mut bad = Vec::new();
    let mut checked = 0;
    for u in g.vertices() {
        for &(x, d) in &depths[u] {
            row[x] = d;
        }
        for (v, l) in idx.within(u) {
            if v <= u || l < lo || l > r {
                continue;
            }
            checked += 1;
            let meet = depths[v].iter().any(|&(x, d)| row[x] != usize::MAX && row[x] + d <= l);
            if !meet {
                bad.push((u, v, l));
            }
        }
        for &(x, _) in &depths[u] {
            row[x] = usize::MAX;
        }
    }
    Ok(VerificationReport::new(bad, h.max_outdegree(), checked))
}

/// Checks `Σ_{y∈gate(u,v)} p(u,y) + Σ_{y∈gate(v,u)} p(v,y) >= 1 - tol` on
/// every pair at distance `2..=r`.
pub fn verify_fractional(
    g: &Graph,
    idx: &DistanceIndex,
    p: &FractionalOrientation,
    r: usize,
    tol: f64,
) -> Result<VerificationReport> {
    idx.require(r)?;
    same_size(g, idx, p.n())?;
    let n = g.n();
    let mut incoming: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (u, w, x) in p.entries() {
        if x != 0.0 {
            incoming[w].push((u, x));
        }
    }
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut row = Vec::new();
    // gate masses of u towards v and of v towards u, scattered from u
    let mut from_u = vec![0.0; n];
    let mut from_v = vec![0.0; n];
    let at = |row: &[u16], v: usize| (row[v] != u16::MAX).then_some(row[v] as usize);
    for u in g.vertices() {
        idx.fill_row(u, &mut row);
        for &(w, x) in p.out_weights(u) {
            if r == 2 {
                for &v in g.neighbors(w) {
                    if at(&row, v) == Some(2) {
                        from_u[v] += x;
                    }
                }
            } else {
                for (v, d) in idx.within(w) {
                    if d + 1 <= r && at(&row, v) == Some(d + 1) {
                        from_u[v] += x;
                    }
                }
            }
        }
        for w in g.vertices() {
            let Some(j) = at(&row, w).filter(|&j| j >= 1 && j < r) else { continue };
            for &(v, x) in &incoming[w] {
                if at(&row, v) == Some(j + 1) {
                    from_v[v] += x;
                }
            }
        }
        for (v, l) in idx.within(u) {
            if v > u && (2..=r).contains(&l) {
                checked += 1;
                if from_u[v] + from_v[v] < 1.0 - tol {
                    bad.push((u, v, l));
                }
            }
            from_u[v] = 0.0;
            from_v[v] = 0.0;
        }
    }
    Ok(VerificationReport::new(bad, p.max_outdegree(), checked))
}

/// Weight 1 on every arc of `h`, 0 elsewhere.
pub fn to_fractional(h: &PartialOrientation) -> FractionalOrientation {
    FractionalOrientation::from(h)
}
