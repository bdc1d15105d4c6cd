use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::graph::distance::gate_unchecked;
use crate::graph::{DistanceIndex, Graph};
use crate::lp::scalar::{ratio, Scalar};
use crate::{Error, Result};

/// Pair weights `y` (keys `(u, v)` with `u < v`) and the lower bound they
/// certify.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCertificate {
    pub y: BTreeMap<(usize, usize), f64>,
    pub value: f64,
}

/// `value = Σ y / Σ_u x_u` with `x_u = max_{z ∈ N(u)} Σ_{v ∈ R_r(u,z)} y_uv`.
///
/// Any fractional or weak r-guidance system has maximum outdegree at least
/// `value`. `0/0` is defined as 0.
pub fn evaluate_dual(
    g: &Graph,
    idx: &DistanceIndex,
    r: usize,
    y: &BTreeMap<(usize, usize), f64>,
) -> Result<DualCertificate> {
    let value = ratio_of(g, idx, r, y)?;
    Ok(DualCertificate { y: y.clone(), value })
}

/// Exact rational version of [`evaluate_dual`].
pub fn evaluate_dual_exact(
    g: &Graph,
    idx: &DistanceIndex,
    r: usize,
    y: &BTreeMap<(usize, usize), BigRational>,
) -> Result<BigRational> {
    ratio_of(g, idx, r, y)
}

fn ratio_of<S: Scalar>(
    g: &Graph,
    idx: &DistanceIndex,
    r: usize,
    y: &BTreeMap<(usize, usize), S>,
) -> Result<S> {
    idx.require(r)?;
    let n = g.n();
    let mut by_vertex: Vec<Vec<(usize, usize, &S)>> = vec![Vec::new(); n];
    let mut total = S::zero();
    for (&(a, b), w) in y {
        g.check_vertex(a)?;
        g.check_vertex(b)?;
        if w.is_neg(0.0) {
            return Err(Error::InvalidParameter(format!("negative dual weight on {{{a},{b}}}")));
        }
        let (u, v) = (a.min(b), a.max(b));
        let l = match idx.dist(u, v) {
            Some(l) if (2..=r).contains(&l) => l,
            d => {
                return Err(Error::InvalidParameter(format!(
                    "dual weight on {{{u},{v}}} at distance {} outside 2..={r}",
                    d.map_or("> radius".to_string(), |d| d.to_string())
                )))
            }
        };
        total = total.add(w);
        by_vertex[u].push((v, l, w));
        by_vertex[v].push((u, l, w));
    }
    let mut x_sum = S::zero();
    let mut acc: Vec<S> = vec![S::zero(); n];
    for u in g.vertices() {
        if by_vertex[u].is_empty() {
            continue;
        }
        for &(v, l, w) in &by_vertex[u] {
            for z in gate_unchecked(g, idx, u, v, l) {
                acc[z] = acc[z].add(w);
            }
        }
        let mut best = S::zero();
        for &z in g.neighbors(u) {
            if acc[z] > best {
                best = acc[z].clone();
            }
            acc[z] = S::zero();
        }
        x_sum = x_sum.add(&best);
    }
    if x_sum.is_pos(0.0) {
        Ok(total.div(&x_sum))
    } else {
        Ok(S::zero())
    }
}

/// Pair weights `1/(deg_{G[Z]}(z) − 1)` on distance-2 pairs inside `Z` whose
/// common neighbor `z` lies in `Z`, as exact rationals.
pub fn girth5_weights_exact(
    g: &Graph,
    idx: &DistanceIndex,
    z: &[usize],
) -> Result<BTreeMap<(usize, usize), BigRational>> {
    idx.require(2)?;
    let mut in_z = vec![false; g.n()];
    for &v in z {
        g.check_vertex(v)?;
        in_z[v] = true;
    }
    let deg_z = |v: usize| g.neighbors(v).iter().filter(|&&w| in_z[w]).count();
    for &v in z {
        if deg_z(v) < 2 {
            return Err(Error::Precondition(format!("vertex {v} has degree {} < 2 in G[Z]", deg_z(v))));
        }
    }
    let mut y = BTreeMap::new();
    for &u in z {
        for (v, d) in idx.within(u) {
            if v <= u || !in_z[v] || d > 2 {
                continue;
            }
            let common: Vec<usize> =
                g.neighbors(u).iter().copied().filter(|&w| g.has_edge(w, v)).collect();
            if d == 1 && !common.is_empty() {
                return Err(Error::Precondition(format!("triangle on {u}, {v}, {}", common[0])));
            }
            if d == 2 {
                if common.len() > 1 {
                    return Err(Error::Precondition(format!(
                        "{u} and {v} share neighbors {} and {} (4-cycle)",
                        common[0], common[1]
                    )));
                }
                let c = common[0];
                if in_z[c] {
                    y.insert((u, v), ratio(1, deg_z(c) as i64 - 1));
                }
            }
        }
    }
    Ok(y)
}

/// The girth-5 certificate on `Z`; its value is `|E(G[Z])| / |Z|`.
pub fn girth5_certificate(g: &Graph, idx: &DistanceIndex, z: &[usize]) -> Result<DualCertificate> {
    let exact = girth5_weights_exact(g, idx, z)?;
    let value = evaluate_dual_exact(g, idx, 2, &exact)?;
    let y = exact.iter().map(|(&k, w)| (k, Scalar::to_f64(w))).collect();
    Ok(DualCertificate { y, value: Scalar::to_f64(&value) })
}
