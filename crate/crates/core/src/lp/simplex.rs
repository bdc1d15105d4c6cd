//! Dense tableau simplex for `max cᵀx, Ax <= b, x >= 0` with `b >= 0`, so the
//! slack basis is feasible from the start.
//!
//! The guidance programs are massively degenerate (almost every right-hand
//! side is zero). In floating point the tableau carries a second right-hand
//! side, `b + δ` with small distinct `δ_i > 0`, which drives the ratio test;
//! once that phase is optimal the true column is restored and any basic
//! variable it leaves below zero is repaired with dual simplex pivots.
//! Exact scalars skip the perturbation and rely on Bland's rule.

use super::scalar::Scalar;
use crate::{Error, Result};

/// Consecutive degenerate pivots tolerated under Dantzig pricing before
/// switching to Bland's rule.
const DEGENERATE_STREAK: usize = 25;

/// Entries whose magnitude falls below this are flushed to zero (no effect
/// on exact scalars).
const FLUSH: f64 = 1e-13;

/// Scale of the right-hand-side perturbation.
const PERTURB: f64 = 1e-6;

/// Feasibility slack of the Harris ratio test.
const HARRIS: f64 = 1e-9;

pub(crate) struct Outcome<S> {
    /// Value of each structural variable.
    pub x: Vec<S>,
    /// Shadow price of each row (the optimal solution of the dual LP).
    pub row_duals: Vec<S>,
    pub value: S,
    pub iterations: usize,
}

struct Tableau<S> {
    m: usize,
    width: usize,
    t: Vec<S>,
    obj: Vec<S>,
    basis: Vec<usize>,
    nz: Vec<usize>,
}

impl<S: Scalar> Tableau<S> {
    fn at(&self, i: usize, k: usize) -> &S {
        &self.t[i * self.width + k]
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let width = self.width;
        let inv = S::one().div(self.at(r, j));
        self.nz.clear();
        for k in 0..width {
            let idx = r * width + k;
            if !self.t[idx].is_zero() {
                self.t[idx] = self.t[idx].mul(&inv);
                self.nz.push(k);
            }
        }
        let pivot_row: Vec<(usize, S)> = self.nz.iter().map(|&k| (k, self.t[r * width + k].clone())).collect();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * width + j].clone();
            if f.is_zero() {
                continue;
            }
            let base = i * width;
            for (k, v) in &pivot_row {
                let cell = &mut self.t[base + k];
                *cell = flush(cell.sub(&f.mul(v)));
            }
            self.t[base + j] = S::zero();
        }
        let f = self.obj[j].clone();
        if !f.is_zero() {
            for (k, v) in &pivot_row {
                self.obj[*k] = flush(self.obj[*k].sub(&f.mul(v)));
            }
            self.obj[j] = S::zero();
        }
        self.basis[r] = j;
    }
}

/// Two-pass ratio test: the step is bounded with the rows relaxed by
/// `HARRIS`, then the largest pivot within that bound leaves. Small pivots
/// are what lets the dense tableau drift.
fn harris_ratio<S: Scalar>(tab: &Tableau<S>, j: usize, col: usize, tol: f64) -> Option<(usize, S)> {
    let slack = S::from_f64(HARRIS);
    let mut bound: Option<S> = None;
    for i in 0..tab.m {
        let a = tab.at(i, j);
        if a.is_pos(tol) {
            let q = tab.at(i, col).add(&slack).div(a);
            if bound.as_ref().is_none_or(|b| q < *b) {
                bound = Some(q);
            }
        }
    }
    let bound = bound?;
    let mut best: Option<usize> = None;
    for i in 0..tab.m {
        let a = tab.at(i, j);
        if a.is_pos(tol) && !(tab.at(i, col).div(a) > bound) && best.is_none_or(|b| a > tab.at(b, j)) {
            best = Some(i);
        }
    }
    best.map(|i| {
        let w = tab.at(i, col);
        (i, if w.is_neg(0.0) { S::zero() } else { w.div(tab.at(i, j)) })
    })
}

/// Textbook ratio test with ties (within `tol`) going to the lowest basic
/// index.
fn bland_ratio<S: Scalar>(tab: &Tableau<S>, j: usize, col: usize, tol: f64) -> Option<(usize, S)> {
    let mut leave: Option<(usize, S)> = None;
    for i in 0..tab.m {
        let a = tab.at(i, j);
        if a.is_pos(tol) {
            let w = tab.at(i, col);
            let ratio = if w.is_neg(0.0) { S::zero() } else { w.div(a) };
            let better = match &leave {
                None => true,
                Some((li, lr)) => {
                    let gap = lr.sub(&ratio);
                    gap.is_pos(tol) || (!gap.is_neg(tol) && tab.basis[i] < tab.basis[*li])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
    }
    leave
}

pub(crate) fn maximize<S: Scalar>(
    rows: &[Vec<(usize, S)>],
    b: &[S],
    c: &[S],
    tol: f64,
    max_iterations: usize,
) -> Result<Outcome<S>> {
    let m = rows.len();
    let nvar = c.len();
    let cols = nvar + m;
    // columns: structural, slack, true rhs, ratio-test rhs
    let (rhs, work) = (cols, cols + 1);
    let width = cols + 2;
    let perturb = !S::is_exact();
    let mut t = vec![S::zero(); m * width];
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row {
            t[i * width + j] = v.clone();
        }
        t[i * width + nvar + i] = S::one();
        if b[i].is_neg(0.0) {
            return Err(Error::Numerical("right-hand side must be non-negative".into()));
        }
        t[i * width + rhs] = b[i].clone();
        t[i * width + work] = if perturb {
            // distinct, deterministic offsets in [1, 2) * PERTURB
            let frac = ((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 11) as f64 / (1u64 << 53) as f64;
            b[i].add(&S::from_f64(PERTURB * (1.0 + frac)))
        } else {
            b[i].clone()
        };
    }
    let mut obj = vec![S::zero(); width];
    for (j, cj) in c.iter().enumerate() {
        obj[j] = cj.neg();
    }
    let mut tab = Tableau { m, width, t, obj, basis: (nvar..cols).collect(), nz: Vec::with_capacity(width) };

    let mut iterations = 0;
    let mut streak = 0;
    let count = |iterations: &mut usize| {
        *iterations += 1;
        if *iterations > max_iterations {
            Err(Error::Numerical(format!("simplex stalled after {max_iterations} pivots")))
        } else {
            Ok(())
        }
    };
    loop {
        let bland = streak >= DEGENERATE_STREAK;
        let mut enter = None;
        for j in 0..cols {
            if tab.obj[j].is_neg(tol) {
                match enter {
                    None => enter = Some(j),
                    Some(e) if !bland && tab.obj[j] < tab.obj[e] => enter = Some(j),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
        }
        let Some(j) = enter else { break };

        let Some((r, ratio)) = (if bland { bland_ratio(&tab, j, work, tol) } else { harris_ratio(&tab, j, work, tol) })
        else {
            return Err(Error::Numerical("linear program is unbounded".into()));
        };
        count(&mut iterations)?;
        if ratio.is_pos(tol) {
            streak = 0;
        } else {
            streak += 1;
        }
        tab.pivot(r, j);
    }

    // dual simplex on the true right-hand side; the objective row stays
    // dual feasible throughout
    if perturb {
        loop {
            let mut leave: Option<usize> = None;
            for i in 0..m {
                if tab.at(i, rhs).is_neg(tol) && leave.is_none_or(|l| tab.at(i, rhs) < tab.at(l, rhs)) {
                    leave = Some(i);
                }
            }
            let Some(r) = leave else { break };
            let mut enter: Option<(usize, S)> = None;
            for j in 0..cols {
                let a = tab.at(r, j);
                if a.is_neg(tol) {
                    let d = if tab.obj[j].is_neg(0.0) { S::zero() } else { tab.obj[j].clone() };
                    let ratio = d.div(&a.neg());
                    if enter.as_ref().is_none_or(|(_, best)| ratio < *best) {
                        enter = Some((j, ratio));
                    }
                }
            }
            let Some((j, _)) = enter else {
                return Err(Error::Numerical("perturbed optimum does not restore to a feasible basis".into()));
            };
            count(&mut iterations)?;
            tab.pivot(r, j);
        }
    }

    let mut x = vec![S::zero(); nvar];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < nvar {
            let v = tab.at(i, rhs);
            x[bv] = if v.is_neg(0.0) { S::zero() } else { v.clone() };
        }
    }
    let row_duals = (0..m).map(|i| tab.obj[nvar + i].clone()).collect();
    Ok(Outcome { x, row_duals, value: tab.obj[rhs].clone(), iterations })
}

fn flush<S: Scalar>(v: S) -> S {
    if S::is_exact() || v.is_pos(FLUSH) || v.is_neg(FLUSH) {
        v
    } else {
        S::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::scalar::ratio;
    use num_rational::BigRational;

    #[test]
    fn textbook_instance() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let rows = vec![vec![(0, 1.0)], vec![(1, 2.0)], vec![(0, 3.0), (1, 2.0)]];
        let out = maximize(&rows, &[4.0, 12.0, 18.0], &[3.0, 5.0], 1e-9, 100).unwrap();
        assert!((out.value - 36.0).abs() < 1e-9);
        assert!((out.x[0] - 2.0).abs() < 1e-9 && (out.x[1] - 6.0).abs() < 1e-9);
        // dual: (0, 3/2, 1)
        let want = [0.0, 1.5, 1.0];
        for (d, w) in out.row_duals.iter().zip(want) {
            assert!((d - w).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_matches() {
        let r = |a| ratio(a, 1);
        let rows = vec![vec![(0, r(1))], vec![(1, r(2))], vec![(0, r(3)), (1, r(2))]];
        let out = maximize::<BigRational>(&rows, &[r(4), r(12), r(18)], &[r(3), r(5)], 0.0, 100).unwrap();
        assert_eq!(out.value, r(36));
        assert_eq!(out.row_duals[1], ratio(3, 2));
    }

    #[test]
    fn unbounded_is_an_error() {
        let rows = vec![vec![(0, 1.0), (1, -1.0)]];
        assert!(maximize(&rows, &[1.0], &[0.0, 1.0], 1e-9, 100).is_err());
    }
}
