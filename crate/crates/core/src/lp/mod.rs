//! The fractional guidance linear program
//!
//! ```text
//! minimize c
//!   Σ_v p(u,v) <= c                                  for every vertex u
//!   Σ_{y∈gate(u,v)} p(u,y) + Σ_{y∈gate(v,u)} p(v,y) >= 1  for every pair at distance 2..=r
//!   p >= 0
//! ```
//!
//! It is solved through its dual, `max Σ y` subject to
//! `Σ_{v ∈ R_r(u,z)} y_uv <= x_u` for every ordered edge `(u, z)` and
//! `Σ x <= 1`. The dual has a feasible slack basis at the origin, so one
//! simplex phase suffices; the optimal `p` and `c` are read off the shadow
//! prices of its rows, and the optimal `y` is itself a dual certificate.

pub mod scalar;
mod simplex;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;

use crate::graph::distance::gate_unchecked;
use crate::graph::{DistanceIndex, FractionalOrientation, Graph, Radius};
use crate::verify::{evaluate_dual, DualCertificate};
use crate::Result;
use scalar::Scalar;

pub const DEFAULT_TOL: f64 = 1e-8;

/// Exact re-solves are refused above this many LP variables.
pub const EXACT_VARIABLE_LIMIT: usize = 2_000;

/// One covering row: the pair `{u, v}` at distance `dist` and the indices of
/// the pair variables in `gate(u,v)` (from `u`) and `gate(v,u)` (from `v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverRow {
    pub u: usize,
    pub v: usize,
    pub dist: usize,
    pub vars: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    n: usize,
    /// Ordered adjacent pairs; variable `i` is `p(arcs[i])`. Lexicographic.
    arcs: Vec<(usize, usize)>,
    /// `first_arc[u]..first_arc[u + 1]` are the arcs leaving `u`.
    first_arc: Vec<usize>,
    covers: Vec<CoverRow>,
}

impl LpProblem {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of `p` variables (the scalar `c` is extra).
    pub fn pair_variable_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn capacity_row_count(&self) -> usize {
        self.n
    }

    pub fn covering_row_count(&self) -> usize {
        self.covers.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn covers(&self) -> &[CoverRow] {
        &self.covers
    }

    fn arc_index(&self, u: usize, z: usize) -> usize {
        let range = self.first_arc[u]..self.first_arc[u + 1];
        range.start + self.arcs[range].binary_search(&(u, z)).expect("arc exists")
    }

    /// CPLEX LP text, for cross-checking with external solvers.
    pub fn to_lp_text(&self) -> String {
        let var = |i: usize| format!("p_{}_{}", self.arcs[i].0, self.arcs[i].1);
        let mut s = String::from("\\ fractional guidance program\nMinimize\n obj: c\nSubject To\n");
        for u in 0..self.n {
            write!(s, " cap_{u}: c").unwrap();
            for i in self.first_arc[u]..self.first_arc[u + 1] {
                write!(s, " - {}", var(i)).unwrap();
            }
            s.push_str(" >= 0\n");
        }
        for row in &self.covers {
            write!(s, " cov_{}_{}:", row.u, row.v).unwrap();
            for (k, &i) in row.vars.iter().enumerate() {
                write!(s, "{}{}", if k == 0 { " " } else { " + " }, var(i)).unwrap();
            }
            s.push_str(" >= 1\n");
        }
        s.push_str("End\n");
        s
    }

    /// Dual rows: for arc `(u, z)`, `Σ_{rows through (u,z)} y − x_u <= 0`,
    /// then `Σ x <= 1`. Columns are the cover rows followed by `x_0..x_n`.
    fn dual_rows<S: Scalar>(&self) -> (Vec<Vec<(usize, S)>>, Vec<S>, Vec<S>) {
        let p = self.covers.len();
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.arcs.len() + 1];
        for (k, row) in self.covers.iter().enumerate() {
            for &i in &row.vars {
                rows[i].push((k, S::one()));
            }
        }
        for (i, &(u, _)) in self.arcs.iter().enumerate() {
            rows[i].push((p + u, S::from_int(-1)));
        }
        rows[self.arcs.len()] = (0..self.n).map(|u| (p + u, S::one())).collect();
        let mut b = vec![S::zero(); self.arcs.len()];
        b.push(S::one());
        let mut c = vec![S::one(); p];
        c.extend((0..self.n).map(|_| S::zero()));
        (rows, b, c)
    }
}

/// One capacity row per vertex and one covering row per unordered pair at
/// distance `2..=r`, both in lexicographic order.
pub fn build_guidance_lp(g: &Graph, idx: &DistanceIndex, r: usize) -> Result<LpProblem> {
    idx.require(r)?;
    let mut arcs = Vec::with_capacity(2 * g.m());
    let mut first_arc = Vec::with_capacity(g.n() + 1);
    for u in g.vertices() {
        first_arc.push(arcs.len());
        arcs.extend(g.neighbors(u).iter().map(|&z| (u, z)));
    }
    first_arc.push(arcs.len());
    let mut problem = LpProblem { n: g.n(), arcs, first_arc, covers: Vec::new() };
    let covers = idx
        .pairs(2, r)
        .map(|(u, v, l)| {
            let mut vars: Vec<usize> = gate_unchecked(g, idx, u, v, l)
                .into_iter()
                .map(|z| problem.arc_index(u, z))
                .chain(gate_unchecked(g, idx, v, u, l).into_iter().map(|z| problem.arc_index(v, z)))
                .collect();
            vars.sort_unstable();
            CoverRow { u, v, dist: l, vars }
        })
        .collect();
    problem.covers = covers;
    Ok(problem)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    /// The solver finished but the recovered solution misses a feasibility
    /// or duality check by more than the tolerance.
    InfeasibleDegenerate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub p: FractionalOrientation,
    pub c: f64,
    /// Optimal dual weights on covering rows, keyed `(u, v)` with `u < v`.
    /// Only positive weights are stored.
    pub dual_y: BTreeMap<(usize, usize), f64>,
    pub status: LpStatus,
    pub iterations: usize,
    /// Largest violation of a primal row by `p` and `c`.
    pub primal_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactLpSolution {
    pub c: BigRational,
    /// Positive weights `((u, z), p(u, z))`, lexicographic.
    pub p: Vec<((usize, usize), BigRational)>,
    pub dual_y: BTreeMap<(usize, usize), BigRational>,
    pub iterations: usize,
}

impl ExactLpSolution {
    pub fn c_f64(&self) -> f64 {
        self.c.to_f64()
    }

    /// The rational weights rounded to the nearest `f64`.
    pub fn fractional(&self, n: usize) -> FractionalOrientation {
        let mut p = FractionalOrientation::zeros(n);
        for ((u, z), w) in &self.p {
            p.set_unchecked(*u, *z, w.to_f64());
        }
        p
    }

    pub fn dual_f64(&self) -> BTreeMap<(usize, usize), f64> {
        self.dual_y.iter().map(|(&k, w)| (k, w.to_f64())).collect()
    }
}

fn iteration_budget(problem: &LpProblem) -> usize {
    200 * (problem.arcs.len() + problem.covers.len() + problem.n + 10)
}

struct Raw<S> {
    c: S,
    p: Vec<S>,
    y: Vec<S>,
    iterations: usize,
}

fn solve_raw<S: Scalar>(problem: &LpProblem, tol: f64) -> Result<Raw<S>> {
    if problem.covers.is_empty() {
        return Ok(Raw { c: S::zero(), p: vec![S::zero(); problem.arcs.len()], y: Vec::new(), iterations: 0 });
    }
    let (rows, b, c) = problem.dual_rows::<S>();
    let out = simplex::maximize(&rows, &b, &c, tol, iteration_budget(problem))?;
    let p = out.row_duals[..problem.arcs.len()].to_vec();
    let y = out.x[..problem.covers.len()].to_vec();
    Ok(Raw { c: out.value, p, y, iterations: out.iterations })
}

/// Solves in double precision.
pub fn solve(problem: &LpProblem, tol: f64) -> Result<LpSolution> {
    if !(tol > 0.0) {
        return Err(crate::Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let raw = solve_raw::<f64>(problem, tol)?;
    let mut p = FractionalOrientation::zeros(problem.n);
    for (i, &(u, z)) in problem.arcs.iter().enumerate() {
        if raw.p[i] > 0.0 {
            p.set_unchecked(u, z, raw.p[i]);
        }
    }
    let dual_y = problem
        .covers
        .iter()
        .zip(&raw.y)
        .filter(|(_, &w)| w > 0.0)
        .map(|(row, &w)| ((row.u, row.v), w))
        .collect::<BTreeMap<_, _>>();

    let mut residual: f64 = 0.0;
    for u in 0..problem.n {
        let load: f64 = (problem.first_arc[u]..problem.first_arc[u + 1]).map(|i| raw.p[i].max(0.0)).sum();
        residual = residual.max(load - raw.c);
    }
    for row in &problem.covers {
        let mass: f64 = row.vars.iter().map(|&i| raw.p[i].max(0.0)).sum();
        residual = residual.max(1.0 - mass);
    }
    let gap = (raw.c - raw.y.iter().sum::<f64>()).abs();
    let scale = 1.0 + raw.c.abs();
    let status = if residual <= tol * scale * 10.0 && gap <= tol * scale * 10.0 {
        LpStatus::Optimal
    } else {
        LpStatus::InfeasibleDegenerate
    };
    Ok(LpSolution { p, c: raw.c, dual_y, status, iterations: raw.iterations, primal_residual: residual.max(0.0) })
}

/// Exact rational solve; refuses problems above [`EXACT_VARIABLE_LIMIT`]
/// variables.
pub fn solve_exact(problem: &LpProblem) -> Result<ExactLpSolution> {
    let vars = problem.arcs.len() + 1;
    if vars > EXACT_VARIABLE_LIMIT {
        return Err(crate::Error::InvalidParameter(format!(
            "exact mode supports at most {EXACT_VARIABLE_LIMIT} variables, problem has {vars}"
        )));
    }
    let raw = solve_raw::<BigRational>(problem, 0.0)?;
    let p = problem
        .arcs
        .iter()
        .zip(raw.p)
        .filter(|(_, w)| w.is_pos(0.0))
        .map(|(&a, w)| (a, w))
        .collect();
    let dual_y = problem
        .covers
        .iter()
        .zip(raw.y)
        .filter(|(_, w)| w.is_pos(0.0))
        .map(|(row, w)| ((row.u, row.v), w))
        .collect();
    Ok(ExactLpSolution { c: raw.c, p, dual_y, iterations: raw.iterations })
}

/// Builds and solves the program for `g` and `r`; returns the optimal
/// fractional system, its value and the matching dual certificate.
pub fn fractional_guidance(g: &Graph, r: usize, tol: f64) -> Result<(FractionalOrientation, f64, DualCertificate)> {
    let idx = DistanceIndex::build(g, Radius::Bounded(r));
    let problem = build_guidance_lp(g, &idx, r)?;
    let sol = solve(&problem, tol)?;
    let cert = evaluate_dual(g, &idx, r, &sol.dual_y)?;
    Ok((sol.p, sol.c, cert))
}
