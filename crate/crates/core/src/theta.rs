//! Lovász and Schrijver theta functions as `λ_max` minimisation.
//!
//! Both are computed in the form
//!
//! ```text
//! minimise   λ_max(X)
//! subject to X symmetric, and for every pair (i, j) with A_ij = 0
//!            (diagonal included):  X_ij = 1   (Lovász)
//!                                  X_ij ≥ 1   (Schrijver)
//! ```
//!
//! via the epigraph `min t  s.t.  tI - X ⪰ 0`. The free variables are `t`,
//! the entries of `X` on edges, and (Schrijver only) slacks
//! `s_ij = X_ij - 1 > 0` on the constrained pairs. The solver follows the
//! central path of
//!
//! ```text
//! t/μ - log det(tI - X) - Σ log s_ij
//! ```
//!
//! with damped Newton steps, shrinking `μ` by a constant factor until the
//! barrier bound `ν·μ` (with `ν = n + #slacks`) drops below the tolerance.
//! Every iterate is feasible, so the reported `λ_max(X)` is always a valid
//! upper bound on the theta value.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{cholesky, inverse_from_factor, log_det_from_factor, solve_factored};
use crate::spectra::{lambda_max, lambda_min, SymMatrix};
use crate::{Error, Graph, Result};

/// Largest graph the dense barrier solver accepts.
pub const MAX_ORDER: usize = 128;

/// Smallest tolerance accepted by the solver.
pub const MIN_TOL: f64 = 1e-8;

/// Newton decrement (halved) at which a centring step stops.
const CENTRED_DECREMENT: f64 = 1e-10;

const NEAR_CENTRED_DECREMENT: f64 = 0.1;

/// Violation threshold for a matrix to count as feasible.
pub const FEASIBILITY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ThetaVariant {
    Lovasz,
    Schrijver,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    EqualOne,
    AtLeastOne,
}

/// The dual theta program of a graph: which entries of `X` are pinned.
#[derive(Clone, Debug)]
pub struct ThetaProgram {
    graph: Graph,
    variant: ThetaVariant,
}

impl ThetaProgram {
    pub fn new(graph: Graph, variant: ThetaVariant) -> Self {
        Self { graph, variant }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn variant(&self) -> ThetaVariant {
        self.variant
    }

    /// Constraint on `X_ij`; `None` for edge pairs, which are free.
    pub fn constraint(&self, i: usize, j: usize) -> Option<Constraint> {
        if self.graph.has_edge(i, j) {
            None
        } else {
            Some(match self.variant {
                ThetaVariant::Lovasz => Constraint::EqualOne,
                ThetaVariant::Schrijver => Constraint::AtLeastOne,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum SdpStatus {
    Converged,
    MaxIter,
    NumericalFailure,
}

/// One outer (barrier-parameter) iteration.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IterationRecord {
    pub step: usize,
    pub mu: f64,
    /// Epigraph variable `t`.
    pub objective: f64,
    /// `λ_min(tI - X)`.
    pub min_eig_slack: f64,
    pub newton_steps: usize,
}

#[derive(Clone, Debug)]
pub struct SdpSolution {
    /// `λ_max` of the returned optimiser.
    pub value: f64,
    pub x: SymMatrix,
    /// Barrier duality bound `ν·μ` at the last centred point.
    pub gap: f64,
    pub iterations: Vec<IterationRecord>,
    pub status: SdpStatus,
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub tol: f64,
    pub mu_start: f64,
    pub mu_factor: f64,
    pub max_outer: usize,
    pub max_newton: usize,
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            mu_start: 1.0,
            mu_factor: 5.0,
            max_outer: 200,
            max_newton: 60,
        }
    }
}

pub fn lovasz_theta(g: &Graph, tol: f64) -> Result<SdpSolution> {
    solve(
        &ThetaProgram::new(g.clone(), ThetaVariant::Lovasz),
        &SolverOptions::with_tol(tol),
    )
}

pub fn schrijver_theta(g: &Graph, tol: f64) -> Result<SdpSolution> {
    solve(
        &ThetaProgram::new(g.clone(), ThetaVariant::Schrijver),
        &SolverOptions::with_tol(tol),
    )
}

/// `λ_max(X)` and the largest violation of the program's constraints:
/// `|X_ij - 1|` for equalities, `max(0, 1 - X_ij)` for inequalities.
pub fn verify_feasible(program: &ThetaProgram, x: &SymMatrix) -> Result<(f64, f64)> {
    let n = program.graph.n();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    let mut violation: f64 = 0.0;
    for i in 0..n {
        for j in 0..=i {
            let v = x.get(i, j);
            let viol = match program.constraint(i, j) {
                None => 0.0,
                Some(Constraint::EqualOne) => libm::fabs(v - 1.0),
                Some(Constraint::AtLeastOne) => (1.0 - v).max(0.0),
            };
            violation = violation.max(viol);
        }
    }
    Ok((lambda_max(x, 1e-12)?, violation))
}

/// Position of an optimisation variable inside `X`.
#[derive(Clone, Copy)]
struct Entry {
    i: usize,
    j: usize,
    slack: bool,
}

struct Barrier<'a> {
    n: usize,
    base: Vec<f64>,
    entries: &'a [Entry],
}

impl Barrier<'_> {
    fn x_dense(&self, y: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x = self.base.clone();
        for (e, &v) in self.entries.iter().zip(&y[1..]) {
            x[e.i * n + e.j] += v;
            if e.i != e.j {
                x[e.j * n + e.i] += v;
            }
        }
        x
    }

    /// Cholesky factor of `tI - X(y)`, or `None` outside the domain.
    fn slack_factor(&self, y: &[f64]) -> Option<Vec<f64>> {
        if self
            .entries
            .iter()
            .zip(&y[1..])
            .any(|(e, &v)| e.slack && !(v > 0.0))
        {
            return None;
        }
        let n = self.n;
        let mut s = self.x_dense(y);
        for v in s.iter_mut() {
            *v = -*v;
        }
        for i in 0..n {
            s[i * n + i] += y[0];
        }
        cholesky(&mut s, n).then_some(s)
    }

    /// `t/μ - log det S - Σ log s`, or `None` outside the domain.
    fn value(&self, y: &[f64], mu: f64) -> Option<f64> {
        let l = self.slack_factor(y)?;
        let mut f = y[0] / mu - log_det_from_factor(&l, self.n);
        for (e, &v) in self.entries.iter().zip(&y[1..]) {
            if e.slack {
                f -= libm::log(v);
            }
        }
        Some(f)
    }

    /// Gradient and Hessian (full row-major) at a domain point.
    fn derivatives(&self, y: &[f64], l: &[f64], mu: f64) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let p = y.len();
        let w = inverse_from_factor(l, n);
        let mut w2 = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = (0..n).map(|k| w[i * n + k] * w[k * n + j]).sum();
                w2[i * n + j] = s;
                w2[j * n + i] = s;
            }
        }
        let wij = |i: usize, j: usize| w[i * n + j];

        let mut grad = vec![0.0; p];
        let mut hess = vec![0.0; p * p];
        grad[0] = 1.0 / mu - (0..n).map(|i| w[i * n + i]).sum::<f64>();
        hess[0] = w.iter().map(|v| v * v).sum();
        for (k, e) in self.entries.iter().enumerate() {
            let a = k + 1;
            let c = if e.i == e.j { 1.0 } else { 2.0 };
            grad[a] = c * wij(e.i, e.j);
            if e.slack {
                grad[a] -= 1.0 / y[a];
            }
            let h = -c * w2[e.i * n + e.j];
            hess[a] = h;
            hess[a * p] = h;
            for (k2, e2) in self.entries.iter().enumerate().take(k + 1) {
                let b = k2 + 1;
                let h = match (e.i == e.j, e2.i == e2.j) {
                    (false, false) => {
                        2.0 * (wij(e.i, e2.i) * wij(e.j, e2.j) + wij(e.i, e2.j) * wij(e.j, e2.i))
                    }
                    (true, false) => 2.0 * wij(e.i, e2.i) * wij(e.i, e2.j),
                    (false, true) => 2.0 * wij(e2.i, e.i) * wij(e2.i, e.j),
                    (true, true) => wij(e.i, e2.i) * wij(e.i, e2.i),
                };
                hess[a * p + b] = h;
                hess[b * p + a] = h;
            }
            if e.slack {
                hess[a * p + a] += 1.0 / (y[a] * y[a]);
            }
        }
        (grad, hess)
    }
}

/// Newton direction, regularising the Hessian if it is numerically
/// indefinite.
fn newton_direction(hess: &[f64], grad: &[f64]) -> Option<Vec<f64>> {
    let p = grad.len();
    let scale = (0..p).map(|i| hess[i * p + i]).fold(0.0f64, f64::max);
    for shift in [0.0, 1e-14, 1e-12, 1e-10, 1e-8] {
        let mut h = hess.to_vec();
        for i in 0..p {
            h[i * p + i] += shift * scale;
        }
        if cholesky(&mut h, p) {
            let mut d: Vec<f64> = grad.iter().map(|g| -g).collect();
            solve_factored(&h, p, &mut d);
            if d.iter().all(|v| v.is_finite()) {
                return Some(d);
            }
        }
    }
    None
}

pub fn solve(program: &ThetaProgram, options: &SolverOptions) -> Result<SdpSolution> {
    let g = &program.graph;
    let n = g.n();
    if n == 0 || n > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "theta solver supports 1..={MAX_ORDER} vertices, got {n}"
        )));
    }
    if !(options.tol >= MIN_TOL) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be at least {MIN_TOL:e}, got {}",
            options.tol
        )));
    }

    let schrijver = program.variant == ThetaVariant::Schrijver;
    let mut base = vec![0.0; n * n];
    let mut entries = Vec::new();
    let mut y = vec![0.0];
    for i in 0..n {
        for j in 0..=i {
            let edge = g.has_edge(i, j);
            if !edge {
                base[i * n + j] = 1.0;
                base[j * n + i] = 1.0;
            }
            if edge || schrijver {
                entries.push(Entry { i, j, slack: !edge });
                // edges start at 0, slacks at 1 (X_ij = 2)
                y.push(if edge { 0.0 } else { 1.0 });
            }
        }
    }
    let barrier = Barrier {
        n,
        base,
        entries: &entries,
    };
    let nu = (n + entries.iter().filter(|e| e.slack).count()) as f64;

    let x0 = dense_to_sym(&barrier.x_dense(&y), n);
    y[0] = lambda_max(&x0, 1e-12)? + 1.0;

    let mut mu = options.mu_start;
    let mut iterations = Vec::new();
    let mut status = SdpStatus::MaxIter;
    let mut gap = f64::INFINITY;

    'outer: for step in 0..options.max_outer {
        let mut newton_steps = 0;
        let mut centred = false;
        let mut decrement = f64::INFINITY;
        while newton_steps < options.max_newton {
            let l = barrier
                .slack_factor(&y)
                .expect("iterate stays in the domain");
            let (grad, hess) = barrier.derivatives(&y, &l, mu);
            let Some(dir) = newton_direction(&hess, &grad) else {
                status = SdpStatus::NumericalFailure;
                break 'outer;
            };
            let slope: f64 = grad.iter().zip(&dir).map(|(a, b)| a * b).sum();
            decrement = -slope;
            if decrement / 2.0 <= CENTRED_DECREMENT {
                centred = true;
                break;
            }
            let f0 = barrier.value(&y, mu).expect("domain point");
            let mut alpha = 1.0;
            let mut accepted = None;
            for _ in 0..60 {
                let trial: Vec<f64> = y.iter().zip(&dir).map(|(a, d)| a + alpha * d).collect();
                if let Some(f) = barrier.value(&trial, mu) {
                    if f <= f0 + 0.25 * alpha * slope {
                        accepted = Some(trial);
                        break;
                    }
                }
                alpha *= 0.5;
            }
            newton_steps += 1;
            match accepted {
                Some(next) => y = next,
                None => {
                    // no progress possible at this precision; the point is
                    // as centred as floating point allows
                    if decrement < NEAR_CENTRED_DECREMENT {
                        centred = true;
                        break;
                    }
                    status = SdpStatus::NumericalFailure;
                    break 'outer;
                }
            }
        }
        // Newton stalls near the boundary once S is badly conditioned; a
        // decrement below 0.1 still keeps t within a few ν·μ of optimal.
        if !centred && decrement < NEAR_CENTRED_DECREMENT {
            centred = true;
        }

        let x = dense_to_sym(&barrier.x_dense(&y), n);
        let slack_min = lambda_min(&shifted(&x, y[0]), 1e-12).unwrap_or(f64::NAN);
        iterations.push(IterationRecord {
            step,
            mu,
            objective: y[0],
            min_eig_slack: slack_min,
            newton_steps,
        });
        if !centred {
            status = SdpStatus::MaxIter;
            break;
        }
        gap = nu * mu;
        if gap <= options.tol {
            status = SdpStatus::Converged;
            break;
        }
        mu /= options.mu_factor;
    }

    let x = dense_to_sym(&barrier.x_dense(&y), n);
    let (value, violation) = verify_feasible(program, &x)?;
    if status == SdpStatus::Converged && violation > FEASIBILITY_TOL {
        status = SdpStatus::NumericalFailure;
    }
    Ok(SdpSolution {
        value,
        x,
        gap,
        iterations,
        status,
    })
}

fn dense_to_sym(a: &[f64], n: usize) -> SymMatrix {
    SymMatrix::from_fn(n, |i, j| a[i * n + j])
}

fn shifted(x: &SymMatrix, t: f64) -> SymMatrix {
    SymMatrix::from_fn(x.dim(), |i, j| {
        if i == j {
            t - x.get(i, j)
        } else {
            -x.get(i, j)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::hamming_graph;

    #[test]
    fn complete_and_edgeless() {
        let s = lovasz_theta(&Graph::complete(6), 1e-7).unwrap();
        assert_eq!(s.status, SdpStatus::Converged);
        assert!((s.value - 1.0).abs() < 1e-6, "{}", s.value);
        let s = schrijver_theta(&Graph::empty(4), 1e-7).unwrap();
        assert_eq!(s.status, SdpStatus::Converged);
        assert!((s.value - 4.0).abs() < 1e-6, "{}", s.value);
        let s = lovasz_theta(&Graph::empty(4), 1e-7).unwrap();
        assert!((s.value - 4.0).abs() < 1e-6, "{}", s.value);
    }

    #[test]
    fn five_cycle() {
        let c5 = Graph::cycle(5).unwrap();
        let s = lovasz_theta(&c5, 1e-7).unwrap();
        assert_eq!(s.status, SdpStatus::Converged);
        assert!((s.value - libm::sqrt(5.0)).abs() < 1e-4, "{}", s.value);
    }

    #[test]
    fn four_cycle_schrijver() {
        let s = schrijver_theta(&Graph::cycle(4).unwrap(), 1e-7).unwrap();
        assert!((s.value - 2.0).abs() < 1e-4, "{}", s.value);
    }

    #[test]
    fn guards() {
        assert!(lovasz_theta(&Graph::empty(0), 1e-6).is_err());
        assert!(lovasz_theta(&Graph::empty(129), 1e-6).is_err());
        assert!(lovasz_theta(&Graph::empty(3), 1e-9).is_err());
    }

    #[test]
    fn verify_feasible_identity_violation() {
        let g = hamming_graph(2, &[1]).unwrap();
        let p = ThetaProgram::new(g, ThetaVariant::Schrijver);
        let (lmax, viol) = verify_feasible(&p, &SymMatrix::identity(4)).unwrap();
        assert_eq!(lmax, 1.0);
        assert_eq!(viol, 1.0);
        assert!(verify_feasible(&p, &SymMatrix::identity(3)).is_err());
    }
}
