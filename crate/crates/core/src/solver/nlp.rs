//! Full symmetric-skeleton program over all `n/2` turning angles:
//!
//! ```text
//! maximize   sin(theta_0) + sum_{k=2}^{n/2-1} 2 A_k(theta)
//! subject to c1 = sum(theta) - pi/2 = 0
//!            c2 = x_{n/2-1}(theta) - (-1)^{n/2} / 2 = 0
//!            0 <= theta_0 <= pi/6,  0 <= theta_k <= pi/3
//! ```
//!
//! Solved with an augmented-Lagrangian outer loop around the projected
//! L-BFGS inner solver.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lbfgs::{self, LbfgsOptions};
use crate::error::{Error, Result};
use crate::geometry::{chain_points, closure_residual_of, AngleVector};
use crate::reduced::{construct_q_theorem, QOptions};
use crate::roots::{brent, RootOptions};

/// Objective, constraints and bounds of the full program for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NlpProblem {
    n: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl NlpProblem {
    pub fn new(n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) || !(6..=512).contains(&n) {
            return Err(Error::Domain(format!(
                "full program needs an even n in [6, 512], got {n}"
            )));
        }
        let m = n / 2;
        let mut upper = vec![FRAC_PI_3; m];
        upper[0] = FRAC_PI_6;
        Ok(Self {
            n,
            lower: vec![0.0; m],
            upper,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n / 2
    }

    /// Area and its gradient.
    pub fn objective(&self, theta: &[f64], grad: &mut [f64]) -> f64 {
        let m = self.dim();
        let v = chain_points(theta, m + 1);
        let mut f = theta[0].sin();
        // Adjoints of the area with respect to each vertex coordinate.
        let mut gx = vec![0.0; m + 1];
        let mut gy = vec![0.0; m + 1];
        for k in 2..m {
            let (p, q) = (v[k - 1], v[k + 1]);
            f += q.x * p.y - q.y * p.x;
            gx[k + 1] += p.y;
            gy[k + 1] -= p.x;
            gx[k - 1] -= q.y;
            gy[k - 1] += q.x;
        }
        // Turning theta_i rotates every v_k with k > i about v_i:
        // d v_k / d theta_i = (y_k - y_i, -(x_k - x_i)).
        let (mut sa, mut sb, mut sc, mut sd) = (0.0, 0.0, 0.0, 0.0);
        for i in (0..m).rev() {
            let k = i + 1;
            sa += gx[k] * v[k].y;
            sb += gx[k];
            sc += gy[k] * v[k].x;
            sd += gy[k];
            grad[i] = sa - v[i].y * sb - sc + v[i].x * sd;
        }
        grad[0] += theta[0].cos();
        f
    }

    /// Constraint values `[c1, c2]` and their gradients (rows of the Jacobian).
    pub fn constraints(&self, theta: &[f64], jac: Option<(&mut [f64], &mut [f64])>) -> [f64; 2] {
        let m = self.dim();
        let v = chain_points(theta, m);
        let half = if m.is_multiple_of(2) { 0.5 } else { -0.5 };
        let c1 = theta.iter().sum::<f64>() - FRAC_PI_2;
        let c2 = v[m - 1].x - half;
        if let Some((j1, j2)) = jac {
            j1.fill(1.0);
            for i in 0..m {
                j2[i] = if i < m - 1 { v[m - 1].y - v[i].y } else { 0.0 };
            }
        }
        [c1, c2]
    }
}

/// Exact gradient of the area with respect to the angles.
pub fn objective_gradient(a: &AngleVector) -> Vec<f64> {
    let p = NlpProblem::new(a.n()).expect("AngleVector has a valid n");
    let mut g = vec![0.0; p.dim()];
    p.objective(a.theta(), &mut g);
    g
}

#[derive(Debug, Clone, PartialEq)]
pub struct NlpOptions {
    pub constraint_tol: f64,
    pub kkt_tol: f64,
    pub max_outer: usize,
    pub initial_penalty: f64,
    /// Total number of starts; the first is unperturbed.
    pub multistart: usize,
    pub seed: u64,
    /// Relative jitter applied to each angle of the extra starts.
    pub jitter: f64,
}

impl Default for NlpOptions {
    fn default() -> Self {
        Self {
            constraint_tol: 1e-10,
            kkt_tol: 1e-8,
            max_outer: 200,
            initial_penalty: 10.0,
            multistart: 4,
            seed: 0,
            jitter: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NlpDiagnostics {
    pub converged: bool,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub penalty: f64,
    pub multipliers: [f64; 2],
    pub constraint_residuals: [f64; 2],
    /// Projected gradient of the Lagrangian (infinity norm).
    pub kkt_norm: f64,
    /// Area reached from each start.
    pub start_areas: Vec<f64>,
    /// Largest area difference among starts that reached feasibility.
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NlpSolution {
    pub angles: AngleVector,
    pub area: f64,
    pub diagnostics: NlpDiagnostics,
}

fn inf_norm(c: &[f64]) -> f64 {
    c.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Least-squares multipliers for `grad(-f) + J^T lambda = 0`.
fn multiplier_estimate(grad_neg_f: &[f64], j1: &[f64], j2: &[f64]) -> [f64; 2] {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let (a11, a12, a22) = (dot(j1, j1), dot(j1, j2), dot(j2, j2));
    let (b1, b2) = (-dot(j1, grad_neg_f), -dot(j2, grad_neg_f));
    let det = a11 * a22 - a12 * a12;
    if det.abs() < 1e-300 {
        return [0.0, 0.0];
    }
    [(b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det]
}

struct Run {
    theta: Vec<f64>,
    area: f64,
    diagnostics: NlpDiagnostics,
}

fn kkt_norm(p: &NlpProblem, theta: &[f64], lambda: [f64; 2]) -> f64 {
    let m = p.dim();
    let mut g = vec![0.0; m];
    let (mut j1, mut j2) = (vec![0.0; m], vec![0.0; m]);
    p.objective(theta, &mut g);
    p.constraints(theta, Some((&mut j1, &mut j2)));
    let lag: Vec<f64> = (0..m)
        .map(|i| -g[i] + lambda[0] * j1[i] + lambda[1] * j2[i])
        .collect();
    lbfgs::projected_gradient_norm(theta, &lag, &p.lower, &p.upper)
}

/// Moves a nearly feasible point onto the constraint surface by re-solving
/// `theta_0` (and `theta_1` from the angle sum) to full precision, so that
/// the reported area carries no first-order residual term.
fn restore_feasibility(p: &NlpProblem, theta: &[f64]) -> Option<Vec<f64>> {
    let rest: f64 = theta[2..].iter().sum();
    let build = |t0: f64| {
        let mut t = theta.to_vec();
        t[0] = t0;
        t[1] = FRAC_PI_2 - t0 - rest;
        t
    };
    let residual = |t0: f64| closure_residual_of(p.n(), &build(t0));
    let w = 1e-6;
    let lo = (theta[0] - w).max(p.lower[0]);
    let hi = (theta[0] + w).min(p.upper[0]);
    let opts = RootOptions {
        full_precision: true,
        ..RootOptions::default()
    };
    let root = brent(residual, lo, hi, opts).ok()?;
    let t = build(root.x);
    (t[1] >= p.lower[1] && t[1] <= p.upper[1]).then_some(t)
}

fn augmented_lagrangian(p: &NlpProblem, x0: &[f64], opts: &NlpOptions) -> Run {
    let m = p.dim();
    let mut theta = x0.to_vec();
    lbfgs::project(&mut theta, &p.lower, &p.upper);

    let mut g = vec![0.0; m];
    let (mut j1, mut j2) = (vec![0.0; m], vec![0.0; m]);
    p.objective(&theta, &mut g);
    p.constraints(&theta, Some((&mut j1, &mut j2)));
    let neg: Vec<f64> = g.iter().map(|x| -x).collect();
    let mut lambda = multiplier_estimate(&neg, &j1, &j2);
    let mut mu = opts.initial_penalty;
    let mut prev_res = f64::INFINITY;
    let mut inner_iterations = 0;
    let mut outer = 0;
    let mut converged = false;
    let mut inner_tol: f64 = 1e-6;

    while outer < opts.max_outer {
        outer += 1;
        let (lam, pen) = (lambda, mu);
        let mut lagrangian = |x: &[f64], grad: &mut [f64]| {
            let mut gf = vec![0.0; m];
            let mut a1 = vec![0.0; m];
            let mut a2 = vec![0.0; m];
            let f = p.objective(x, &mut gf);
            let c = p.constraints(x, Some((&mut a1, &mut a2)));
            let w = [lam[0] + pen * c[0], lam[1] + pen * c[1]];
            for i in 0..m {
                grad[i] = -gf[i] + w[0] * a1[i] + w[1] * a2[i];
            }
            -f + lam[0] * c[0] + lam[1] * c[1] + 0.5 * pen * (c[0] * c[0] + c[1] * c[1])
        };
        let lb = LbfgsOptions {
            pg_tol: inner_tol,
            max_iter: 5000,
            ..Default::default()
        };
        let run = lbfgs::minimize(&mut lagrangian, &p.lower, &p.upper, &theta, &lb);
        inner_iterations += run.iterations;
        theta = run.x;

        let c = p.constraints(&theta, None);
        let res = inf_norm(&c);
        lambda = [lambda[0] + mu * c[0], lambda[1] + mu * c[1]];
        let kkt = kkt_norm(p, &theta, lambda);
        if res <= opts.constraint_tol && kkt <= opts.kkt_tol && inner_tol <= 1e-12 {
            converged = true;
            break;
        }
        if res > 0.25 * prev_res {
            mu *= 10.0;
        }
        prev_res = res;
        inner_tol = (inner_tol * 0.1).max(1e-12);
    }

    if inf_norm(&p.constraints(&theta, None)) <= 1e-8 {
        if let Some(t) = restore_feasibility(p, &theta) {
            theta = t;
        }
    }
    let mut g = vec![0.0; m];
    let area = p.objective(&theta, &mut g);
    let c = p.constraints(&theta, None);
    let kkt = kkt_norm(p, &theta, lambda);
    Run {
        area,
        diagnostics: NlpDiagnostics {
            converged,
            outer_iterations: outer,
            inner_iterations,
            penalty: mu,
            multipliers: lambda,
            constraint_residuals: c,
            kkt_norm: kkt,
            start_areas: vec![area],
            spread: 0.0,
        },
        theta,
    }
}

/// Default starting point: the expanded angles of the reduced construction.
pub fn default_start(n: usize) -> Result<AngleVector> {
    let q = construct_q_theorem(n, &QOptions::default())?;
    Ok(q.angles)
}

/// Solves the full program. `start = None` uses [`default_start`].
pub fn solve_full_nlp(
    n: usize,
    start: Option<&AngleVector>,
    opts: &NlpOptions,
) -> Result<NlpSolution> {
    let p = NlpProblem::new(n)?;
    let base = match start {
        Some(a) if a.n() != n => {
            return Err(Error::Domain(format!(
                "start has n = {}, expected {n}",
                a.n()
            )))
        }
        Some(a) => a.theta().to_vec(),
        None => default_start(n)?.into_inner(),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut runs = Vec::with_capacity(opts.multistart.max(1));
    for s in 0..opts.multistart.max(1) {
        let x0: Vec<f64> = if s == 0 {
            base.clone()
        } else {
            let mut x: Vec<f64> = base
                .iter()
                .map(|t| t * (1.0 + opts.jitter * rng.gen_range(-1.0..=1.0)))
                .collect();
            let scale = FRAC_PI_2 / x.iter().sum::<f64>();
            x.iter_mut().for_each(|t| *t *= scale);
            x
        };
        runs.push(augmented_lagrangian(&p, &x0, opts));
    }

    let start_areas: Vec<f64> = runs.iter().map(|r| r.area).collect();
    let feasible = |r: &Run| inf_norm(&r.diagnostics.constraint_residuals) <= opts.constraint_tol;
    let feasible_areas: Vec<f64> = runs
        .iter()
        .filter(|r| feasible(r))
        .map(|r| r.area)
        .collect();
    let spread = if feasible_areas.is_empty() {
        0.0
    } else {
        feasible_areas
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
            - feasible_areas.iter().copied().fold(f64::INFINITY, f64::min)
    };

    // Best feasible area; ties go to the smaller residual, then start order.
    let best = runs
        .into_iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            let key = |r: &Run| {
                (
                    feasible(r),
                    r.area,
                    -inf_norm(&r.diagnostics.constraint_residuals),
                )
            };
            let (ka, kb) = (key(a), key(b));
            ka.0.cmp(&kb.0)
                .then(ka.1.total_cmp(&kb.1))
                .then(ka.2.total_cmp(&kb.2))
                .then(ib.cmp(ia))
        })
        .map(|(_, r)| r)
        .expect("at least one start");

    let residual = inf_norm(&best.diagnostics.constraint_residuals);
    if residual > 1e-8 {
        return Err(Error::Optimization {
            message: format!(
                "constraint residuals stalled (multipliers {:?}, penalty {:e})",
                best.diagnostics.multipliers, best.diagnostics.penalty
            ),
            best_point: best.theta,
            best_value: best.area,
            residual,
        });
    }

    let angles = AngleVector::new(n, best.theta)?;
    Ok(NlpSolution {
        angles,
        area: best.area,
        diagnostics: NlpDiagnostics {
            start_areas,
            spread,
            ..best.diagnostics
        },
    })
}
