//! Derivative-free interface for box-constrained maximization: central
//! finite differences feed the projected quasi-Newton method, with optional
//! jittered restarts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lbfgs::{self, LbfgsOptions, StopReason};
use crate::error::{Error, Result};

/// Maximize `objective` over `[lower, upper]`.
pub struct BoxProblem<F> {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub objective: F,
    /// Projected-gradient tolerance.
    pub tol: f64,
    pub max_iter: usize,
    /// One extra jittered start per seed.
    pub multistart_seeds: Vec<u64>,
    /// Jitter half-width as a fraction of each box side.
    pub jitter: f64,
    /// Relative central-difference step: `h = fd_step * (1 + |x|)`.
    pub fd_step: f64,
    /// Absolute objective change treated as stalled progress (0 disables).
    pub f_tol: f64,
}

impl<F> BoxProblem<F>
where
    F: FnMut(&[f64]) -> f64,
{
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, objective: F) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Domain("bound vectors differ in length".into()));
        }
        if lower
            .iter()
            .zip(&upper)
            .any(|(l, u)| l.partial_cmp(u).is_none_or(|o| o.is_gt()))
        {
            return Err(Error::Domain("lower bound exceeds upper bound".into()));
        }
        Ok(Self {
            lower,
            upper,
            objective,
            tol: 1e-8,
            max_iter: 500,
            multistart_seeds: Vec::new(),
            jitter: 0.05,
            fd_step: 1e-7,
            f_tol: 0.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxDiagnostics {
    pub converged: bool,
    pub pg_norm: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// Final value reached from each start, in start order.
    pub start_values: Vec<f64>,
    /// `max - min` of `start_values`.
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub diagnostics: BoxDiagnostics,
}

fn fd_gradient<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    step: f64,
    x: &[f64],
    lower: &[f64],
    upper: &[f64],
    grad: &mut [f64],
) -> usize {
    let mut xp = x.to_vec();
    let mut evals = 0;
    for i in 0..x.len() {
        let h = step * (1.0 + x[i].abs());
        let hi = (x[i] + h).min(upper[i]);
        let lo = (x[i] - h).max(lower[i]);
        if hi <= lo {
            grad[i] = 0.0;
            continue;
        }
        xp[i] = hi;
        let fp = f(&xp);
        xp[i] = lo;
        let fm = f(&xp);
        xp[i] = x[i];
        evals += 2;
        grad[i] = (fp - fm) / (hi - lo);
    }
    evals
}

/// Maximizes the problem's objective from `start` plus one jittered start per
/// seed. Non-convergence is reported in the diagnostics; the best iterate is
/// always returned.
pub fn maximize_box<F>(p: &mut BoxProblem<F>, start: &[f64]) -> Result<BoxSolution>
where
    F: FnMut(&[f64]) -> f64,
{
    if start.len() != p.dim() {
        return Err(Error::Domain(format!(
            "start has {} components, problem has {}",
            start.len(),
            p.dim()
        )));
    }
    if start
        .iter()
        .zip(p.lower.iter().zip(&p.upper))
        .any(|(x, (l, u))| x < l || x > u)
    {
        return Err(Error::Domain("start point outside the box".into()));
    }

    let mut starts = vec![start.to_vec()];
    for &seed in &p.multistart_seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let jittered: Vec<f64> = (0..p.dim())
            .map(|i| {
                let w = p.upper[i] - p.lower[i];
                let x = start[i] + p.jitter * w * rng.gen_range(-1.0..=1.0);
                x.clamp(p.lower[i], p.upper[i])
            })
            .collect();
        starts.push(jittered);
    }

    let opts = LbfgsOptions {
        pg_tol: p.tol,
        max_iter: p.max_iter,
        flat_tol: 0.0,
        f_tol: p.f_tol,
        ..Default::default()
    };
    let (lower, upper) = (p.lower.clone(), p.upper.clone());
    let step = p.fd_step;
    let mut best: Option<(lbfgs::LbfgsResult, usize)> = None;
    let mut start_values = Vec::with_capacity(starts.len());
    let mut evaluations = 0;
    for x0 in &starts {
        let objective = &mut p.objective;
        let mut neg = |x: &[f64], g: &mut [f64]| {
            let f = -objective(x);
            fd_gradient(&mut |y: &[f64]| -objective(y), step, x, &lower, &upper, g);
            f
        };
        let run = lbfgs::minimize(&mut neg, &lower, &upper, x0, &opts);
        evaluations += run.evaluations * (2 * x0.len() + 1);
        start_values.push(-run.f);
        let better = match &best {
            None => true,
            Some((b, _)) => run.f < b.f,
        };
        if better {
            let iters = run.iterations;
            best = Some((run, iters));
        }
    }

    let (run, iterations) = best.expect("at least one start");
    let max = start_values
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let min = start_values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(BoxSolution {
        value: -run.f,
        diagnostics: BoxDiagnostics {
            converged: matches!(run.stop, StopReason::Converged | StopReason::Stalled),
            pg_norm: run.pg_norm,
            iterations,
            evaluations,
            start_values,
            spread: max - min,
        },
        x: run.x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_parabola() {
        let mut p =
            BoxProblem::new(vec![0.0], vec![1.0], |x: &[f64]| -(x[0] - 0.3).powi(2)).unwrap();
        let sol = maximize_box(&mut p, &[0.9]).unwrap();
        assert!((sol.x[0] - 0.3).abs() < 1e-8, "{:?}", sol.x);
    }

    #[test]
    fn two_dimensional_bowl() {
        let mut p = BoxProblem::new(vec![-1.0; 2], vec![1.0; 2], |x: &[f64]| {
            -x[0] * x[0] - 2.0 * x[1] * x[1]
        })
        .unwrap();
        p.multistart_seeds = vec![1, 2, 3];
        let sol = maximize_box(&mut p, &[0.7, -0.4]).unwrap();
        assert!(
            sol.x[0].abs() < 1e-8 && sol.x[1].abs() < 1e-8,
            "{:?}",
            sol.x
        );
        assert!(sol.diagnostics.converged);
        assert_eq!(sol.diagnostics.start_values.len(), 4);
        assert!(sol.diagnostics.spread < 1e-12);
    }

    #[test]
    fn maximum_on_the_boundary() {
        let mut p = BoxProblem::new(vec![0.0], vec![1.0], |x: &[f64]| x[0]).unwrap();
        let sol = maximize_box(&mut p, &[0.5]).unwrap();
        assert_eq!(sol.x, vec![1.0]);
        assert!(sol.diagnostics.converged);
    }

    #[test]
    fn deterministic_given_seeds() {
        let run = || {
            let mut p = BoxProblem::new(vec![-2.0; 2], vec![2.0; 2], |x: &[f64]| {
                (3.0 * x[0]).sin() * (2.0 * x[1]).cos() - 0.1 * x[0] * x[0]
            })
            .unwrap();
            p.multistart_seeds = vec![7, 8];
            maximize_box(&mut p, &[0.2, 0.1]).unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BoxProblem::new(vec![1.0], vec![0.0], |_: &[f64]| 0.0).is_err());
        let mut p = BoxProblem::new(vec![0.0], vec![1.0], |_: &[f64]| 0.0).unwrap();
        assert!(maximize_box(&mut p, &[2.0]).is_err());
        assert!(maximize_box(&mut p, &[0.5, 0.5]).is_err());
    }
}
