//! Limited-memory quasi-Newton minimization under box constraints.
//!
//! Gradient projection variant: variables sitting on a bound with the
//! gradient pushing outward are frozen for the step, the two-loop recursion
//! runs on the remaining components, and trial points are projected back into
//! the box. The line search accepts on the Armijo condition, or on the
//! approximate-Wolfe slope test once the decrease drops below the rounding
//! level of `f`.

use std::collections::VecDeque;

/// Objective returning `(f, grad)` at a point; the gradient is written into
/// the slice.
pub trait Objective {
    fn eval(&mut self, x: &[f64], grad: &mut [f64]) -> f64;
}

impl<F> Objective for F
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    fn eval(&mut self, x: &[f64], grad: &mut [f64]) -> f64 {
        self(x, grad)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LbfgsOptions {
    pub memory: usize,
    /// Stop when the infinity norm of the projected gradient is below this.
    pub pg_tol: f64,
    pub max_iter: usize,
    pub armijo: f64,
    pub max_backtracks: usize,
    /// Relative increase of `f` still treated as "no change" by the slope test.
    pub flat_tol: f64,
    /// Stop once `f` decreases by at most this much (absolute) over
    /// `stall_window` consecutive iterations. Zero disables the test.
    pub f_tol: f64,
    pub stall_window: usize,
}

impl Default for LbfgsOptions {
    fn default() -> Self {
        Self {
            memory: 10,
            pg_tol: 1e-8,
            max_iter: 1000,
            armijo: 1e-4,
            max_backtracks: 60,
            flat_tol: 1e-14,
            f_tol: 0.0,
            stall_window: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    MaxIterations,
    /// No acceptable step along steepest descent either.
    LineSearchFailed,
    /// Objective decrease stayed below `f_tol` for the whole window.
    Stalled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LbfgsResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub grad: Vec<f64>,
    pub pg_norm: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub stop: StopReason,
}

pub fn project(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((xi, &l), &u) in x.iter_mut().zip(lower).zip(upper) {
        *xi = xi.clamp(l, u);
    }
}

/// `|| x - P(x - g) ||_inf`.
pub fn projected_gradient_norm(x: &[f64], g: &[f64], lower: &[f64], upper: &[f64]) -> f64 {
    x.iter()
        .zip(g)
        .zip(lower.iter().zip(upper))
        .map(|((&xi, &gi), (&l, &u))| (xi - (xi - gi).clamp(l, u)).abs())
        .fold(0.0, f64::max)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimizes `f` over the box `[lower, upper]` starting from `x0` (projected
/// into the box first).
pub fn minimize<O: Objective>(
    f: &mut O,
    lower: &[f64],
    upper: &[f64],
    x0: &[f64],
    opts: &LbfgsOptions,
) -> LbfgsResult {
    let dim = x0.len();
    let mut x = x0.to_vec();
    project(&mut x, lower, upper);
    let mut g = vec![0.0; dim];
    let mut fx = f.eval(&x, &mut g);
    let mut evaluations = 1;

    let mut memory: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(opts.memory);
    let mut x_trial = vec![0.0; dim];
    let mut g_trial = vec![0.0; dim];
    let mut dir = vec![0.0; dim];
    let mut alpha_buf = vec![0.0; opts.memory];

    let mut iterations = 0;
    let mut stalled = 0;
    let stop = loop {
        let pg = projected_gradient_norm(&x, &g, lower, upper);
        if pg <= opts.pg_tol {
            break StopReason::Converged;
        }
        if opts.f_tol > 0.0 && stalled >= opts.stall_window {
            break StopReason::Stalled;
        }
        if iterations >= opts.max_iter {
            break StopReason::MaxIterations;
        }
        iterations += 1;

        // Freeze variables held at a bound by the gradient.
        let free: Vec<bool> = (0..dim)
            .map(|i| !((x[i] <= lower[i] && g[i] > 0.0) || (x[i] >= upper[i] && g[i] < 0.0)))
            .collect();

        let mut accepted = false;
        for attempt in 0..2 {
            let use_memory = attempt == 0 && !memory.is_empty();
            for i in 0..dim {
                dir[i] = if free[i] { -g[i] } else { 0.0 };
            }
            if use_memory {
                two_loop(&mut dir, &memory, &free, &mut alpha_buf);
            }
            let slope = dot(&g, &dir);
            if slope >= 0.0 {
                if use_memory {
                    continue;
                }
                break;
            }
            // Unscaled steepest descent: cap the first trial step.
            let mut t = if use_memory {
                1.0
            } else {
                let gn = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
                (1.0 / gn).min(1.0)
            };
            for _ in 0..opts.max_backtracks {
                for i in 0..dim {
                    x_trial[i] = x[i] + t * dir[i];
                }
                project(&mut x_trial, lower, upper);
                let step_slope: f64 = (0..dim).map(|i| g[i] * (x_trial[i] - x[i])).sum();
                if step_slope >= 0.0 {
                    t *= 0.5;
                    continue;
                }
                let f_trial = f.eval(&x_trial, &mut g_trial);
                evaluations += 1;
                let armijo = f_trial <= fx + opts.armijo * step_slope;
                // Decrease lost in rounding: fall back to the slope condition.
                let flat = f_trial <= fx + opts.flat_tol * fx.abs();
                let trial_slope: f64 = (0..dim).map(|i| g_trial[i] * (x_trial[i] - x[i])).sum();
                let approx_wolfe = flat && trial_slope <= 0.8 * step_slope.abs();
                if f_trial.is_finite() && (armijo || approx_wolfe) {
                    let s: Vec<f64> = (0..dim).map(|i| x_trial[i] - x[i]).collect();
                    let y: Vec<f64> = (0..dim).map(|i| g_trial[i] - g[i]).collect();
                    let sy = dot(&s, &y);
                    if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() && sy > 0.0 {
                        if memory.len() == opts.memory {
                            memory.pop_front();
                        }
                        memory.push_back((s, y, 1.0 / sy));
                    }
                    x.copy_from_slice(&x_trial);
                    g.copy_from_slice(&g_trial);
                    stalled = if fx - f_trial <= opts.f_tol {
                        stalled + 1
                    } else {
                        0
                    };
                    fx = f_trial;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if accepted {
                break;
            }
            memory.clear();
        }
        if !accepted {
            break StopReason::LineSearchFailed;
        }
    };

    let pg_norm = projected_gradient_norm(&x, &g, lower, upper);
    LbfgsResult {
        x,
        f: fx,
        grad: g,
        pg_norm,
        iterations,
        evaluations,
        stop,
    }
}

/// Applies the inverse-Hessian approximation to `q` (which holds `-g` on the
/// free set) in place.
fn two_loop(
    q: &mut [f64],
    memory: &VecDeque<(Vec<f64>, Vec<f64>, f64)>,
    free: &[bool],
    alpha: &mut [f64],
) {
    let masked_dot = |a: &[f64], b: &[f64]| -> f64 {
        a.iter()
            .zip(b)
            .zip(free)
            .filter(|(_, &f)| f)
            .map(|((x, y), _)| x * y)
            .sum()
    };
    for (k, (s, y, rho)) in memory.iter().enumerate().rev() {
        let a = rho * masked_dot(s, q);
        alpha[k] = a;
        for i in 0..q.len() {
            if free[i] {
                q[i] -= a * y[i];
            }
        }
    }
    let (s, y, _) = memory.back().expect("memory is non-empty");
    let yy = masked_dot(y, y);
    let gamma = if yy > 0.0 { masked_dot(s, y) / yy } else { 1.0 };
    let gamma = if gamma > 0.0 { gamma } else { 1.0 };
    for (qi, &fr) in q.iter_mut().zip(free) {
        if fr {
            *qi *= gamma;
        }
    }
    for (k, (s, y, rho)) in memory.iter().enumerate() {
        let b = rho * masked_dot(y, q);
        for i in 0..q.len() {
            if free[i] {
                q[i] += s[i] * (alpha[k] - b);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock_unconstrained() {
        let mut f = |x: &[f64], g: &mut [f64]| {
            let (a, b) = (x[0], x[1]);
            g[0] = -2.0 * (1.0 - a) - 400.0 * a * (b - a * a);
            g[1] = 200.0 * (b - a * a);
            (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
        };
        let lo = [-5.0, -5.0];
        let hi = [5.0, 5.0];
        let opts = LbfgsOptions {
            pg_tol: 1e-10,
            ..Default::default()
        };
        let r = minimize(&mut f, &lo, &hi, &[-1.2, 1.0], &opts);
        assert_eq!(r.stop, StopReason::Converged);
        assert!((r.x[0] - 1.0).abs() < 1e-8 && (r.x[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn active_bound() {
        // Unconstrained minimum at (2, -1); box clips x to 1.
        let mut f = |x: &[f64], g: &mut [f64]| {
            g[0] = 2.0 * (x[0] - 2.0);
            g[1] = 2.0 * (x[1] + 1.0);
            (x[0] - 2.0).powi(2) + (x[1] + 1.0).powi(2)
        };
        let r = minimize(
            &mut f,
            &[0.0, -3.0],
            &[1.0, 3.0],
            &[0.5, 0.5],
            &LbfgsOptions::default(),
        );
        assert_eq!(r.stop, StopReason::Converged);
        assert_eq!(r.x[0], 1.0);
        assert!((r.x[1] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn stall_test_stops_flat_progress() {
        // Quartic bowl near its minimum: every decrease is below f_tol.
        let mut f = |x: &[f64], g: &mut [f64]| {
            let mut v = 0.0;
            for (gi, xi) in g.iter_mut().zip(x) {
                *gi = 4.0 * xi.powi(3);
                v += xi.powi(4);
            }
            v
        };
        let opts = LbfgsOptions {
            pg_tol: 1e-30,
            f_tol: 1e-10,
            ..Default::default()
        };
        let r = minimize(
            &mut f,
            &[-1.0; 4],
            &[1.0; 4],
            &[1e-3, -2e-3, 3e-3, 1e-3],
            &opts,
        );
        assert_eq!(r.stop, StopReason::Stalled);
        assert!(r.iterations <= 6);
    }

    #[test]
    fn start_is_projected() {
        let mut f = |x: &[f64], g: &mut [f64]| {
            g[0] = 1.0;
            x[0]
        };
        let r = minimize(&mut f, &[0.0], &[1.0], &[3.0], &LbfgsOptions::default());
        assert_eq!(r.x, vec![0.0]);
    }
}
