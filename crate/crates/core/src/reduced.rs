//! The reduced construction `Q_{n,r}`: `r + 2` angle parameters (two of them
//! eliminated by the angle-sum and closure constraints) whose area formula
//! has a number of terms independent of `n`.
//!
//! For even `r` the angles are
//!
//! ```text
//! theta_0      = alpha
//! theta_{2i-1} = beta_i + gamma_i     1 <= i <= r/2
//! theta_{2i}   = beta_i - gamma_i
//! theta_k      = beta                 r < k < n/2
//! ```
//!
//! with `beta` fixed by the angle sum and `gamma_{r/2}` by closure. Odd `r`
//! uses the `r + 1` scheme with `beta_{(r+1)/2} = beta`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use crate::error::{Error, Result};
use crate::geometry::{
    chain_points, validate, vertices_from_angles, AngleVector, AreaReport, SmallPolygon,
};
use crate::reference;
use crate::roots::{brent, RootOptions};
use crate::solver::{maximize_box, BoxDiagnostics, BoxProblem, BoxSolution};

/// Largest `r` with tabulated starting values.
pub const MAX_TABULATED_R: usize = 16;

/// Relative slack on the parameter boxes (values produced by scaling).
const BOX_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedParams {
    pub n: usize,
    pub r: usize,
    pub alpha: f64,
    /// `beta_1 ... beta_{floor(r/2)}`.
    pub betas: Vec<f64>,
    /// `gamma_1 ... gamma_{ceil(r/2)-1}`.
    pub gammas_free: Vec<f64>,
    pub beta_derived: Option<f64>,
    pub gamma_last_derived: Option<f64>,
}

fn in_box(x: f64, lo: f64, hi: f64) -> bool {
    let slack = BOX_SLACK * hi.abs().max(lo.abs());
    x >= lo - slack && x <= hi + slack
}

/// Number of free parameters of `Q_{n,r}`: `alpha`, `floor(r/2)` betas and
/// `ceil(r/2) - 1` gammas (none at all for r = 0).
pub fn free_dim(r: usize) -> usize {
    r
}

pub(crate) fn check_nr(n: usize, r: usize) -> Result<()> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::Domain(format!(
            "n must be an even integer >= 6, got {n}"
        )));
    }
    if n < 2 * r + 4 {
        return Err(Error::Domain(format!(
            "n = {n} is too small for r = {r} (need n >= 2r + 4)"
        )));
    }
    Ok(())
}

impl ReducedParams {
    /// Validates counts, `n >= 2r + 4` and the parameter boxes
    /// `alpha in [pi/(2n-2), pi/n]`, `beta_i in [pi/n, 2pi/n]`,
    /// `gamma_i in [0, pi/n]`.
    pub fn new(
        n: usize,
        r: usize,
        alpha: f64,
        betas: Vec<f64>,
        gammas_free: Vec<f64>,
    ) -> Result<Self> {
        check_nr(n, r)?;
        let nb = r / 2;
        let ng = r.div_ceil(2).saturating_sub(1);
        if betas.len() != nb || gammas_free.len() != ng {
            return Err(Error::Domain(format!(
                "r = {r} takes {nb} betas and {ng} gammas, got {} and {}",
                betas.len(),
                gammas_free.len()
            )));
        }
        let nf = n as f64;
        let unit = PI / nf;
        if !in_box(alpha, PI / (2.0 * nf - 2.0), unit) {
            return Err(Error::Domain(format!(
                "alpha = {alpha} outside [pi/(2n-2), pi/n]"
            )));
        }
        if let Some(b) = betas.iter().find(|&&b| !in_box(b, unit, 2.0 * unit)) {
            return Err(Error::Domain(format!("beta_i = {b} outside [pi/n, 2pi/n]")));
        }
        if let Some(g) = gammas_free.iter().find(|&&g| !in_box(g, 0.0, unit)) {
            return Err(Error::Domain(format!("gamma_i = {g} outside [0, pi/n]")));
        }
        Ok(Self {
            n,
            r,
            alpha,
            betas,
            gammas_free,
            beta_derived: None,
            gamma_last_derived: None,
        })
    }

    /// `Q_{n,0}`: one vertex added antipodal to a vertex of the regular
    /// `(n-1)`-gon.
    pub fn regular_plus_one(n: usize) -> Result<Self> {
        check_nr(n, 0)?;
        Self::new(n, 0, PI / (2.0 * n as f64 - 2.0), Vec::new(), Vec::new())
    }

    /// Parameters from the flat vector `[alpha, betas.., gammas..]`.
    pub fn from_free(n: usize, r: usize, free: &[f64]) -> Result<Self> {
        if free.len() != free_dim(r).max(1) {
            return Err(Error::Domain(format!(
                "expected {} free parameters, got {}",
                free_dim(r).max(1),
                free.len()
            )));
        }
        let nb = r / 2;
        Self::new(
            n,
            r,
            free[0],
            free[1..1 + nb].to_vec(),
            free[1 + nb..].to_vec(),
        )
    }

    pub fn free_vector(&self) -> Vec<f64> {
        let mut v = vec![self.alpha];
        v.extend_from_slice(&self.betas);
        v.extend_from_slice(&self.gammas_free);
        v
    }

    /// Solves for `beta` and the final `gamma`.
    pub fn derive(mut self) -> Result<Self> {
        let beta = solve_beta(&self)?;
        self.beta_derived = Some(beta);
        if self.r > 0 {
            self.gamma_last_derived = Some(solve_gamma_last(&self)?);
        }
        Ok(self)
    }

    /// Length of the explicit prefix scheme: r for even r, r + 1 for odd r.
    fn scheme_len(&self) -> usize {
        self.r + self.r % 2
    }

    fn derived_beta(&self) -> Result<f64> {
        self.beta_derived
            .ok_or_else(|| Error::Domain("beta has not been derived".into()))
    }

    /// Prefix angles `theta_0 ... theta_{r'}` for a given final gamma.
    fn prefix_angles(&self, beta: f64, gamma_last: f64) -> Vec<f64> {
        let half = self.scheme_len() / 2;
        let mut theta = Vec::with_capacity(2 * half + 1);
        theta.push(self.alpha);
        for i in 0..half {
            let b = self.betas.get(i).copied().unwrap_or(beta);
            let g = self.gammas_free.get(i).copied().unwrap_or(gamma_last);
            theta.push(b + g);
            theta.push(b - g);
        }
        theta
    }

    /// `alpha + 2 sum(beta_i)` over the prefix scheme.
    fn phi(&self, beta: f64) -> f64 {
        let half = self.scheme_len() / 2;
        let explicit: f64 = self.betas.iter().sum();
        let implicit = (half - self.betas.len()) as f64 * beta;
        self.alpha + 2.0 * (explicit + implicit)
    }
}

/// Cumulative angle and vertex at the end of the prefix scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiState {
    pub phi_r: f64,
    pub x_r: f64,
    pub y_r: f64,
}

pub fn phi_state(p: &ReducedParams) -> Result<PhiState> {
    let beta = p.derived_beta()?;
    let gamma = p.gamma_last_derived.unwrap_or(0.0);
    let prefix = p.prefix_angles(beta, gamma);
    let pts = chain_points(&prefix, prefix.len());
    let v = pts[prefix.len() - 1];
    Ok(PhiState {
        phi_r: p.phi(beta),
        x_r: v.x,
        y_r: v.y,
    })
}

/// `beta` from the angle sum `phi_r + (n/2 - r' - 1) beta = pi/2`, where the
/// odd case counts `beta_{(r+1)/2} = beta` on the left.
pub fn solve_beta(p: &ReducedParams) -> Result<f64> {
    let m = p.n / 2;
    let explicit = p.alpha + 2.0 * p.betas.iter().sum::<f64>();
    let count = if p.r.is_multiple_of(2) {
        m - p.r - 1
    } else {
        m - p.r
    };
    let beta = (FRAC_PI_2 - explicit) / count as f64;
    if !(beta > 0.0 && beta < FRAC_PI_3) {
        return Err(Error::Infeasible(format!(
            "derived beta = {beta} outside (0, pi/3)"
        )));
    }
    Ok(beta)
}

/// Closure residual `x_{r'} + sin(phi - beta/2) / (2 cos(beta/2))` as a
/// function of the final gamma.
fn closure_residual(p: &ReducedParams, beta: f64, gamma_last: f64) -> f64 {
    let prefix = p.prefix_angles(beta, gamma_last);
    let pts = chain_points(&prefix, prefix.len());
    let x_r = pts[prefix.len() - 1].x;
    let phi = p.phi(beta);
    x_r + (phi - 0.5 * beta).sin() / (2.0 * (0.5 * beta).cos())
}

/// Final gamma from the closure constraint, by bracketed root finding on
/// `[-pi/n, pi/n]`.
pub fn solve_gamma_last(p: &ReducedParams) -> Result<f64> {
    if p.r == 0 {
        return Err(Error::Domain("r = 0 has no gamma parameters".into()));
    }
    let beta = p.derived_beta()?;
    let w = PI / p.n as f64;
    // Area is first-order sensitive to this root, so resolve it to the last
    // bit rather than stopping at the residual tolerance.
    let opts = RootOptions {
        full_precision: true,
        ..RootOptions::default()
    };
    let root = brent(|g| closure_residual(p, beta, g), -w, w, opts)?;
    Ok(root.x)
}

/// The closure residual for r = 1 written directly in the three-variable
/// form `sin(a + b + g) - sin a - sin(a + 3b/2) / (2 cos(b/2))`, with the
/// sign of the general residual.
pub fn three_variable_closure_residual(alpha: f64, beta: f64, gamma: f64) -> f64 {
    alpha.sin() + (alpha + 1.5 * beta).sin() / (2.0 * (0.5 * beta).cos())
        - (alpha + beta + gamma).sin()
}

/// General closure residual at the given final gamma (for checks).
pub fn closure_residual_at(p: &ReducedParams, gamma_last: f64) -> Result<f64> {
    Ok(closure_residual(p, p.derived_beta()?, gamma_last))
}

/// Expands derived parameters into the full angle vector.
pub fn expand_angles(p: &ReducedParams) -> Result<AngleVector> {
    check_nr(p.n, p.r)?;
    let beta = p.derived_beta()?;
    let gamma = match (p.r, p.gamma_last_derived) {
        (0, _) => 0.0,
        (_, Some(g)) => g,
        (_, None) => return Err(Error::Domain("final gamma has not been derived".into())),
    };
    let m = p.n / 2;
    let mut theta = p.prefix_angles(beta, gamma);
    theta.resize(m, beta);
    if let Some((k, t)) = theta
        .iter()
        .enumerate()
        .find(|(_, &t)| !(0.0..=FRAC_PI_3).contains(&t))
    {
        return Err(Error::Infeasible(format!(
            "theta_{k} = {t} outside [0, pi/3]"
        )));
    }
    AngleVector::new(p.n, theta)
}

/// Area from the closed form with `O(r)` terms.
pub fn reduced_area(p: &ReducedParams) -> Result<f64> {
    let beta = p.derived_beta()?;
    let gamma = match (p.r, p.gamma_last_derived) {
        (0, _) => 0.0,
        (_, Some(g)) => g,
        (_, None) => return Err(Error::Domain("final gamma has not been derived".into())),
    };
    let rs = p.scheme_len();
    let prefix = p.prefix_angles(beta, gamma);
    let pts = chain_points(&prefix, rs + 2);
    let phi = p.phi(beta);
    let tail = (p.n / 2 - rs - 1) as f64;
    let t = (0.5 * beta).tan();

    let mut area = p.alpha.sin();
    for k in 2..=rs {
        let (a, b) = (pts[k - 1], pts[k + 1]);
        area += b.x * a.y - b.y * a.x;
    }
    let v = pts[rs];
    area += tail * (beta.sin() - t) - (v.x * phi.sin() + v.y * phi.cos() + 0.5) * t;
    Ok(area)
}

/// `sin x - x`, accurate to a few ulps of the result for small `x`.
fn sin_minus_x(x: f64) -> f64 {
    if x.abs() > 0.05 {
        return x.sin() - x;
    }
    let x2 = x * x;
    // -x^3/3! + x^5/5! - ... through x^13.
    let mut term = -x * x2 / 6.0;
    let mut sum = term;
    for k in 2..=6 {
        term *= -x2 / ((2 * k) * (2 * k + 1)) as f64;
        sum += term;
    }
    sum
}

/// `tan x - x`, accurate to a few ulps of the result for small `x`.
fn tan_minus_x(x: f64) -> f64 {
    if x.abs() > 0.05 {
        return x.tan() - x;
    }
    const C: [f64; 6] = [
        1.0 / 3.0,
        2.0 / 15.0,
        17.0 / 315.0,
        62.0 / 2835.0,
        1382.0 / 155925.0,
        21844.0 / 6081075.0,
    ];
    let x2 = x * x;
    let poly = C.iter().rev().fold(0.0, |acc, c| acc * x2 + c);
    x * x2 * poly
}

/// Deficit `pi/4 - 5 pi^3 / 48 n^2 - A(Q_{n,r})`, evaluated without the
/// cancellation of subtracting two numbers near `pi/4`.
///
/// Uses `tail * beta = pi/2 - phi`, so `tail * beta / 2` contributes
/// `pi/4 - phi/2` exactly and only terms of size `O(r/n)` remain.
pub fn reduced_deficit(p: &ReducedParams) -> Result<f64> {
    let beta = p.derived_beta()?;
    let gamma = match (p.r, p.gamma_last_derived) {
        (0, _) => 0.0,
        (_, Some(g)) => g,
        (_, None) => return Err(Error::Domain("final gamma has not been derived".into())),
    };
    let rs = p.scheme_len();
    let prefix = p.prefix_angles(beta, gamma);
    let pts = chain_points(&prefix, rs + 2);
    let phi = p.phi(beta);
    let tail = (p.n / 2 - rs - 1) as f64;
    let nf = p.n as f64;

    let mut rest = p.alpha.sin();
    for k in 2..=rs {
        let (a, b) = (pts[k - 1], pts[k + 1]);
        rest += b.x * a.y - b.y * a.x;
    }
    let v = pts[rs];
    rest += tail * (sin_minus_x(beta) - tan_minus_x(0.5 * beta));
    rest -= (v.x * phi.sin() + v.y * phi.cos() + 0.5) * (0.5 * beta).tan();
    Ok(0.5 * phi - 5.0 * PI.powi(3) / (48.0 * nf * nf) - rest)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QOptions {
    /// Projected-gradient tolerance, in the scaled units of the optimizer.
    pub tol: f64,
    pub max_iter: usize,
    /// Number of jittered restarts in addition to the tabulated start.
    pub multistart: usize,
    pub seed: u64,
    /// Permit r above the tabulated range (no reference start values).
    pub allow_large_r: bool,
}

impl Default for QOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 500,
            multistart: 8,
            seed: 0,
            allow_large_r: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QConstruction {
    pub params: ReducedParams,
    pub angles: AngleVector,
    pub polygon: SmallPolygon,
    pub report: AreaReport,
    pub area: f64,
    /// `pi/4 - 5 pi^3 / 48 n^2 - area`, computed without cancellation.
    pub deficit: f64,
    /// `None` for r = 0, which has no free parameters.
    pub diagnostics: Option<BoxDiagnostics>,
}

/// Starting point in scaled units `x n / pi`.
fn scaled_start(r: usize) -> Vec<f64> {
    let row = reference::table2(r.min(MAX_TABULATED_R)).expect("table covers 0..=16");
    let nb = r / 2;
    let ng = r.div_ceil(2) - 1;
    let mut u = vec![row.a];
    u.extend((0..nb).map(|i| row.b.get(i).copied().unwrap_or(1.0)));
    u.extend((0..ng).map(|i| row.c.get(i).copied().unwrap_or(0.0)));
    u
}

/// Penalty for parameter points where the construction does not exist.
const INFEASIBLE: f64 = -1e3;

fn finish(params: ReducedParams, diagnostics: Option<BoxDiagnostics>) -> Result<QConstruction> {
    let angles = expand_angles(&params)?;
    let polygon = vertices_from_angles(&angles)?;
    let report = validate(&polygon);
    let area = reduced_area(&params)?;
    let deficit = reduced_deficit(&params)?;
    Ok(QConstruction {
        params,
        angles,
        polygon,
        report,
        area,
        deficit,
        diagnostics,
    })
}

/// Maximizes the reduced area over the free parameters of `Q_{n,r}`.
///
/// The optimizer works on `u = x n / pi` and on the scaled deficit
/// `(A - pi/4 + 5 pi^3 / 48 n^2) n^3 / pi^3`, which stays of order one for
/// every `n`. The finite-difference step follows the rounding level of that
/// scaled objective.
pub fn construct_q(n: usize, r: usize, opts: &QOptions) -> Result<QConstruction> {
    let (params, diagnostics) = optimize_params(n, r, opts)?;
    finish(params, diagnostics)
}

/// Optimal derived parameters of `Q_{n,r}` without building the polygon.
pub fn optimize_params(
    n: usize,
    r: usize,
    opts: &QOptions,
) -> Result<(ReducedParams, Option<BoxDiagnostics>)> {
    check_nr(n, r)?;
    if r > MAX_TABULATED_R && !opts.allow_large_r {
        return Err(Error::Domain(format!(
            "r = {r} exceeds {MAX_TABULATED_R}; set allow_large_r to proceed"
        )));
    }
    if r == 0 {
        return Ok((ReducedParams::regular_plus_one(n)?.derive()?, None));
    }

    let nf = n as f64;
    let unit = PI / nf;
    let scale = nf.powi(3) / PI.powi(3);
    let nb = r / 2;
    let mut lower = vec![nf / (2.0 * nf - 2.0)];
    let mut upper = vec![1.0];
    lower.extend(std::iter::repeat_n(1.0, nb));
    upper.extend(std::iter::repeat_n(2.0, nb));
    lower.extend(std::iter::repeat_n(0.0, r - 1 - nb));
    upper.extend(std::iter::repeat_n(1.0, r - 1 - nb));

    let to_params = |u: &[f64]| -> Result<ReducedParams> {
        let x: Vec<f64> = u.iter().map(|v| v * unit).collect();
        ReducedParams::from_free(n, r, &x)?.derive()
    };
    // The path may cross a negative final gamma (the polygon is still well
    // defined there); only the returned optimum must keep it nonnegative.
    let scaled_area = |u: &[f64]| -> f64 {
        let value = to_params(u).and_then(|p| {
            expand_angles(&p)?;
            Ok(-reduced_deficit(&p)? * scale)
        });
        value.unwrap_or(INFEASIBLE)
    };

    // Rounding noise of the scaled objective sets the difference step
    // (cube-root rule) and the reachable gradient accuracy.
    let noise = f64::EPSILON * scale * (8.0 * (r + 2) as f64 / nf).min(1.0);
    let fd_step = noise.cbrt().max(1e-7);
    let tol = opts.tol.max(10.0 * noise.powf(2.0 / 3.0));

    let mut start = scaled_start(r);
    for ((s, l), u) in start.iter_mut().zip(&lower).zip(&upper) {
        *s = s.clamp(*l, *u);
    }
    let mut problem = BoxProblem::new(lower, upper, scaled_area)?;
    problem.tol = tol;
    problem.max_iter = opts.max_iter;
    problem.fd_step = fd_step;
    problem.f_tol = 10.0 * noise;
    problem.multistart_seeds = (0..opts.multistart as u64)
        .map(|i| opts.seed.wrapping_mul(1_000_003).wrapping_add(i + 1))
        .collect();
    let sol = maximize_box(&mut problem, &start)?;

    if sol.value <= INFEASIBLE {
        return Err(Error::Optimization {
            message: format!("no feasible parameter point found for n = {n}, r = {r}"),
            best_point: sol.x.iter().map(|v| v * unit).collect(),
            best_value: sol.value,
            residual: f64::NAN,
        });
    }
    let params = to_params(&sol.x)?;
    if params.gamma_last_derived.is_some_and(|g| g < 0.0) {
        return optimize_on_gamma_face(n, r, &problem, &sol, opts);
    }
    Ok((params, Some(sol.diagnostics)))
}

/// Parameters on the face `gamma_last = 0`: `alpha` is solved from the
/// closure constraint for the given `betas` and free gammas (radians).
fn params_on_gamma_face(n: usize, r: usize, rest: &[f64]) -> Result<ReducedParams> {
    let nf = n as f64;
    let with_alpha = |alpha: f64| -> Result<ReducedParams> {
        let mut x = Vec::with_capacity(rest.len() + 1);
        x.push(alpha);
        x.extend_from_slice(rest);
        let mut p = ReducedParams::from_free(n, r, &x)?;
        p.beta_derived = Some(solve_beta(&p)?);
        Ok(p)
    };
    let residual = |alpha: f64| {
        with_alpha(alpha)
            .and_then(|p| closure_residual_at(&p, 0.0))
            .unwrap_or(f64::NAN)
    };
    let opts = RootOptions {
        full_precision: true,
        ..RootOptions::default()
    };
    let root = brent(residual, PI / (2.0 * nf - 2.0), PI / nf, opts)?;
    let mut p = with_alpha(root.x)?;
    p.gamma_last_derived = Some(0.0);
    Ok(p)
}

/// Maximizes over the face `gamma_last = 0` when the unconstrained optimum
/// has a negative final gamma.
fn optimize_on_gamma_face<F>(
    n: usize,
    r: usize,
    interior: &BoxProblem<F>,
    sol: &BoxSolution,
    opts: &QOptions,
) -> Result<(ReducedParams, Option<BoxDiagnostics>)> {
    let unit = PI / n as f64;
    let scale = (n as f64 / PI).powi(3);
    let to_params = |v: &[f64]| -> Result<ReducedParams> {
        let x: Vec<f64> = v.iter().map(|t| t * unit).collect();
        params_on_gamma_face(n, r, &x)
    };
    if r == 1 {
        return Ok((to_params(&[])?, Some(sol.diagnostics.clone())));
    }
    let scaled_area = |v: &[f64]| -> f64 {
        to_params(v)
            .and_then(|p| {
                expand_angles(&p)?;
                Ok(-reduced_deficit(&p)? * scale)
            })
            .unwrap_or(INFEASIBLE)
    };
    let mut face = BoxProblem::new(
        interior.lower[1..].to_vec(),
        interior.upper[1..].to_vec(),
        scaled_area,
    )?;
    face.tol = interior.tol;
    face.max_iter = opts.max_iter;
    face.fd_step = interior.fd_step;
    face.f_tol = interior.f_tol;
    let best = maximize_box(&mut face, &sol.x[1..])?;
    if best.value <= INFEASIBLE {
        return Err(Error::Optimization {
            message: format!("no feasible point with nonnegative final gamma for n = {n}, r = {r}"),
            best_point: sol.x.iter().map(|v| v * unit).collect(),
            best_value: sol.value,
            residual: f64::NAN,
        });
    }
    let diagnostics = BoxDiagnostics {
        start_values: sol.diagnostics.start_values.clone(),
        spread: sol.diagnostics.spread,
        ..best.diagnostics
    };
    Ok((to_params(&best.x)?, Some(diagnostics)))
}

/// `r` used by the piecewise theorem construction: `n/2 - 2` up to n = 34,
/// 16 beyond.
pub fn theorem_r(n: usize) -> usize {
    if n <= 34 {
        n / 2 - 2
    } else {
        MAX_TABULATED_R
    }
}

/// `Q_n`: `Q_{n, n/2-2}` for n <= 34 and `Q_{n,16}` for n >= 36.
pub fn construct_q_theorem(n: usize, opts: &QOptions) -> Result<QConstruction> {
    check_nr(n, 0)?;
    construct_q(n, theorem_r(n), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::area_dissection;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const ALPHA_6_1: f64 = 0.3509301888703616;

    fn q61() -> ReducedParams {
        ReducedParams::new(6, 1, ALPHA_6_1, vec![], vec![])
            .unwrap()
            .derive()
            .unwrap()
    }

    fn q103() -> ReducedParams {
        ReducedParams::new(
            10,
            3,
            0.2126101953284637,
            vec![0.3433714044229845],
            vec![0.02476000789351616],
        )
        .unwrap()
        .derive()
        .unwrap()
    }

    fn q124() -> ReducedParams {
        ReducedParams::new(
            12,
            4,
            0.1770854623284314,
            vec![0.2827755557037131, 0.2763754214389234],
            vec![0.01982894085863103],
        )
        .unwrap()
        .derive()
        .unwrap()
    }

    #[test]
    fn r0_expands_to_pentagon_plus_vertex() {
        let p = ReducedParams::regular_plus_one(6)
            .unwrap()
            .derive()
            .unwrap();
        let a = expand_angles(&p).unwrap();
        for (t, e) in a.theta().iter().zip([PI / 10.0, PI / 5.0, PI / 5.0]) {
            assert_abs_diff_eq!(*t, e, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(reduced_area(&p).unwrap(), 0.6722882584, epsilon = 5e-11);
    }

    #[test]
    fn beta_for_r0() {
        let p = ReducedParams::regular_plus_one(6).unwrap();
        assert_abs_diff_eq!(solve_beta(&p).unwrap(), PI / 5.0, epsilon = 1e-15);
        let p = ReducedParams::regular_plus_one(12).unwrap();
        assert_eq!(p.alpha, PI / 22.0);
        assert_abs_diff_eq!(solve_beta(&p).unwrap(), PI / 11.0, epsilon = 1e-15);
    }

    #[test]
    fn hexagon_r1_parameters() {
        let p = q61();
        let beta = p.beta_derived.unwrap();
        let gamma = p.gamma_last_derived.unwrap();
        // Reference angles for n = 6: beta = (theta_1 + theta_2)/2, gamma = (theta_1 - theta_2)/2.
        assert_abs_diff_eq!(beta, (0.653342 + 0.566524) / 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(gamma, (0.653342 - 0.566524) / 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(beta, (FRAC_PI_2 - ALPHA_6_1) / 2.0, epsilon = 1e-15);
        assert!(three_variable_closure_residual(ALPHA_6_1, beta, gamma).abs() < 1e-14);
        let a = expand_angles(&p).unwrap();
        for (t, e) in a.theta().iter().zip([0.350930, 0.653342, 0.566524]) {
            assert_abs_diff_eq!(*t, e, epsilon = 5e-7);
        }
        assert_abs_diff_eq!(
            reduced_area(&p).unwrap(),
            0.6749814429301047,
            epsilon = 1e-15
        );
    }

    #[test]
    fn decagon_r3_final_pair() {
        let p = q103();
        let a = expand_angles(&p).unwrap();
        assert_abs_diff_eq!(a.theta()[3], 0.339137, epsilon = 5e-7);
        assert_abs_diff_eq!(a.theta()[4], 0.332306, epsilon = 5e-7);
        assert_abs_diff_eq!(p.gamma_last_derived.unwrap(), 0.0034155, epsilon = 5e-7);
        assert_eq!(
            p.beta_derived.unwrap(),
            a.theta()[3] - p.gamma_last_derived.unwrap()
        );
    }

    #[test]
    fn dodecagon_r4_area() {
        assert_abs_diff_eq!(
            reduced_area(&q124()).unwrap(),
            0.7607298734487962,
            epsilon = 1e-15
        );
    }

    #[test]
    fn gamma_root_at_origin() {
        // With theta = (alpha, b, b, b, ...) closed up by r = 0 the final gamma of
        // the r = 1 scheme is zero.
        let n = 10;
        let alpha = PI / (2.0 * n as f64 - 2.0);
        let p = ReducedParams::new(n, 1, alpha, vec![], vec![])
            .unwrap()
            .derive()
            .unwrap();
        assert!(p.gamma_last_derived.unwrap().abs() < 1e-15);
    }

    #[test]
    fn phi_state_matches_prefix_sum() {
        for p in [q61(), q103(), q124()] {
            let s = phi_state(&p).unwrap();
            let a = expand_angles(&p).unwrap();
            let rs = p.r + p.r % 2;
            let prefix: f64 = a.theta()[..=rs].iter().sum();
            assert!((s.phi_r - prefix).abs() < 1e-14);
            assert!(s.phi_r <= FRAC_PI_2 + 1e-15);
            let v = a.chain()[rs];
            assert_eq!((s.x_r, s.y_r), (v.x, v.y));
        }
    }

    #[test]
    fn small_angle_series() {
        for x in [1e-4, 1e-3, 0.01, 0.049, 0.051, 0.2] {
            let s = sin_minus_x(x);
            let t = tan_minus_x(x);
            assert!((s - (x.sin() - x)).abs() <= 1e-17);
            assert!((t - (x.tan() - x)).abs() <= 1e-17);
            assert!(s < 0.0 && t > 0.0);
        }
        // Leading terms dominate well below the switch-over.
        let x = 1e-5f64;
        assert!((sin_minus_x(x) / (-x.powi(3) / 6.0) - 1.0).abs() < 1e-9);
        assert!((tan_minus_x(x) / (x.powi(3) / 3.0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn deficit_agrees_with_area() {
        for p in [
            q61(),
            q103(),
            q124(),
            ReducedParams::regular_plus_one(400)
                .unwrap()
                .derive()
                .unwrap(),
        ] {
            let nf = p.n as f64;
            let lead = PI / 4.0 - 5.0 * PI.powi(3) / (48.0 * nf * nf);
            let d = reduced_deficit(&p).unwrap();
            assert!((lead - d - reduced_area(&p).unwrap()).abs() <= 1e-15);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(ReducedParams::new(8, 3, 0.3, vec![0.4], vec![0.0]).is_err());
        assert!(ReducedParams::new(7, 1, 0.3, vec![], vec![]).is_err());
        assert!(
            ReducedParams::new(12, 2, 0.1, vec![0.3], vec![]).is_err(),
            "alpha below box"
        );
        assert!(
            ReducedParams::new(12, 2, 0.2, vec![0.3, 0.3], vec![]).is_err(),
            "count"
        );
        assert!(construct_q(8, 3, &QOptions::default()).is_err());
        assert!(construct_q(40, 17, &QOptions::default()).is_err());
        let p = ReducedParams::new(6, 1, ALPHA_6_1, vec![], vec![]).unwrap();
        assert!(reduced_area(&p).is_err(), "not derived");
        assert!(solve_gamma_last(&p).is_err(), "beta missing");
    }

    #[test]
    fn construct_small_cases() {
        let q = construct_q(6, 1, &QOptions::default()).unwrap();
        assert_abs_diff_eq!(q.area, 0.6749814429301047, epsilon = 1e-12);
        assert_abs_diff_eq!(q.params.alpha, ALPHA_6_1, epsilon = 1e-8);
        let q = construct_q(12, 2, &QOptions::default()).unwrap();
        assert_abs_diff_eq!(q.area, 0.7607228359, epsilon = 5e-11);
        let q = construct_q(6, 0, &QOptions::default()).unwrap();
        assert_abs_diff_eq!(q.area, 0.6722882584, epsilon = 5e-11);
        assert!(q.diagnostics.is_none());
    }

    #[test]
    fn construct_decagon_matches_table() {
        let q = construct_q(10, 3, &QOptions::default()).unwrap();
        assert_abs_diff_eq!(q.area, 0.7491373458778303, epsilon = 1e-12);
        assert_abs_diff_eq!(q.params.alpha, 0.2126101953, epsilon = 1e-8);
        assert_abs_diff_eq!(q.params.betas[0], 0.3433714044, epsilon = 1e-8);
        assert_abs_diff_eq!(q.params.gammas_free[0], 0.0247600079, epsilon = 1e-8);
        assert!(q.report.all_valid());
    }

    #[test]
    fn theorem_piecewise_r() {
        assert_eq!(theorem_r(6), 1);
        assert_eq!(theorem_r(12), 4);
        assert_eq!(theorem_r(34), 15);
        assert_eq!(theorem_r(36), 16);
        let q = construct_q_theorem(36, &QOptions::default()).unwrap();
        assert_eq!(q.params.r, 16);
        let q4 = construct_q(36, 4, &QOptions::default()).unwrap();
        assert!(q.area >= q4.area - 1e-11);
        assert!(q.area < crate::geometry::upper_bound(36).unwrap());
        assert!(q.report.all_valid());
    }

    #[test]
    fn negative_final_gamma_optimum_moves_to_face() {
        let opts = QOptions {
            allow_large_r: true,
            ..QOptions::default()
        };
        let n = 2000;
        let (p9, diag) = optimize_params(n, 9, &opts).unwrap();
        assert_eq!(p9.gamma_last_derived, Some(0.0));
        assert!(closure_residual_at(&p9, 0.0).unwrap().abs() <= 1e-15);
        assert!(diag.unwrap().converged);
        let angles = expand_angles(&p9).unwrap();
        assert!(angles.is_feasible(1e-12));
        // Q_{n,8} is not better than the constrained Q_{n,9} optimum.
        let (p8, _) = optimize_params(n, 8, &opts).unwrap();
        let scale = (n as f64 / PI).powi(3);
        let (d9, d8) = (reduced_deficit(&p9).unwrap(), reduced_deficit(&p8).unwrap());
        assert!((d9 - d8) * scale <= 1e-7, "{d9} vs {d8}");
    }

    fn random_params() -> impl Strategy<Value = ReducedParams> {
        (3usize..=30, 0usize..=6)
            .prop_filter("n >= 2r + 4", |(m, r)| 2 * m >= 2 * r + 4)
            .prop_flat_map(|(m, r)| {
                let n = 2 * m;
                (
                    Just(n),
                    Just(r),
                    proptest::collection::vec(-1.0f64..1.0, r.max(1)),
                )
            })
            .prop_filter_map("closure root must exist", |(n, r, jit)| {
                // Jitter around the tabulated limits, kept inside the boxes.
                let nf = n as f64;
                if r == 0 {
                    return ReducedParams::regular_plus_one(n).ok()?.derive().ok();
                }
                let mut u = scaled_start(r);
                u[0] = (u[0] + 0.05 * jit[0]).clamp(nf / (2.0 * nf - 2.0), 1.0);
                for (i, v) in u.iter_mut().enumerate().skip(1) {
                    *v = if i <= r / 2 {
                        (*v + 0.05 * jit[i]).clamp(1.0, 2.0)
                    } else {
                        (*v + 0.02 * jit[i]).clamp(0.0, 1.0)
                    };
                }
                let x: Vec<f64> = u.iter().map(|v| v * PI / nf).collect();
                let p = ReducedParams::from_free(n, r, &x).ok()?.derive().ok()?;
                expand_angles(&p).ok()?;
                Some(p)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn reduced_area_equals_full_dissection(p in random_params()) {
            let a = expand_angles(&p).unwrap();
            prop_assert!(a.angle_sum_residual().abs() <= 1e-10);
            prop_assert!(a.closure_residual().abs() <= 1e-10);
            let reduced = reduced_area(&p).unwrap();
            prop_assert!((reduced - area_dissection(&a)).abs() <= 1e-12,
                "reduced {} vs dissection {}", reduced, area_dissection(&a));
        }

        #[test]
        fn r1_closure_is_three_variable_relation(alpha_u in 0.55f64..0.95, m in 3usize..40) {
            let n = 2 * m;
            let nf = n as f64;
            let alpha = alpha_u.max(nf / (2.0 * nf - 2.0)) * PI / nf;
            let p = ReducedParams::new(n, 1, alpha, vec![], vec![]).unwrap();
            let beta = solve_beta(&p).unwrap();
            let p = ReducedParams { beta_derived: Some(beta), ..p };
            for g in [-0.5, 0.0, 0.3, 0.9] {
                let gamma = g * PI / nf;
                let general = closure_residual_at(&p, gamma).unwrap();
                let three = three_variable_closure_residual(alpha, beta, gamma);
                prop_assert!((general - three).abs() <= 1e-14);
            }
        }
    }
}
