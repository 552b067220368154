use thiserror::Error;

/// Errors raised by constructions and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (odd n, n < 2r + 4, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Angles do not satisfy the angle-sum or closure constraint.
    #[error("constraint violated: {what} residual {residual:e} exceeds {tolerance:e}")]
    Constraint {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },

    /// A parameter point produced angles outside their admissible range.
    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    /// The root-finding bracket does not contain a sign change.
    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// Root finder ran out of iterations before reaching its residual tolerance.
    #[error("root finder did not converge: |f| = {residual:e} after {iterations} iterations")]
    RootNotConverged { residual: f64, iterations: usize },

    /// An optimizer stopped without meeting its tolerances.
    #[error("optimization failed: {message} (best value {best_value}, constraint residual {residual:e})")]
    Optimization {
        message: String,
        best_point: Vec<f64>,
        best_value: f64,
        residual: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
