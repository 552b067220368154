//! The polygon record emitted by `construct` and `optimize`.

use serde::{Deserialize, Serialize};
use smallgon::reduced::QConstruction;
use smallgon::solver::BoxDiagnostics;
use smallgon::{validate, AreaReport, NlpSolution, Point, SmallPolygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Reduced,
    FullNlp,
    Regular,
    Theorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidFlags {
    pub is_convex: bool,
    pub is_symmetric: bool,
    pub is_small: bool,
}

impl From<&AreaReport> for ValidFlags {
    fn from(r: &AreaReport) -> Self {
        Self {
            is_convex: r.is_convex,
            is_symmetric: r.is_symmetric,
            is_small: r.is_small,
        }
    }
}

impl ValidFlags {
    pub fn all(&self) -> bool {
        self.is_convex && self.is_symmetric && self.is_small
    }
}

/// Solver state at the returned point. Non-finite numbers become `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `"box-lbfgs"` for the reduced construction, `"augmented-lagrangian"`
    /// for the full program.
    pub solver: String,
    pub converged: bool,
    pub iterations: usize,
    /// Projected gradient norm (reduced) or KKT residual (full program).
    pub optimality: Option<f64>,
    pub constraint_residuals: Option<[f64; 2]>,
    pub multipliers: Option<[f64; 2]>,
    /// Objective reached from each start, in start order.
    pub start_values: Vec<Option<f64>>,
    pub spread: Option<f64>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl From<&BoxDiagnostics> for Diagnostics {
    fn from(d: &BoxDiagnostics) -> Self {
        Self {
            solver: "box-lbfgs".into(),
            converged: d.converged,
            iterations: d.iterations,
            optimality: finite(d.pg_norm),
            constraint_residuals: None,
            multipliers: None,
            start_values: d.start_values.iter().map(|&v| finite(v)).collect(),
            spread: finite(d.spread),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonRecord {
    pub n: usize,
    pub r: Option<usize>,
    pub method: Method,
    pub area: f64,
    pub upper_bound: Option<f64>,
    pub gap: Option<f64>,
    pub diameter: f64,
    /// The `n/2` skeleton turning angles; empty for the regular polygon.
    pub angles: Vec<f64>,
    pub vertices: Vec<[f64; 2]>,
    pub valid: ValidFlags,
    pub diagnostics: Option<Diagnostics>,
}

fn vertex_pairs(p: &SmallPolygon) -> Vec<[f64; 2]> {
    p.vertices.iter().map(|v| [v.x, v.y]).collect()
}

impl PolygonRecord {
    pub fn from_reduced(q: &QConstruction, method: Method) -> Self {
        Self {
            n: q.params.n,
            r: Some(q.params.r),
            method,
            area: q.area,
            upper_bound: q.report.upper_bound,
            gap: q.report.upper_bound.map(|ub| ub - q.area),
            diameter: q.report.diameter,
            angles: q.angles.theta().to_vec(),
            vertices: vertex_pairs(&q.polygon),
            valid: (&q.report).into(),
            diagnostics: q.diagnostics.as_ref().map(Diagnostics::from),
        }
    }

    pub fn from_nlp(sol: &NlpSolution, polygon: &SmallPolygon) -> Self {
        let report = validate(polygon);
        let d = &sol.diagnostics;
        Self {
            n: sol.angles.n(),
            r: None,
            method: Method::FullNlp,
            area: sol.area,
            upper_bound: report.upper_bound,
            gap: report.upper_bound.map(|ub| ub - sol.area),
            diameter: report.diameter,
            angles: sol.angles.theta().to_vec(),
            vertices: vertex_pairs(polygon),
            valid: (&report).into(),
            diagnostics: Some(Diagnostics {
                solver: "augmented-lagrangian".into(),
                converged: d.converged,
                iterations: d.outer_iterations,
                optimality: finite(d.kkt_norm),
                constraint_residuals: Some(d.constraint_residuals),
                multipliers: Some(d.multipliers),
                start_values: d.start_areas.iter().map(|&v| finite(v)).collect(),
                spread: finite(d.spread),
            }),
        }
    }

    pub fn from_regular(polygon: &SmallPolygon, area: f64) -> Self {
        let report = validate(polygon);
        Self {
            n: polygon.n(),
            r: None,
            method: Method::Regular,
            area,
            upper_bound: report.upper_bound,
            gap: report.upper_bound.map(|ub| ub - area),
            diameter: report.diameter,
            angles: Vec::new(),
            vertices: vertex_pairs(polygon),
            valid: (&report).into(),
            diagnostics: None,
        }
    }

    pub fn points(&self) -> Vec<Point> {
        self.vertices
            .iter()
            .map(|&[x, y]| Point::new(x, y))
            .collect()
    }
}

/// Regular n-gon of unit diameter with `v_0 = (0, 0)`, `v_{n-1} = (0, 1)`
/// and mirror pairs `v_k`, `v_{n-1-k}`.
pub fn regular_polygon(n: usize) -> SmallPolygon {
    use std::f64::consts::PI;
    let m = n / 2;
    let step = 2.0 * PI / n as f64;
    let mut v = vec![Point::default(); n];
    v[n - 1] = Point::new(0.0, 1.0);
    for k in 1..m {
        let t = k as f64 * step;
        let p = Point::new(0.5 * t.sin(), 0.5 - 0.5 * t.cos());
        v[k] = p;
        v[n - 1 - k] = p.mirror();
    }
    SmallPolygon::from_vertices(v)
}
