//! Symmetric skeleton polygons: coordinates from turning angles, areas, and
//! validation of the "small" (unit diameter) property.
//!
//! Conventions: `v_0` sits at the origin and the pendant vertex `v_{n-1}` at
//! `(0, 1)`, so the y-axis is the axis of symmetry. Vertices `v_1 ... v_{n/2}`
//! follow the star path with alternating unit steps; the remaining vertices
//! are mirror images `v_{n-1-k} = (-x_k, y_k)`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use crate::error::{Error, Result};
use crate::roots::{brent, RootOptions};

/// Identity-check tolerance (quantities equal up to rounding).
pub const IDENTITY_TOL: f64 = 1e-12;
/// Feasibility tolerance for constraint residuals and geometric flags.
pub const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn mirror(self) -> Point {
        Point::new(-self.x, self.y)
    }
}

fn check_even_n(n: usize, min: usize) -> Result<()> {
    if !n.is_multiple_of(2) || n < min {
        return Err(Error::Domain(format!(
            "n must be an even integer >= {min}, got {n}"
        )));
    }
    Ok(())
}

/// Foster–Szabo upper bound on the area of a small n-gon, n even.
pub fn upper_bound(n: usize) -> Result<f64> {
    check_even_n(n, 6)?;
    let nf = n as f64;
    Ok(0.5 * nf * (PI / nf).sin() - 0.5 * (nf - 1.0) * (PI / (2.0 * nf - 2.0)).tan())
}

/// Area of the regular small n-gon (n even, diameter 1).
pub fn regular_area(n: usize) -> Result<f64> {
    check_even_n(n, 4)?;
    let nf = n as f64;
    Ok(nf / 8.0 * (2.0 * PI / nf).sin())
}

/// The `n/2` turning angles of a symmetric skeleton polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleVector {
    n: usize,
    theta: Vec<f64>,
}

impl AngleVector {
    /// Checks the shape invariants (n even and >= 6, `n/2` angles, box bounds).
    /// The angle-sum and closure constraints are not enforced here; see
    /// [`AngleVector::angle_sum_residual`] and [`AngleVector::closure_residual`].
    pub fn new(n: usize, theta: Vec<f64>) -> Result<Self> {
        check_even_n(n, 6)?;
        if theta.len() != n / 2 {
            return Err(Error::Domain(format!(
                "expected {} angles for n = {n}, got {}",
                n / 2,
                theta.len()
            )));
        }
        for (k, &t) in theta.iter().enumerate() {
            let hi = if k == 0 { FRAC_PI_6 } else { FRAC_PI_3 };
            if !(0.0..=hi).contains(&t) {
                return Err(Error::Domain(format!("theta_{k} = {t} outside [0, {hi}]")));
            }
        }
        Ok(Self { n, theta })
    }

    /// Builds a feasible vector from `theta_2 ... theta_{n/2-1}`, choosing
    /// `theta_0` and `theta_1` so that both the angle sum and the closure
    /// constraint hold.
    pub fn close_from_tail(n: usize, tail: &[f64]) -> Result<Self> {
        check_even_n(n, 6)?;
        if tail.len() != n / 2 - 2 {
            return Err(Error::Domain(format!(
                "expected {} tail angles for n = {n}, got {}",
                n / 2 - 2,
                tail.len()
            )));
        }
        let rest: f64 = tail.iter().sum();
        let build = |t0: f64| {
            let mut theta = Vec::with_capacity(n / 2);
            theta.push(t0);
            theta.push(FRAC_PI_2 - t0 - rest);
            theta.extend_from_slice(tail);
            theta
        };
        let residual = |t0: f64| closure_residual_of(n, &build(t0));
        let hi = FRAC_PI_6.min(FRAC_PI_2 - rest);
        let root = brent(residual, 0.0, hi, RootOptions::default())?;
        Self::new(n, build(root.x))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.theta
    }

    /// `sum(theta) - pi/2`.
    pub fn angle_sum_residual(&self) -> f64 {
        self.theta.iter().sum::<f64>() - FRAC_PI_2
    }

    /// `x_{n/2-1} - (-1)^{n/2} / 2`.
    pub fn closure_residual(&self) -> f64 {
        closure_residual_of(self.n, &self.theta)
    }

    pub fn is_feasible(&self, tol: f64) -> bool {
        self.angle_sum_residual().abs() <= tol && self.closure_residual().abs() <= tol
    }

    /// Vertices `v_0 ... v_{n/2}` along the star path.
    pub fn chain(&self) -> Vec<Point> {
        chain_points(&self.theta, self.n / 2 + 1)
    }
}

fn half_sign(n: usize) -> f64 {
    if (n / 2).is_multiple_of(2) {
        0.5
    } else {
        -0.5
    }
}

pub(crate) fn closure_residual_of(n: usize, theta: &[f64]) -> f64 {
    let pts = chain_points(theta, n / 2);
    pts[n / 2 - 1].x - half_sign(n)
}

/// First `count` points of the star path: `v_0 = 0` and
/// `v_{k+1} = v_k + (-1)^k (sin S_k, cos S_k)` with `S_k = theta_0 + ... + theta_k`.
pub(crate) fn chain_points(theta: &[f64], count: usize) -> Vec<Point> {
    let mut pts = Vec::with_capacity(count);
    pts.push(Point::default());
    let mut s = 0.0;
    let mut p = Point::default();
    for (j, &t) in theta.iter().enumerate().take(count.saturating_sub(1)) {
        s += t;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        p = Point::new(p.x + sign * s.sin(), p.y + sign * s.cos());
        pts.push(p);
    }
    pts
}

/// Vertex coordinates, skeleton edges and boundary order of a polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallPolygon {
    pub vertices: Vec<Point>,
    /// Vertex index pairs at unit distance.
    pub skeleton_edges: Vec<(usize, usize)>,
    /// Permutation of vertex indices in counter-clockwise boundary order.
    pub boundary: Vec<usize>,
}

impl SmallPolygon {
    /// Polygon from bare vertices: boundary by angular sort about the
    /// centroid, skeleton from the pairs at distance 1 (within `FEASIBILITY_TOL`).
    pub fn from_vertices(vertices: Vec<Point>) -> Self {
        let boundary = boundary_order(&vertices);
        let mut skeleton_edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if (vertices[i].dist(vertices[j]) - 1.0).abs() <= FEASIBILITY_TOL {
                    skeleton_edges.push((i, j));
                }
            }
        }
        Self {
            vertices,
            skeleton_edges,
            boundary,
        }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(v[i].dist(v[j]));
            }
        }
        d
    }

    /// Largest deviation from `v_{n-1-k} = (-x_k, y_k)` over `1 <= k <= n-2`.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.n();
        (1..n.saturating_sub(1))
            .map(|k| {
                let (a, b) = (self.vertices[k], self.vertices[n - 1 - k]);
                (a.x + b.x).abs().max((a.y - b.y).abs())
            })
            .fold(0.0, f64::max)
    }
}

/// Counter-clockwise order by polar angle about the centroid.
fn boundary_order(vertices: &[Point]) -> Vec<usize> {
    if vertices.is_empty() {
        return Vec::new();
    }
    let inv = 1.0 / vertices.len() as f64;
    let cx = vertices.iter().map(|p| p.x).sum::<f64>() * inv;
    let cy = vertices.iter().map(|p| p.y).sum::<f64>() * inv;
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    let angle = |i: usize| (vertices[i].y - cy).atan2(vertices[i].x - cx);
    order.sort_by(|&i, &j| angle(i).total_cmp(&angle(j)));
    order
}

/// Expands a feasible angle vector into the full symmetric polygon.
pub fn vertices_from_angles(a: &AngleVector) -> Result<SmallPolygon> {
    let n = a.n;
    let m = n / 2;
    let sum_res = a.angle_sum_residual();
    if sum_res.abs() > FEASIBILITY_TOL {
        return Err(Error::Constraint {
            what: "angle sum",
            residual: sum_res,
            tolerance: FEASIBILITY_TOL,
        });
    }
    let chain = a.chain();
    let closure = chain[m - 1].x - half_sign(n);
    if closure.abs() > FEASIBILITY_TOL {
        return Err(Error::Constraint {
            what: "closure",
            residual: closure,
            tolerance: FEASIBILITY_TOL,
        });
    }

    let mut vertices = vec![Point::default(); n];
    vertices[..=m].copy_from_slice(&chain);
    vertices[n - 1] = Point::new(0.0, 1.0);
    for k in m + 1..=n - 2 {
        vertices[k] = vertices[n - 1 - k].mirror();
    }

    let mut skeleton_edges: Vec<(usize, usize)> = (0..n - 2).map(|k| (k, k + 1)).collect();
    skeleton_edges.push((n - 2, 0));
    skeleton_edges.push((0, n - 1));

    let boundary = boundary_order(&vertices);
    Ok(SmallPolygon {
        vertices,
        skeleton_edges,
        boundary,
    })
}

/// Area as twice the sum of the fan triangles `v_0 v_{k-1} v_{k+1}`
/// (and `v_0 v_{n-1} v_1` for k = 1), using cross products of the
/// star-path coordinates.
pub fn area_dissection(a: &AngleVector) -> f64 {
    let pts = a.chain();
    let m = a.n / 2;
    let mut area = a.theta[0].sin();
    for k in 2..m {
        let (p, q) = (pts[k - 1], pts[k + 1]);
        area += q.x * p.y - q.y * p.x;
    }
    area
}

/// Same area via the sine-difference form of each triangle term.
pub fn area_sine_difference(a: &AngleVector) -> f64 {
    let t = &a.theta;
    let m = a.n / 2;
    let mut area = t[0].sin();
    for k in 2..m {
        let mut term = 0.0;
        let mut inner = 0.0; // theta_{k-1} + ... + theta_{k-i-1}
        for i in 0..=k - 2 {
            inner += t[k - i - 1];
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            term += sign * ((t[k] + inner).sin() - inner.sin());
        }
        area += term;
    }
    area
}

/// Shoelace area over the boundary order, as an absolute value.
pub fn area_shoelace(p: &SmallPolygon) -> f64 {
    let b = &p.boundary;
    if b.len() < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for i in 0..b.len() {
        let (u, v) = (p.vertices[b[i]], p.vertices[b[(i + 1) % b.len()]]);
        twice += u.x * v.y - v.x * u.y;
    }
    0.5 * twice.abs()
}

/// Geometric summary of a polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaReport {
    pub area: f64,
    /// Upper bound for this vertex count; `None` unless n is even and >= 6.
    pub upper_bound: Option<f64>,
    pub gap: Option<f64>,
    pub diameter: f64,
    pub is_convex: bool,
    pub is_symmetric: bool,
    pub is_small: bool,
}

impl AreaReport {
    pub fn all_valid(&self) -> bool {
        self.is_convex && self.is_symmetric && self.is_small
    }
}

fn is_convex(p: &SmallPolygon) -> bool {
    let b = &p.boundary;
    if b.len() < 3 {
        return true;
    }
    let mut positive = false;
    for i in 0..b.len() {
        let p0 = p.vertices[b[i]];
        let p1 = p.vertices[b[(i + 1) % b.len()]];
        let p2 = p.vertices[b[(i + 2) % b.len()]];
        let cross = (p1.x - p0.x) * (p2.y - p1.y) - (p1.y - p0.y) * (p2.x - p1.x);
        if cross < -IDENTITY_TOL {
            return false;
        }
        positive |= cross > IDENTITY_TOL;
    }
    positive
}

/// Diameter, convexity and symmetry checks. Failures show up as flags.
pub fn validate(p: &SmallPolygon) -> AreaReport {
    let area = area_shoelace(p);
    let upper_bound = upper_bound(p.n()).ok();
    let diameter = p.diameter();
    AreaReport {
        area,
        upper_bound,
        gap: upper_bound.map(|ub| ub - area),
        diameter,
        is_convex: is_convex(p),
        is_symmetric: p.symmetry_residual() <= FEASIBILITY_TOL,
        is_small: diameter <= 1.0 + FEASIBILITY_TOL,
    }
}
