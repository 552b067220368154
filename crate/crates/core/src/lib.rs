//! Small polygons (unit diameter) with large area for even vertex counts.
//!
//! * [`geometry`]: skeleton angle vectors, vertices, areas, validation and
//!   the upper bound.
//! * [`reduced`]: the `(r + 2)`-parameter construction `Q_{n,r}`.
//! * [`solver`]: root finding, box-constrained and equality-constrained
//!   optimization, the full program for `P_n*`.
//! * [`asymptotics`]: the `q_r` coefficients of the `1/n^3` deficit.
//! * [`reference`]: tabulated reference values.

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod reduced;
pub mod reference;
pub mod roots;
pub mod solver;

pub use error::{Error, Result};
pub use geometry::{
    area_dissection, area_shoelace, regular_area, upper_bound, validate, vertices_from_angles,
    AngleVector, AreaReport, Point, SmallPolygon,
};
pub use reduced::{construct_q, construct_q_theorem, QConstruction, QOptions, ReducedParams};
pub use solver::{solve_full_nlp, NlpOptions, NlpSolution};
