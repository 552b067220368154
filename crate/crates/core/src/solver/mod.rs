//! Continuous optimizers: a box-constrained maximizer for the reduced
//! constructions and an augmented-Lagrangian solver for the full program.

pub mod boxed;
pub mod lbfgs;
pub mod nlp;

pub use boxed::{maximize_box, BoxDiagnostics, BoxProblem, BoxSolution};
pub use nlp::{
    default_start, objective_gradient, solve_full_nlp, NlpDiagnostics, NlpOptions, NlpProblem,
    NlpSolution,
};
