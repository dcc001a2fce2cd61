//! Zero-sum matrix games: first-order equilibrium solvers with last-iterate
//! instrumentation, exact conditioning diagnostics for small games, and
//! Gaussian-perturbation Monte Carlo experiments.

pub mod equilibrium;
pub mod error_bound;
pub mod error;
pub mod fmt;
pub mod game;
pub mod lab;
pub mod linalg;
pub mod rng;
pub mod solvers;

pub use equilibrium::{certify_nondegenerate, solve_exact, Equilibrium, NonDegeneracyCertificate};
pub use error::{Error, Result};
pub use game::{
    duality_gap, gaussian_perturb, make_illcond_game, operator_f, project_simplex, Game,
    JointStrategy, Provenance, SimplexVector, TrajectoryRecord,
};
pub use solvers::{iteration_bound, solve, Algorithm, SolveResult, SolverConfig};
