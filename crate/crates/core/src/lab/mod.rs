//! Monte Carlo experiments over Gaussian perturbations of a base matrix.
//!
//! Every trial draws its matrix from a seed derived from the root seed and
//! the trial's position, so results do not depend on the worker count.

mod figure;
mod stats;
mod svg;
mod tails;
mod trials;

pub use figure::{reproduce_figure, figure_series, write_figure_csv, FigureFiles, FigureRow, FigureSeries, FigureSpec};
pub use stats::mean_std;
pub use svg::{LineChart, Series};
pub use tails::{
    eps_for_bound, tail_report, tail_samples, validate_tail, validate_tail_alpha, validate_tail_beta, validate_tail_gamma,
    TailKind, TailReport, TailSample,
};
pub use trials::{run_trials, write_trials_csv, SolverSettings, TrialOutcome, TrialSpec, TRIALS_CSV_HEADER};

use crate::equilibrium::{certify_nondegenerate, solve_exact, Equilibrium, DEFAULT_TOL};
use crate::error_bound::{reduce, QSystem};
use crate::game::Game;

/// Oracle output for one drawn game. `qsystem` is `None` for degenerate draws
/// and for singleton supports.
pub(crate) struct Solved {
    pub eq: Option<Equilibrium>,
    pub nondegenerate: bool,
    pub qsystem: Option<QSystem>,
}

/// Solves `g` exactly and trusts the reduction only when the certificate
/// passes and the reduced system reproduces the equilibrium.
pub(crate) fn solve_and_certify(g: &Game) -> Solved {
    let Ok(eq) = solve_exact(g, DEFAULT_TOL) else {
        return Solved { eq: None, nondegenerate: false, qsystem: None };
    };
    if !certify_nondegenerate(g, &eq, DEFAULT_TOL).is_nondegenerate {
        return Solved { eq: Some(eq), nondegenerate: false, qsystem: None };
    }
    match reduce(g, &eq) {
        Ok(qsystem) => Solved { eq: Some(eq), nondegenerate: true, qsystem },
        Err(_) => Solved { eq: Some(eq), nondegenerate: false, qsystem: None },
    }
}
