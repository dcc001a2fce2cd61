//! Error-bound machinery for non-degenerate games: the support reduction,
//! the conditioning quantities, the modulus estimates and the stability
//! bounds.

mod qsystem;
mod quantities;
mod report;
mod stability;

pub use qsystem::{build_t, q_transform, QSystem, QSYSTEM_RESIDUAL_TOL};
pub use quantities::{
    bar_q, bar_q_distance_factor, compute_alpha_beta, compute_gamma, error_bound_probes,
    kappa_core, kappa_empirical, negative_second_moments, AlphaBeta, LOCAL_PROBE_RADII,
};
pub use report::Report;
pub use stability::{
    delta_bound_alpha, delta_bound_beta, delta_bound_sigma, delta_empirical, random_direction,
    stability_bounds, support_break_along, StabilityBounds, BISECTION_TOL,
};

use crate::equilibrium::Equilibrium;
use crate::error::{Error, Result};
use crate::game::Game;
use crate::linalg;

/// Conditioning snapshot of a non-degenerate game.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub alpha_p: f64,
    pub alpha_d: f64,
    pub beta_p: f64,
    pub beta_d: f64,
    pub gamma_p: f64,
    pub gamma_d: f64,
    /// 1 for an empty reduction.
    pub sigma_min_qbar: f64,
    /// Characterization expression with its absolute constant omitted; a
    /// shape quantity, not a certified modulus.
    pub kappa_core: f64,
    /// Sampled over-estimate of the modulus.
    pub kappa_empirical: f64,
    pub a_flat_inf: f64,
}

/// Reduction of `eq`'s support, or `None` when a support is a singleton.
pub fn reduce(g: &Game, eq: &Equilibrium) -> Result<Option<QSystem>> {
    match q_transform(g, eq) {
        Ok(qs) => Ok(Some(qs)),
        Err(Error::EmptyReduction { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Computes every diagnostic field. `n_samples` and `seed` drive
/// [`kappa_empirical`].
pub fn diagnose(g: &Game, eq: &Equilibrium, n_samples: usize, seed: u64) -> Result<Diagnostics> {
    let qs = reduce(g, eq)?;
    let ab = compute_alpha_beta(g, eq);
    let (gamma_p, gamma_d) = compute_gamma(qs.as_ref());
    let sigma_min_qbar = qs.as_ref().map_or(1.0, |qs| linalg::sigma_min(&bar_q(qs)));
    Ok(Diagnostics {
        alpha_p: ab.alpha_p,
        alpha_d: ab.alpha_d,
        beta_p: ab.beta_p,
        beta_d: ab.beta_d,
        gamma_p,
        gamma_d,
        sigma_min_qbar,
        kappa_core: kappa_core(g, &ab, gamma_p, gamma_d),
        kappa_empirical: kappa_empirical(g, eq, n_samples, seed),
        a_flat_inf: g.max_abs_entry(),
    })
}
