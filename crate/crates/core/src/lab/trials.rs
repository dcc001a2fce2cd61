use std::io::Write;

use rayon::prelude::*;

use super::solve_and_certify;
use crate::error::{Error, Result};
use crate::error_bound::{diagnose, Diagnostics};
use crate::fmt::fmt17;
use crate::game::{gaussian_perturb, Game, JointStrategy};
use crate::rng::derive_seed2;
use crate::solvers::{solve, Algorithm, SolverConfig};

pub const TRIALS_CSV_HEADER: &str = "sigma,seed,nondegenerate,alpha_P,alpha_D,beta_P,beta_D,gamma_P,gamma_D,\
sigma_min_Qbar,kappa_core,kappa_empirical,iters_to_eps,phi_final,dist_final";

/// Solver choice for a batch of trials. The step size defaults per drawn game.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverSettings {
    pub algorithm: Algorithm,
    pub eta: Option<f64>,
    pub eps: f64,
    pub max_iters: usize,
    pub rho: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self { algorithm: Algorithm::Ogda, eta: None, eps: 1e-6, max_iters: 1_000_000, rho: 2.0 }
    }
}

impl SolverSettings {
    pub fn config_for(&self, g: &Game) -> SolverConfig {
        let mut cfg = SolverConfig::for_game(self.algorithm, g)
            .with_eps(self.eps)
            .with_max_iters(self.max_iters)
            .with_rho(self.rho)
            .with_record_every(self.max_iters.max(1));
        if let Some(eta) = self.eta {
            cfg.eta = eta;
        }
        cfg
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialSpec {
    /// The unperturbed matrix; entries in `[-1, 1]`.
    pub base: Game,
    pub sigmas: Vec<f64>,
    pub n_trials: usize,
    pub solver: SolverSettings,
    pub root_seed: u64,
    /// Sample count for the modulus estimate.
    pub probe_samples: usize,
}

impl TrialSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_trials == 0 {
            return Err(Error::InvalidConfig("n_trials must be at least 1".into()));
        }
        if self.sigmas.is_empty() {
            return Err(Error::InvalidConfig("sigma list is empty".into()));
        }
        if let Some(s) = self.sigmas.iter().find(|s| !(**s > 0.0 && **s <= 1.0)) {
            return Err(Error::InvalidConfig(format!("sigma must lie in (0, 1], got {s}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub sigma: f64,
    pub seed: u64,
    pub nondegenerate: bool,
    /// Absent for degenerate draws.
    pub diagnostics: Option<Diagnostics>,
    /// Steps used; equals the cap when the run did not converge.
    pub iters_to_eps: usize,
    pub phi_final: f64,
    /// Distance to the oracle equilibrium, when the oracle produced one.
    pub dist_final: Option<f64>,
}

/// Runs every (sigma, trial) pair in parallel; the output is ordered by sigma
/// and then trial index.
pub fn run_trials(spec: &TrialSpec) -> Result<Vec<TrialOutcome>> {
    spec.validate()?;
    let jobs: Vec<(usize, usize)> =
        (0..spec.sigmas.len()).flat_map(|s| (0..spec.n_trials).map(move |k| (s, k))).collect();
    jobs.par_iter()
        .map(|&(s, k)| {
            let seed = derive_seed2(spec.root_seed, s as u64, k as u64);
            run_one(spec, spec.sigmas[s], seed)
        })
        .collect()
}

fn run_one(spec: &TrialSpec, sigma: f64, seed: u64) -> Result<TrialOutcome> {
    let g = gaussian_perturb(spec.base.matrix(), sigma, seed)?;
    let solved = solve_and_certify(&g);
    let diagnostics = match (&solved.eq, solved.nondegenerate) {
        (Some(eq), true) => diagnose(&g, eq, spec.probe_samples, seed).ok(),
        _ => None,
    };
    let cfg = spec.solver.config_for(&g);
    let run = solve(&g, &cfg, &JointStrategy::uniform(g.n(), g.m()), solved.eq.as_ref())?;
    Ok(TrialOutcome {
        sigma,
        seed,
        nondegenerate: diagnostics.is_some(),
        diagnostics,
        iters_to_eps: run.iters_used,
        phi_final: run.phi_final,
        dist_final: solved.eq.as_ref().map(|eq| run.z_final.distance(&eq.joint())),
    })
}

pub fn write_trials_csv<W: Write>(mut w: W, outcomes: &[TrialOutcome]) -> Result<()> {
    writeln!(w, "{TRIALS_CSV_HEADER}")?;
    for o in outcomes {
        let diag = match &o.diagnostics {
            Some(d) => [
                d.alpha_p,
                d.alpha_d,
                d.beta_p,
                d.beta_d,
                d.gamma_p,
                d.gamma_d,
                d.sigma_min_qbar,
                d.kappa_core,
                d.kappa_empirical,
            ]
            .map(fmt17)
            .join(","),
            None => ",".repeat(8),
        };
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            fmt17(o.sigma),
            o.seed,
            o.nondegenerate,
            diag,
            o.iters_to_eps,
            fmt17(o.phi_final),
            o.dist_final.map(fmt17).unwrap_or_default()
        )?;
    }
    Ok(())
}
