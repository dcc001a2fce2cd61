use rayon::prelude::*;

use super::solve_and_certify;
use crate::error::{Error, Result};
use crate::error_bound::{compute_alpha_beta, compute_gamma};
use crate::game::gaussian_perturb;
use crate::rng::derive_seed;

/// Which conditioning quantity a tail validator counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailKind {
    Beta,
    Gamma,
    Alpha,
}

impl TailKind {
    pub fn name(self) -> &'static str {
        match self {
            TailKind::Beta => "beta",
            TailKind::Gamma => "gamma",
            TailKind::Alpha => "alpha",
        }
    }

    /// Probability bound for the event at level `eps`.
    pub fn bound(self, n: usize, m: usize, sigma: f64, eps: f64) -> f64 {
        let k = n.min(m) as f64;
        let e = std::f64::consts::E;
        let coeff = match self {
            TailKind::Beta => e * k * k,
            TailKind::Gamma => 4.0 * e * k.powi(3),
            TailKind::Alpha => 8.0 * e * e * (n * m) as f64 * k,
        };
        coeff * eps / (sigma * sigma)
    }
}

impl std::str::FromStr for TailKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beta" => Ok(TailKind::Beta),
            "gamma" => Ok(TailKind::Gamma),
            "alpha" => Ok(TailKind::Alpha),
            other => Err(Error::InvalidConfig(format!("unknown tail `{other}`"))),
        }
    }
}

/// The level at which [`TailKind::bound`] equals `target`.
pub fn eps_for_bound(kind: TailKind, n: usize, m: usize, sigma: f64, target: f64) -> f64 {
    target / kind.bound(n, m, sigma, 1.0)
}

/// One draw: the primal quantity and the factor `s` such that the event is
/// `value <= eps * s`. `None` for degenerate draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSample {
    pub value: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    pub kind: TailKind,
    pub n: usize,
    pub m: usize,
    pub sigma: f64,
    pub eps: f64,
    pub n_trials: usize,
    pub n_nondegenerate: usize,
    pub hits: usize,
    pub empirical_freq: f64,
    pub paper_bound: f64,
    /// `paper_bound + 3 sqrt(p (1 - p) / n_trials) + 1 / n_trials`.
    pub limit: f64,
    pub pass: bool,
}

impl std::fmt::Display for TailReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "tail={} n={} m={} sigma={} eps={:e} trials={} nondegenerate={} hits={} empirical_freq={} paper_bound={} limit={} pass={}",
            self.kind.name(),
            self.n,
            self.m,
            self.sigma,
            self.eps,
            self.n_trials,
            self.n_nondegenerate,
            self.hits,
            self.empirical_freq,
            self.paper_bound,
            self.limit,
            self.pass
        )
    }
}

/// Draws `n_trials` perturbations of the zero `n x m` matrix and records the
/// requested quantity with its threshold scale.
pub fn tail_samples(kind: TailKind, n: usize, m: usize, sigma: f64, n_trials: usize, root_seed: u64) -> Result<Vec<Option<TailSample>>> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(Error::InvalidConfig(format!("sigma must lie in (0, 1], got {sigma}")));
    }
    if n_trials == 0 || n == 0 || m == 0 {
        return Err(Error::InvalidConfig("dimensions and trial count must be positive".into()));
    }
    let base = nalgebra::DMatrix::zeros(n, m);
    (0..n_trials)
        .into_par_iter()
        .map(|k| {
            let g = gaussian_perturb(&base, sigma, derive_seed(root_seed, k as u64))?;
            let solved = solve_and_certify(&g);
            let (Some(eq), true) = (solved.eq.as_ref(), solved.nondegenerate) else {
                return Ok(None);
            };
            let a_flat = g.max_abs_entry();
            let ab = compute_alpha_beta(&g, eq);
            let sample = match kind {
                TailKind::Beta => TailSample { value: ab.beta_p, scale: 1.0 / (5.0 * a_flat) },
                TailKind::Gamma => {
                    let q_max = solved.qsystem.as_ref().map_or(0.0, |qs| {
                        qs.q.column_iter().map(|c| c.norm()).fold(0.0, f64::max)
                    });
                    let (gamma_p, _) = compute_gamma(solved.qsystem.as_ref());
                    TailSample { value: gamma_p, scale: 1.0 / (4.0 * q_max + 20.0 * a_flat + 3.0) }
                }
                TailKind::Alpha => {
                    TailSample { value: ab.alpha_p, scale: 1.0 / (25.0 * (a_flat + 1.0).powi(2)) }
                }
            };
            Ok(Some(sample))
        })
        .collect()
}

/// Counts the samples falling below their thresholds at level `eps`.
pub fn tail_report(kind: TailKind, n: usize, m: usize, sigma: f64, eps: f64, samples: &[Option<TailSample>]) -> Result<TailReport> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidConfig(format!("eps must be nonnegative, got {eps}")));
    }
    let paper_bound = kind.bound(n, m, sigma, eps);
    if paper_bound >= 0.5 {
        return Err(Error::InvalidConfig(format!(
            "bound {paper_bound} is uninformative; choose eps below {}",
            eps_for_bound(kind, n, m, sigma, 0.5)
        )));
    }
    let n_trials = samples.len();
    let nondeg: Vec<&TailSample> = samples.iter().flatten().collect();
    let hits = nondeg.iter().filter(|s| s.value <= eps * s.scale).count();
    let empirical_freq = if nondeg.is_empty() { 0.0 } else { hits as f64 / nondeg.len() as f64 };
    let nt = n_trials as f64;
    let limit = paper_bound + 3.0 * (paper_bound * (1.0 - paper_bound) / nt).sqrt() + 1.0 / nt;
    Ok(TailReport {
        kind,
        n,
        m,
        sigma,
        eps,
        n_trials,
        n_nondegenerate: nondeg.len(),
        hits,
        empirical_freq,
        paper_bound,
        limit,
        pass: empirical_freq <= limit,
    })
}

pub fn validate_tail(kind: TailKind, n: usize, m: usize, sigma: f64, n_trials: usize, eps: f64, root_seed: u64) -> Result<TailReport> {
    // Reject an uninformative level before paying for the draws.
    tail_report(kind, n, m, sigma, eps, &[])?;
    let samples = tail_samples(kind, n, m, sigma, n_trials, root_seed)?;
    tail_report(kind, n, m, sigma, eps, &samples)
}

pub fn validate_tail_beta(n: usize, m: usize, sigma: f64, n_trials: usize, eps: f64, root_seed: u64) -> Result<TailReport> {
    validate_tail(TailKind::Beta, n, m, sigma, n_trials, eps, root_seed)
}

pub fn validate_tail_gamma(n: usize, m: usize, sigma: f64, n_trials: usize, eps: f64, root_seed: u64) -> Result<TailReport> {
    validate_tail(TailKind::Gamma, n, m, sigma, n_trials, eps, root_seed)
}

pub fn validate_tail_alpha(n: usize, m: usize, sigma: f64, n_trials: usize, eps: f64, root_seed: u64) -> Result<TailReport> {
    validate_tail(TailKind::Alpha, n, m, sigma, n_trials, eps, root_seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_and_inverse() {
        let e = std::f64::consts::E;
        assert!((TailKind::Beta.bound(5, 5, 1.0, 0.01) - e * 25.0 * 0.01).abs() < 1e-15);
        assert!((TailKind::Gamma.bound(5, 4, 0.5, 0.01) - 4.0 * e * 64.0 * 0.01 / 0.25).abs() < 1e-12);
        assert!((TailKind::Alpha.bound(5, 4, 1.0, 0.01) - 8.0 * e * e * 80.0 * 0.01).abs() < 1e-12);
        for kind in [TailKind::Beta, TailKind::Gamma, TailKind::Alpha] {
            let eps = eps_for_bound(kind, 5, 5, 1.0, 0.2);
            assert!((kind.bound(5, 5, 1.0, eps) - 0.2).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_level_counts_nothing() {
        let r = validate_tail_beta(4, 4, 1.0, 50, 0.0, 3).unwrap();
        assert_eq!((r.hits, r.empirical_freq, r.paper_bound), (0, 0.0, 0.0));
        assert!(r.pass);
    }

    #[test]
    fn uninformative_level_is_rejected() {
        assert!(validate_tail_beta(5, 5, 1.0, 10, 1.0, 0).is_err());
    }

    #[test]
    fn halving_eps_never_increases_frequency() {
        for kind in [TailKind::Beta, TailKind::Gamma, TailKind::Alpha] {
            let samples = tail_samples(kind, 4, 4, 1.0, 120, 5).unwrap();
            let mut eps = eps_for_bound(kind, 4, 4, 1.0, 0.4);
            let mut last = f64::INFINITY;
            for _ in 0..6 {
                let r = tail_report(kind, 4, 4, 1.0, eps, &samples).unwrap();
                assert!(r.empirical_freq <= last);
                last = r.empirical_freq;
                eps /= 2.0;
            }
        }
    }
}
