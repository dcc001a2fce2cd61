use crate::error::{Error, Result};
use crate::game::Game;
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Ogda,
    Omwu,
    Egda,
    IterSmooth,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ogda => "ogda",
            Algorithm::Omwu => "omwu",
            Algorithm::Egda => "egda",
            Algorithm::IterSmooth => "itersmooth",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ogda" => Ok(Algorithm::Ogda),
            "omwu" => Ok(Algorithm::Omwu),
            "egda" => Ok(Algorithm::Egda),
            "itersmooth" => Ok(Algorithm::IterSmooth),
            other => Err(Error::InvalidConfig(format!("unknown algorithm `{other}`"))),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// Step size for OGDA, OMWU and EGDA.
    pub eta: f64,
    /// Target duality gap.
    pub eps: f64,
    pub max_iters: usize,
    /// IterSmooth shrink factor.
    pub rho: f64,
    pub record_every: usize,
    /// Permit an OGDA step above `1 / (8 ||A||)`.
    pub allow_large_eta: bool,
}

/// `1 / (8 ||A||)`, the largest step covered by the OGDA rate theorem.
pub fn default_eta(g: &Game) -> f64 {
    1.0 / (8.0 * linalg::spectral_norm(g.matrix()))
}

/// `1 / (16 ||A^flat||_inf)`.
pub fn default_omwu_eta(g: &Game) -> f64 {
    1.0 / (16.0 * g.max_abs_entry())
}

impl SolverConfig {
    /// Default configuration for `algorithm` on `g`.
    pub fn for_game(algorithm: Algorithm, g: &Game) -> Self {
        let eta = match algorithm {
            Algorithm::Omwu => default_omwu_eta(g),
            _ => default_eta(g),
        };
        Self {
            algorithm,
            eta,
            eps: 1e-6,
            max_iters: 1_000_000,
            rho: 2.0,
            record_every: 1,
            allow_large_eta: false,
        }
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_rho(mut self, rho: f64) -> Self {
        self.rho = rho;
        self
    }

    pub fn with_record_every(mut self, record_every: usize) -> Self {
        self.record_every = record_every;
        self
    }

    pub fn validate(&self, g: &Game, expected: Algorithm) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.algorithm != expected {
            return bad(format!("config is for {}, solver is {}", self.algorithm, expected));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad(format!("eps must be positive, got {}", self.eps));
        }
        if self.max_iters == 0 {
            return bad("max_iters must be at least 1".into());
        }
        if self.record_every == 0 {
            return bad("record_every must be at least 1".into());
        }
        match expected {
            Algorithm::IterSmooth => {
                if !(self.rho > 1.0 && self.rho.is_finite()) {
                    return bad(format!("rho must exceed 1, got {}", self.rho));
                }
            }
            _ => {
                if !(self.eta > 0.0 && self.eta.is_finite()) {
                    return bad(format!("eta must be positive, got {}", self.eta));
                }
            }
        }
        if expected == Algorithm::Ogda && !self.allow_large_eta {
            let cap = default_eta(g);
            if self.eta > cap * (1.0 + 1e-12) {
                return bad(format!(
                    "eta {} exceeds 1/(8||A||) = {cap}; set allow_large_eta to override",
                    self.eta
                ));
            }
        }
        Ok(())
    }
}
