use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::stats::mean_std;
use super::svg::{LineChart, Series};
use crate::equilibrium::{solve_exact, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::fmt::fmt17;
use crate::game::{gaussian_perturb, make_illcond_game, JointStrategy};
use crate::rng::derive_seed2;
use crate::solvers::{run_ogda, Algorithm, SolverConfig};

/// OGDA runs on perturbations of `diag(gamma, 2 gamma, 1)`. A sigma of zero
/// runs the unperturbed matrix for every seed.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub gamma: f64,
    pub sigmas: Vec<f64>,
    pub n_seeds: usize,
    pub iters: usize,
    pub root_seed: u64,
}

impl Default for FigureSpec {
    fn default() -> Self {
        Self { gamma: 0.25, sigmas: vec![0.0, 0.05, 0.25], n_seeds: 10, iters: 1000, root_seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub iter: usize,
    pub phi_mean: f64,
    pub phi_std: f64,
    pub dist_mean: f64,
    pub dist_std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSeries {
    pub sigma: f64,
    pub rows: Vec<FigureRow>,
    /// Per-seed gaps, `raw_phi[seed][iter]`.
    pub raw_phi: Vec<Vec<f64>>,
    pub raw_dist: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureFiles {
    pub csv: Vec<PathBuf>,
    pub svg: Vec<PathBuf>,
}

impl FigureSpec {
    fn validate(&self) -> Result<()> {
        if self.n_seeds == 0 || self.iters == 0 {
            return Err(Error::InvalidConfig("seeds and iters must be at least 1".into()));
        }
        if self.sigmas.is_empty() {
            return Err(Error::InvalidConfig("sigma list is empty".into()));
        }
        if let Some(s) = self.sigmas.iter().find(|s| !(**s >= 0.0 && **s <= 1.0)) {
            return Err(Error::InvalidConfig(format!("sigma must lie in [0, 1], got {s}")));
        }
        Ok(())
    }

    pub fn csv_name(&self, sigma: f64) -> String {
        format!("figure_gamma{}_sigma{}.csv", self.gamma, sigma)
    }

    pub fn svg_name(&self, metric: &str) -> String {
        format!("figure_gamma{}_{metric}.svg", self.gamma)
    }
}

/// Per-iteration gap and distance of one run, exactly `iters` long.
fn one_run(spec: &FigureSpec, s: usize, k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let base = make_illcond_game(spec.gamma)?;
    let sigma = spec.sigmas[s];
    let g = if sigma == 0.0 {
        base
    } else {
        gaussian_perturb(base.matrix(), sigma, derive_seed2(spec.root_seed, s as u64, k as u64))?
    };
    let eq = solve_exact(&g, DEFAULT_TOL)?;
    // The smallest positive target keeps the run going for the full horizon.
    let cfg = SolverConfig::for_game(Algorithm::Ogda, &g)
        .with_eps(f64::MIN_POSITIVE)
        .with_max_iters((spec.iters - 1).max(1));
    let run = run_ogda(&g, &cfg, &JointStrategy::uniform(g.n(), g.m()), Some(&eq))?;
    let mut phi: Vec<f64> = run.trajectory.iter().map(|r| r.phi).collect();
    let mut dist: Vec<f64> = run.trajectory.iter().map(|r| r.dist_to_eq.unwrap_or(f64::NAN)).collect();
    // An exact zero gap ends the run early; the point is then an equilibrium.
    for v in [&mut phi, &mut dist] {
        let last = *v.last().expect("trajectory has the starting point");
        v.resize(spec.iters, last);
    }
    Ok((phi, dist))
}

pub fn figure_series(spec: &FigureSpec) -> Result<Vec<FigureSeries>> {
    spec.validate()?;
    let jobs: Vec<(usize, usize)> =
        (0..spec.sigmas.len()).flat_map(|s| (0..spec.n_seeds).map(move |k| (s, k))).collect();
    let runs: Vec<(Vec<f64>, Vec<f64>)> = jobs.par_iter().map(|&(s, k)| one_run(spec, s, k)).collect::<Result<_>>()?;
    Ok(spec
        .sigmas
        .iter()
        .enumerate()
        .map(|(s, &sigma)| {
            let chunk = &runs[s * spec.n_seeds..(s + 1) * spec.n_seeds];
            let raw_phi: Vec<Vec<f64>> = chunk.iter().map(|r| r.0.clone()).collect();
            let raw_dist: Vec<Vec<f64>> = chunk.iter().map(|r| r.1.clone()).collect();
            let rows = (0..spec.iters)
                .map(|t| {
                    let (phi_mean, phi_std) = mean_std(&raw_phi.iter().map(|r| r[t]).collect::<Vec<_>>());
                    let (dist_mean, dist_std) = mean_std(&raw_dist.iter().map(|r| r[t]).collect::<Vec<_>>());
                    FigureRow { iter: t, phi_mean, phi_std, dist_mean, dist_std }
                })
                .collect();
            FigureSeries { sigma, rows, raw_phi, raw_dist }
        })
        .collect())
}

pub fn write_figure_csv<W: Write>(mut w: W, rows: &[FigureRow]) -> Result<()> {
    writeln!(w, "iter,phi_mean,phi_std,dist_mean,dist_std")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{}", r.iter, fmt17(r.phi_mean), fmt17(r.phi_std), fmt17(r.dist_mean), fmt17(r.dist_std))?;
    }
    Ok(())
}

fn chart(spec: &FigureSpec, series: &[FigureSeries], metric: &str) -> LineChart {
    let log_y = metric == "phi";
    LineChart {
        title: format!("OGDA on diag({g}, {}, 1), {} seeds", 2.0 * spec.gamma, spec.n_seeds, g = spec.gamma),
        x_label: "iteration".into(),
        y_label: if log_y { "duality gap (log10)".into() } else { "distance to equilibrium".into() },
        log_y,
        series: series
            .iter()
            .map(|s| {
                let pick = |r: &FigureRow| if log_y { (r.phi_mean, r.phi_std) } else { (r.dist_mean, r.dist_std) };
                Series {
                    label: format!("sigma = {}", s.sigma),
                    points: s.rows.iter().map(|r| (r.iter as f64, pick(r).0)).collect(),
                    band: Some(s.rows.iter().map(|r| (pick(r).0 - pick(r).1, pick(r).0 + pick(r).1)).collect()),
                }
            })
            .collect(),
    }
}

/// Writes one CSV per sigma and one SVG per metric into `out_dir`.
pub fn reproduce_figure(spec: &FigureSpec, out_dir: impl AsRef<Path>) -> Result<FigureFiles> {
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir)?;
    let series = figure_series(spec)?;
    let mut files = FigureFiles { csv: Vec::new(), svg: Vec::new() };
    for s in &series {
        let path = out_dir.join(spec.csv_name(s.sigma));
        let mut buf = Vec::new();
        write_figure_csv(&mut buf, &s.rows)?;
        std::fs::write(&path, buf)?;
        files.csv.push(path);
    }
    for metric in ["phi", "dist"] {
        let path = out_dir.join(spec.svg_name(metric));
        std::fs::write(&path, chart(spec, &series, metric).render())?;
        files.svg.push(path);
    }
    Ok(files)
}
