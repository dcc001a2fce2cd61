//! First-order equilibrium solvers with last-iterate instrumentation.
//!
//! Every solver checks the gap of its starting point before the first step,
//! so a run started at an equilibrium reports `iters_used == 0`.

mod config;
mod egda;
mod itersmooth;
mod ogda;
mod omwu;
mod rates;

use std::io::Write;

use crate::equilibrium::Equilibrium;
use crate::error::{Error, Result};
use crate::fmt::fmt17;
use crate::game::{gap_raw, mat_t_vec, mat_vec, project_raw, Game, JointStrategy, SimplexVector, TrajectoryRecord};

pub use config::{default_eta, default_omwu_eta, Algorithm, SolverConfig};
pub use egda::run_egda;
pub use itersmooth::run_itersmooth;
pub use ogda::run_ogda;
pub use omwu::run_omwu;
pub use rates::{egda_gap_bound, iteration_bound, kappa_prime, log_gap_slope, satisfies_egda_gap_lemma};

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub z_final: JointStrategy,
    /// Gradient steps taken (inner steps for IterSmooth).
    pub iters_used: usize,
    pub phi_final: f64,
    pub trajectory: Vec<TrajectoryRecord>,
    pub converged: bool,
    /// Outer rounds; equal to `iters_used` for the single-loop solvers.
    pub outer_iters: usize,
}

/// Dispatches on `cfg.algorithm`. OMWU ignores `z0` and starts at the
/// uniform point.
pub fn solve(g: &Game, cfg: &SolverConfig, z0: &JointStrategy, eq: Option<&Equilibrium>) -> Result<SolveResult> {
    match cfg.algorithm {
        Algorithm::Ogda => run_ogda(g, cfg, z0, eq),
        Algorithm::Egda => run_egda(g, cfg, z0, eq),
        Algorithm::Omwu => run_omwu(g, cfg, eq),
        Algorithm::IterSmooth => run_itersmooth(g, cfg, z0, eq),
    }
}

/// Writes `iter,phi,dist_to_eq` rows; the distance cell is empty without an oracle.
pub fn write_trajectory_csv<W: Write>(mut w: W, trajectory: &[TrajectoryRecord]) -> Result<()> {
    writeln!(w, "iter,phi,dist_to_eq")?;
    for r in trajectory {
        let dist = r.dist_to_eq.map(fmt17).unwrap_or_default();
        writeln!(w, "{},{},{}", r.iter, fmt17(r.phi), dist)?;
    }
    Ok(())
}

pub fn read_trajectory_csv(text: &str) -> Result<Vec<TrajectoryRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some("iter,phi,dist_to_eq") => {}
        other => return Err(Error::Parse(format!("unexpected trajectory header {other:?}"))),
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != 3 {
                return Err(Error::Parse(format!("bad trajectory row `{line}`")));
            }
            let iter = cells[0].parse().map_err(|_| Error::Parse(format!("bad iter `{}`", cells[0])))?;
            let phi = crate::fmt::parse_f64(cells[1]).ok_or_else(|| Error::Parse(format!("bad phi `{}`", cells[1])))?;
            let dist_to_eq = if cells[2].is_empty() {
                None
            } else {
                Some(crate::fmt::parse_f64(cells[2]).ok_or_else(|| Error::Parse(format!("bad dist `{}`", cells[2])))?)
            };
            Ok(TrajectoryRecord { iter, phi, dist_to_eq })
        })
        .collect()
}

/// A joint iterate as two raw blocks.
#[derive(Debug, Clone)]
pub(crate) struct Point {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Point {
    pub fn from_joint(z: &JointStrategy) -> Self {
        Self { x: z.x.as_slice().to_vec(), y: z.y.as_slice().to_vec() }
    }

    pub fn to_joint(&self) -> JointStrategy {
        JointStrategy::new(SimplexVector::renormalized(self.x.clone()), SimplexVector::renormalized(self.y.clone()))
    }

    pub fn gap(&self, a: &nalgebra::DMatrix<f64>) -> f64 {
        gap_raw(a, &self.x, &self.y)
    }

    pub fn dist(&self, other: &Point) -> f64 {
        let sq = |p: &[f64], q: &[f64]| p.iter().zip(q).map(|(u, v)| (u - v) * (u - v)).sum::<f64>();
        (sq(&self.x, &other.x) + sq(&self.y, &other.y)).sqrt()
    }

    /// `self + s * other`, blockwise.
    pub fn axpy(&self, s: f64, other: &Point) -> Point {
        Point {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + s * b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + s * b).collect(),
        }
    }

    pub fn combine(a: f64, p: &Point, b: f64, q: &Point) -> Point {
        Point {
            x: p.x.iter().zip(&q.x).map(|(u, v)| a * u + b * v).collect(),
            y: p.y.iter().zip(&q.y).map(|(u, v)| a * u + b * v).collect(),
        }
    }

    pub fn project(&self) -> Point {
        Point { x: project_raw(&self.x), y: project_raw(&self.y) }
    }
}

/// `F(z) = (A y, -A^T x)`.
pub(crate) fn op_f(a: &nalgebra::DMatrix<f64>, z: &Point) -> Point {
    Point { x: mat_vec(a, &z.y), y: mat_t_vec(a, &z.x).into_iter().map(|v| -v).collect() }
}

/// Gap read off an already computed `F(z)`.
pub(crate) fn gap_from_f(f: &Point) -> f64 {
    let best_col = f.y.iter().fold(f64::NEG_INFINITY, |m, v| m.max(-v));
    let best_row = f.x.iter().fold(f64::INFINITY, |m, v| m.min(*v));
    (best_col - best_row).max(0.0)
}

pub(crate) fn check_start(g: &Game, z0: &JointStrategy) -> Result<()> {
    if z0.x.dim() != g.n() {
        return Err(Error::DimMismatch { expected: g.n(), got: z0.x.dim() });
    }
    if z0.y.dim() != g.m() {
        return Err(Error::DimMismatch { expected: g.m(), got: z0.y.dim() });
    }
    Ok(())
}

/// Samples iterates every `stride` steps and always keeps the last one.
pub(crate) struct Recorder {
    stride: usize,
    eq: Option<Point>,
    pub records: Vec<TrajectoryRecord>,
}

impl Recorder {
    pub fn new(stride: usize, eq: Option<&Equilibrium>) -> Self {
        Self {
            stride,
            eq: eq.map(|e| Point { x: e.x_star.as_slice().to_vec(), y: e.y_star.as_slice().to_vec() }),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, iter: usize, phi: f64, z: &Point) {
        if self.records.last().is_some_and(|r| r.iter >= iter) {
            return;
        }
        let dist_to_eq = self.eq.as_ref().map(|e| z.dist(e));
        self.records.push(TrajectoryRecord { iter, phi, dist_to_eq });
    }

    pub fn sample(&mut self, iter: usize, phi: f64, z: &Point) {
        if iter % self.stride == 0 {
            self.push(iter, phi, z);
        }
    }
}

pub(crate) fn finish(z: &Point, iters: usize, outer: usize, phi: f64, eps: f64, mut rec: Recorder) -> SolveResult {
    rec.push(iters, phi, z);
    SolveResult {
        z_final: z.to_joint(),
        iters_used: iters,
        phi_final: phi,
        trajectory: rec.records,
        converged: phi <= eps,
        outer_iters: outer,
    }
}
