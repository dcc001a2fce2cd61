//! Upper bounds on the support-stability radius `delta`: the largest
//! spectral-norm perturbation that keeps the game non-degenerate with the
//! same supports.
//!
//! Three explicit perturbations destroy support stability; their norms bound
//! `delta` from above. A sampled bisection along random directions gives an
//! empirical estimate.

use nalgebra::DMatrix;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::equilibrium::{certify_nondegenerate, solve_exact, Equilibrium, DEFAULT_TOL};
use crate::game::{mat_t_vec, mat_vec, Game};
use crate::linalg;
use crate::rng;

use super::qsystem::QSystem;

/// Resolution of the bisection along each direction.
pub const BISECTION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityBounds {
    /// `None` when every action is in the support (no slack to exhaust).
    pub delta_ub_beta: Option<f64>,
    /// `None` for an empty reduction.
    pub delta_ub_sigma: Option<f64>,
    /// `None` for an empty reduction.
    pub delta_ub_alpha: Option<f64>,
    pub delta_empirical: f64,
}

impl StabilityBounds {
    /// The analytic bounds that apply.
    pub fn analytic(&self) -> Vec<f64> {
        [self.delta_ub_beta, self.delta_ub_sigma, self.delta_ub_alpha].into_iter().flatten().collect()
    }
}

/// Norm of the smallest perturbation of column `j'` (rows in `B`) that
/// closes the smallest slack `beta`: the rank-one update
/// `beta * x*_B e_j'^T / ||x*_B||^2`, and symmetrically for rows.
pub fn delta_bound_beta(g: &Game, eq: &Equilibrium) -> Option<f64> {
    let x = eq.x_star.as_slice();
    let y = eq.y_star.as_slice();
    let col_payoffs = mat_t_vec(g.matrix(), x);
    let row_payoffs = mat_vec(g.matrix(), y);
    let xnorm = eq.support_x.iter().map(|&i| x[i] * x[i]).sum::<f64>().sqrt();
    let ynorm = eq.support_y.iter().map(|&j| y[j] * y[j]).sum::<f64>().sqrt();
    let primal = eq.off_support_y().into_iter().map(|j| (eq.value - col_payoffs[j]) / xnorm);
    let dual = eq.off_support_x().into_iter().map(|i| (row_payoffs[i] - eq.value) / ynorm);
    primal.chain(dual).reduce(f64::min)
}

/// Removing the smallest singular value of `Q` with `b, c, d` fixed moves
/// only the `B~ x N~` block of `A`, so the norm is `sigma_min(Q)`.
pub fn delta_bound_sigma(qs: &QSystem) -> f64 {
    let svd = qs.q.clone().svd(true, true);
    let u = svd.u.as_ref().expect("requested");
    let vt = svd.v_t.as_ref().expect("requested");
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .expect("nonempty reduction");
    let s = svd.singular_values[k];
    let delta_q = -s * u.column(k) * vt.row(k);
    linalg::spectral_norm(&delta_q)
}

/// Moves `b` to `Q^T x~'`, where `x~'` either zeroes the smallest support
/// coordinate (when it lies in `B~`) or shifts every `B~` coordinate up by
/// `alpha_P / |B~|`; the change is placed on row `i` of `A` as
/// `dA[i][j'] = -db[j']`.
pub fn delta_bound_alpha(qs: &QSystem, eq: &Equilibrium) -> f64 {
    let x = eq.x_star.as_slice();
    let (argmin, alpha) = eq
        .support_x
        .iter()
        .map(|&i| (i, x[i]))
        .fold((usize::MAX, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    let mut shifted = qs.x_tilde(eq);
    match qs.b_tilde.iter().position(|&i| i == argmin) {
        Some(l) => shifted[l] = 0.0,
        None => shifted.add_scalar_mut(alpha / qs.b_tilde.len() as f64),
    }
    let delta_b = qs.q.transpose() * shifted - &qs.b;
    // A single perturbed row: its spectral norm is the row's Euclidean norm.
    let row = DMatrix::from_row_slice(1, delta_b.len(), (-delta_b).as_slice());
    linalg::spectral_norm(&row)
}

fn same_support(g: &Game, support: (&[usize], &[usize])) -> bool {
    match solve_exact(g, DEFAULT_TOL) {
        Ok(eq) => {
            eq.support_x == support.0
                && eq.support_y == support.1
                && certify_nondegenerate(g, &eq, DEFAULT_TOL).is_nondegenerate
        }
        Err(_) => false,
    }
}

/// First `t` in `(0, t_max]` (to [`BISECTION_TOL`]) at which `A + t E` loses
/// the supports; `t_max` when it never does on the range.
pub fn support_break_along(g: &Game, eq: &Equilibrium, direction: &DMatrix<f64>, t_max: f64) -> f64 {
    let support = (eq.support_x.as_slice(), eq.support_y.as_slice());
    let at = |t: f64| Game::new(g.matrix() + direction * t).map(|h| same_support(&h, support)).unwrap_or(false);
    if at(t_max) {
        return t_max;
    }
    let (mut lo, mut hi) = (0.0, t_max);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Gaussian direction scaled to unit spectral norm.
pub fn random_direction(n: usize, m: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = rng::stream(seed);
    let e = DMatrix::from_fn(n, m, |_, _| StandardNormal.sample(&mut rng));
    let norm = linalg::spectral_norm(&e);
    e / norm
}

/// Minimum support-break point over `n_directions` random unit directions.
pub fn delta_empirical(g: &Game, eq: &Equilibrium, n_directions: usize, seed: u64) -> f64 {
    let t_max = 2.0 * linalg::spectral_norm(g.matrix());
    (0..n_directions)
        .into_par_iter()
        .map(|k| {
            let e = random_direction(g.n(), g.m(), rng::derive_seed(seed, k as u64));
            support_break_along(g, eq, &e, t_max)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(t_max, f64::min)
}

pub fn stability_bounds(
    g: &Game,
    eq: &Equilibrium,
    qs: Option<&QSystem>,
    n_directions: usize,
    seed: u64,
) -> StabilityBounds {
    StabilityBounds {
        delta_ub_beta: delta_bound_beta(g, eq),
        delta_ub_sigma: qs.map(delta_bound_sigma),
        delta_ub_alpha: qs.map(|qs| delta_bound_alpha(qs, eq)),
        delta_empirical: delta_empirical(g, eq, n_directions, seed),
    }
}
