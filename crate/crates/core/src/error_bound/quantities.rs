//! Conditioning quantities of a non-degenerate game and the error-bound
//! estimates built from them.
//!
//! Minima over empty index sets evaluate to 1.

use nalgebra::DMatrix;
use rand::Rng;

use crate::equilibrium::Equilibrium;
use crate::game::{gap_raw, mat_t_vec, mat_vec, Game, JointStrategy, SimplexVector};
use crate::linalg;
use crate::rng;

use super::qsystem::QSystem;

/// Radii of the local probes around `z*` used by [`kappa_empirical`].
pub const LOCAL_PROBE_RADII: [f64; 3] = [1e-1, 1e-2, 1e-3];

/// Smallest support probabilities and smallest optimality slacks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBeta {
    pub alpha_p: f64,
    pub alpha_d: f64,
    pub beta_p: f64,
    pub beta_d: f64,
}

fn min_or_one(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v)))).unwrap_or(1.0)
}

pub fn compute_alpha_beta(g: &Game, eq: &Equilibrium) -> AlphaBeta {
    let x = eq.x_star.as_slice();
    let y = eq.y_star.as_slice();
    let v = eq.value;
    let col_payoffs = mat_t_vec(g.matrix(), x);
    let row_payoffs = mat_vec(g.matrix(), y);
    AlphaBeta {
        alpha_p: min_or_one(eq.support_x.iter().map(|&i| x[i])),
        alpha_d: min_or_one(eq.support_y.iter().map(|&j| y[j])),
        beta_p: min_or_one(eq.off_support_y().into_iter().map(|j| v - col_payoffs[j])),
        beta_d: min_or_one(eq.off_support_x().into_iter().map(|i| row_payoffs[i] - v)),
    }
}

/// `(gamma_P, gamma_D)`: smallest column (row) distance of `Q` to the span of
/// the other columns (rows). `None` stands for an empty reduction.
pub fn compute_gamma(qs: Option<&QSystem>) -> (f64, f64) {
    match qs {
        None => (1.0, 1.0),
        Some(qs) => (
            min_or_one(linalg::column_distances(&qs.q).into_iter()),
            min_or_one(linalg::row_distances(&qs.q).into_iter()),
        ),
    }
}

/// `Q-bar`: column `j` is `Q[:, j] - c`.
pub fn bar_q(qs: &QSystem) -> DMatrix<f64> {
    let mut out = qs.q.clone();
    for mut col in out.column_iter_mut() {
        col -= &qs.c;
    }
    out
}

/// The factor `1 + |N~| / (1 - sum_{j in N~} y*_j)` relating the column
/// distances of `Q` and `Q-bar`.
pub fn bar_q_distance_factor(qs: &QSystem, eq: &Equilibrium) -> f64 {
    let rest = 1.0 - qs.y_tilde(eq).sum();
    1.0 + qs.n_tilde.len() as f64 / rest
}

/// Both sides of the negative second moment identity for a square
/// nonsingular matrix: `(sum sigma_r^-2, sum col_dist^-2, sum row_dist^-2)`.
pub fn negative_second_moments(m: &DMatrix<f64>) -> (f64, f64, f64) {
    let sv: f64 = linalg::singular_values(m).iter().map(|s| s.powi(-2)).sum();
    let cols: f64 = linalg::column_distances(m).iter().map(|d| d.powi(-2)).sum();
    let rows: f64 = linalg::row_distances(m).iter().map(|d| d.powi(-2)).sum();
    (sv, cols, rows)
}

/// The characterization expression without its absolute constant:
/// `min(a_D^2 b_D g_P, a_P^2 b_P g_D) / (||A^flat||_inf min(n, m)^3)`.
pub fn kappa_core(g: &Game, ab: &AlphaBeta, gamma_p: f64, gamma_d: f64) -> f64 {
    let k = g.n().min(g.m()) as f64;
    let dual = ab.alpha_d.powi(2) * ab.beta_d * gamma_p;
    let primal = ab.alpha_p.powi(2) * ab.beta_p * gamma_d;
    let scale = g.max_abs_entry();
    if scale == 0.0 {
        return 0.0;
    }
    dual.min(primal).max(0.0) / (scale * k.powi(3))
}

fn toward(from: &[f64], to: &[f64], t: f64) -> SimplexVector {
    SimplexVector::renormalized(from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect())
}

/// The probe set of [`kappa_empirical`]: every vertex pair, `n_samples`
/// uniform draws from `Z`, and `n_samples` segments from `z*` toward random
/// vertex pairs sampled at each of [`LOCAL_PROBE_RADII`].
pub fn error_bound_probes(g: &Game, eq: &Equilibrium, n_samples: usize, seed: u64) -> Vec<JointStrategy> {
    let (n, m) = (g.n(), g.m());
    let mut probes = Vec::with_capacity(n * m + n_samples * (1 + LOCAL_PROBE_RADII.len()));
    for i in 0..n {
        for j in 0..m {
            probes.push(JointStrategy::vertex(n, m, i, j));
        }
    }
    let mut rng = rng::stream(seed);
    for _ in 0..n_samples {
        let x = SimplexVector::random(&mut rng, n);
        let y = SimplexVector::random(&mut rng, m);
        probes.push(JointStrategy::new(x, y));
    }
    let star = eq.joint();
    for _ in 0..n_samples {
        let vertex = JointStrategy::vertex(n, m, rng.random_range(0..n), rng.random_range(0..m));
        let len = star.distance(&vertex);
        if len == 0.0 {
            continue;
        }
        for &r in LOCAL_PROBE_RADII.iter().filter(|&&r| r <= len) {
            let t = r / len;
            probes.push(JointStrategy::new(
                toward(star.x.as_slice(), vertex.x.as_slice(), t),
                toward(star.y.as_slice(), vertex.y.as_slice(), t),
            ));
        }
    }
    probes
}

/// Smallest observed `Phi(z) / ||z - z*||` over [`error_bound_probes`].
///
/// Probes coinciding with `z*` are skipped. This over-estimates the true
/// modulus; it is `+inf` when no probe differs from `z*`.
pub fn kappa_empirical(g: &Game, eq: &Equilibrium, n_samples: usize, seed: u64) -> f64 {
    let star = eq.joint();
    error_bound_probes(g, eq, n_samples, seed)
        .iter()
        .filter_map(|z| {
            let dist = z.distance(&star);
            (dist > 1e-14).then(|| gap_raw(g.matrix(), z.x.as_slice(), z.y.as_slice()) / dist)
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::solve_exact;
    use crate::error_bound::qsystem::q_transform;
    use crate::game::{duality_gap, gaussian_perturb, make_illcond_game};
    use nalgebra::DVector;

    fn illcond() -> (Game, Equilibrium, QSystem) {
        let g = make_illcond_game(0.25).unwrap();
        let eq = solve_exact(&g, 1e-12).unwrap();
        let qs = q_transform(&g, &eq).unwrap();
        (g, eq, qs)
    }

    /// Column residual of a 2-column matrix by the 1-D least-squares formula.
    fn residual_2col(u: [f64; 2], w: [f64; 2]) -> f64 {
        let coef = (u[0] * w[0] + u[1] * w[1]) / (w[0] * w[0] + w[1] * w[1]);
        ((u[0] - coef * w[0]).powi(2) + (u[1] - coef * w[1]).powi(2)).sqrt()
    }

    #[test]
    fn alpha_beta_fixtures() {
        let (g, eq, _) = illcond();
        let ab = compute_alpha_beta(&g, &eq);
        assert!((ab.alpha_p - 1.0 / 7.0).abs() < 1e-12);
        assert!((ab.alpha_d - 1.0 / 7.0).abs() < 1e-12);
        assert_eq!((ab.beta_p, ab.beta_d), (1.0, 1.0));

        let id = Game::from_rows(2, 2, &[1.0, 0.0, 0.0, 1.0]).unwrap();
        let ab = compute_alpha_beta(&id, &solve_exact(&id, 1e-12).unwrap());
        assert_eq!((ab.alpha_p, ab.alpha_d, ab.beta_p, ab.beta_d), (0.5, 0.5, 1.0, 1.0));
    }

    #[test]
    fn pure_equilibrium_slacks() {
        // x* = e_1, y* = e_2; row 2 against column 2 pays 0.9, value 0.3.
        let g = Game::from_rows(2, 2, &[0.1, 0.3, 0.5, 0.9]).unwrap();
        let eq = solve_exact(&g, 1e-12).unwrap();
        let ab = compute_alpha_beta(&g, &eq);
        assert_eq!(ab.alpha_p, 1.0);
        assert!((ab.beta_d - 0.6).abs() < 1e-15);
        assert!((ab.beta_p - 0.2).abs() < 1e-15);
    }

    #[test]
    fn gamma_fixture() {
        let (_, _, qs) = illcond();
        let expect = residual_2col([0.75, 0.25], [0.25, 1.25]).min(residual_2col([0.25, 1.25], [0.75, 0.25]));
        let (gp, gd) = compute_gamma(Some(&qs));
        assert!((gp - expect).abs() < 1e-14);
        assert!((gd - gp).abs() < 1e-14);
        assert!((gp - 0.686412).abs() < 1e-5);
        assert_eq!(compute_gamma(None), (1.0, 1.0));
    }

    #[test]
    fn gamma_of_diagonal_is_min_entry() {
        let (_, _, mut qs) = illcond();
        qs.q = DMatrix::from_diagonal(&DVector::from_vec(vec![0.4, 1.7]));
        assert_eq!(compute_gamma(Some(&qs)).0, 0.4);
    }

    #[test]
    fn bar_q_fixture_and_chain() {
        let (_, eq, qs) = illcond();
        let qb = bar_q(&qs);
        assert!((&qb - DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 1.0])).amax() < 1e-15);
        let factor = bar_q_distance_factor(&qs, &eq);
        assert!((factor - 4.5).abs() < 1e-12);
        let lhs = compute_gamma(Some(&qs)).0;
        let rhs = factor * linalg::column_distances(&qb).into_iter().fold(f64::INFINITY, f64::min);
        assert!(lhs <= rhs && (rhs - 2.25).abs() < 1e-12);

        let mut zero_c = qs.clone();
        zero_c.c.fill(0.0);
        assert_eq!(bar_q(&zero_c), zero_c.q);
    }

    #[test]
    fn sigma_min_fixture_and_identity() {
        let (_, _, qs) = illcond();
        // Eigenvalues of the symmetric Q: 1 +- sqrt(1 - det) with det = 0.875.
        let expect = 1.0 - 0.125_f64.sqrt();
        assert!((linalg::sigma_min(&qs.q) - expect).abs() < 1e-12);
        assert!((expect - 0.646447).abs() < 1e-6);
        let (sv, cols, rows) = negative_second_moments(&qs.q);
        // ||Q^-1||_F^2 = (sum of squares) / det^2 for a 2x2 matrix.
        let frob = (0.75f64.powi(2) + 2.0 * 0.25f64.powi(2) + 1.25f64.powi(2)) / 0.875f64.powi(2);
        for side in [sv, cols, rows] {
            assert!((side - frob).abs() < 1e-12);
        }
        assert!((frob - 2.93878).abs() < 1e-4);
    }

    #[test]
    fn kappa_core_fixture() {
        let (g, eq, qs) = illcond();
        let ab = compute_alpha_beta(&g, &eq);
        let (gp, gd) = compute_gamma(Some(&qs));
        let expect = gp / (27.0 * 49.0);
        assert!((kappa_core(&g, &ab, gp, gd) - expect).abs() < 1e-15);
        let zeroed = AlphaBeta { beta_p: 0.0, ..ab };
        assert_eq!(kappa_core(&g, &zeroed, gp, gd), 0.0);
    }

    #[test]
    fn kappa_core_is_degree_one_homogeneous() {
        let base = DMatrix::zeros(5, 5);
        let mut checked = 0;
        for seed in 0..60 {
            let g = gaussian_perturb(&base, 0.5, seed).unwrap();
            let eq = solve_exact(&g, 1e-10).unwrap();
            let Ok(qs) = q_transform(&g, &eq) else { continue };
            // The empty-set value 1 does not scale with A.
            if eq.off_support_x().is_empty() || eq.off_support_y().is_empty() {
                continue;
            }
            checked += 1;
            let ab = compute_alpha_beta(&g, &eq);
            let (gp, gd) = compute_gamma(Some(&qs));
            let k1 = kappa_core(&g, &ab, gp, gd);

            let g2 = g.scaled(2.0).unwrap();
            let eq2 = solve_exact(&g2, 1e-10).unwrap();
            assert_eq!(eq2.support_x, eq.support_x);
            let qs2 = q_transform(&g2, &eq2).unwrap();
            let ab2 = compute_alpha_beta(&g2, &eq2);
            let (gp2, gd2) = compute_gamma(Some(&qs2));
            let k2 = kappa_core(&g2, &ab2, gp2, gd2);
            assert!((2.0 * k1 - k2).abs() <= 1e-9 * k2.max(1e-300), "{k1} vs {k2}");
        }
        assert!(checked >= 5, "{checked}");
    }

    #[test]
    fn kappa_empirical_fixture() {
        let (g, eq, _) = illcond();
        let k = kappa_empirical(&g, &eq, 200, 3);
        let witness = 0.25 / (70.0f64.sqrt() / 7.0);
        assert!(k <= witness + 1e-15, "{k}");
        assert!(k <= 0.5);
        assert!(k > 0.0);
        for gamma in [0.05, 0.6] {
            let g = make_illcond_game(gamma).unwrap();
            let eq = solve_exact(&g, 1e-12).unwrap();
            assert!(kappa_empirical(&g, &eq, 100, 1) <= 2.0 * gamma);
        }
    }

    #[test]
    fn every_probe_witnesses_the_estimate() {
        let (g, eq, _) = illcond();
        let k = kappa_empirical(&g, &eq, 100, 8);
        let star = eq.joint();
        let probes = error_bound_probes(&g, &eq, 100, 8);
        assert!(probes.len() >= 9 + 100);
        for z in &probes {
            let d = z.distance(&star);
            assert!(duality_gap(&g, z).unwrap() >= k * d - 1e-15);
        }
        // Local probes at radius 1e-3 are present and give finite ratios.
        assert!(probes.iter().any(|z| (z.distance(&star) - 1e-3).abs() < 1e-9));
    }
}
