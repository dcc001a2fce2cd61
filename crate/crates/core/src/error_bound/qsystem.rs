//! Elimination of one redundant coordinate per player on the support.
//!
//! With `i = min B` and `j = min N`, the support subgame is rewritten as
//! `<x~, Q y~> - <x~, c> - <y~, b> + d` over the remaining coordinates:
//!
//! ```text
//! d        = A[i][j]
//! b[j']    = A[i][j] - A[i][j']
//! c[i']    = A[i][j] - A[i'][j]
//! Q[i'][j'] = A[i'][j'] - A[i][j'] - A[i'][j] + A[i][j]
//! ```

use nalgebra::{DMatrix, DVector};

use crate::equilibrium::Equilibrium;
use crate::error::{invalid, Error, Result};
use crate::game::Game;

/// Residual allowed in the equilibrium identities of a fresh reduction.
pub const QSYSTEM_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct QSystem {
    /// `|B~| x |N~|`.
    pub q: DMatrix<f64>,
    /// Indexed by `N~`.
    pub b: DVector<f64>,
    /// Indexed by `B~`.
    pub c: DVector<f64>,
    pub d: f64,
    pub elim_i: usize,
    pub elim_j: usize,
    /// `B \ {i}` in ascending order.
    pub b_tilde: Vec<usize>,
    /// `N \ {j}` in ascending order.
    pub n_tilde: Vec<usize>,
}

impl QSystem {
    /// `x*` restricted to `B~`.
    pub fn x_tilde(&self, eq: &Equilibrium) -> DVector<f64> {
        DVector::from_iterator(self.b_tilde.len(), self.b_tilde.iter().map(|&i| eq.x_star.as_slice()[i]))
    }

    /// `y*` restricted to `N~`.
    pub fn y_tilde(&self, eq: &Equilibrium) -> DVector<f64> {
        DVector::from_iterator(self.n_tilde.len(), self.n_tilde.iter().map(|&j| eq.y_star.as_slice()[j]))
    }

    /// `(||Q y~* - c||_inf, ||Q^T x~* - b||_inf)`.
    pub fn residuals(&self, eq: &Equilibrium) -> (f64, f64) {
        let ry = (&self.q * self.y_tilde(eq) - &self.c).amax();
        let rx = (self.q.transpose() * self.x_tilde(eq) - &self.b).amax();
        (ry, rx)
    }

    /// `d - <x~*, Q y~*>`, which equals the game value.
    pub fn value(&self, eq: &Equilibrium) -> f64 {
        self.d - self.x_tilde(eq).dot(&(&self.q * self.y_tilde(eq)))
    }

    /// Support rows `B` in the order used by [`build_t`]: ascending.
    pub fn support_x(&self) -> Vec<usize> {
        sorted_with(&self.b_tilde, self.elim_i)
    }

    pub fn support_y(&self) -> Vec<usize> {
        sorted_with(&self.n_tilde, self.elim_j)
    }

    /// The coordinate vector `(Q^flat, b, c, d)` mapped by `T`.
    pub fn coordinates(&self) -> DVector<f64> {
        let mut v: Vec<f64> = self.q.row_iter().flat_map(|r| r.iter().copied().collect::<Vec<_>>()).collect();
        v.extend(self.b.iter());
        v.extend(self.c.iter());
        v.push(self.d);
        DVector::from_vec(v)
    }

    /// Rebuilds `A_{B,N}` (support rows/columns in ascending order) from the reduction.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let rows = self.support_x();
        let cols = self.support_y();
        DMatrix::from_fn(rows.len(), cols.len(), |r, s| {
            let (ip, jp) = (rows[r], cols[s]);
            let bi = self.n_tilde.iter().position(|&j| j == jp);
            let ci = self.b_tilde.iter().position(|&i| i == ip);
            match (ci, bi) {
                (None, None) => self.d,
                (None, Some(k)) => self.d - self.b[k],
                (Some(l), None) => self.d - self.c[l],
                (Some(l), Some(k)) => self.q[(l, k)] - self.b[k] - self.c[l] + self.d,
            }
        })
    }
}

fn sorted_with(rest: &[usize], extra: usize) -> Vec<usize> {
    let mut v = rest.to_vec();
    v.push(extra);
    v.sort_unstable();
    v
}

/// Builds the reduction for the equilibrium's support, eliminating the
/// smallest support index of each player.
pub fn q_transform(g: &Game, eq: &Equilibrium) -> Result<QSystem> {
    let (bs, ns) = (&eq.support_x, &eq.support_y);
    if bs.len() < 2 || ns.len() < 2 {
        return Err(Error::EmptyReduction { support_x: bs.len(), support_y: ns.len() });
    }
    let a = g.matrix();
    let (i, j) = (bs[0], ns[0]);
    let b_tilde = bs[1..].to_vec();
    let n_tilde = ns[1..].to_vec();
    let d = a[(i, j)];
    let b = DVector::from_iterator(n_tilde.len(), n_tilde.iter().map(|&jp| d - a[(i, jp)]));
    let c = DVector::from_iterator(b_tilde.len(), b_tilde.iter().map(|&ip| d - a[(ip, j)]));
    let q = DMatrix::from_fn(b_tilde.len(), n_tilde.len(), |r, s| {
        let (ip, jp) = (b_tilde[r], n_tilde[s]);
        a[(ip, jp)] - a[(i, jp)] - a[(ip, j)] + d
    });
    let qs = QSystem { q, b, c, d, elim_i: i, elim_j: j, b_tilde, n_tilde };

    let (ry, rx) = qs.residuals(eq);
    let rv = (qs.value(eq) - eq.value).abs();
    if ry > QSYSTEM_RESIDUAL_TOL || rx > QSYSTEM_RESIDUAL_TOL || rv > QSYSTEM_RESIDUAL_TOL {
        return Err(invalid(format!(
            "equilibrium does not satisfy the reduced system (residuals {ry:e}, {rx:e}, value {rv:e})"
        )));
    }
    Ok(qs)
}

/// The linear map `T` with `A^flat_{B,N} = T (Q^flat, b, c, d)`.
///
/// Rows follow `B x N` in row-major order (both ascending); columns follow
/// `Q^flat` (row-major over `B~ x N~`), then `b`, `c`, `d`.
pub fn build_t(support_x: &[usize], support_y: &[usize], i: usize, j: usize) -> Result<DMatrix<f64>> {
    if !support_x.contains(&i) || !support_y.contains(&j) {
        return Err(invalid("eliminated indices must belong to the supports"));
    }
    let mut bs = support_x.to_vec();
    let mut ns = support_y.to_vec();
    bs.sort_unstable();
    ns.sort_unstable();
    bs.dedup();
    ns.dedup();
    if bs.len() != support_x.len() || ns.len() != support_y.len() {
        return Err(invalid("supports must not repeat indices"));
    }
    let bt: Vec<usize> = bs.iter().copied().filter(|&r| r != i).collect();
    let nt: Vec<usize> = ns.iter().copied().filter(|&s| s != j).collect();
    let size = bs.len() * ns.len();
    let q_len = bt.len() * nt.len();
    let b_off = q_len;
    let c_off = b_off + nt.len();
    let d_col = c_off + bt.len();
    debug_assert_eq!(d_col + 1, size);

    let mut t = DMatrix::zeros(size, size);
    for (r, &ip) in bs.iter().enumerate() {
        for (s, &jp) in ns.iter().enumerate() {
            let row = r * ns.len() + s;
            t[(row, d_col)] = 1.0;
            let l = bt.iter().position(|&x| x == ip);
            let k = nt.iter().position(|&x| x == jp);
            if let Some(k) = k {
                t[(row, b_off + k)] = -1.0;
            }
            if let Some(l) = l {
                t[(row, c_off + l)] = -1.0;
            }
            if let (Some(l), Some(k)) = (l, k) {
                t[(row, l * nt.len() + k)] = 1.0;
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::solve_exact;
    use crate::game::{gaussian_perturb, make_illcond_game};

    fn illcond() -> (Game, Equilibrium) {
        let g = make_illcond_game(0.25).unwrap();
        let eq = solve_exact(&g, 1e-12).unwrap();
        (g, eq)
    }

    #[test]
    fn illcond_fixture() {
        let (g, eq) = illcond();
        let qs = q_transform(&g, &eq).unwrap();
        assert_eq!((qs.elim_i, qs.elim_j), (0, 0));
        let expect_q = DMatrix::from_row_slice(2, 2, &[0.75, 0.25, 0.25, 1.25]);
        assert!((&qs.q - expect_q).amax() < 1e-15);
        assert_eq!(qs.b.as_slice(), &[0.25, 0.25]);
        assert_eq!(qs.c.as_slice(), &[0.25, 0.25]);
        assert_eq!(qs.d, 0.25);
        // Q (2/7, 1/7) = (1/4, 1/4) = c.
        let qy = &qs.q * DVector::from_vec(vec![2.0 / 7.0, 1.0 / 7.0]);
        assert!((qy - &qs.c).amax() < 1e-15);
        let (ry, rx) = qs.residuals(&eq);
        assert!(ry <= 1e-10 && rx <= 1e-10);
    }

    #[test]
    fn two_by_two_collapses_to_scalar() {
        let g = Game::from_rows(2, 2, &[0.9, 0.1, 0.2, 0.7]).unwrap();
        let eq = solve_exact(&g, 1e-12).unwrap();
        let qs = q_transform(&g, &eq).unwrap();
        assert_eq!(qs.q.shape(), (1, 1));
        assert!((qs.q[(0, 0)] - (0.7 - 0.1 - 0.2 + 0.9)).abs() < 1e-15);
    }

    #[test]
    fn pure_equilibrium_has_empty_reduction() {
        let g = Game::from_rows(2, 2, &[0.1, 0.3, 0.5, 0.9]).unwrap();
        let eq = solve_exact(&g, 1e-12).unwrap();
        assert!(matches!(q_transform(&g, &eq), Err(Error::EmptyReduction { .. })));
    }

    #[test]
    fn t_map_fixtures() {
        for k in [2usize, 3] {
            let idx: Vec<usize> = (0..k).collect();
            let t = build_t(&idx, &idx, 0, 0).unwrap();
            assert_eq!(t.shape(), (k * k, k * k));
            assert!((t.determinant().abs() - 1.0).abs() < 1e-9);
            for row in t.row_iter() {
                let l1: f64 = row.iter().map(|v| v.abs()).sum();
                assert!(l1 <= 4.0 && row.norm() <= 2.0);
                assert!(row.iter().all(|&v| v == 0.0 || v == 1.0 || v == -1.0));
            }
        }
        assert!(build_t(&[0, 1], &[0, 1], 2, 0).is_err());
    }

    #[test]
    fn t_maps_coordinates_back_to_payoffs() {
        let base = DMatrix::zeros(4, 4);
        for seed in 0..30 {
            let g = gaussian_perturb(&base, 0.5, seed).unwrap();
            let eq = solve_exact(&g, 1e-10).unwrap();
            let Ok(qs) = q_transform(&g, &eq) else { continue };
            let sub = crate::equilibrium::submatrix(g.matrix(), &qs.support_x(), &qs.support_y());
            assert!((qs.reconstruct() - &sub).amax() < 1e-14);
            let t = build_t(&qs.support_x(), &qs.support_y(), qs.elim_i, qs.elim_j).unwrap();
            let flat: Vec<f64> = sub.row_iter().flat_map(|r| r.iter().copied().collect::<Vec<_>>()).collect();
            let mapped = t * qs.coordinates();
            assert!((mapped - DVector::from_vec(flat)).amax() < 1e-14);
        }
    }

    #[test]
    fn determinant_is_unit_up_to_36() {
        for bsz in 1..=6 {
            for nsz in 1..=6 {
                if bsz * nsz > 36 {
                    continue;
                }
                let bs: Vec<usize> = (0..bsz).map(|k| 2 * k + 1).collect();
                let ns: Vec<usize> = (0..nsz).collect();
                let t = build_t(&bs, &ns, bs[bsz / 2], ns[nsz - 1]).unwrap();
                assert!((t.determinant().abs() - 1.0).abs() < 1e-9, "{bsz}x{nsz}");
            }
        }
    }
}
