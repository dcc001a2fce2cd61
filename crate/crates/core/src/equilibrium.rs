//! Exact equilibria for small games by support enumeration.
//!
//! Candidates are square support pairs `(B, N)`, visited by increasing size
//! and then lexicographically. For each pair the two bordered systems
//! `A_BN y = v 1, 1^T y = 1` and `A_BN^T x = v 1, 1^T x = 1` are solved; the
//! first candidate whose completed strategies have duality gap within the
//! tolerance is returned. Every extreme equilibrium of a zero-sum game comes
//! from such a square kernel, so the search is complete for any game.

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::game::{gap_raw, mat_t_vec, mat_vec, Game, JointStrategy, SimplexVector};
use crate::linalg;

/// Largest game dimension the enumeration oracle accepts.
pub const MAX_ORACLE_DIM: usize = 20;

/// Coordinates above this value belong to the support.
pub const SUPPORT_TOL: f64 = 1e-9;

/// Default tolerance for the exact solve and the tightness count.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Kernels whose bordered matrix has reciprocal condition below this are
/// treated as singular.
const KERNEL_RCOND_MIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Equilibrium {
    pub x_star: SimplexVector,
    pub y_star: SimplexVector,
    pub value: f64,
    /// Support `B` of `x*`, ascending.
    pub support_x: Vec<usize>,
    /// Support `N` of `y*`, ascending.
    pub support_y: Vec<usize>,
}

impl Equilibrium {
    pub fn joint(&self) -> JointStrategy {
        JointStrategy::new(self.x_star.clone(), self.y_star.clone())
    }

    /// Rows outside the support, `B-bar`.
    pub fn off_support_x(&self) -> Vec<usize> {
        complement(&self.support_x, self.x_star.dim())
    }

    /// Columns outside the support, `N-bar`.
    pub fn off_support_y(&self) -> Vec<usize> {
        complement(&self.support_y, self.y_star.dim())
    }
}

fn complement(set: &[usize], dim: usize) -> Vec<usize> {
    (0..dim).filter(|k| !set.contains(k)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonDegeneracyCertificate {
    pub is_nondegenerate: bool,
    pub tight_count_x: usize,
    pub tight_count_y: usize,
    pub unique: bool,
    pub complementarity_ok: bool,
}

impl std::fmt::Display for NonDegeneracyCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "is_nondegenerate={}", self.is_nondegenerate)?;
        writeln!(f, "tight_count_x={}", self.tight_count_x)?;
        writeln!(f, "tight_count_y={}", self.tight_count_y)?;
        writeln!(f, "unique={}", self.unique)?;
        write!(f, "complementarity_ok={}", self.complementarity_ok)
    }
}

/// Next k-subset of `0..n` in lexicographic order, in place.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for t in i + 1..k {
                c[t] = c[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(crate) fn submatrix(a: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |r, c| a[(rows[r], cols[c])])
}

/// `[[M, -1], [1^T, 0]]`: solving it against `(0, 1)` gives `(y, v)` with `M y = v 1`.
fn bordered(m: &DMatrix<f64>) -> DMatrix<f64> {
    let k = m.nrows();
    let mut out = DMatrix::zeros(k + 1, k + 1);
    out.view_mut((0, 0), (k, k)).copy_from(m);
    for r in 0..k {
        out[(r, k)] = -1.0;
        out[(k, r)] = 1.0;
    }
    out
}

fn solve_kernel(m: &DMatrix<f64>) -> Option<(Vec<f64>, f64)> {
    let k = m.nrows();
    let mut rhs = DVector::zeros(k + 1);
    rhs[k] = 1.0;
    let sol = linalg::solve_square(&bordered(m), &rhs)?;
    Some((sol.rows(0, k).iter().copied().collect(), sol[k]))
}

/// Feasible kernel solution, or `None` when some coordinate is clearly negative.
fn clean_strategy(support: &[usize], local: &[f64], dim: usize, tol: f64) -> Option<Vec<f64>> {
    if local.iter().any(|&p| p < -tol) {
        return None;
    }
    let mut full = vec![0.0; dim];
    for (&k, &p) in support.iter().zip(local) {
        full[k] = p.max(0.0);
    }
    let s: f64 = full.iter().sum();
    if s <= 0.0 {
        return None;
    }
    full.iter_mut().for_each(|p| *p /= s);
    Some(full)
}

/// Computes an equilibrium with duality gap at most `tol`.
pub fn solve_exact(g: &Game, tol: f64) -> Result<Equilibrium> {
    let (n, m) = (g.n(), g.m());
    if n > MAX_ORACLE_DIM || m > MAX_ORACLE_DIM {
        return Err(Error::UnsupportedSize { n, m, limit: MAX_ORACLE_DIM });
    }
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(invalid(format!("oracle tolerance must lie in [1e-12, 1e-6], got {tol}")));
    }
    let a = g.matrix();
    for k in 1..=n.min(m) {
        let mut rows: Vec<usize> = (0..k).collect();
        loop {
            let mut cols: Vec<usize> = (0..k).collect();
            loop {
                if let Some(eq) = try_candidate(a, &rows, &cols, tol) {
                    return Ok(eq);
                }
                if !next_combination(&mut cols, m) {
                    break;
                }
            }
            if !next_combination(&mut rows, n) {
                break;
            }
        }
    }
    Err(Error::SolverFailure(format!(
        "no square support pair produced a {tol:e}-equilibrium"
    )))
}

fn try_candidate(a: &DMatrix<f64>, rows: &[usize], cols: &[usize], tol: f64) -> Option<Equilibrium> {
    let sub = submatrix(a, rows, cols);
    let (y_loc, v) = solve_kernel(&sub)?;
    let (x_loc, _) = solve_kernel(&sub.transpose())?;
    let x = clean_strategy(rows, &x_loc, a.nrows(), tol)?;
    let y = clean_strategy(cols, &y_loc, a.ncols(), tol)?;
    if gap_raw(a, &x, &y) > tol {
        return None;
    }
    let support_x = (0..x.len()).filter(|&i| x[i] > SUPPORT_TOL).collect();
    let support_y = (0..y.len()).filter(|&j| y[j] > SUPPORT_TOL).collect();
    Some(Equilibrium {
        x_star: SimplexVector::renormalized(x),
        y_star: SimplexVector::renormalized(y),
        value: v,
        support_x,
        support_y,
    })
}

/// Counts tight primal/dual inequalities and checks uniqueness of the
/// support-restricted solution.
pub fn certify_nondegenerate(g: &Game, eq: &Equilibrium, tol: f64) -> NonDegeneracyCertificate {
    let a = g.matrix();
    let x = eq.x_star.as_slice();
    let y = eq.y_star.as_slice();
    let v = eq.value;
    let col_payoffs = mat_t_vec(a, x);
    let row_payoffs = mat_vec(a, y);
    let tight_count_x = x.iter().filter(|&&p| p <= tol).count()
        + col_payoffs.iter().filter(|&&p| (p - v).abs() <= tol).count();
    let tight_count_y = y.iter().filter(|&&p| p <= tol).count()
        + row_payoffs.iter().filter(|&&p| (p - v).abs() <= tol).count();
    let complementarity_ok = eq.support_x.len() == eq.support_y.len();
    let unique = complementarity_ok
        && !eq.support_x.is_empty()
        && linalg::inverse_condition(&bordered(&submatrix(a, &eq.support_x, &eq.support_y)))
            > KERNEL_RCOND_MIN;
    NonDegeneracyCertificate {
        is_nondegenerate: unique && tight_count_x == g.n() && tight_count_y == g.m(),
        tight_count_x,
        tight_count_y,
        unique,
        complementarity_ok,
    }
}
