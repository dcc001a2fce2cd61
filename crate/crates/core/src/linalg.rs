//! Dense linear-algebra helpers built on nalgebra.

use nalgebra::{DMatrix, DVector};

/// Singular values in non-increasing order.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Largest singular value (the operator 2-norm).
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Smallest singular value, i.e. the `min(rows, cols)`-th one.
pub fn sigma_min(m: &DMatrix<f64>) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Euclidean distance from `v` to the column span of `basis`.
///
/// The span is computed with a rank-revealing SVD; an empty basis spans `{0}`.
pub fn dist_to_span(v: &DVector<f64>, basis: &DMatrix<f64>) -> f64 {
    if basis.ncols() == 0 {
        return v.norm();
    }
    let svd = basis.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.max();
    let tol = smax * f64::EPSILON * basis.nrows().max(basis.ncols()) as f64;
    let mut residual = v.clone();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > tol {
            let uk = u.column(k);
            let coef = uk.dot(v);
            residual.axpy(-coef, &uk, 1.0);
        }
    }
    residual.norm()
}

/// Distance of every column of `m` to the span of the remaining columns.
pub fn column_distances(m: &DMatrix<f64>) -> Vec<f64> {
    (0..m.ncols())
        .map(|j| {
            let col = m.column(j).into_owned();
            let rest = m.clone().remove_column(j);
            dist_to_span(&col, &rest)
        })
        .collect()
}

/// Distance of every row of `m` to the span of the remaining rows.
pub fn row_distances(m: &DMatrix<f64>) -> Vec<f64> {
    column_distances(&m.transpose())
}

/// Solves a square system, returning `None` when it is numerically singular.
pub fn solve_square(m: &DMatrix<f64>, rhs: &DVector<f64>) -> Option<DVector<f64>> {
    let lu = m.clone().lu();
    let x = lu.solve(rhs)?;
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Reciprocal condition estimate `sigma_min / sigma_max` (0 for an empty or zero matrix).
pub fn inverse_condition(m: &DMatrix<f64>) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
        _ => 0.0,
    }
}
