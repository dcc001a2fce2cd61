//! Payoff matrices, simplex strategies and the basic saddle-point maps.
//!
//! Player x picks a row distribution and minimizes `x^T A y`; player y picks
//! a column distribution and maximizes it.

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, Exp1, Normal};
use serde_json::Value;

use crate::error::{invalid, Error, Result};
use crate::fmt::fmt17;
use crate::rng;

/// Tolerance on the component sum of a freshly built simplex vector.
pub const SIMPLEX_SUM_TOL: f64 = 1e-12;

/// Record of how a perturbed game was drawn.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub a_bar: DMatrix<f64>,
    pub sigma: f64,
    pub seed: u64,
}

/// A two-player zero-sum game given by its payoff matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    a: DMatrix<f64>,
    provenance: Option<Provenance>,
}

impl Game {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        if a.nrows() == 0 || a.ncols() == 0 {
            return Err(invalid("payoff matrix must have at least one row and one column"));
        }
        if a.iter().any(|v| !v.is_finite()) {
            return Err(invalid("payoff matrix has non-finite entries"));
        }
        Ok(Self { a, provenance: None })
    }

    /// Builds a game from row-major entries.
    pub fn from_rows(n: usize, m: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != n * m {
            return Err(Error::DimMismatch { expected: n * m, got: entries.len() });
        }
        Self::new(DMatrix::from_row_slice(n, m, entries))
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Result<Self> {
        validate_base(&provenance.a_bar, provenance.sigma)?;
        if provenance.a_bar.shape() != self.a.shape() {
            return Err(invalid("provenance base matrix shape differs from payoff matrix"));
        }
        self.provenance = Some(provenance);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn m(&self) -> usize {
        self.a.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// Largest absolute entry, `||A^flat||_inf`.
    pub fn max_abs_entry(&self) -> f64 {
        self.a.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Returns a copy with every entry multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(&self.a * factor)
    }

    /// Row-major copy of the entries.
    pub fn row_major(&self) -> Vec<f64> {
        row_major(&self.a)
    }

    pub fn to_json(&self) -> String {
        let mut s = format!(
            "{{\"n\": {}, \"m\": {}, \"A\": {}",
            self.n(),
            self.m(),
            json_array(&self.row_major())
        );
        if let Some(p) = &self.provenance {
            s.push_str(&format!(
                ", \"provenance\": {{\"A_bar\": {}, \"sigma\": {}, \"seed\": {}}}",
                json_array(&row_major(&p.a_bar)),
                fmt17(p.sigma),
                p.seed
            ));
        }
        s.push_str("}\n");
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let n = json_usize(&v, "n")?;
        let m = json_usize(&v, "m")?;
        let a = json_floats(&v["A"], "A")?;
        let mut game = Self::from_rows(n, m, &a)?;
        match &v["provenance"] {
            Value::Null => {}
            p => {
                let a_bar = json_floats(&p["A_bar"], "provenance.A_bar")?;
                if a_bar.len() != n * m {
                    return Err(Error::DimMismatch { expected: n * m, got: a_bar.len() });
                }
                let sigma = p["sigma"]
                    .as_f64()
                    .ok_or_else(|| Error::Parse("provenance.sigma must be a number".into()))?;
                let seed = p["seed"]
                    .as_u64()
                    .ok_or_else(|| Error::Parse("provenance.seed must be an unsigned integer".into()))?;
                game = game.with_provenance(Provenance {
                    a_bar: DMatrix::from_row_slice(n, m, &a_bar),
                    sigma,
                    seed,
                })?;
            }
        }
        Ok(game)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
        })?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

fn row_major(a: &DMatrix<f64>) -> Vec<f64> {
    a.row_iter().flat_map(|r| r.iter().copied().collect::<Vec<_>>()).collect()
}

fn json_array(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| fmt17(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn json_usize(v: &Value, key: &str) -> Result<usize> {
    v[key]
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("field `{key}` must be an unsigned integer")))
}

fn json_floats(v: &Value, key: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("field `{key}` must be an array")))?;
    arr.iter()
        .map(|x| x.as_f64().ok_or_else(|| Error::Parse(format!("field `{key}` has a non-number"))))
        .collect()
}

fn validate_base(a_bar: &DMatrix<f64>, sigma: f64) -> Result<()> {
    if !(sigma >= 0.0 && sigma * sigma <= 1.0) {
        return Err(invalid(format!("sigma must satisfy 0 <= sigma^2 <= 1, got {sigma}")));
    }
    if a_bar.iter().any(|v| !(-1.0..=1.0).contains(v)) {
        return Err(invalid("base matrix entries must lie in [-1, 1]"));
    }
    Ok(())
}

/// A point of the probability simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVector(Vec<f64>);

impl SimplexVector {
    /// Validates nonnegativity and a unit sum within [`SIMPLEX_SUM_TOL`].
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("simplex vector must be nonempty"));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(invalid("simplex vector entries must be finite and nonnegative"));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_SUM_TOL {
            return Err(invalid(format!("simplex vector sums to {sum}, not 1")));
        }
        Ok(Self(values))
    }

    /// Wraps the output of simplex-preserving arithmetic: clamps tiny negative
    /// round-off to zero and divides by the sum when it drifted past tolerance.
    pub(crate) fn renormalized(mut values: Vec<f64>) -> Self {
        for v in values.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_SUM_TOL {
            values.iter_mut().for_each(|v| *v /= sum);
        }
        Self(values)
    }

    pub fn uniform(dim: usize) -> Self {
        Self(vec![1.0 / dim as f64; dim])
    }

    pub fn vertex(dim: usize, k: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[k] = 1.0;
        Self(v)
    }

    /// A uniform draw from the simplex (Dirichlet with unit weights).
    pub fn random<R: Rng>(rng: &mut R, dim: usize) -> Self {
        let w: Vec<f64> = (0..dim).map(|_| Exp1.sample(rng)).collect();
        let s: f64 = w.iter().sum();
        Self::renormalized(w.into_iter().map(|v| v / s).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn to_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.0)
    }
}

/// A pair of mixed strategies `z = (x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointStrategy {
    pub x: SimplexVector,
    pub y: SimplexVector,
}

impl JointStrategy {
    pub fn new(x: SimplexVector, y: SimplexVector) -> Self {
        Self { x, y }
    }

    pub fn uniform(n: usize, m: usize) -> Self {
        Self::new(SimplexVector::uniform(n), SimplexVector::uniform(m))
    }

    pub fn vertex(n: usize, m: usize, i: usize, j: usize) -> Self {
        Self::new(SimplexVector::vertex(n, i), SimplexVector::vertex(m, j))
    }

    /// Independent uniform draws for both players from `seed`.
    pub fn random(n: usize, m: usize, seed: u64) -> Self {
        let mut rng = rng::stream(seed);
        let x = SimplexVector::random(&mut rng, n);
        Self::new(x, SimplexVector::random(&mut rng, m))
    }

    /// Euclidean distance in the product space.
    pub fn distance(&self, other: &JointStrategy) -> f64 {
        sq_dist(self.x.as_slice(), other.x.as_slice())
            .sqrt()
            .hypot(sq_dist(self.y.as_slice(), other.y.as_slice()).sqrt())
    }

    /// Concatenation `(x, y)`.
    pub fn flat(&self) -> Vec<f64> {
        let mut z = self.x.as_slice().to_vec();
        z.extend_from_slice(self.y.as_slice());
        z
    }

    fn check(&self, g: &Game) -> Result<()> {
        if self.x.dim() != g.n() {
            return Err(Error::DimMismatch { expected: g.n(), got: self.x.dim() });
        }
        if self.y.dim() != g.m() {
            return Err(Error::DimMismatch { expected: g.m(), got: self.y.dim() });
        }
        Ok(())
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum()
}

/// One sampled point of a solver trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord {
    pub iter: usize,
    pub phi: f64,
    pub dist_to_eq: Option<f64>,
}

/// Euclidean projection onto the probability simplex (sort-then-threshold).
pub fn project_simplex(v: &[f64]) -> Result<SimplexVector> {
    if v.is_empty() {
        return Err(invalid("cannot project an empty vector"));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(invalid("projection input has non-finite entries"));
    }
    Ok(SimplexVector::renormalized(project_raw(v)))
}

/// Projection without validation; `v` must be finite and nonempty.
///
/// The input is shifted so its maximum is zero first. Projection commutes
/// with adding a multiple of the ones vector, and the shift keeps the unit
/// budget from being lost against large entries.
pub(crate) fn project_raw(v: &[f64]) -> Vec<f64> {
    let top = v.iter().fold(f64::NEG_INFINITY, |m, x| m.max(*x));
    let v: Vec<f64> = v.iter().map(|x| x - top).collect();
    let mut sorted = v.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut tau = 0.0;
    for (k, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - 1.0) / (k + 1) as f64;
        if u - t > 0.0 {
            tau = t;
        } else {
            break;
        }
    }
    v.iter().map(|&x| (x - tau).max(0.0)).collect()
}

pub(crate) fn mat_vec(a: &DMatrix<f64>, y: &[f64]) -> Vec<f64> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| a[(i, j)] * y[j]).sum())
        .collect()
}

pub(crate) fn mat_t_vec(a: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (0..a.ncols())
        .map(|j| (0..a.nrows()).map(|i| a[(i, j)] * x[i]).sum())
        .collect()
}

/// Gap on raw slices: `max_j (A^T x)_j - min_i (A y)_i`.
pub(crate) fn gap_raw(a: &DMatrix<f64>, x: &[f64], y: &[f64]) -> f64 {
    let best_col = mat_t_vec(a, x).into_iter().fold(f64::NEG_INFINITY, f64::max);
    let best_row = mat_vec(a, y).into_iter().fold(f64::INFINITY, f64::min);
    (best_col - best_row).max(0.0)
}

/// Duality gap `Phi(z)`, evaluated through the vertex maxima of both players.
pub fn duality_gap(g: &Game, z: &JointStrategy) -> Result<f64> {
    z.check(g)?;
    Ok(gap_raw(g.matrix(), z.x.as_slice(), z.y.as_slice()))
}

/// The saddle operator `F(z) = (A y, -A^T x)`.
pub fn operator_f(g: &Game, z: &JointStrategy) -> Result<Vec<f64>> {
    z.check(g)?;
    let mut f = mat_vec(g.matrix(), z.y.as_slice());
    f.extend(mat_t_vec(g.matrix(), z.x.as_slice()).into_iter().map(|v| -v));
    Ok(f)
}

/// The 3x3 diagonal game `diag(gamma, 2 gamma, 1)`.
pub fn make_illcond_game(gamma: f64) -> Result<Game> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(invalid(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    Game::new(DMatrix::from_diagonal(&DVector::from_vec(vec![gamma, 2.0 * gamma, 1.0])))
}

pub fn matching_pennies() -> Game {
    Game::from_rows(2, 2, &[1.0, -1.0, -1.0, 1.0]).expect("static game")
}

pub fn identity_game(d: usize) -> Result<Game> {
    Game::new(DMatrix::identity(d, d))
}

pub fn zero_game(n: usize, m: usize) -> Result<Game> {
    Game::new(DMatrix::zeros(n, m))
}

/// Draws `A = A_bar + G` with `G` i.i.d. `N(0, sigma^2)` from the stream of `seed`.
pub fn gaussian_perturb(a_bar: &DMatrix<f64>, sigma: f64, seed: u64) -> Result<Game> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(invalid(format!("sigma must lie in (0, 1], got {sigma}")));
    }
    validate_base(a_bar, sigma)?;
    let normal = Normal::new(0.0, sigma).map_err(|e| invalid(e.to_string()))?;
    let mut rng = rng::stream(seed);
    let (n, m) = a_bar.shape();
    // Row-major draw order so the stream maps to entries the way files list them.
    let mut a = a_bar.clone();
    for i in 0..n {
        for j in 0..m {
            a[(i, j)] += normal.sample(&mut rng);
        }
    }
    Game::new(a)?.with_provenance(Provenance { a_bar: a_bar.clone(), sigma, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn js(x: &[f64], y: &[f64]) -> JointStrategy {
        JointStrategy::new(
            SimplexVector::new(x.to_vec()).unwrap(),
            SimplexVector::new(y.to_vec()).unwrap(),
        )
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(p, q)| (p - q).abs() <= tol)
    }

    /// Brute-force projection: try every active set size, keep the KKT one.
    fn project_by_enumeration(v: &[f64]) -> Vec<f64> {
        let d = v.len();
        for mask in 1u32..(1 << d) {
            let active: Vec<usize> = (0..d).filter(|k| mask & (1 << k) != 0).collect();
            let tau = (active.iter().map(|&k| v[k]).sum::<f64>() - 1.0) / active.len() as f64;
            let ok = (0..d).all(|k| {
                if active.contains(&k) { v[k] - tau > 0.0 } else { v[k] - tau <= 0.0 }
            });
            if ok {
                return v.iter().map(|&x| (x - tau).max(0.0)).collect();
            }
        }
        unreachable!()
    }

    #[test]
    fn projection_survives_large_inputs() {
        let p = project_raw(&[3e16, -1e16, 2e16]);
        assert_eq!(p, vec![1.0, 0.0, 0.0]);
        let p = project_raw(&[1e17 + 16.0, 1e17, -5.0]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_examples() {
        let p = project_simplex(&[0.2, 0.3, 0.5]).unwrap();
        assert!(close(p.as_slice(), &[0.2, 0.3, 0.5], 1e-15));
        let p = project_simplex(&[2.0, 0.0, 0.0]).unwrap();
        assert!(close(p.as_slice(), &[1.0, 0.0, 0.0], 1e-15));
        let expected = project_by_enumeration(&[1.0, 0.6, 0.2]);
        assert!(close(&expected, &[0.7, 0.3, 0.0], 1e-12));
        let p = project_simplex(&[1.0, 0.6, 0.2]).unwrap();
        assert!(close(p.as_slice(), &expected, 1e-12));
    }

    #[test]
    fn projection_rejects_non_finite() {
        assert!(matches!(project_simplex(&[1.0, f64::NAN]), Err(Error::InvalidInput(_))));
        assert!(project_simplex(&[f64::INFINITY]).is_err());
        assert!(project_simplex(&[]).is_err());
    }

    #[test]
    fn simplex_vector_validation() {
        assert!(SimplexVector::new(vec![0.5, 0.5]).is_ok());
        assert!(SimplexVector::new(vec![0.5, 0.5 + 1e-11]).is_err());
        assert!(SimplexVector::new(vec![1.5, -0.5]).is_err());
    }

    #[test]
    fn duality_gap_examples() {
        let g = make_illcond_game(0.37).unwrap();
        let z = JointStrategy::vertex(3, 3, 0, 2);
        assert_eq!(duality_gap(&g, &z).unwrap(), 0.37);

        let mp = matching_pennies();
        // Brute force over the 2x2 vertex set.
        let x = [1.0, 0.0];
        let y = [1.0, 0.0];
        let a = mp.matrix();
        let col_max = (0..2).map(|j| (0..2).map(|i| x[i] * a[(i, j)]).sum::<f64>()).fold(f64::MIN, f64::max);
        let row_min = (0..2).map(|i| (0..2).map(|j| a[(i, j)] * y[j]).sum::<f64>()).fold(f64::MAX, f64::min);
        assert_eq!(col_max - row_min, 2.0);
        assert_eq!(duality_gap(&mp, &js(&x, &y)).unwrap(), 2.0);
        assert_eq!(duality_gap(&mp, &JointStrategy::uniform(2, 2)).unwrap(), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let g = matching_pennies();
        let z = JointStrategy::uniform(3, 2);
        assert!(matches!(duality_gap(&g, &z), Err(Error::DimMismatch { .. })));
        assert!(operator_f(&g, &z).is_err());
    }

    #[test]
    fn operator_examples() {
        let mp = matching_pennies();
        assert!(close(&operator_f(&mp, &JointStrategy::uniform(2, 2)).unwrap(), &[0.0; 4], 0.0));
        let f = operator_f(&mp, &JointStrategy::vertex(2, 2, 0, 0)).unwrap();
        assert_eq!(f, vec![1.0, -1.0, -1.0, 1.0]);
        let one = Game::from_rows(1, 1, &[2.5]).unwrap();
        assert_eq!(operator_f(&one, &JointStrategy::uniform(1, 1)).unwrap(), vec![2.5, -2.5]);
    }

    #[test]
    fn illcond_generator() {
        let g = make_illcond_game(0.25).unwrap();
        let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![0.25, 0.5, 1.0]));
        assert_eq!(g.matrix(), &expected);
        let g = make_illcond_game(0.5).unwrap();
        assert_eq!(g.row_major(), vec![0.5, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(make_illcond_game(0.0).is_err());
        assert!(make_illcond_game(1.0).is_err());
    }

    #[test]
    fn perturbation_is_deterministic_and_validated() {
        let base = make_illcond_game(0.25).unwrap().matrix().clone();
        let g1 = gaussian_perturb(&base, 0.3, 11).unwrap();
        let g2 = gaussian_perturb(&base, 0.3, 11).unwrap();
        assert_eq!(g1, g2);
        assert_ne!(g1.matrix(), gaussian_perturb(&base, 0.3, 12).unwrap().matrix());
        assert!(gaussian_perturb(&base, 0.0, 1).is_err());
        assert!(gaussian_perturb(&base, 1.5, 1).is_err());
        assert!(gaussian_perturb(&(base.clone() * 2.0), 0.5, 1).is_err());
        let tiny = gaussian_perturb(&base, 1e-9, 5).unwrap();
        assert!((tiny.matrix() - &base).amax() < 1e-7);
    }

    #[test]
    fn perturbation_moments() {
        let base = DMatrix::zeros(3, 3);
        let trials = 10_000;
        let mut sum = DMatrix::<f64>::zeros(3, 3);
        let mut sumsq = DMatrix::<f64>::zeros(3, 3);
        for seed in 0..trials {
            let g = gaussian_perturb(&base, 1.0, seed).unwrap();
            sum += g.matrix();
            sumsq += g.matrix().component_mul(g.matrix());
        }
        let t = trials as f64;
        for k in 0..9 {
            let mean = sum[k] / t;
            let var = sumsq[k] / t - mean * mean;
            assert!(mean.abs() < 4.0 / t.sqrt(), "mean {mean}");
            assert!((var - 1.0).abs() < 0.1, "var {var}");
        }
    }

    #[test]
    fn json_round_trip_with_provenance() {
        let base = make_illcond_game(0.25).unwrap().matrix().clone();
        let g = gaussian_perturb(&base, 0.1, 99).unwrap();
        let back = Game::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let plain = matching_pennies();
        assert_eq!(Game::from_json(&plain.to_json()).unwrap(), plain);
    }

    #[test]
    fn json_rejects_bad_documents() {
        assert!(Game::from_json("{\"n\": 2, \"m\": 2, \"A\": [1, 2, 3]}").is_err());
        assert!(Game::from_json("{\"n\": 1, \"m\": 1}").is_err());
        assert!(Game::from_json("not json").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn simplex_point(d: usize) -> impl Strategy<Value = Vec<f64>> {
            prop::collection::vec(0.001f64..1.0, d).prop_map(|w| {
                let s: f64 = w.iter().sum();
                w.into_iter().map(|v| v / s).collect()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn projection_satisfies_variational_inequality(
                (v, qs) in (1usize..=50).prop_flat_map(|d| (
                    prop::collection::vec(-5.0f64..5.0, d),
                    prop::collection::vec(simplex_point(d), 100),
                ))
            ) {
                let p = project_simplex(&v).unwrap();
                let p = p.as_slice();
                prop_assert!(p.iter().all(|&x| x >= 0.0));
                prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
                for q in &qs {
                    let inner: f64 = v.iter().zip(p).zip(q).map(|((vi, pi), qi)| (vi - pi) * (qi - pi)).sum();
                    prop_assert!(inner <= 1e-9, "inner {}", inner);
                }
            }
        }

        proptest! {
            #[test]
            fn gap_nonnegative_and_operator_antisymmetric(
                (n, m, a, xw, yw) in (1usize..6, 1usize..6).prop_flat_map(|(n, m)| (
                    Just(n), Just(m),
                    prop::collection::vec(-1.0f64..1.0, n * m),
                    simplex_point(n), simplex_point(m),
                ))
            ) {
                let g = Game::from_rows(n, m, &a).unwrap();
                let z = JointStrategy::new(SimplexVector::renormalized(xw), SimplexVector::renormalized(yw));
                prop_assert!(duality_gap(&g, &z).unwrap() >= 0.0);
                let f = operator_f(&g, &z).unwrap();
                let inner: f64 = f.iter().zip(z.flat()).map(|(a, b)| a * b).sum();
                prop_assert!(inner.abs() <= 1e-12);
            }
        }
    }
}
