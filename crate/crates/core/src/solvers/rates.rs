use crate::game::{Game, JointStrategy, TrajectoryRecord};
use crate::solvers::{op_f, Point};

/// The sharpness constant used by the rate theorem: half of a gap-to-distance
/// ratio.
pub fn kappa_prime(kappa: f64) -> f64 {
    kappa / 2.0
}

/// OGDA iteration count sufficient for gap `eps` under sharpness `kappa_prime`,
/// `2 ceil(ln(8 D / eps) / ln(1 + kappa'^2 / (324 ||A||^2)))` with `D = 2`.
pub fn iteration_bound(kappa_prime: f64, norm_a: f64, eps: f64) -> u64 {
    let num = (16.0 / eps).ln();
    let den = (kappa_prime * kappa_prime / (324.0 * norm_a * norm_a)).ln_1p();
    let half = (num / den).ceil().max(0.0);
    2 * (half as u64)
}

/// Right-hand side `(2 / eta) ||z - Pi(z - eta F(z))||` of the extragradient
/// gap estimate.
pub fn egda_gap_bound(g: &Game, z: &JointStrategy, eta: f64) -> f64 {
    let p = Point::from_joint(z);
    let r = p.axpy(-eta, &op_f(g.matrix(), &p)).project();
    2.0 / eta * p.dist(&r)
}

/// Whether `Phi(z)` stays below [`egda_gap_bound`] up to round-off.
pub fn satisfies_egda_gap_lemma(g: &Game, z: &JointStrategy, eta: f64) -> bool {
    let phi = Point::from_joint(z).gap(g.matrix());
    phi <= egda_gap_bound(g, z, eta) + 1e-12
}

/// Least-squares slope of `ln phi` against `iter` over the second half of
/// the trajectory. Records with `phi <= 0` are skipped.
pub fn log_gap_slope(trajectory: &[TrajectoryRecord]) -> Option<f64> {
    let tail = &trajectory[trajectory.len() / 2..];
    let pts: Vec<(f64, f64)> =
        tail.iter().filter(|r| r.phi > 0.0).map(|r| (r.iter as f64, r.phi.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
