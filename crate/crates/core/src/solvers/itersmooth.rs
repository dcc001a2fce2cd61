use super::{check_start, op_f, Algorithm, Point, Recorder, SolveResult, SolverConfig};
use crate::equilibrium::Equilibrium;
use crate::error::Result;
use crate::game::{Game, JointStrategy};
use crate::linalg;
use nalgebra::DMatrix;

/// Diameter of the joint strategy space.
const D_Z: f64 = 2.0;

/// Restarted Nesterov smoothing. Each outer round divides the target gap by
/// `rho` and runs the inner accelerated scheme from the previous round's
/// point.
///
/// `iters_used` counts inner steps across all rounds; trajectory records are
/// indexed by outer round, since a round can finish without taking a step.
/// `max_iters` caps the total number of inner steps.
pub fn run_itersmooth(g: &Game, cfg: &SolverConfig, z0: &JointStrategy, eq: Option<&Equilibrium>) -> Result<SolveResult> {
    cfg.validate(g, Algorithm::IterSmooth)?;
    check_start(g, z0)?;
    let a = g.matrix();
    let l = linalg::spectral_norm(a);
    let mut rec = Recorder::new(1, eq);

    let mut z = Point::from_joint(z0);
    let mut phi = z.gap(a);
    rec.push(0, phi, &z);
    let mut target = phi;
    let (mut outer, mut steps) = (0, 0);
    let mut stalled = false;
    while phi > cfg.eps && l > 0.0 {
        target /= cfg.rho;
        let budget = cfg.max_iters - steps;
        let (next, used, reached) = smoothing(a, l, &z, target, budget);
        z = next;
        steps += used;
        outer += 1;
        phi = z.gap(a);
        rec.push(outer, phi, &z);
        if !reached {
            stalled = true;
            break;
        }
    }
    Ok(SolveResult {
        z_final: z.to_joint(),
        iters_used: steps,
        phi_final: phi,
        trajectory: rec.records,
        converged: !stalled && phi <= cfg.eps,
        outer_iters: outer,
    })
}

/// Inner step cap for target gap `eps`.
pub(crate) fn inner_cap(l: f64, eps: f64) -> usize {
    let horizon = (2.0 * l * D_Z / eps).ceil();
    if horizon.is_finite() && horizon < 1e15 {
        4 * horizon as usize + 16
    } else {
        usize::MAX
    }
}

/// Gradient of the smoothed gap `F_eta` at `u`.
fn smoothed_grad(a: &DMatrix<f64>, u: &Point, eta: f64) -> Point {
    let w = u.axpy(-1.0 / eta, &op_f(a, u)).project();
    let fw = op_f(a, &w);
    // F(w) - eta (u - w)
    Point::combine(1.0, &fw, -eta, &Point::combine(1.0, u, -1.0, &w))
}

/// Runs the accelerated scheme on `F_eta` with `eta = eps / D_Z` until the
/// true gap drops below `eps`. Returns the last point, the steps taken and
/// whether the target was reached within `min(budget, inner_cap)` steps.
fn smoothing(a: &DMatrix<f64>, l: f64, z0: &Point, eps: f64, budget: usize) -> (Point, usize, bool) {
    if z0.gap(a) < eps {
        return (z0.clone(), 0, true);
    }
    let eta = eps / D_Z;
    let step = eta / (l * l);
    if !(1.0 / eta).is_finite() || step == 0.0 {
        return (z0.clone(), 0, false);
    }
    let cap = inner_cap(l, eps).min(budget);
    let mut z = z0.clone();
    let mut z_hat = z0.clone();
    let mut grad_sum = Point { x: vec![0.0; z0.x.len()], y: vec![0.0; z0.y.len()] };
    for t in 0..cap {
        let tf = t as f64;
        let u = Point::combine(2.0 / (tf + 2.0), &z_hat, tf / (tf + 2.0), &z);
        let grad = smoothed_grad(a, &u, eta);
        z = u.axpy(-step, &grad).project();
        if z.gap(a) < eps {
            return (z, t + 1, true);
        }
        grad_sum = grad_sum.axpy((tf + 1.0) / 2.0, &grad);
        z_hat = z0.axpy(-step, &grad_sum).project();
    }
    (z, cap, false)
}
