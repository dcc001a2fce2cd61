use super::{check_start, finish, gap_from_f, op_f, Algorithm, Point, Recorder, SolveResult, SolverConfig};
use crate::equilibrium::Equilibrium;
use crate::error::Result;
use crate::game::{Game, JointStrategy};

/// Extragradient: a look-ahead step from `z`, then the real step using the
/// operator at the look-ahead point.
pub fn run_egda(g: &Game, cfg: &SolverConfig, z0: &JointStrategy, eq: Option<&Equilibrium>) -> Result<SolveResult> {
    cfg.validate(g, Algorithm::Egda)?;
    check_start(g, z0)?;
    let a = g.matrix();
    let mut rec = Recorder::new(cfg.record_every, eq);

    let mut z = Point::from_joint(z0);
    let mut f = op_f(a, &z);
    let mut phi = gap_from_f(&f);
    rec.push(0, phi, &z);
    let mut t = 0;
    while phi > cfg.eps && t < cfg.max_iters {
        t += 1;
        let z_hat = z.axpy(-cfg.eta, &f).project();
        z = z.axpy(-cfg.eta, &op_f(a, &z_hat)).project();
        f = op_f(a, &z);
        phi = gap_from_f(&f);
        rec.sample(t, phi, &z);
    }
    Ok(finish(&z, t, t, phi, cfg.eps, rec))
}
