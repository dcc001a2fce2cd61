use super::{check_start, finish, gap_from_f, op_f, Algorithm, Point, Recorder, SolveResult, SolverConfig};
use crate::equilibrium::Equilibrium;
use crate::error::Result;
use crate::game::{Game, JointStrategy};

/// Optimistic gradient descent ascent started from `z_hat = z = z0`.
pub fn run_ogda(g: &Game, cfg: &SolverConfig, z0: &JointStrategy, eq: Option<&Equilibrium>) -> Result<SolveResult> {
    cfg.validate(g, Algorithm::Ogda)?;
    check_start(g, z0)?;
    let a = g.matrix();
    let mut rec = Recorder::new(cfg.record_every, eq);

    let mut z = Point::from_joint(z0);
    let mut z_hat = z.clone();
    let mut f = op_f(a, &z);
    let mut phi = gap_from_f(&f);
    rec.push(0, phi, &z);
    let mut t = 0;
    while phi > cfg.eps && t < cfg.max_iters {
        t += 1;
        z = z_hat.axpy(-cfg.eta, &f).project();
        f = op_f(a, &z);
        z_hat = z_hat.axpy(-cfg.eta, &f).project();
        phi = gap_from_f(&f);
        rec.sample(t, phi, &z);
    }
    Ok(finish(&z, t, t, phi, cfg.eps, rec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_illcond_game, matching_pennies, SimplexVector};
    use crate::solvers::run_egda;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(p, q)| (p - q).abs() < 1e-12)
    }

    #[test]
    fn matching_pennies_uniform_is_fixed() {
        let g = matching_pennies();
        let cfg = SolverConfig::for_game(Algorithm::Ogda, &g).with_eps(1e-12).with_max_iters(5);
        let r = run_ogda(&g, &cfg, &JointStrategy::uniform(2, 2), None).unwrap();
        assert!(r.converged);
        assert_eq!(r.iters_used, 0);
        assert_eq!(r.phi_final, 0.0);
        assert_eq!(r.z_final, JointStrategy::uniform(2, 2));
    }

    #[test]
    fn matching_pennies_one_step() {
        let g = matching_pennies();
        let mut cfg = SolverConfig::for_game(Algorithm::Ogda, &g).with_eta(0.1).with_eps(1e-12).with_max_iters(1);
        cfg.allow_large_eta = true;
        let r = run_ogda(&g, &cfg, &JointStrategy::vertex(2, 2, 0, 0), None).unwrap();
        assert_eq!(r.iters_used, 1);
        assert!(close(r.z_final.x.as_slice(), &[0.9, 0.1]));
        assert!(close(r.z_final.y.as_slice(), &[1.0, 0.0]));
    }

    #[test]
    fn illcond_converges_and_agrees_with_egda() {
        let g = make_illcond_game(0.25).unwrap();
        let z0 = JointStrategy::uniform(3, 3);
        let cfg = SolverConfig::for_game(Algorithm::Ogda, &g).with_eps(1e-6);
        let r = run_ogda(&g, &cfg, &z0, None).unwrap();
        assert!(r.converged && r.phi_final <= 1e-6);
        let e = run_egda(&g, &SolverConfig { algorithm: Algorithm::Egda, ..cfg }, &z0, None).unwrap();
        assert!(e.converged);
        let star = JointStrategy::new(
            SimplexVector::new(vec![4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0]).unwrap(),
            SimplexVector::new(vec![4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0]).unwrap(),
        );
        assert!(r.z_final.distance(&star) < 1e-4);
        assert!(r.z_final.distance(&e.z_final) < 1e-4);
    }

    #[test]
    fn recording_stride() {
        let g = make_illcond_game(0.25).unwrap();
        let cfg = SolverConfig::for_game(Algorithm::Ogda, &g).with_eps(1e-12).with_max_iters(25).with_record_every(10);
        let r = run_ogda(&g, &cfg, &JointStrategy::uniform(3, 3), None).unwrap();
        let iters: Vec<usize> = r.trajectory.iter().map(|t| t.iter).collect();
        assert_eq!(iters, vec![0, 10, 20, 25]);
        assert!(!r.converged);
        assert!((r.trajectory[0].phi - 0.25).abs() < 1e-15);
    }
}
