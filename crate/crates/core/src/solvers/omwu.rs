use super::{finish, gap_from_f, op_f, Algorithm, Point, Recorder, SolveResult, SolverConfig};
use crate::equilibrium::Equilibrium;
use crate::error::{Error, Result};
use crate::game::{mat_t_vec, mat_vec, Game};

/// Optimistic multiplicative weights from the uniform point.
///
/// Log-weights are accumulated directly and shifted by their maximum before
/// exponentiation, so iterates stay strictly positive far longer than a naive
/// product of exponentials would.
pub fn run_omwu(g: &Game, cfg: &SolverConfig, eq: Option<&Equilibrium>) -> Result<SolveResult> {
    cfg.validate(g, Algorithm::Omwu)?;
    let a = g.matrix();
    let (n, m) = (g.n(), g.m());
    let eta = cfg.eta;
    let mut rec = Recorder::new(cfg.record_every, eq);

    let mut z = Point { x: vec![1.0 / n as f64; n], y: vec![1.0 / m as f64; m] };
    let mut lx = vec![0.0; n];
    let mut ly = vec![0.0; m];
    let mut ay = mat_vec(a, &z.y);
    let mut atx = mat_t_vec(a, &z.x);
    let (mut ay_prev, mut atx_prev) = (ay.clone(), atx.clone());
    let mut phi = gap_from_f(&op_f(a, &z));
    rec.push(0, phi, &z);
    let mut t = 0;
    while phi > cfg.eps && t < cfg.max_iters {
        t += 1;
        for i in 0..n {
            lx[i] += -2.0 * eta * ay[i] + eta * ay_prev[i];
        }
        for j in 0..m {
            ly[j] += 2.0 * eta * atx[j] - eta * atx_prev[j];
        }
        z.x = softmax(&mut lx).ok_or(Error::StepSizeTooLarge { iter: t })?;
        z.y = softmax(&mut ly).ok_or(Error::StepSizeTooLarge { iter: t })?;
        ay_prev = std::mem::replace(&mut ay, mat_vec(a, &z.y));
        atx_prev = std::mem::replace(&mut atx, mat_t_vec(a, &z.x));
        let best_col = atx.iter().fold(f64::NEG_INFINITY, |acc, v| acc.max(*v));
        let best_row = ay.iter().fold(f64::INFINITY, |acc, v| acc.min(*v));
        phi = (best_col - best_row).max(0.0);
        rec.sample(t, phi, &z);
    }
    Ok(finish(&z, t, t, phi, cfg.eps, rec))
}

/// Shifts `logw` so its maximum is zero and returns the normalized weights,
/// or `None` once the log-weights stop being finite.
fn softmax(logw: &mut [f64]) -> Option<Vec<f64>> {
    let top = logw.iter().fold(f64::NEG_INFINITY, |acc, v| acc.max(*v));
    if !top.is_finite() || logw.iter().any(|v| !v.is_finite()) {
        return None;
    }
    logw.iter_mut().for_each(|v| *v -= top);
    let w: Vec<f64> = logw.iter().map(|v| v.exp()).collect();
    let s: f64 = w.iter().sum();
    Some(w.into_iter().map(|v| v / s).collect())
}
