use nalgebra::DMatrix;
use proptest::prelude::*;
use saddlebench::equilibrium::DEFAULT_TOL;
use saddlebench::error_bound::{
    error_bound_probes, kappa_empirical, negative_second_moments, reduce, QSYSTEM_RESIDUAL_TOL,
};
use saddlebench::lab::{run_trials, SolverSettings, TrialSpec};
use saddlebench::{certify_nondegenerate, duality_gap, gaussian_perturb, solve_exact, Game};

fn random_game(n: usize, m: usize, seed: u64) -> Game {
    gaussian_perturb(&DMatrix::zeros(n, m), 1.0, seed).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-8 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn second_moments_agree(d in 1usize..8, seed in any::<u64>()) {
        let m = random_game(d, d, seed).matrix().clone();
        let (sv, cols, rows) = negative_second_moments(&m);
        prop_assert!(close(sv, cols) && close(sv, rows), "{sv} {cols} {rows}");
    }

    #[test]
    fn reduction_reproduces_the_game(n in 2usize..6, m in 2usize..6, seed in any::<u64>()) {
        let g = random_game(n, m, seed);
        let eq = solve_exact(&g, DEFAULT_TOL).unwrap();
        prop_assume!(certify_nondegenerate(&g, &eq, DEFAULT_TOL).is_nondegenerate);
        if let Some(qs) = reduce(&g, &eq).unwrap() {
            let (primal, dual) = qs.residuals(&eq);
            prop_assert!(primal <= QSYSTEM_RESIDUAL_TOL && dual <= QSYSTEM_RESIDUAL_TOL);
            prop_assert!((qs.value(&eq) - eq.value).abs() <= 1e-9);
            let block = g.matrix().select_rows(&eq.support_x).select_columns(&eq.support_y);
            let err = (qs.reconstruct() - block).amax();
            prop_assert!(err <= 1e-9, "reconstruction off by {err:e}");
        }
    }

    #[test]
    fn modulus_estimate_is_witnessed(n in 2usize..5, m in 2usize..5, seed in any::<u64>()) {
        let g = random_game(n, m, seed);
        let eq = solve_exact(&g, DEFAULT_TOL).unwrap();
        let kappa = kappa_empirical(&g, &eq, 30, seed);
        let star = eq.joint();
        let probes = error_bound_probes(&g, &eq, 30, seed);
        let mut tight = false;
        for z in &probes {
            let dist = z.distance(&star);
            if dist <= 1e-14 {
                continue;
            }
            let phi = duality_gap(&g, z).unwrap();
            prop_assert!(kappa * dist <= phi * (1.0 + 1e-12));
            tight |= close(phi / dist, kappa);
        }
        prop_assert!(tight);
    }
}

#[test]
fn trials_do_not_depend_on_thread_count() {
    let spec = TrialSpec {
        base: Game::new(DMatrix::zeros(4, 4)).unwrap(),
        sigmas: vec![0.1, 0.5],
        n_trials: 6,
        solver: SolverSettings { eps: 1e-4, max_iters: 20_000, ..SolverSettings::default() },
        root_seed: 9,
        probe_samples: 40,
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| run_trials(&spec).unwrap())
    };
    let one = run(1);
    assert_eq!(one.len(), 12);
    assert_eq!(one, run(4));
}
