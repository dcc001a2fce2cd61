mod games;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use saddlebench::equilibrium::{certify_nondegenerate, DEFAULT_TOL};
use saddlebench::error_bound::{diagnose, reduce, stability_bounds, Report};
use saddlebench::lab::{self, FigureSpec, SolverSettings, TailKind, TrialSpec};
use saddlebench::solvers::{self, write_trajectory_csv, Algorithm, SolverConfig};
use saddlebench::{solve_exact, Equilibrium, Game, JointStrategy};

use games::{named_base, GameSource};

const EXIT_USAGE: u8 = 1;
const EXIT_NOT_CONVERGED: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_STAT_FAILURE: u8 = 4;

/// Zero-sum matrix game solvers, conditioning diagnostics and smoothed
/// experiments.
#[derive(Debug, Parser)]
#[command(name = "saddlebench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a first-order solver and write its trajectory
    Solve(SolveArgs),
    /// Compute the conditioning diagnostics of a non-degenerate game
    Diagnose(DiagnoseArgs),
    /// Compute the stability bounds of a non-degenerate game
    Stability(StabilityArgs),
    /// Monte Carlo trials over Gaussian perturbations of a base matrix
    Trials(TrialsArgs),
    /// Check the tail bounds of the conditioning quantities
    Tails(TailsArgs),
    /// Reproduce the OGDA gap and distance curves
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
struct SeedArg {
    /// Root seed; defaults to SADDLEBENCH_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
}

impl SeedArg {
    fn resolve(&self) -> Result<u64> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var("SADDLEBENCH_SEED") {
            Ok(v) => v.trim().parse().with_context(|| format!("SADDLEBENCH_SEED is not an integer: `{v}`")),
            Err(_) => Ok(0),
        }
    }
}

#[derive(Debug, Args)]
struct JobsArg {
    /// Worker threads (default: all cores); results do not depend on it
    #[arg(long)]
    jobs: Option<usize>,
}

impl JobsArg {
    fn install(&self) -> Result<usize> {
        if let Some(j) = self.jobs {
            anyhow::ensure!(j >= 1, "--jobs must be at least 1");
            rayon::ThreadPoolBuilder::new().num_threads(j).build_global().context("configuring worker threads")?;
        }
        Ok(rayon::current_num_threads())
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    game: GameSource,
    /// ogda, egda, omwu or itersmooth
    #[arg(long, default_value = "ogda")]
    algo: String,
    /// Step size (default 1/(8||A||), or 1/(16 max|a_ij|) for omwu)
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iters: usize,
    /// IterSmooth shrink factor
    #[arg(long, default_value_t = 2.0)]
    rho: f64,
    #[arg(long, default_value_t = 1)]
    record_every: usize,
    /// Allow an OGDA step above 1/(8||A||)
    #[arg(long)]
    allow_large_eta: bool,
    /// Start from a random point drawn with --seed instead of the uniform point
    #[arg(long)]
    random_start: bool,
    /// Record distances to the exact equilibrium
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    seed: SeedArg,
    /// Trajectory CSV path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiagnoseArgs {
    #[command(flatten)]
    game: GameSource,
    /// Random probes for the modulus estimate
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
    /// JSON report path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StabilityArgs {
    #[command(flatten)]
    game: GameSource,
    /// Random perturbation directions for the bisection estimate
    #[arg(long, default_value_t = 20)]
    directions: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
    /// JSON report path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TrialsArgs {
    /// Base matrix: zero<N>, zero<N>x<M>, illcond<G>, identity<D>, mp, or a JSON file
    #[arg(long)]
    base: String,
    /// Noise levels in (0, 1], comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    sigma: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value = "ogda")]
    algo: String,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 2.0)]
    rho: f64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    jobs: JobsArg,
    /// Trial CSV path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TailsArgs {
    /// beta, gamma, alpha or all
    #[arg(long, default_value = "all")]
    which: String,
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    m: usize,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 400)]
    trials: usize,
    /// Event level (default: the level where the bound equals --bound)
    #[arg(long)]
    eps: Option<f64>,
    /// Target bound used to pick eps when --eps is absent
    #[arg(long, default_value_t = 0.2)]
    bound: f64,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    jobs: JobsArg,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(long, default_value_t = 0.25)]
    gamma: f64,
    /// Noise levels in [0, 1], comma separated; 0 runs the unperturbed game
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.05, 0.25])]
    sigmas: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    #[arg(long, default_value_t = 1000)]
    iters: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    jobs: JobsArg,
    /// Output directory
    #[arg(long, default_value = "figure")]
    out_dir: PathBuf,
}

fn echo(pairs: &[(&str, String)]) {
    let line: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    eprintln!("config: {}", line.join(" "));
}

fn write_out(path: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().write_all(bytes)?),
    }
}

fn solve_game(g: &Game) -> Result<Equilibrium> {
    Ok(solve_exact(g, DEFAULT_TOL)?)
}

/// Solves and certifies `g`; prints the certificate and returns `None` when
/// the game is degenerate.
fn certified(g: &Game) -> Result<Option<Equilibrium>> {
    let eq = solve_game(g)?;
    let cert = certify_nondegenerate(g, &eq, DEFAULT_TOL);
    if !cert.is_nondegenerate {
        println!("degenerate game\n{cert}");
        return Ok(None);
    }
    Ok(Some(eq))
}

fn cmd_solve(a: &SolveArgs) -> Result<u8> {
    let (g, label) = a.game.load()?;
    let algorithm: Algorithm = a.algo.parse()?;
    let seed = a.seed.resolve()?;
    let mut cfg = SolverConfig::for_game(algorithm, &g)
        .with_eps(a.eps)
        .with_max_iters(a.max_iters)
        .with_rho(a.rho)
        .with_record_every(a.record_every);
    if let Some(eta) = a.eta {
        cfg.eta = eta;
    }
    cfg.allow_large_eta = a.allow_large_eta;
    if cfg.allow_large_eta && algorithm == Algorithm::Ogda && cfg.eta > solvers::default_eta(&g) {
        eprintln!("warning: eta {} is above 1/(8||A||) = {}", cfg.eta, solvers::default_eta(&g));
    }
    let start = if a.random_start { "random" } else { "uniform" };
    echo(&[
        ("game", label),
        ("algo", algorithm.to_string()),
        ("eta", cfg.eta.to_string()),
        ("eps", cfg.eps.to_string()),
        ("max_iters", cfg.max_iters.to_string()),
        ("rho", cfg.rho.to_string()),
        ("record_every", cfg.record_every.to_string()),
        ("start", start.into()),
        ("seed", seed.to_string()),
        ("oracle", a.oracle.to_string()),
    ]);
    let z0 = if a.random_start { JointStrategy::random(g.n(), g.m(), seed) } else { JointStrategy::uniform(g.n(), g.m()) };
    let eq = if a.oracle { Some(solve_game(&g)?) } else { None };
    let r = solvers::solve(&g, &cfg, &z0, eq.as_ref())?;
    if let Some(path) = &a.out {
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &r.trajectory)?;
        fs::write(path, buf).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("converged={}", r.converged);
    println!("iters_used={}", r.iters_used);
    if algorithm == Algorithm::IterSmooth {
        println!("outer_iters={}", r.outer_iters);
    }
    println!("phi_final={}", saddlebench::fmt::fmt17(r.phi_final));
    println!("x={:?}", r.z_final.x.as_slice());
    println!("y={:?}", r.z_final.y.as_slice());
    Ok(if r.converged { 0 } else { EXIT_NOT_CONVERGED })
}

fn cmd_diagnose(a: &DiagnoseArgs) -> Result<u8> {
    let (g, label) = a.game.load()?;
    let seed = a.seed.resolve()?;
    echo(&[("game", label), ("samples", a.samples.to_string()), ("seed", seed.to_string())]);
    let Some(eq) = certified(&g)? else {
        return Ok(EXIT_DEGENERATE);
    };
    let report = Report { diagnostics: diagnose(&g, &eq, a.samples, seed)?, stability: None };
    print!("{}", report.to_text());
    if let Some(p) = &a.out {
        fs::write(p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(0)
}

fn cmd_stability(a: &StabilityArgs) -> Result<u8> {
    let (g, label) = a.game.load()?;
    let seed = a.seed.resolve()?;
    echo(&[
        ("game", label),
        ("directions", a.directions.to_string()),
        ("samples", a.samples.to_string()),
        ("seed", seed.to_string()),
    ]);
    let Some(eq) = certified(&g)? else {
        return Ok(EXIT_DEGENERATE);
    };
    let qs = reduce(&g, &eq)?;
    let report = Report {
        diagnostics: diagnose(&g, &eq, a.samples, seed)?,
        stability: Some(stability_bounds(&g, &eq, qs.as_ref(), a.directions, seed)),
    };
    print!("{}", report.to_text());
    if let Some(p) = &a.out {
        fs::write(p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(0)
}

fn cmd_trials(a: &TrialsArgs) -> Result<u8> {
    let jobs = a.jobs.install()?;
    let seed = a.seed.resolve()?;
    let spec = TrialSpec {
        base: named_base(&a.base)?,
        sigmas: a.sigma.clone(),
        n_trials: a.trials,
        solver: SolverSettings { algorithm: a.algo.parse()?, eta: a.eta, eps: a.eps, max_iters: a.max_iters, rho: a.rho },
        root_seed: seed,
        probe_samples: a.samples,
    };
    echo(&[
        ("base", a.base.clone()),
        ("sigma", format!("{:?}", spec.sigmas)),
        ("trials", spec.n_trials.to_string()),
        ("algo", spec.solver.algorithm.to_string()),
        ("eta", spec.solver.eta.map_or("per-game default".into(), |e| e.to_string())),
        ("eps", spec.solver.eps.to_string()),
        ("max_iters", spec.solver.max_iters.to_string()),
        ("rho", spec.solver.rho.to_string()),
        ("samples", spec.probe_samples.to_string()),
        ("seed", seed.to_string()),
        ("jobs", jobs.to_string()),
    ]);
    let outcomes = lab::run_trials(&spec)?;
    let mut buf = Vec::new();
    lab::write_trials_csv(&mut buf, &outcomes)?;
    write_out(&a.out, &buf)?;
    let nondeg = outcomes.iter().filter(|o| o.nondegenerate).count();
    eprintln!("trials={} nondegenerate={nondeg}", outcomes.len());
    Ok(0)
}

fn cmd_tails(a: &TailsArgs) -> Result<u8> {
    let jobs = a.jobs.install()?;
    let seed = a.seed.resolve()?;
    let kinds: Vec<TailKind> = if a.which == "all" {
        vec![TailKind::Beta, TailKind::Gamma, TailKind::Alpha]
    } else {
        vec![a.which.parse()?]
    };
    echo(&[
        ("which", a.which.clone()),
        ("n", a.n.to_string()),
        ("m", a.m.to_string()),
        ("sigma", a.sigma.to_string()),
        ("trials", a.trials.to_string()),
        ("eps", a.eps.map_or(format!("bound-matched({})", a.bound), |e| e.to_string())),
        ("seed", seed.to_string()),
        ("jobs", jobs.to_string()),
    ]);
    let mut all_pass = true;
    for kind in kinds {
        let eps = a.eps.unwrap_or_else(|| lab::eps_for_bound(kind, a.n, a.m, a.sigma, a.bound));
        let r = lab::validate_tail(kind, a.n, a.m, a.sigma, a.trials, eps, seed)?;
        println!("{r}");
        all_pass &= r.pass;
    }
    Ok(if all_pass { 0 } else { EXIT_STAT_FAILURE })
}

fn cmd_figure(a: &FigureArgs) -> Result<u8> {
    let jobs = a.jobs.install()?;
    let seed = a.seed.resolve()?;
    let spec = FigureSpec { gamma: a.gamma, sigmas: a.sigmas.clone(), n_seeds: a.seeds, iters: a.iters, root_seed: seed };
    echo(&[
        ("gamma", spec.gamma.to_string()),
        ("sigmas", format!("{:?}", spec.sigmas)),
        ("seeds", spec.n_seeds.to_string()),
        ("iters", spec.iters.to_string()),
        ("seed", seed.to_string()),
        ("jobs", jobs.to_string()),
        ("out_dir", a.out_dir.display().to_string()),
    ]);
    let files = lab::reproduce_figure(&spec, &a.out_dir)?;
    for p in files.csv.iter().chain(&files.svg) {
        println!("{}", p.display());
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Diagnose(a) => cmd_diagnose(a),
        Command::Stability(a) => cmd_stability(a),
        Command::Trials(a) => cmd_trials(a),
        Command::Tails(a) => cmd_tails(a),
        Command::Figure(a) => cmd_figure(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
