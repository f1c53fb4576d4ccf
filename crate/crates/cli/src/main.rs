use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use atucp_cli::commands::{self, BatchRequest, GenerateRequest};
use atucp_cli::config::{Config, CONFIG_ENV};
use atucp_cli::report::{write_runs, RunRow};
use atucp_core::forge::{
    calibrate_capacities, matching_rows, solve_lower_bound, DemandPoint, PartitionBounds, Scheme,
    DEFAULT_CAPACITIES,
};
use atucp_core::geometry::ObjectiveParams;
use atucp_core::search::SolverParams;
use clap::{Args, Parser, Subcommand};

/// Consolidate boxes onto air transport units.
#[derive(Parser)]
#[command(name = "atucp", version)]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instances with a known lower bound and a reference solution.
    Generate(GenerateArgs),
    /// Solve one instance and print its report row.
    Solve(SolveArgs),
    /// Check a solution against its instance.
    Validate {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Solve directories of instances over a grid of Ω values.
    Batch(BatchArgs),
    /// Draw every TU of a solution as SVG.
    Render {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Compare a candidate solution with a baseline of the same instance.
    Compare {
        instance: PathBuf,
        candidate: PathBuf,
        baseline: PathBuf,
    },
    /// Print the cheapest TU multiset covering a demand.
    LowerBound {
        /// Volume in m³ and weight in kg, e.g. `12,1400`.
        #[arg(long, value_parser = parse_demand)]
        demand: DemandPoint,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Search TU capacities reproducing the reference optima of the built-in demand set.
    Calibrate {
        #[arg(long, default_value_t = 200)]
        lo: i64,
        #[arg(long, default_value_t = 3000)]
        hi: i64,
        #[arg(long, default_value_t = 25)]
        step: i64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DemandSource {
    /// Use the 100 built-in demand points.
    #[arg(long)]
    builtin: bool,
    /// Demand point `V,W` (m³, kg); repeatable.
    #[arg(long, value_parser = parse_demand)]
    demand: Vec<DemandPoint>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    source: DemandSource,
    /// Partition scheme: 1 layers, 2 tunnels, 3 perfect.
    #[arg(long)]
    scheme: Option<u8>,
    /// Base seed; the k-th demand uses seed + k.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    out: PathBuf,
    /// Box density in kg/m³.
    #[arg(long)]
    density: Option<f64>,
    /// Smallest box side for schemes 1 and 2.
    #[arg(long)]
    part_lb: Option<i64>,
    /// Largest box side for schemes 1 and 2.
    #[arg(long)]
    part_ub: Option<i64>,
    #[command(flatten)]
    objective: ObjectiveArgs,
}

#[derive(Args, Default)]
struct ObjectiveArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
}

impl ObjectiveArgs {
    fn apply(&self, o: &mut ObjectiveParams) {
        if let Some(v) = self.alpha {
            o.alpha = v;
        }
        if let Some(v) = self.beta {
            o.beta = v;
        }
        if let Some(v) = self.theta {
            o.theta = v;
        }
    }
}

#[derive(Args)]
struct SolverArgs {
    #[command(flatten)]
    objective: ObjectiveArgs,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    gamma: Option<i64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    micro_repeats: Option<u32>,
    #[arg(long)]
    sort_n: Option<u32>,
    #[arg(long)]
    sort_m: Option<u32>,
    #[arg(long)]
    cost_n: Option<f64>,
    #[arg(long)]
    cost_m: Option<f64>,
    #[arg(long)]
    cost_theta: Option<f64>,
    #[arg(long)]
    cost_lambda: Option<f64>,
}

impl SolverArgs {
    /// Config values, then the instance objective, then explicit flags.
    fn params(&self, cfg: &Config, objective: Option<ObjectiveParams>) -> Result<SolverParams> {
        let mut p = cfg.solver();
        if let Some(o) = objective {
            p.objective = o;
        }
        self.objective.apply(&mut p.objective);
        let s = &mut p.search;
        s.omega = self.omega.unwrap_or(s.omega);
        s.gamma = self.gamma.unwrap_or(s.gamma);
        s.seed = self.seed.unwrap_or(s.seed);
        s.micro_repeats = self.micro_repeats.unwrap_or(s.micro_repeats);
        p.sort.n = self.sort_n.unwrap_or(p.sort.n);
        p.sort.m = self.sort_m.unwrap_or(p.sort.m);
        p.cost.big_n = self.cost_n.unwrap_or(p.cost.big_n);
        p.cost.big_m = self.cost_m.unwrap_or(p.cost.big_m);
        p.cost.theta = self.cost_theta.unwrap_or(p.cost.theta);
        p.cost.lambda = self.cost_lambda.unwrap_or(p.cost.lambda);
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Solution file to write.
    #[arg(short, long)]
    out: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    /// Leave the time column empty.
    #[arg(long)]
    omit_timing: bool,
}

#[derive(Args)]
struct BatchArgs {
    /// Instance directories, one table column each.
    #[arg(required = true)]
    sets: Vec<PathBuf>,
    #[arg(short, long)]
    out: PathBuf,
    /// Ω values to run.
    #[arg(long, value_delimiter = ',', default_values_t = [75.0, 80.0, 85.0, 90.0, 95.0])]
    omega_grid: Vec<f64>,
    #[command(flatten)]
    solver: SolverArgs,
    /// Report times as NA so reruns give identical files.
    #[arg(long)]
    omit_timing: bool,
    /// Also write every solution under `<out>/solutions`.
    #[arg(long)]
    keep_solutions: bool,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_demand(s: &str) -> Result<DemandPoint, String> {
    let (v, w) = s.split_once(',').ok_or("expected V,W")?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("invalid volume `{v}`"))?;
    let w: f64 = w
        .trim()
        .parse()
        .map_err(|_| format!("invalid weight `{w}`"))?;
    DemandPoint::new(v, w).map_err(|e| e.to_string())
}

fn print_row(row: &RunRow) -> Result<()> {
    write_runs(io::stdout().lock(), std::slice::from_ref(row))
}

fn generate(cfg: &Config, a: &GenerateArgs) -> Result<ExitCode> {
    let demands = if a.source.builtin {
        commands::builtin_demands()
    } else {
        a.source
            .demand
            .iter()
            .enumerate()
            .map(|(k, d)| (format!("demand-{:03}", k + 1), *d))
            .collect()
    };
    let mut forge = cfg.forge;
    if let Some(s) = a.scheme {
        forge.scheme = Scheme::from_number(s)?;
    }
    forge.seed = a.seed.unwrap_or(forge.seed);
    forge.density = a.density.unwrap_or(forge.density);
    if a.part_lb.is_some() || a.part_ub.is_some() {
        let d = PartitionBounds::default();
        forge.bounds =
            PartitionBounds::uniform(a.part_lb.unwrap_or(d.x_lb), a.part_ub.unwrap_or(d.x_ub));
    }
    let mut objective = cfg.objective;
    a.objective.apply(&mut objective);
    objective.validate()?;
    let catalog = cfg.catalog();
    let paths = commands::generate(&GenerateRequest {
        demands: &demands,
        catalog: &catalog,
        objective,
        forge,
        out_dir: &a.out,
    })?;
    println!("wrote {} instances to {}", paths.len(), a.out.display());
    Ok(ExitCode::SUCCESS)
}

fn solve(cfg: &Config, a: &SolveArgs) -> Result<ExitCode> {
    let inst = commands::read_instance(&a.instance)?;
    let params = a.solver.params(cfg, Some(inst.objective))?;
    let r = commands::solve_file(&a.instance, &a.out, &params, !a.omit_timing)?;
    print_row(&r.row)?;
    Ok(ExitCode::SUCCESS)
}

fn validate(instance: &Path, solution: &Path) -> Result<ExitCode> {
    let a = commands::validate_files(instance, solution)?;
    if a.is_clean() {
        println!(
            "ok: {} TUs, {} boxes",
            a.tus.len(),
            a.tus.iter().map(|t| t.nbox()).sum::<usize>()
        );
        return Ok(ExitCode::SUCCESS);
    }
    for issue in &a.issues {
        println!("{issue}");
    }
    println!("{} violations", a.issues.len());
    Ok(ExitCode::from(1))
}

fn batch(cfg: &Config, a: &BatchArgs) -> Result<ExitCode> {
    if let Some(n) = a.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    if a.omega_grid.iter().any(|o| !o.is_finite()) {
        bail!("omega values must be finite");
    }
    let params = a.solver.params(cfg, None)?;
    let rows = commands::batch(&BatchRequest {
        sets: &a.sets,
        omegas: &a.omega_grid,
        params,
        timed: !a.omit_timing,
        out_dir: &a.out,
        keep_solutions: a.keep_solutions,
    })?;
    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    println!(
        "{} runs, {failed} failed; tables in {}",
        rows.len(),
        a.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = Config::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Generate(a) => generate(&cfg, a),
        Command::Solve(a) => solve(&cfg, a),
        Command::Validate { instance, solution } => validate(instance, solution),
        Command::Batch(a) => batch(&cfg, a),
        Command::Render {
            instance,
            solution,
            out,
        } => {
            let paths = commands::render_files(instance, solution, out)?;
            println!("wrote {} drawings to {}", paths.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare {
            instance,
            candidate,
            baseline,
        } => {
            commands::compare_files(instance, candidate, baseline)?.write(io::stdout().lock())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::LowerBound { demand, beta } => {
            let catalog = cfg.catalog();
            let lb = solve_lower_bound(demand, &catalog, beta.unwrap_or(cfg.objective.beta))?;
            for (t, c) in catalog.iter().zip(&lb.counts) {
                println!("{} {c}", t.id);
            }
            println!(
                "tus {} volume_l {} objective {}",
                lb.tu_count(),
                lb.volume_liters(&catalog),
                lb.objective
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Calibrate { lo, hi, step } => {
            if *step <= 0 || lo > hi {
                bail!("need step > 0 and lo <= hi");
            }
            let beta = cfg.objective.beta;
            let start = cfg.capacities.unwrap_or(DEFAULT_CAPACITIES);
            let r = calibrate_capacities(start, *lo, *hi, *step, beta);
            println!(
                "start {:?}: {} rows",
                start,
                matching_rows(&start, beta).len()
            );
            println!("capacities {:?}", r.capacities);
            println!("rows {} {:?}", r.rows.len(), r.rows);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
