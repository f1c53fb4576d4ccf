//! Subcommand implementations, independent of argument parsing.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use atucp_core::forge::{generate_instance, table_demand, tables, DemandPoint, ForgeParams};
use atucp_core::geometry::{Instance, ObjectiveParams, Solution, TuType};
use atucp_core::search::{solve, SolveOutcome, SolverParams};
use rayon::prelude::*;

use crate::check::{assemble, Assembled};
use crate::format::{parse_instance, parse_solution, write_instance, write_solution, SolutionFile};
use crate::render::render_tu;
use crate::report::{
    metrics, summary_grid, write_runs, write_search_table, write_solution_table, Comparison,
    LsFigures, RunRow,
};

pub const INSTANCE_EXT: &str = "inst";
pub const REFERENCE_SUFFIX: &str = ".ref.sol";

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_solution(path: &Path) -> Result<SolutionFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_solution(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// The built-in demand table, named by zero-padded row number.
pub fn builtin_demands() -> Vec<(String, DemandPoint)> {
    (1..=tables::DEMANDS.len())
        .map(|i| (format!("{i:03}"), table_demand(i).expect("row in range")))
        .collect()
}

pub struct GenerateRequest<'a> {
    pub demands: &'a [(String, DemandPoint)],
    pub catalog: &'a [TuType],
    pub objective: ObjectiveParams,
    /// `seed` is the base seed; demand `k` uses `seed + k`.
    pub forge: ForgeParams,
    pub out_dir: &'a Path,
}

/// Writes `<name>.inst` and `<name>.ref.sol` per demand; returns the instance paths.
pub fn generate(req: &GenerateRequest) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for (k, (name, d)) in req.demands.iter().enumerate() {
        let fp = ForgeParams {
            seed: req.forge.seed.wrapping_add(k as u64),
            ..req.forge
        };
        let g = generate_instance(name, d, req.catalog, &req.objective, &fp)
            .with_context(|| format!("generating instance {name}"))?;
        let inst_path = req.out_dir.join(format!("{name}.{INSTANCE_EXT}"));
        write_file(&inst_path, &write_instance(&g.instance)?)?;
        let reference = SolutionFile::from_solution(name, &g.reference);
        write_file(
            &req.out_dir.join(format!("{name}{REFERENCE_SUFFIX}")),
            &write_solution(&reference),
        )?;
        paths.push(inst_path);
    }
    Ok(paths)
}

/// Instance files of `dir`, sorted by file name.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("listing {}", dir.display()))? {
        let p = entry?.path();
        if p.extension().is_some_and(|e| e == INSTANCE_EXT) {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Solves `inst` with its own objective weights replaced by `params.objective`.
pub fn run_instance(
    inst: &Instance,
    params: &SolverParams,
) -> atucp_core::Result<(Instance, SolveOutcome)> {
    let mut inst = inst.clone();
    inst.objective = params.objective;
    let out = solve(&inst, params)?;
    Ok((inst, out))
}

pub struct SolveResult {
    pub file: SolutionFile,
    pub row: RunRow,
}

/// Solves and reports one instance. `set` labels the report row.
pub fn solve_one(
    set: &str,
    inst: &Instance,
    params: &SolverParams,
    timed: bool,
) -> (Option<SolutionFile>, RunRow) {
    let start = Instant::now();
    let result = run_instance(inst, params).and_then(|(inst, out)| {
        let m = metrics(&inst, &out.solution)?;
        let ls = LsFigures::new(&out.stats, out.solution.tus.len());
        Ok((
            SolutionFile::from_solution(&inst.name, &out.solution),
            m,
            ls,
        ))
    });
    let time_s = timed.then(|| start.elapsed().as_secs_f64());
    let mut row = RunRow {
        set: set.to_string(),
        instance: inst.name.clone(),
        omega: params.search.omega,
        seed: params.search.seed,
        outcome: Err(String::new()),
        time_s,
    };
    match result {
        Ok((file, m, ls)) => {
            row.outcome = Ok((m, ls));
            (Some(file), row)
        }
        Err(e) => {
            row.outcome = Err(e.to_string());
            (None, row)
        }
    }
}

/// Solves the instance at `inst_path` and writes the solution to `out`.
pub fn solve_file(
    inst_path: &Path,
    out: &Path,
    params: &SolverParams,
    timed: bool,
) -> Result<SolveResult> {
    let inst = read_instance(inst_path)?;
    let (file, row) = solve_one("-", &inst, params, timed);
    let Some(file) = file else {
        let msg = row.outcome.as_ref().err().cloned().unwrap_or_default();
        bail!("solving {}: {msg}", inst_path.display());
    };
    write_file(out, &write_solution(&file))?;
    Ok(SolveResult { file, row })
}

pub fn validate_files(inst_path: &Path, sol_path: &Path) -> Result<Assembled> {
    let inst = read_instance(inst_path)?;
    let file = read_solution(sol_path)?;
    Ok(assemble(&inst, &file))
}

/// Rebuilds a solution and fails on any issue.
pub fn load_clean_solution(inst: &Instance, file: &SolutionFile) -> Result<Solution> {
    let a = assemble(inst, file);
    if !a.is_clean() {
        let list: Vec<String> = a.issues.iter().map(ToString::to_string).collect();
        bail!(
            "solution is not valid for instance {}:\n{}",
            inst.name,
            list.join("\n")
        );
    }
    Ok(a.into_solution(inst)?)
}

pub struct BatchRequest<'a> {
    /// Instance directories; each directory name labels a column of the tables.
    pub sets: &'a [PathBuf],
    pub omegas: &'a [f64],
    /// `search.seed` is the base seed; the `i`-th instance of a set uses `seed + i`.
    pub params: SolverParams,
    pub timed: bool,
    pub out_dir: &'a Path,
    pub keep_solutions: bool,
}

pub const RUNS_FILE: &str = "runs.csv";
pub const SOLUTION_TABLE_FILE: &str = "solutions.csv";
pub const SEARCH_TABLE_FILE: &str = "local_search.csv";

fn set_label(dir: &Path) -> String {
    dir.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| dir.display().to_string())
}

/// Runs every instance of every set at every Ω in parallel and writes the
/// per-run CSV plus the two summary tables to `out_dir`.
pub fn batch(req: &BatchRequest) -> Result<Vec<RunRow>> {
    let mut jobs = Vec::new();
    for dir in req.sets {
        let label = set_label(dir);
        for (i, path) in instance_files(dir)?.into_iter().enumerate() {
            let inst = read_instance(&path)?;
            for &omega in req.omegas {
                let mut p = req.params;
                p.search.omega = omega;
                p.search.seed = req.params.search.seed.wrapping_add(i as u64);
                jobs.push((label.clone(), inst.clone(), p));
            }
        }
    }
    let mut results: Vec<(Option<SolutionFile>, RunRow)> = jobs
        .par_iter()
        .map(|(label, inst, p)| solve_one(label, inst, p, req.timed))
        .collect();
    results.sort_by(|a, b| {
        (&a.1.set, a.1.omega, &a.1.instance)
            .partial_cmp(&(&b.1.set, b.1.omega, &b.1.instance))
            .expect("omega is finite")
    });

    fs::create_dir_all(req.out_dir)
        .with_context(|| format!("creating {}", req.out_dir.display()))?;
    if req.keep_solutions {
        for (file, row) in &results {
            if let Some(f) = file {
                let path = req
                    .out_dir
                    .join("solutions")
                    .join(&row.set)
                    .join(format!("omega-{}", row.omega))
                    .join(format!("{}.sol", row.instance));
                write_file(&path, &write_solution(f))?;
            }
        }
    }
    let rows: Vec<RunRow> = results.into_iter().map(|(_, r)| r).collect();
    let grid = summary_grid(&rows);
    let create = |name: &str| {
        let p = req.out_dir.join(name);
        fs::File::create(&p).with_context(|| format!("writing {}", p.display()))
    };
    write_runs(create(RUNS_FILE)?, &rows)?;
    write_solution_table(create(SOLUTION_TABLE_FILE)?, &grid)?;
    write_search_table(create(SEARCH_TABLE_FILE)?, &grid)?;
    Ok(rows)
}

/// Writes `<stem>-tu<i>.svg` for every TU of the solution; returns the paths.
pub fn render_files(inst_path: &Path, sol_path: &Path, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let inst = read_instance(inst_path)?;
    let file = read_solution(sol_path)?;
    let a = assemble(&inst, &file);
    let stem = sol_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "solution".into());
    let mut paths = Vec::new();
    for (i, tu) in a.tus.iter().enumerate() {
        let p = out_dir.join(format!("{stem}-tu{i}.svg"));
        write_file(&p, &render_tu(tu, i))?;
        paths.push(p);
    }
    Ok(paths)
}

/// Compares `candidate` against `baseline`; both must be valid solutions of the instance.
pub fn compare_files(inst_path: &Path, candidate: &Path, baseline: &Path) -> Result<Comparison> {
    let inst = read_instance(inst_path)?;
    let c = load_clean_solution(&inst, &read_solution(candidate)?)
        .with_context(|| format!("checking {}", candidate.display()))?;
    let b = load_clean_solution(&inst, &read_solution(baseline)?)
        .with_context(|| format!("checking {}", baseline.display()))?;
    Ok(Comparison {
        boxes: inst.boxes.len(),
        candidate: metrics(&inst, &c)?,
        baseline: metrics(&inst, &b)?,
    })
}
