//! Per-instance metrics and the batch summary tables.

use std::io::Write;

use anyhow::Result;
use atucp_core::forge::{solve_lower_bound, DemandPoint, LowerBound};
use atucp_core::geometry::{center_of_gravity, fill_rate, Instance, Solution};
use atucp_core::search::SearchStats;

/// Quality figures computed from an instance and a solution alone.
#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    pub boxes: usize,
    pub tus: usize,
    pub volume_l: f64,
    pub lb_tus: u32,
    pub lb_volume_l: f64,
    pub delta_volume_pct: f64,
    pub ci_xy: f64,
    pub ci_z: f64,
    pub max_fill: f64,
    pub min_fill: f64,
    /// The TU multiset equals the lower bound's.
    pub optimal: bool,
    pub fitness: f64,
}

/// The stored bound, or the covering bound of the boxes' total volume and weight.
pub fn lower_bound(inst: &Instance) -> atucp_core::Result<LowerBound> {
    if let Some(lb) = &inst.lower_bound {
        return Ok(lb.clone());
    }
    let d = DemandPoint {
        volume_m3: inst.total_box_volume_cm3() as f64 / 1e6,
        weight_kg: inst.boxes.iter().map(|b| b.weight).sum::<i64>() as f64,
    };
    solve_lower_bound(&d, &inst.catalog, inst.objective.beta)
}

pub fn metrics(inst: &Instance, sol: &Solution) -> atucp_core::Result<Metrics> {
    let lb = lower_bound(inst)?;
    let lb_volume_l = lb.volume_liters(&inst.catalog);
    let volume_l = sol.total_volume_liters();
    let delta_volume_pct = if lb_volume_l > 0.0 {
        (volume_l - lb_volume_l) / lb_volume_l * 100.0
    } else {
        0.0
    };
    let n = sol.tus.len();
    let (mut ci_xy, mut ci_z) = (0.0, 0.0);
    let (mut max_fill, mut min_fill) = (0.0f64, if n == 0 { 0.0 } else { f64::INFINITY });
    for tu in &sol.tus {
        let cg = center_of_gravity(tu)?;
        ci_xy += cg.mxy;
        ci_z += cg.mz;
        let f = fill_rate(tu);
        max_fill = max_fill.max(f);
        min_fill = min_fill.min(f);
    }
    if n > 0 {
        ci_xy /= n as f64;
        ci_z /= n as f64;
    }
    let counts: Vec<u32> = inst
        .catalog
        .iter()
        .map(|t| sol.tus.iter().filter(|tu| tu.tu_type.id == t.id).count() as u32)
        .collect();
    Ok(Metrics {
        boxes: sol.box_count(),
        tus: n,
        volume_l,
        lb_tus: lb.tu_count(),
        lb_volume_l,
        delta_volume_pct,
        ci_xy,
        ci_z,
        max_fill,
        min_fill,
        optimal: counts == lb.counts,
        fitness: sol.fitness,
    })
}

/// Local search counters of one run, as fitness percentages of the initial solution.
#[derive(Debug, Clone, PartialEq)]
pub struct LsFigures {
    pub ls1_accepted: u32,
    pub ls1_gain_pct: f64,
    pub ls2_accepted: u32,
    pub ls2_gain_pct: f64,
    pub initial_tus: usize,
    pub tu_reduction_pct: f64,
}

impl LsFigures {
    pub fn new(stats: &SearchStats, final_tus: usize) -> Self {
        let pct = |g: f64| {
            if stats.initial_fitness > 0.0 {
                g / stats.initial_fitness * 100.0
            } else {
                0.0
            }
        };
        let tu_reduction_pct = if stats.initial_tus > 0 {
            (stats.initial_tus as f64 - final_tus as f64) / stats.initial_tus as f64 * 100.0
        } else {
            0.0
        };
        Self {
            ls1_accepted: stats.ls1_accepted(),
            ls1_gain_pct: pct(stats.ls1_gain),
            ls2_accepted: stats.ls2_accepted,
            ls2_gain_pct: pct(stats.ls2_gain),
            initial_tus: stats.initial_tus,
            tu_reduction_pct,
        }
    }
}

/// One solver run inside a batch.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub set: String,
    pub instance: String,
    pub omega: f64,
    pub seed: u64,
    pub outcome: std::result::Result<(Metrics, LsFigures), String>,
    /// Wall-clock seconds; `None` when timing is omitted.
    pub time_s: Option<f64>,
}

pub const RUN_HEADER: [&str; 24] = [
    "set",
    "instance",
    "omega",
    "seed",
    "status",
    "boxes",
    "tus",
    "lb_tus",
    "volume_l",
    "lb_volume_l",
    "delta_volume_pct",
    "ci_xy",
    "ci_z",
    "time_s",
    "max_fill_pct",
    "min_fill_pct",
    "optimal",
    "fitness",
    "initial_tus",
    "ls1_improvements",
    "ls1_gain_pct",
    "ls2_improvements",
    "ls2_gain_pct",
    "tu_reduction_pct",
];

fn f2(v: f64) -> String {
    format!("{v:.2}")
}

fn f4(v: f64) -> String {
    format!("{v:.4}")
}

fn time_cell(t: Option<f64>) -> String {
    t.map_or_else(|| "NA".to_string(), f2)
}

impl RunRow {
    pub fn record(&self) -> Vec<String> {
        let mut r = vec![
            self.set.clone(),
            self.instance.clone(),
            format!("{}", self.omega),
            self.seed.to_string(),
        ];
        match &self.outcome {
            Ok((m, ls)) => r.extend([
                "ok".to_string(),
                m.boxes.to_string(),
                m.tus.to_string(),
                m.lb_tus.to_string(),
                f2(m.volume_l),
                f2(m.lb_volume_l),
                f4(m.delta_volume_pct),
                f4(m.ci_xy),
                f4(m.ci_z),
                time_cell(self.time_s),
                f4(m.max_fill),
                f4(m.min_fill),
                (m.optimal as u8).to_string(),
                f4(m.fitness),
                ls.initial_tus.to_string(),
                ls.ls1_accepted.to_string(),
                f4(ls.ls1_gain_pct),
                ls.ls2_accepted.to_string(),
                f4(ls.ls2_gain_pct),
                f4(ls.tu_reduction_pct),
            ]),
            Err(e) => {
                r.push(format!("error: {e}"));
                r.extend(std::iter::repeat_n(String::new(), RUN_HEADER.len() - 5));
            }
        }
        r
    }
}

/// Averages of one set at one Ω, computed from successful rows only.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub runs: usize,
    pub failed: usize,
    pub tus: f64,
    pub delta_volume_pct: f64,
    pub ci_xy: f64,
    pub ci_z: f64,
    pub time_s: Option<f64>,
    pub optima: usize,
    pub max_fill: f64,
    pub min_fill: f64,
    pub ls1_improved: usize,
    pub ls1_avg_pct: f64,
    pub ls1_max_pct: f64,
    pub ls2_improved: usize,
    pub ls2_avg_pct: f64,
    pub ls2_max_pct: f64,
    pub tu_reduction_avg_pct: f64,
    pub tu_reduction_max_pct: f64,
}

fn mean(v: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = v.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        s / n as f64
    }
}

fn max(v: impl Iterator<Item = f64>) -> f64 {
    v.fold(0.0, f64::max)
}

pub fn summarize(rows: &[&RunRow]) -> Summary {
    let ok: Vec<(&Metrics, &LsFigures, Option<f64>)> = rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(|(m, l)| (m, l, r.time_s)))
        .collect();
    let ls1: Vec<f64> = ok
        .iter()
        .filter(|o| o.1.ls1_accepted > 0)
        .map(|o| o.1.ls1_gain_pct)
        .collect();
    let ls2: Vec<f64> = ok
        .iter()
        .filter(|o| o.1.ls2_accepted > 0)
        .map(|o| o.1.ls2_gain_pct)
        .collect();
    let timed = !ok.is_empty() && ok.iter().all(|o| o.2.is_some());
    Summary {
        runs: rows.len(),
        failed: rows.len() - ok.len(),
        tus: mean(ok.iter().map(|o| o.0.tus as f64)),
        delta_volume_pct: mean(ok.iter().map(|o| o.0.delta_volume_pct)),
        ci_xy: mean(ok.iter().map(|o| o.0.ci_xy)),
        ci_z: mean(ok.iter().map(|o| o.0.ci_z)),
        time_s: timed.then(|| mean(ok.iter().filter_map(|o| o.2))),
        optima: ok.iter().filter(|o| o.0.optimal).count(),
        max_fill: mean(ok.iter().map(|o| o.0.max_fill)),
        min_fill: mean(ok.iter().map(|o| o.0.min_fill)),
        ls1_improved: ls1.len(),
        ls1_avg_pct: mean(ls1.iter().copied()),
        ls1_max_pct: max(ls1.iter().copied()),
        ls2_improved: ls2.len(),
        ls2_avg_pct: mean(ls2.iter().copied()),
        ls2_max_pct: max(ls2.iter().copied()),
        tu_reduction_avg_pct: mean(ok.iter().map(|o| o.1.tu_reduction_pct)),
        tu_reduction_max_pct: max(ok.iter().map(|o| o.1.tu_reduction_pct)),
    }
}

type StatRow = (&'static str, fn(&Summary) -> String);

const SOLUTION_STATS: [StatRow; 8] = [
    ("N° TU", |s| f2(s.tus)),
    ("Δ Volume %", |s| f2(s.delta_volume_pct)),
    ("CI^xy", |s| format!("{:.3}", s.ci_xy)),
    ("CI^z", |s| format!("{:.3}", s.ci_z)),
    ("Sol. Time (s)", |s| time_cell(s.time_s)),
    ("N° Opt", |s| s.optima.to_string()),
    ("MAX %", |s| f2(s.max_fill)),
    ("MIN %", |s| f2(s.min_fill)),
];

const SEARCH_STATS: [StatRow; 8] = [
    ("N° Improvements LS1", |s| s.ls1_improved.to_string()),
    ("Avg. Improvement LS1 %", |s| f2(s.ls1_avg_pct)),
    ("MAX improvement LS1 %", |s| f2(s.ls1_max_pct)),
    ("N° Improvements LS2", |s| s.ls2_improved.to_string()),
    ("Avg. Improvement LS2 %", |s| f2(s.ls2_avg_pct)),
    ("MAX improvement LS2 %", |s| f2(s.ls2_max_pct)),
    ("Avg TU's Reduction %", |s| f2(s.tu_reduction_avg_pct)),
    ("MAX TU's reduction %", |s| f2(s.tu_reduction_max_pct)),
];

/// Summaries keyed by Ω (outer) and set label (inner), in output order.
pub type SummaryGrid = Vec<(f64, Vec<(String, Summary)>)>;

pub fn summary_grid(rows: &[RunRow]) -> SummaryGrid {
    let mut omegas: Vec<f64> = rows.iter().map(|r| r.omega).collect();
    omegas.sort_by(f64::total_cmp);
    omegas.dedup();
    let mut sets: Vec<&str> = rows.iter().map(|r| r.set.as_str()).collect();
    sets.sort();
    sets.dedup();
    omegas
        .into_iter()
        .map(|o| {
            let per_set = sets
                .iter()
                .map(|&s| {
                    let sel: Vec<&RunRow> =
                        rows.iter().filter(|r| r.omega == o && r.set == s).collect();
                    (s.to_string(), summarize(&sel))
                })
                .collect();
            (o, per_set)
        })
        .collect()
}

fn write_stats<W: Write>(out: W, grid: &SummaryGrid, stats: &[StatRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["Omega".to_string(), "Stat".to_string()];
    if let Some((_, sets)) = grid.first() {
        header.extend(sets.iter().map(|(s, _)| s.clone()));
    }
    w.write_record(&header)?;
    for (omega, sets) in grid {
        for (label, f) in stats {
            let mut rec = vec![format!("{omega}"), label.to_string()];
            rec.extend(sets.iter().map(|(_, s)| f(s)));
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Solution quality table: one block of rows per Ω, one column per set.
pub fn write_solution_table<W: Write>(out: W, grid: &SummaryGrid) -> Result<()> {
    write_stats(out, grid, &SOLUTION_STATS)
}

/// Local search table in the same layout.
pub fn write_search_table<W: Write>(out: W, grid: &SummaryGrid) -> Result<()> {
    write_stats(out, grid, &SEARCH_STATS)
}

pub fn write_runs<W: Write>(out: W, rows: &[RunRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RUN_HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

/// Side-by-side figures of a candidate solution and a baseline of the same instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub boxes: usize,
    pub candidate: Metrics,
    pub baseline: Metrics,
}

impl Comparison {
    /// Candidate volume relative to the baseline, in percent.
    pub fn volume_delta_pct(&self) -> f64 {
        if self.baseline.volume_l > 0.0 {
            (self.candidate.volume_l - self.baseline.volume_l) / self.baseline.volume_l * 100.0
        } else {
            0.0
        }
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "N boxes",
            "TU op",
            "TU",
            "Vol Δ (%)",
            "CI^xy",
            "CI^xy Op.",
            "CI^z",
            "CI^z Op.",
            "Vol (L)",
            "Vol Op. (L)",
        ])?;
        let (c, b) = (&self.candidate, &self.baseline);
        w.write_record([
            self.boxes.to_string(),
            b.tus.to_string(),
            c.tus.to_string(),
            f2(self.volume_delta_pct()),
            f4(c.ci_xy),
            f4(b.ci_xy),
            f4(c.ci_z),
            f4(b.ci_z),
            f2(c.volume_l),
            f2(b.volume_l),
        ])?;
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(set: &str, omega: f64, tus: usize, optimal: bool, ls2: u32) -> RunRow {
        let m = Metrics {
            boxes: 10,
            tus,
            volume_l: 1000.0 * tus as f64,
            lb_tus: 1,
            lb_volume_l: 1000.0,
            delta_volume_pct: (tus as f64 - 1.0) * 100.0,
            ci_xy: 0.1,
            ci_z: 0.5,
            max_fill: 90.0,
            min_fill: 80.0,
            optimal,
            fitness: 1.0,
        };
        let ls = LsFigures {
            ls1_accepted: 0,
            ls1_gain_pct: 0.0,
            ls2_accepted: ls2,
            ls2_gain_pct: if ls2 > 0 { 10.0 } else { 0.0 },
            initial_tus: 2,
            tu_reduction_pct: (2.0 - tus as f64) / 2.0 * 100.0,
        };
        RunRow {
            set: set.into(),
            instance: "x".into(),
            omega,
            seed: 0,
            outcome: Ok((m, ls)),
            time_s: None,
        }
    }

    #[test]
    fn single_row_summary_equals_the_row() {
        let r = row("a", 95.0, 2, false, 0);
        let s = summarize(&[&r]);
        assert_eq!(s.tus, 2.0);
        assert_eq!(s.delta_volume_pct, 100.0);
        assert_eq!(s.ci_xy, 0.1);
        assert_eq!(s.max_fill, 90.0);
        assert_eq!(s.optima, 0);
        assert_eq!(s.time_s, None);
    }

    #[test]
    fn improvement_averages_cover_improving_runs_only() {
        let rows = [row("a", 95.0, 1, true, 1), row("a", 95.0, 2, false, 0)];
        let s = summarize(&rows.iter().collect::<Vec<_>>());
        assert_eq!(s.ls2_improved, 1);
        assert_eq!(s.ls2_avg_pct, 10.0);
        assert_eq!(s.tu_reduction_avg_pct, 25.0);
        assert_eq!(s.tu_reduction_max_pct, 50.0);
        assert_eq!(s.optima, 1);
    }

    #[test]
    fn failed_rows_are_counted_but_not_averaged() {
        let mut bad = row("a", 95.0, 5, false, 0);
        bad.outcome = Err("box 3 does not fit".into());
        let good = row("a", 95.0, 1, true, 0);
        let s = summarize(&[&bad, &good]);
        assert_eq!((s.runs, s.failed, s.tus), (2, 1, 1.0));
        assert_eq!(bad.record().len(), RUN_HEADER.len());
    }

    #[test]
    fn tables_have_one_block_per_omega() {
        let rows = vec![
            row("b", 95.0, 1, true, 0),
            row("a", 75.0, 2, false, 0),
            row("a", 95.0, 2, false, 0),
        ];
        let grid = summary_grid(&rows);
        let mut buf = Vec::new();
        write_solution_table(&mut buf, &grid).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "Omega,Stat,a,b");
        assert_eq!(lines.len(), 1 + 2 * 8);
        assert_eq!(lines[1], "75,N° TU,2.00,0.00");
        assert_eq!(lines[9], "95,N° TU,2.00,1.00");
    }
}
