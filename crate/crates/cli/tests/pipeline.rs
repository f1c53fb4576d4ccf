use std::fs;
use std::path::Path;
use std::process::Command;

use atucp_cli::check::{assemble, Issue};
use atucp_cli::commands::{self, BatchRequest, GenerateRequest};
use atucp_cli::format::{
    parse_solution, write_instance, write_solution, PlacementRecord, SolutionFile,
};
use atucp_core::forge::{default_catalog, table_demand, DemandPoint, ForgeParams, Scheme};
use atucp_core::geometry::{BoxId, BoxSpec, Instance, ObjectiveParams, TuType, Violation};
use atucp_core::search::SolverParams;

fn atucp(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_atucp"))
        .args(args)
        .env_remove("ATUCP_CONFIG")
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate_rows(dir: &Path, rows: &[usize], scheme: Scheme) {
    let demands: Vec<_> = rows
        .iter()
        .map(|&i| (format!("{i:03}"), table_demand(i).unwrap()))
        .collect();
    commands::generate(&GenerateRequest {
        demands: &demands,
        catalog: &default_catalog(),
        objective: ObjectiveParams::default(),
        forge: ForgeParams {
            scheme,
            seed: 1,
            ..ForgeParams::default()
        },
        out_dir: dir,
    })
    .unwrap();
}

#[test]
fn generate_is_idempotent_and_handles_empty_demand() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = atucp(&[
            "generate",
            "--demand",
            "3,400",
            "--demand",
            "0,0",
            "--scheme",
            "2",
            "--seed",
            "4",
            "-o",
            s(d.path()),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    for f in [
        "demand-001.inst",
        "demand-001.ref.sol",
        "demand-002.inst",
        "demand-002.ref.sol",
    ] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
    let empty = commands::read_instance(&a.path().join("demand-002.inst")).unwrap();
    assert!(empty.boxes.is_empty());
}

#[test]
fn builtin_generation_writes_every_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = atucp(&[
        "generate",
        "--builtin",
        "--scheme",
        "3",
        "--seed",
        "1",
        "-o",
        s(dir.path()),
    ]);
    assert!(out.status.success());
    assert_eq!(commands::instance_files(dir.path()).unwrap().len(), 100);
}

#[test]
fn solve_validate_render_compare() {
    let dir = tempfile::tempdir().unwrap();
    generate_rows(dir.path(), &[59], Scheme::Perfect);
    let inst = dir.path().join("059.inst");
    let sol = dir.path().join("059.sol");
    let out = atucp(&[
        "solve",
        s(&inst),
        "-o",
        s(&sol),
        "--omega",
        "95",
        "--omit-timing",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = report.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[4], "ok");
    assert_eq!(row[6], "1");
    assert_eq!(row[10], "0.0000");

    let file = commands::read_solution(&sol).unwrap();
    assert!(file.placements.iter().all(|p| p.tu_type == "120x80x130"));
    assert!(atucp(&["validate", s(&inst), s(&sol)]).status.success());

    let svg_dir = dir.path().join("svg");
    assert!(atucp(&["render", s(&inst), s(&sol), "-o", s(&svg_dir)])
        .status
        .success());
    let svg = fs::read_to_string(svg_dir.join("059-tu0.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="box""#).count(), 3 * 12);

    let out = atucp(&[
        "compare",
        s(&inst),
        s(&sol),
        s(&dir.path().join("059.ref.sol")),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let cells: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&cells[..4], ["12", "1", "1", "0.00"]);
}

#[test]
fn corrupted_solutions_fail_validation() {
    let dir = tempfile::tempdir().unwrap();
    generate_rows(dir.path(), &[27], Scheme::Perfect);
    let inst = dir.path().join("027.inst");
    let good = commands::read_solution(&dir.path().join("027.ref.sol")).unwrap();

    let mut shifted = good.clone();
    let (a, b) = (shifted.placements[0].clone(), shifted.placements[1].clone());
    shifted.placements[1].x = a.x;
    shifted.placements[1].y = a.y;
    shifted.placements[1].z = a.z;
    let bad = dir.path().join("shifted.sol");
    fs::write(&bad, write_solution(&shifted)).unwrap();
    let out = atucp(&["validate", s(&inst), s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains(&format!("tu 0: overlap a={} b={}", a.box_id, b.box_id)),
        "{text}"
    );

    let mut missing = good.clone();
    let gone = missing.placements.pop().unwrap();
    fs::write(&bad, write_solution(&missing)).unwrap();
    let out = atucp(&["validate", s(&inst), s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains(&format!("box {} missing", gone.box_id)));
}

#[test]
fn overlapping_pair_from_the_insertion_example_is_reported() {
    let cat = vec![TuType::from_dims(120, 80, 130, 1000).unwrap()];
    let boxes = vec![
        BoxSpec::new(2, 40, 40, 40, 1),
        BoxSpec::new(3, 60, 60, 20, 1),
    ];
    let inst = Instance::new("pair", cat, boxes);
    let place = |box_id, x, y, z| PlacementRecord {
        tu: 0,
        tu_type: "120x80x130".into(),
        box_id,
        orientation: 0,
        x,
        y,
        z,
    };
    let file = SolutionFile {
        instance: "pair".into(),
        placements: vec![place(2, 15, 30, 0), place(3, 0, 0, 30)],
        unplaced: vec![],
    };
    let a = assemble(&inst, &file);
    assert_eq!(
        a.issues,
        vec![Issue::Tu {
            tu: 0,
            violation: Violation::Overlap {
                a: BoxId(2),
                b: BoxId(3)
            }
        }]
    );
}

#[test]
fn compare_reports_the_two_pallet_volumes() {
    let dir = tempfile::tempdir().unwrap();
    let cat = vec![
        TuType::from_dims(120, 80, 290, 1000).unwrap(),
        TuType::from_dims(120, 80, 160, 1000).unwrap(),
    ];
    let boxes: Vec<BoxSpec> = (0..12).map(|i| BoxSpec::new(i, 60, 40, 60, 1)).collect();
    let inst = Instance::new("twelve", cat, boxes);
    let inst_path = dir.path().join("twelve.inst");
    fs::write(&inst_path, write_instance(&inst).unwrap()).unwrap();
    // 4 boxes per layer: (0,0) (60,0) (0,40) (60,40)
    let layout = |split: bool| SolutionFile {
        instance: "twelve".into(),
        placements: (0..12u32)
            .map(|i| {
                let layer = i64::from(i / 4);
                let (tu, ty, z) = if split && layer == 2 {
                    (1, "120x80x160", 0)
                } else {
                    (
                        0,
                        if split { "120x80x160" } else { "120x80x290" },
                        layer * 60,
                    )
                };
                PlacementRecord {
                    tu,
                    tu_type: ty.into(),
                    box_id: i,
                    orientation: 0,
                    x: i64::from(i % 2) * 60,
                    y: i64::from(i / 2 % 2) * 40,
                    z,
                }
            })
            .collect(),
        unplaced: vec![],
    };
    let tall = dir.path().join("tall.sol");
    let short = dir.path().join("short.sol");
    fs::write(&tall, write_solution(&layout(false))).unwrap();
    fs::write(&short, write_solution(&layout(true))).unwrap();
    let c = commands::compare_files(&inst_path, &tall, &short).unwrap();
    assert_eq!(c.candidate.volume_l, 2784.0);
    assert_eq!(c.baseline.volume_l, 3072.0);
    assert_eq!((c.candidate.tus, c.baseline.tus), (1, 2));
    let out = atucp(&["compare", s(&inst_path), s(&tall), s(&tall)]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("12,1,1,0.00,"));

    let mut other = inst.clone();
    other.name = "other".into();
    let other_path = dir.path().join("other.inst");
    fs::write(&other_path, write_instance(&other).unwrap()).unwrap();
    assert_eq!(
        atucp(&["compare", s(&other_path), s(&tall), s(&short)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn unpackable_box_exits_with_its_id() {
    let dir = tempfile::tempdir().unwrap();
    let cat = vec![TuType::from_dims(50, 50, 50, 100).unwrap()];
    let inst = Instance::new(
        "big",
        cat,
        vec![
            BoxSpec::new(0, 10, 10, 10, 1),
            BoxSpec::new(41, 60, 60, 60, 1),
        ],
    );
    let p = dir.path().join("big.inst");
    fs::write(&p, write_instance(&inst).unwrap()).unwrap();
    let out = atucp(&["solve", s(&p), "-o", s(&dir.path().join("big.sol"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("box 41"));
}

#[test]
fn empty_instance_solves_to_empty_solution() {
    let dir = tempfile::tempdir().unwrap();
    let d = [("empty".to_string(), DemandPoint::new(0.0, 0.0).unwrap())];
    commands::generate(&GenerateRequest {
        demands: &d,
        catalog: &default_catalog(),
        objective: ObjectiveParams::default(),
        forge: ForgeParams::default(),
        out_dir: dir.path(),
    })
    .unwrap();
    let sol = dir.path().join("empty.sol");
    let r = commands::solve_file(
        &dir.path().join("empty.inst"),
        &sol,
        &SolverParams::default(),
        false,
    )
    .unwrap();
    assert!(r.file.placements.is_empty());
    let (m, _) = r.row.outcome.unwrap();
    assert_eq!((m.tus, m.fitness), (0, 0.0));
    assert!(parse_solution(&fs::read_to_string(&sol).unwrap())
        .unwrap()
        .placements
        .is_empty());
    let svg = dir.path().join("svg");
    assert!(
        commands::render_files(&dir.path().join("empty.inst"), &sol, &svg)
            .unwrap()
            .is_empty()
    );
}

#[test]
fn batch_tables_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("A3");
    generate_rows(&set, &[27, 59, 73], Scheme::Perfect);
    let sets = vec![set.clone()];
    let run = |out: &Path| {
        commands::batch(&BatchRequest {
            sets: &sets,
            omegas: &[75.0, 95.0],
            params: SolverParams::default(),
            timed: false,
            out_dir: out,
            keep_solutions: true,
        })
        .unwrap()
    };
    let (o1, o2) = (dir.path().join("r1"), dir.path().join("r2"));
    let rows = run(&o1);
    run(&o2);
    assert_eq!(rows.len(), 6);
    for f in [
        commands::RUNS_FILE,
        commands::SOLUTION_TABLE_FILE,
        commands::SEARCH_TABLE_FILE,
    ] {
        assert_eq!(
            fs::read(o1.join(f)).unwrap(),
            fs::read(o2.join(f)).unwrap(),
            "{f}"
        );
    }
    let table = fs::read_to_string(o1.join(commands::SOLUTION_TABLE_FILE)).unwrap();
    assert!(table.starts_with("Omega,Stat,A3\n75,N° TU,"));
    assert!(o1.join("solutions/A3/omega-95/059.sol").exists());

    // a single-instance batch reports that instance's own figures
    let single = dir.path().join("one");
    generate_rows(&single, &[59], Scheme::Perfect);
    let out = atucp(&[
        "batch",
        s(&single),
        "-o",
        s(&dir.path().join("r3")),
        "--omega-grid",
        "95",
        "--omit-timing",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let table =
        fs::read_to_string(dir.path().join("r3").join(commands::SOLUTION_TABLE_FILE)).unwrap();
    assert!(
        table.contains("95,N° TU,1.00\n95,Δ Volume %,0.00\n"),
        "{table}"
    );
    assert!(
        table.contains("95,Sol. Time (s),NA\n95,N° Opt,1\n"),
        "{table}"
    );
}

#[test]
fn config_file_is_read_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("atucp.toml");
    fs::write(&cfg, "capacities = [10, 10, 10, 10, 10, 10]\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_atucp"))
        .args(["lower-bound", "--demand", "1,35"])
        .env("ATUCP_CONFIG", &cfg)
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tus 4 "), "{text}");
    fs::write(&cfg, "bogus = 1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_atucp"))
        .args(["lower-bound", "--demand", "1,35"])
        .env("ATUCP_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
