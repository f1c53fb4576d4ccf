//! Rebuilding solutions from files and checking them against an instance.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use atucp_core::geometry::{
    validate_tu, BoxId, BoxSpec, Instance, LoadedTu, Orientation, OrientationCode, Placement,
    Solution, Violation,
};

use crate::format::SolutionFile;

/// A problem found in a solution file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    InstanceMismatch { expected: String, found: String },
    UnknownBox { box_id: u32 },
    DuplicateBox { box_id: u32 },
    MissingBox { box_id: u32 },
    Unplaced { box_id: u32 },
    UnknownType { tu: usize, tu_type: String },
    MixedTypes { tu: usize },
    EmptyTu { tu: usize },
    BadOrientation { box_id: u32, code: u8 },
    Tu { tu: usize, violation: Violation },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::InstanceMismatch { expected, found } => {
                write!(
                    f,
                    "instance: solution is for `{found}`, expected `{expected}`"
                )
            }
            Issue::UnknownBox { box_id } => write!(f, "partition: unknown box {box_id}"),
            Issue::DuplicateBox { box_id } => {
                write!(f, "partition: box {box_id} placed more than once")
            }
            Issue::MissingBox { box_id } => write!(f, "partition: box {box_id} missing"),
            Issue::Unplaced { box_id } => write!(f, "partition: box {box_id} left unplaced"),
            Issue::UnknownType { tu, tu_type } => write!(f, "tu {tu}: unknown type `{tu_type}`"),
            Issue::MixedTypes { tu } => write!(f, "tu {tu}: placements name different types"),
            Issue::EmptyTu { tu } => write!(f, "tu {tu}: no placements"),
            Issue::BadOrientation { box_id, code } => {
                write!(f, "box {box_id}: orientation code {code} out of range")
            }
            Issue::Tu { tu, violation } => write!(f, "tu {tu}: {violation}"),
        }
    }
}

/// The TUs that could be rebuilt plus every issue found.
#[derive(Debug, Clone)]
pub struct Assembled {
    pub tus: Vec<LoadedTu>,
    pub unplaced: Vec<BoxId>,
    pub issues: Vec<Issue>,
}

impl Assembled {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn into_solution(self, inst: &Instance) -> atucp_core::Result<Solution> {
        Solution::new(self.tus, self.unplaced, &inst.objective)
    }
}

/// Rebuilds the TUs of `file` over `inst`, then runs the per-TU feasibility
/// checks and the exact-partition check of box ids.
pub fn assemble(inst: &Instance, file: &SolutionFile) -> Assembled {
    let mut issues = Vec::new();
    if file.instance != inst.name {
        issues.push(Issue::InstanceMismatch {
            expected: inst.name.clone(),
            found: file.instance.clone(),
        });
    }
    let specs: BTreeMap<u32, &BoxSpec> = inst.boxes.iter().map(|b| (b.id.0, b)).collect();
    let mut seen = BTreeSet::new();
    let mut groups: BTreeMap<usize, (String, Vec<Placement>)> = BTreeMap::new();

    for rec in &file.placements {
        let entry = groups
            .entry(rec.tu)
            .or_insert_with(|| (rec.tu_type.clone(), Vec::new()));
        if entry.0 != rec.tu_type && !issues.contains(&Issue::MixedTypes { tu: rec.tu }) {
            issues.push(Issue::MixedTypes { tu: rec.tu });
        }
        if !seen.insert(rec.box_id) {
            issues.push(Issue::DuplicateBox { box_id: rec.box_id });
            continue;
        }
        let Some(&spec) = specs.get(&rec.box_id) else {
            issues.push(Issue::UnknownBox { box_id: rec.box_id });
            continue;
        };
        let Some(orientation) = Orientation::of(spec, OrientationCode(rec.orientation)) else {
            issues.push(Issue::BadOrientation {
                box_id: rec.box_id,
                code: rec.orientation,
            });
            continue;
        };
        entry
            .1
            .push(Placement::new(*spec, orientation, rec.x, rec.y, rec.z));
    }

    for &b in &file.unplaced {
        if !specs.contains_key(&b) {
            issues.push(Issue::UnknownBox { box_id: b });
        } else if !seen.insert(b) {
            issues.push(Issue::DuplicateBox { box_id: b });
        } else {
            issues.push(Issue::Unplaced { box_id: b });
        }
    }
    for id in specs.keys() {
        if !seen.contains(id) {
            issues.push(Issue::MissingBox { box_id: *id });
        }
    }

    let last = groups.keys().next_back().map_or(0, |&k| k + 1);
    let mut tus = Vec::new();
    for tu in 0..last {
        let Some((type_id, placements)) = groups.remove(&tu) else {
            issues.push(Issue::EmptyTu { tu });
            continue;
        };
        let Some(tut) = inst.find_type(&type_id) else {
            issues.push(Issue::UnknownType {
                tu,
                tu_type: type_id,
            });
            continue;
        };
        let loaded = LoadedTu::with_placements(tut.clone(), placements);
        issues.extend(
            validate_tu(&loaded)
                .into_iter()
                .map(|violation| Issue::Tu { tu, violation }),
        );
        tus.push(loaded);
    }
    Assembled {
        tus,
        unplaced: file.unplaced.iter().map(|&b| BoxId(b)).collect(),
        issues,
    }
}
