//! Line-based text formats for instances and solutions.
//!
//! Every non-blank line starts with a keyword followed by `key=value` fields
//! separated by single spaces. Lines starting with `#` are comments.
//!
//! Instance:
//!
//! ```text
//! atucp-instance 1
//! name 59
//! objective alpha=1 theta=100 beta=100
//! type id=120x80x130 x=120 y=80 z=130 q=1000
//! lower-bound objective=1348 counts=1,0,0,0,0,0
//! box id=0 w=40 l=40 h=65 kg=11 txz=0 tyz=0 stack=1
//! ```
//!
//! Solution:
//!
//! ```text
//! atucp-solution 1
//! instance 59
//! place tu=0 type=120x80x130 box=0 o=0 x=0 y=0 z=0
//! unplaced box=7
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use atucp_core::forge::LowerBound;
use atucp_core::geometry::{BoxSpec, Instance, ObjectiveParams, Solution, TuType};
use thiserror::Error;

pub const INSTANCE_MAGIC: &str = "atucp-instance 1";
pub const SOLUTION_MAGIC: &str = "atucp-solution 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

struct Fields<'a> {
    line: usize,
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Fields<'a> {
    fn parse(line: usize, rest: &'a str) -> Result<Self, ParseError> {
        let mut map = BTreeMap::new();
        for tok in rest.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| err(line, format!("expected key=value, got `{tok}`")))?;
            if map.insert(k, v).is_some() {
                return Err(err(line, format!("duplicate field `{k}`")));
            }
        }
        Ok(Self { line, map })
    }

    fn raw(&mut self, key: &str) -> Result<&'a str, ParseError> {
        self.map
            .remove(key)
            .ok_or_else(|| err(self.line, format!("missing field `{key}`")))
    }

    fn get<T: FromStr>(&mut self, key: &str) -> Result<T, ParseError> {
        let v = self.raw(key)?;
        v.parse()
            .map_err(|_| err(self.line, format!("invalid value `{v}` for `{key}`")))
    }

    fn flag(&mut self, key: &str) -> Result<bool, ParseError> {
        match self.raw(key)? {
            "0" => Ok(false),
            "1" => Ok(true),
            v => Err(err(
                self.line,
                format!("flag `{key}` must be 0 or 1, got `{v}`"),
            )),
        }
    }

    fn finish(self) -> Result<(), ParseError> {
        match self.map.keys().next() {
            Some(k) => Err(err(self.line, format!("unknown field `{k}`"))),
            None => Ok(()),
        }
    }
}

/// Yields `(line number, keyword, rest)` for every content line and checks the magic header.
fn records<'a>(text: &'a str, magic: &str) -> Result<Vec<(usize, &'a str, &'a str)>, ParseError> {
    let mut out = Vec::new();
    let mut seen_magic = false;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_magic {
            if line != magic {
                return Err(err(n, format!("expected header `{magic}`")));
            }
            seen_magic = true;
            continue;
        }
        let (kw, rest) = line.split_once(' ').unwrap_or((line, ""));
        out.push((n, kw, rest.trim()));
    }
    if !seen_magic {
        return Err(err(0, format!("missing header `{magic}`")));
    }
    Ok(out)
}

fn bit(b: bool) -> u8 {
    b as u8
}

fn check_token(what: &str, s: &str) -> Result<(), ParseError> {
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '=') {
        return Err(err(
            0,
            format!("{what} `{s}` must be non-empty without spaces or `=`"),
        ));
    }
    Ok(())
}

pub fn write_instance(inst: &Instance) -> Result<String, ParseError> {
    if inst.name.trim() != inst.name || inst.name.is_empty() || inst.name.contains('\n') {
        return Err(err(
            0,
            format!("instance name `{}` cannot be written", inst.name),
        ));
    }
    let mut s = String::new();
    let o = &inst.objective;
    writeln!(s, "{INSTANCE_MAGIC}").unwrap();
    writeln!(s, "name {}", inst.name).unwrap();
    writeln!(
        s,
        "objective alpha={} theta={} beta={}",
        o.alpha, o.theta, o.beta
    )
    .unwrap();
    for t in &inst.catalog {
        check_token("type id", &t.id)?;
        writeln!(
            s,
            "type id={} x={} y={} z={} q={}",
            t.id, t.x, t.y, t.z, t.capacity
        )
        .unwrap();
    }
    if let Some(lb) = &inst.lower_bound {
        let counts: Vec<String> = lb.counts.iter().map(u32::to_string).collect();
        writeln!(
            s,
            "lower-bound objective={} counts={}",
            lb.objective,
            counts.join(",")
        )
        .unwrap();
    }
    for b in &inst.boxes {
        writeln!(
            s,
            "box id={} w={} l={} h={} kg={} txz={} tyz={} stack={}",
            b.id.0,
            b.width,
            b.length,
            b.height,
            b.weight,
            bit(b.txz),
            bit(b.tyz),
            bit(b.stackable)
        )
        .unwrap();
    }
    Ok(s)
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut name = None;
    let mut objective = None;
    let mut catalog = Vec::new();
    let mut boxes = Vec::new();
    let mut lower_bound = None;
    for (n, kw, rest) in records(text, INSTANCE_MAGIC)? {
        match kw {
            "name" if name.is_none() => name = Some(rest.to_string()),
            "objective" if objective.is_none() => {
                let mut f = Fields::parse(n, rest)?;
                objective = Some(ObjectiveParams {
                    alpha: f.get("alpha")?,
                    theta: f.get("theta")?,
                    beta: f.get("beta")?,
                });
                f.finish()?;
            }
            "type" => {
                let mut f = Fields::parse(n, rest)?;
                let t = TuType::new(
                    f.raw("id")?,
                    f.get("x")?,
                    f.get("y")?,
                    f.get("z")?,
                    f.get("q")?,
                )
                .map_err(|e| err(n, e.to_string()))?;
                f.finish()?;
                catalog.push(t);
            }
            "lower-bound" if lower_bound.is_none() => {
                let mut f = Fields::parse(n, rest)?;
                let objective = f.get("objective")?;
                let counts = f
                    .raw("counts")?
                    .split(',')
                    .map(|c| {
                        c.parse::<u32>()
                            .map_err(|_| err(n, format!("invalid count `{c}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                f.finish()?;
                lower_bound = Some((n, LowerBound { counts, objective }));
            }
            "box" => {
                let mut f = Fields::parse(n, rest)?;
                let b = BoxSpec::new(
                    f.get("id")?,
                    f.get("w")?,
                    f.get("l")?,
                    f.get("h")?,
                    f.get("kg")?,
                )
                .with_rotation(f.flag("txz")?, f.flag("tyz")?)
                .with_stackable(f.flag("stack")?);
                f.finish()?;
                boxes.push(b);
            }
            _ => return Err(err(n, format!("unexpected record `{kw}`"))),
        }
    }
    if let Some((n, lb)) = &lower_bound {
        if lb.counts.len() != catalog.len() {
            return Err(err(*n, "lower-bound counts do not match the catalog size"));
        }
    }
    let mut inst = Instance::new(
        name.ok_or_else(|| err(0, "missing `name`"))?,
        catalog,
        boxes,
    );
    inst.objective = objective.ok_or_else(|| err(0, "missing `objective`"))?;
    inst.lower_bound = lower_bound.map(|(_, lb)| lb);
    inst.validate().map_err(|e| err(0, e.to_string()))?;
    Ok(inst)
}

/// One placed box as stored in a solution file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacementRecord {
    pub tu: usize,
    pub tu_type: String,
    pub box_id: u32,
    pub orientation: u8,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

/// A solution file: placements in TU order plus unplaced boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub instance: String,
    pub placements: Vec<PlacementRecord>,
    pub unplaced: Vec<u32>,
}

impl SolutionFile {
    pub fn from_solution(instance: &str, sol: &Solution) -> Self {
        let placements = sol
            .tus
            .iter()
            .enumerate()
            .flat_map(|(i, tu)| {
                tu.placements.iter().map(move |p| PlacementRecord {
                    tu: i,
                    tu_type: tu.tu_type.id.clone(),
                    box_id: p.box_id().0,
                    orientation: p.orientation.code.0,
                    x: p.x,
                    y: p.y,
                    z: p.z,
                })
            })
            .collect();
        Self {
            instance: instance.to_string(),
            placements,
            unplaced: sol.unplaced.iter().map(|b| b.0).collect(),
        }
    }

    pub fn tu_count(&self) -> usize {
        self.placements.iter().map(|p| p.tu + 1).max().unwrap_or(0)
    }
}

pub fn write_solution(sol: &SolutionFile) -> String {
    let mut s = String::new();
    writeln!(s, "{SOLUTION_MAGIC}").unwrap();
    writeln!(s, "instance {}", sol.instance).unwrap();
    for p in &sol.placements {
        writeln!(
            s,
            "place tu={} type={} box={} o={} x={} y={} z={}",
            p.tu, p.tu_type, p.box_id, p.orientation, p.x, p.y, p.z
        )
        .unwrap();
    }
    for b in &sol.unplaced {
        writeln!(s, "unplaced box={b}").unwrap();
    }
    s
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let mut instance = None;
    let mut placements = Vec::new();
    let mut unplaced = Vec::new();
    for (n, kw, rest) in records(text, SOLUTION_MAGIC)? {
        match kw {
            "instance" if instance.is_none() => instance = Some(rest.to_string()),
            "place" => {
                let mut f = Fields::parse(n, rest)?;
                placements.push(PlacementRecord {
                    tu: f.get("tu")?,
                    tu_type: f.raw("type")?.to_string(),
                    box_id: f.get("box")?,
                    orientation: f.get("o")?,
                    x: f.get("x")?,
                    y: f.get("y")?,
                    z: f.get("z")?,
                });
                f.finish()?;
            }
            "unplaced" => {
                let mut f = Fields::parse(n, rest)?;
                unplaced.push(f.get("box")?);
                f.finish()?;
            }
            _ => return Err(err(n, format!("unexpected record `{kw}`"))),
        }
    }
    Ok(SolutionFile {
        instance: instance.ok_or_else(|| err(0, "missing `instance`"))?,
        placements,
        unplaced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two boxes
atucp-instance 1
name demo
objective alpha=1 theta=100 beta=100
type id=120x80x130 x=120 y=80 z=130 q=1000

box id=0 w=40 l=40 h=65 kg=11 txz=0 tyz=1 stack=1
box id=1 w=30 l=20 h=10 kg=0 txz=1 tyz=0 stack=0
";

    #[test]
    fn parses_instance() {
        let inst = parse_instance(SAMPLE).unwrap();
        assert_eq!(inst.name, "demo");
        assert_eq!(inst.catalog[0].capacity, 1000);
        assert_eq!(inst.boxes.len(), 2);
        assert!(inst.boxes[0].tyz && !inst.boxes[0].txz);
        assert!(!inst.boxes[1].stackable);
        assert_eq!(inst.lower_bound, None);
    }

    #[test]
    fn reports_line_numbers() {
        let bad = SAMPLE.replace("kg=0", "kg=x");
        assert_eq!(parse_instance(&bad).unwrap_err().line, 8);
        let bad = SAMPLE.replace("stack=0", "stack=0 extra=1");
        assert!(parse_instance(&bad).unwrap_err().message.contains("extra"));
        assert!(parse_instance("name x\n").is_err());
    }

    #[test]
    fn rejects_duplicate_box_ids() {
        let bad = SAMPLE.replace("box id=1", "box id=0");
        assert!(parse_instance(&bad).is_err());
    }

    #[test]
    fn solution_round_trip() {
        let s = SolutionFile {
            instance: "demo".into(),
            placements: vec![PlacementRecord {
                tu: 0,
                tu_type: "a".into(),
                box_id: 3,
                orientation: 4,
                x: 1,
                y: 2,
                z: 3,
            }],
            unplaced: vec![9],
        };
        assert_eq!(parse_solution(&write_solution(&s)).unwrap(), s);
        assert_eq!(s.tu_count(), 1);
    }
}
