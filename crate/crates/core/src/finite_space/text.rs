//! Line-oriented text format for spaces, measures, partitions and verdicts.
//!
//! ```text
//! outcomes: a,b,c,d
//! mass: 0.25,0.25,0.25,0.25
//! cell: a,b
//! cell: c,d
//! ```
//!
//! Masses print in shortest round-trip form, so parsing reproduces the
//! exact floating-point values.

use super::verify::Theorem1Verdict;
use super::{Event, FiniteMeasure, FiniteSpace, Partition};
use crate::error::{Error, Result};
use std::fmt::Write as _;

pub fn write_space(space: &FiniteSpace) -> String {
    format!("outcomes: {}\n", space.outcomes().join(","))
}

pub fn write_measure(measure: &FiniteMeasure) -> String {
    let mut out = write_space(measure.space());
    let masses: Vec<String> = measure.mass().iter().map(|m| m.to_string()).collect();
    let _ = writeln!(out, "mass: {}", masses.join(","));
    out
}

pub fn write_partition(partition: &Partition) -> String {
    let mut out = write_space(partition.space());
    for cell in partition.cells() {
        let labels: Vec<&str> = cell
            .iter()
            .map(|&i| partition.space().outcomes()[i].as_str())
            .collect();
        let _ = writeln!(out, "cell: {}", labels.join(","));
    }
    out
}

pub fn write_verdict(verdict: &Theorem1Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sufficient: {}", verdict.sufficient);
    let _ = writeln!(out, "inherited: {}", verdict.inherited);
    match &verdict.witness {
        Some(q) => {
            let masses: Vec<String> = q.mass().iter().map(|m| m.to_string()).collect();
            let _ = writeln!(out, "witness_mass: {}", masses.join(","));
        }
        None => {
            let _ = writeln!(out, "witness_mass: none");
        }
    }
    out
}

fn fields<'a>(text: &'a str, key: &str) -> Vec<&'a str> {
    text.lines()
        .filter_map(|line| line.strip_prefix(key).and_then(|r| r.strip_prefix(':')))
        .map(str::trim)
        .collect()
}

fn single<'a>(text: &'a str, key: &str) -> Result<&'a str> {
    let found = fields(text, key);
    match found.as_slice() {
        [one] => Ok(one),
        [] => Err(Error::Parse(format!("missing `{key}:` line"))),
        _ => Err(Error::Parse(format!("more than one `{key}:` line"))),
    }
}

pub fn parse_space(text: &str) -> Result<FiniteSpace> {
    let line = single(text, "outcomes")?;
    FiniteSpace::new(line.split(',').map(str::trim).map(String::from))
}

pub fn parse_measure(text: &str) -> Result<FiniteMeasure> {
    let space = parse_space(text)?;
    let line = single(text, "mass")?;
    let mass = line
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad mass {s:?}: {e}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    FiniteMeasure::new(space, mass)
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let space = parse_space(text)?;
    let cell_lines = fields(text, "cell");
    if cell_lines.is_empty() {
        return Err(Error::Parse("missing `cell:` lines".into()));
    }
    let mut cells = Vec::new();
    for line in cell_lines {
        let event = Event::from_labels(&space, line.split(',').map(str::trim))?;
        cells.push(event.members().to_vec());
    }
    Partition::new(&space, cells)
}
