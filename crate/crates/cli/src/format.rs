//! Text formats for instances and Full Reversal graphs.
//!
//! Instance: a header line `N`, then `N` rows of `N` entries (integers, `p/q`, or
//! `-inf`), then optionally a blank line and the `N` entries of an initial vector.
//! Graph: a header line `N`, then one `u v` edge per line with 1-based nodes; a
//! self-loop marks a destination. Lines starting with `#` are comments in both.

use std::fmt::Write;

use maxplus_transience::full_reversal::{FRGraph, Mode};
use maxplus_transience::{Matrix, Vector, Weight};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub matrix: Matrix,
    pub vector: Option<Vector>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_header(line: Option<(usize, &str)>) -> CliResult<usize> {
    let (number, line) = line.ok_or_else(|| CliError::Input("empty input".into()))?;
    match line.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(CliError::Input(format!("line {number}: expected a positive node count, got {line:?}"))),
    }
}

fn parse_entries(number: usize, line: &str) -> CliResult<Vec<Weight>> {
    line.split_whitespace()
        .map(|token| {
            Weight::parse(token)
                .ok_or_else(|| CliError::Input(format!("line {number}: cannot parse entry {token:?}")))
        })
        .collect()
}

pub fn parse_instance(text: &str) -> CliResult<Instance> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next())?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (number, line) = lines
            .next()
            .ok_or_else(|| CliError::Input(format!("expected {n} matrix rows, got {}", rows.len())))?;
        let row = parse_entries(number, line)?;
        if row.len() != n {
            return Err(CliError::Input(format!("line {number}: expected {n} entries, got {}", row.len())));
        }
        rows.push(row);
    }
    let mut rest = Vec::new();
    for (number, line) in lines {
        rest.extend(parse_entries(number, line)?);
    }
    let vector = match rest.len() {
        0 => None,
        len if len == n => Some(Vector::new(rest)?),
        len => return Err(CliError::Input(format!("vector has {len} entries, expected {n}"))),
    };
    Ok(Instance { matrix: Matrix::from_rows(rows)?, vector })
}

pub fn parse_vector(text: &str) -> CliResult<Vector> {
    let mut entries = Vec::new();
    for (number, line) in content_lines(text) {
        entries.extend(parse_entries(number, line)?);
    }
    if entries.is_empty() {
        return Err(CliError::Input("empty vector".into()));
    }
    Ok(Vector::new(entries)?)
}

fn join(entries: &[Weight]) -> String {
    entries.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_instance(instance: &Instance) -> String {
    let a = &instance.matrix;
    let mut out = format!("{}\n", a.rows());
    for i in 0..a.rows() {
        writeln!(out, "{}", join(a.row(i))).unwrap();
    }
    if let Some(v) = &instance.vector {
        writeln!(out, "\n{}", join(v.entries())).unwrap();
    }
    out
}

pub fn parse_graph(text: &str, mode: Mode) -> CliResult<FRGraph> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next())?;
    let mut edges = Vec::new();
    for (number, line) in lines {
        let ends: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Input(format!("line {number}: expected two node numbers")))?;
        match ends[..] {
            [u, v] if (1..=n).contains(&u) && (1..=n).contains(&v) => edges.push((u - 1, v - 1)),
            _ => return Err(CliError::Input(format!("line {number}: expected an edge `u v` with 1 ≤ u, v ≤ {n}"))),
        }
    }
    Ok(FRGraph::new(n, edges, mode)?)
}

pub fn write_graph(graph: &FRGraph) -> String {
    let mut out = format!("{}\n", graph.node_count());
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}
