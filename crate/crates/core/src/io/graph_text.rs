//! Edge-list text format for graphs.
//!
//! ```text
//! p <n> <m>        header: vertex and edge counts
//! e <u> <v>        one line per edge, vertices numbered from 1
//! c <v> <color>    colored graphs only: one line per vertex, colors from 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::reductions::{ColoredGraph, Graph};

struct Parsed {
    n: usize,
    edges: Vec<(usize, usize)>,
    colors: Vec<Option<usize>>,
}

fn malformed(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::MalformedGraph(format!("line {line}: {msg}"))
}

fn parse(text: &str) -> Result<Parsed> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut colors: Vec<Option<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        let nums: Vec<usize> = fields
            .map(|f| {
                f.parse::<usize>()
                    .map_err(|_| malformed(line_no, format!("`{f}` is not a count")))
            })
            .collect::<Result<_>>()?;
        let vertex = |v: usize, n: usize| {
            if v == 0 || v > n {
                Err(malformed(line_no, format!("vertex {v} outside 1..={n}")))
            } else {
                Ok(v - 1)
            }
        };
        match (tag, nums.as_slice(), header) {
            ("p", &[n, m], None) => {
                header = Some((n, m));
                colors = vec![None; n];
            }
            ("p", _, Some(_)) => return Err(malformed(line_no, "second header")),
            (_, _, None) => return Err(malformed(line_no, "expected `p <n> <m>` first")),
            ("e", &[u, v], Some((n, _))) => edges.push((vertex(u, n)?, vertex(v, n)?)),
            ("c", &[v, c], Some((n, _))) => {
                let v = vertex(v, n)?;
                if c == 0 {
                    return Err(malformed(line_no, "colors start at 1"));
                }
                if colors[v].replace(c - 1).is_some() {
                    return Err(malformed(line_no, format!("vertex {} colored twice", v + 1)));
                }
            }
            _ => return Err(malformed(line_no, format!("cannot read `{line}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::MalformedGraph("missing `p <n> <m>` header".into()))?;
    if edges.len() != m {
        return Err(Error::MalformedGraph(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Ok(Parsed { n, edges, colors })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let p = parse(text)?;
    if p.colors.iter().any(Option::is_some) {
        return Err(Error::MalformedGraph("color lines in an uncolored graph".into()));
    }
    Graph::new(p.n, p.edges)
}

pub fn parse_colored_graph(text: &str) -> Result<ColoredGraph> {
    let p = parse(text)?;
    let colors: Vec<usize> = p
        .colors
        .iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::MalformedGraph(format!("vertex {} has no color", v + 1))))
        .collect::<Result<_>>()?;
    let q = colors.iter().max().map_or(0, |&c| c + 1);
    ColoredGraph::new(q, colors, p.edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.edges().len());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn write_colored_graph(g: &ColoredGraph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.edges().len());
    for (v, &c) in g.colors().iter().enumerate() {
        let _ = writeln!(out, "c {} {}", v + 1, c + 1);
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
