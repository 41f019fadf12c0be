//! Plain-text file formats.
//!
//! Graph:
//! ```text
//! n m
//! u v        (m lines, 0-based, u < v)
//! ```
//! Instance: a header line `p <id> objective <min|max>`, then a graph, then
//! optional `w <id> <weight>` lines (`<weight>` is a positive integer or
//! `inf`; unlisted vertices weigh 1).
//!
//! Set system: a line `r t`, then exactly `t` lines of space-separated
//! element indices (an empty line is an empty set).
//!
//! Solution: whitespace-separated vertex ids.
//!
//! Lines starting with `#` are comments everywhere. Blank lines are ignored
//! except inside the body of a set system.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{DeletionSet, Instance, Objective};
use crate::reductions::{ReductionArtifact, SetSystem};
use crate::weight::Weight;

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str, keep_blank: bool) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.starts_with('#') && (keep_blank || !l.is_empty()))
}

fn field<T: FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} {tok:?}")))
}

fn no_trailing<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(extra) => Err(Error::parse(line, format!("unexpected token {extra:?}"))),
        None => Ok(()),
    }
}

fn two_numbers(line: usize, text: &str, first: &str, second: &str) -> Result<(usize, usize)> {
    let mut toks = text.split_whitespace();
    let a = field(line, toks.next(), first)?;
    let b = field(line, toks.next(), second)?;
    no_trailing(line, toks)?;
    Ok((a, b))
}

/// Reads a graph from the front of `lines`, leaving the rest untouched.
fn parse_graph_lines<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, last_line: usize) -> Result<Graph> {
    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::parse(last_line, "missing `n m` header"))?;
    let (n, m) = two_numbers(ln, header, "vertex count", "edge count")?;
    let mut g = Graph::new(n);
    for k in 0..m {
        let (ln, text) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line, format!("expected {m} edges, found {k}")))?;
        let (u, v) = two_numbers(ln, text, "endpoint", "endpoint")?;
        if u >= v {
            let msg = if u == v {
                format!("self-loop at {u}")
            } else {
                format!("edge ({u}, {v}) must be written with u < v")
            };
            return Err(Error::parse(ln, msg));
        }
        g.add_edge(u, v).map_err(|e| Error::parse(ln, e.to_string()))?;
    }
    Ok(g)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let last = text.lines().count().max(1);
    let mut lines = content_lines(text, false);
    let g = parse_graph_lines(&mut lines, last)?;
    if let Some((ln, extra)) = lines.next() {
        return Err(Error::parse(ln, format!("trailing content {extra:?}")));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.num_edges());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let last = text.lines().count().max(1);
    let mut lines = content_lines(text, false);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::parse(last, "missing `p <id> objective <min|max>` header"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") {
        return Err(Error::parse(ln, "header must start with `p`"));
    }
    let p: Vertex = field(ln, toks.next(), "p")?;
    if toks.next() != Some("objective") {
        return Err(Error::parse(ln, "expected `objective` after p"));
    }
    let objective: Objective = field(ln, toks.next(), "objective")?;
    no_trailing(ln, toks)?;

    let g = parse_graph_lines(&mut lines, last)?;
    let n = g.n();
    if p >= n {
        return Err(Error::parse(ln, format!("p = {p} is out of range for {n} vertices")));
    }
    let mut weights = vec![Weight::ONE; n];
    let mut seen = vec![false; n];
    for (ln, text) in lines {
        let mut toks = text.split_whitespace();
        if toks.next() != Some("w") {
            return Err(Error::parse(ln, format!("expected a `w <id> <weight>` line, found {text:?}")));
        }
        let v: Vertex = field(ln, toks.next(), "vertex")?;
        let w: Weight = field(ln, toks.next(), "weight")?;
        no_trailing(ln, toks)?;
        if v >= n {
            return Err(Error::parse(ln, format!("vertex {v} is out of range for {n} vertices")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::parse(ln, format!("weight of {v} given twice")));
        }
        weights[v] = w;
    }
    Instance::new(g, p, objective)?
        .with_weights(weights)
        .map_err(|e| Error::parse(last, e.to_string()))
}

/// Canonical form: weight lines only for weights other than 1, by vertex.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = format!("p {} objective {}\n", inst.p(), inst.objective());
    out.push_str(&write_graph(inst.graph()));
    for v in inst.graph().vertices() {
        if inst.weight(v) != Weight::ONE {
            writeln!(out, "w {v} {}", inst.weight(v)).expect("writing to a String");
        }
    }
    out
}

pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    let last = text.lines().count().max(1);
    let mut lines = content_lines(text, true).skip_while(|(_, l)| l.is_empty());
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(last, "missing `r t` header"))?;
    let (r, t) = two_numbers(ln, header, "universe size", "family size")?;
    let mut family = Vec::with_capacity(t);
    for k in 0..t {
        let (ln, text) = lines
            .next()
            .ok_or_else(|| Error::parse(last, format!("expected {t} sets, found {k}")))?;
        let set = text
            .split_whitespace()
            .map(|tok| field::<usize>(ln, Some(tok), "element"))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&x) = set.iter().find(|&&x| x >= r) {
            return Err(Error::parse(ln, format!("element {x} is outside a universe of size {r}")));
        }
        family.push(set);
    }
    if let Some((ln, extra)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(Error::parse(ln, format!("trailing content {extra:?}")));
    }
    SetSystem::new(r, family).map_err(|e| Error::parse(last, e.to_string()))
}

pub fn write_set_system(sys: &SetSystem) -> String {
    let mut out = format!("{} {}\n", sys.universe_size(), sys.num_sets());
    for set in sys.family() {
        let line: Vec<String> = set.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" ")).expect("writing to a String");
    }
    out
}

/// Vertex ids of a solution file, sorted and deduplicated.
pub fn parse_solution(text: &str) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    for (ln, line) in content_lines(text, false) {
        for tok in line.split_whitespace() {
            out.push(field::<Vertex>(ln, Some(tok), "vertex id")?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn write_solution(s: &DeletionSet) -> String {
    let ids: Vec<String> = s.vertices().iter().map(Vertex::to_string).collect();
    format!("# weight {}\n{}\n", s.total_weight(), ids.join(" "))
}

/// One `<id> <role>` line per vertex of a constructed instance.
pub fn write_roles(art: &ReductionArtifact) -> String {
    let mut out = String::new();
    for (v, role) in art.roles.iter().enumerate() {
        writeln!(out, "{v} {role}").expect("writing to a String");
    }
    out
}
