//! Plain-text file formats.
//!
//! Graph:
//! ```text
//! graph <V> <E>
//! vertex <id> <label>        (V lines, ids 0..V-1 in order; label "-" for none)
//! edge <u> <v> <num>/<den>   (E lines)
//! ```
//!
//! Grid tiling instance:
//! ```text
//! gt <kappa> <n>
//! set <i> <j> : a1,b1 a2,b2 ...   (kappa^2 lines, row-major)
//! ```
//!
//! Label sidecar, one line per vertex in id order:
//! ```text
//! role <id> <kind> <i> <j> [<pos>]
//! ```
//!
//! Blank lines and lines starting with `#` are ignored by every parser.
//! Writers emit canonical output, so `write(parse(write(x))) == write(x)`.

use std::fmt::Write as _;
use std::str::FromStr;

use kclab_core::gridtiling::Pair;
use kclab_core::{GtInstance, LabelMap, RationalLength, ReductionInstance, VertexRole, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn field<T: FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T, FormatError> {
    let token = token.ok_or_else(|| err(line, format!("missing {what}")))?;
    token.parse().map_err(|_| err(line, format!("invalid {what} `{token}`")))
}

fn keyword(line: usize, token: Option<&str>, expected: &str) -> Result<(), FormatError> {
    match token {
        Some(t) if t == expected => Ok(()),
        Some(t) => Err(err(line, format!("expected `{expected}`, found `{t}`"))),
        None => Err(err(line, format!("expected `{expected}`"))),
    }
}

fn no_trailing<'a>(line: usize, mut tokens: impl Iterator<Item = &'a str>) -> Result<(), FormatError> {
    match tokens.next() {
        Some(t) => Err(err(line, format!("unexpected trailing token `{t}`"))),
        None => Ok(()),
    }
}

fn end_of_input(text: &str) -> usize {
    text.lines().count() + 1
}

// ---------------------------------------------------------------------------

pub fn write_graph(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {}", graph.vertex_count(), graph.edge_count()).unwrap();
    for (id, label) in graph.labels().iter().enumerate() {
        writeln!(out, "vertex {id} {}", label.as_deref().unwrap_or("-")).unwrap();
    }
    for e in graph.edges() {
        writeln!(out, "edge {} {} {}", e.u, e.v, e.length).unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, FormatError> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| err(1, "empty graph file"))?;
    let mut t = header.split_whitespace();
    keyword(no, t.next(), "graph")?;
    let vertices: usize = field(no, t.next(), "vertex count")?;
    let edges: usize = field(no, t.next(), "edge count")?;
    no_trailing(no, t)?;

    let mut labels = Vec::with_capacity(vertices);
    let mut edge_list = Vec::with_capacity(edges);
    for (no, line) in lines {
        let mut t = line.split_whitespace();
        match t.next() {
            Some("vertex") => {
                if !edge_list.is_empty() {
                    return Err(err(no, "vertex line after edge lines"));
                }
                let id: usize = field(no, t.next(), "vertex id")?;
                if id != labels.len() {
                    return Err(err(no, format!("expected vertex {}, found {id}", labels.len())));
                }
                let label: String = field(no, t.next(), "label")?;
                no_trailing(no, t)?;
                labels.push((label != "-").then_some(label));
            }
            Some("edge") => {
                let u: usize = field(no, t.next(), "edge endpoint")?;
                let v: usize = field(no, t.next(), "edge endpoint")?;
                let length: RationalLength = field(no, t.next(), "edge length")?;
                no_trailing(no, t)?;
                edge_list.push((u, v, length));
            }
            Some(other) => return Err(err(no, format!("unknown record `{other}`"))),
            None => unreachable!("blank lines are skipped"),
        }
    }
    let end = end_of_input(text);
    if labels.len() != vertices {
        return Err(err(end, format!("header declares {vertices} vertices, found {}", labels.len())));
    }
    if edge_list.len() != edges {
        return Err(err(end, format!("header declares {edges} edges, found {}", edge_list.len())));
    }
    WeightedGraph::with_labels(labels, edge_list).map_err(|e| err(end, e.to_string()))
}

// ---------------------------------------------------------------------------

pub fn write_gt(gt: &GtInstance) -> String {
    let mut out = String::new();
    writeln!(out, "gt {} {}", gt.kappa(), gt.n()).unwrap();
    for i in 1..=gt.kappa() {
        for j in 1..=gt.kappa() {
            write!(out, "set {i} {j} :").unwrap();
            for (a, b) in gt.set(i, j) {
                write!(out, " {a},{b}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

fn parse_pair(line: usize, token: &str) -> Result<Pair, FormatError> {
    let (a, b) = token.split_once(',').ok_or_else(|| err(line, format!("invalid pair `{token}`")))?;
    Ok((field(line, Some(a), "coordinate")?, field(line, Some(b), "coordinate")?))
}

pub fn parse_gt(text: &str) -> Result<GtInstance, FormatError> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| err(1, "empty grid tiling file"))?;
    let mut t = header.split_whitespace();
    keyword(no, t.next(), "gt")?;
    let kappa: usize = field(no, t.next(), "kappa")?;
    let n: usize = field(no, t.next(), "n")?;
    no_trailing(no, t)?;

    let mut sets = Vec::new();
    let mut last = no;
    for (no, line) in lines {
        last = no;
        let (head, body) = line.split_once(':').ok_or_else(|| err(no, "expected `set <i> <j> : pairs`"))?;
        let mut t = head.split_whitespace();
        keyword(no, t.next(), "set")?;
        let i: usize = field(no, t.next(), "row")?;
        let j: usize = field(no, t.next(), "column")?;
        no_trailing(no, t)?;
        let expected = sets.len();
        if kappa == 0 || (i, j) != (expected / kappa + 1, expected % kappa + 1) {
            return Err(err(no, format!("set ({i}, {j}) out of row-major order")));
        }
        let pairs = body.split_whitespace().map(|p| parse_pair(no, p)).collect::<Result<Vec<_>, _>>()?;
        sets.push(pairs);
    }
    GtInstance::new(kappa, n, sets).map_err(|e| err(last, e.to_string()))
}

// ---------------------------------------------------------------------------

pub fn write_labels(labels: &LabelMap) -> String {
    let mut out = String::new();
    for (id, role) in labels.roles().iter().enumerate() {
        writeln!(out, "role {id} {role}").unwrap();
    }
    out
}

pub fn parse_labels(text: &str) -> Result<LabelMap, FormatError> {
    let mut roles = Vec::new();
    let mut last = 1;
    for (no, line) in content_lines(text) {
        last = no;
        let mut t = line.split_whitespace();
        keyword(no, t.next(), "role")?;
        let id: usize = field(no, t.next(), "vertex id")?;
        if id != roles.len() {
            return Err(err(no, format!("expected role for vertex {}, found {id}", roles.len())));
        }
        let kind: String = field(no, t.next(), "kind")?;
        let i: usize = field(no, t.next(), "row")?;
        let j: usize = field(no, t.next(), "column")?;
        let pos = t.next().map(|p| field(no, Some(p), "position")).transpose()?;
        no_trailing(no, t)?;
        let role = VertexRole::from_fields(&kind, i, j, pos).ok_or_else(|| err(no, format!("invalid role `{kind}`")))?;
        roles.push(role);
    }
    LabelMap::from_roles(roles).map_err(|e| err(last, e.to_string()))
}

/// Reads a reduction back from its graph and label files.
pub fn parse_reduction(graph_text: &str, labels_text: &str) -> Result<ReductionInstance, String> {
    let graph = parse_graph(graph_text).map_err(|e| format!("graph: {e}"))?;
    let labels = parse_labels(labels_text).map_err(|e| format!("labels: {e}"))?;
    ReductionInstance::from_parts(graph, labels).map_err(|e| e.to_string())
}
