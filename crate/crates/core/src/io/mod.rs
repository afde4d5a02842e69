//! Instance files and random instance generation.
//!
//! The line format:
//!
//! ```text
//! fgc 1
//! p 2
//! q 1
//! nodes 3
//! edge 0 1 S 2.5
//! edge 1 2 U 1      # comments run to end of line
//! ```
//!
//! Vertices are 0-based, `S`/`U` mark safe and unsafe edges, and edge ids
//! follow line order. Files ending in `.json` use the equivalent object
//! form produced by [`to_json`].

mod generate;

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use generate::{gen_random, GenError, GenParams};

use crate::graph::Multigraph;
use crate::model::{validate_instance, EdgeKind, EdgeSelection, FgcInstance, InstanceError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{key}` line")]
    MissingKey { key: &'static str },
    #[error("line {line}: {message}")]
    Range { line: usize, message: String },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("invalid JSON instance: {0}")]
    Json(String),
    #[error("invalid instance: {0}")]
    Invariant(#[from] InstanceError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl ParseError {
    /// `syntax`, `range`, `invariant` or `io`.
    pub fn category(&self) -> &'static str {
        match self {
            Self::Syntax { .. } | Self::MissingKey { .. } | Self::Json(_) => "syntax",
            Self::Range { .. } | Self::OutOfRange(_) => "range",
            Self::Invariant(_) => "invariant",
            Self::Io { .. } => "io",
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn range(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Range {
        line,
        message: message.into(),
    }
}

fn kind_char(kind: EdgeKind) -> char {
    if kind.is_safe() {
        'S'
    } else {
        'U'
    }
}

/// Parses and validates an instance in the line format.
pub fn parse_instance(text: &str) -> Result<FgcInstance, ParseError> {
    let inst = parse_unchecked(text)?;
    validate_instance(&inst)?;
    Ok(inst)
}

/// Parses without the connectivity and feasibility checks.
pub fn parse_unchecked(text: &str) -> Result<FgcInstance, ParseError> {
    let mut header = false;
    let (mut p, mut q, mut nodes) = (None, None, None);
    // (line, u, v, kind, cost)
    let mut edges: Vec<(usize, usize, usize, EdgeKind, f64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        if !header {
            if words != ["fgc", "1"] {
                return Err(syntax(line, "expected header `fgc 1`"));
            }
            header = true;
            continue;
        }
        match words[0] {
            key @ ("p" | "q" | "nodes") => {
                let [_, value] = words[..] else {
                    return Err(syntax(line, format!("expected `{key} <int>`")));
                };
                let value: u64 = value.parse().map_err(|_| {
                    syntax(
                        line,
                        format!("`{key}` needs a nonnegative integer, got `{value}`"),
                    )
                })?;
                let slot = match key {
                    "p" => &mut p,
                    "q" => &mut q,
                    _ => &mut nodes,
                };
                if slot.is_some() {
                    return Err(syntax(line, format!("duplicate `{key}` line")));
                }
                *slot = Some((line, value));
            }
            "edge" => {
                let [_, u, v, kind, cost] = words[..] else {
                    return Err(syntax(line, "expected `edge <u> <v> <S|U> <cost>`"));
                };
                let vertex = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| syntax(line, format!("bad vertex index `{s}`")))
                };
                let kind = match kind {
                    "S" => EdgeKind::Safe,
                    "U" => EdgeKind::Unsafe,
                    other => {
                        return Err(syntax(
                            line,
                            format!("edge kind must be S or U, got `{other}`"),
                        ))
                    }
                };
                let cost: f64 = cost
                    .parse()
                    .map_err(|_| syntax(line, format!("bad cost `{cost}`")))?;
                if !cost.is_finite() || cost < 0.0 {
                    return Err(range(
                        line,
                        format!("cost must be finite and nonnegative, got {cost}"),
                    ));
                }
                edges.push((line, vertex(u)?, vertex(v)?, kind, cost));
            }
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    if !header {
        return Err(ParseError::MissingKey { key: "fgc" });
    }
    let (p_line, p) = p.ok_or(ParseError::MissingKey { key: "p" })?;
    let (q_line, q) = q.ok_or(ParseError::MissingKey { key: "q" })?;
    let (n_line, n) = nodes.ok_or(ParseError::MissingKey { key: "nodes" })?;
    if p == 0 || p > u32::MAX as u64 {
        return Err(range(
            p_line,
            format!("p must be a positive 32-bit integer, got {p}"),
        ));
    }
    if q > u32::MAX as u64 {
        return Err(range(q_line, format!("q must fit in 32 bits, got {q}")));
    }
    if n < 2 {
        return Err(range(n_line, format!("need at least 2 nodes, got {n}")));
    }
    for &(line, u, v, _, _) in &edges {
        if u as u64 >= n || v as u64 >= n {
            return Err(range(
                line,
                format!("edge {u}-{v} references a vertex outside 0..{n}"),
            ));
        }
        if u == v {
            return Err(range(line, format!("self-loop on vertex {u}")));
        }
    }
    build(n as usize, &edges, p as u32, q as u32)
}

fn build(
    n: usize,
    edges: &[(usize, usize, usize, EdgeKind, f64)],
    p: u32,
    q: u32,
) -> Result<FgcInstance, ParseError> {
    let graph = Multigraph::new(n, edges.iter().map(|&(_, u, v, _, _)| (u, v)).collect())
        .map_err(InstanceError::from)?;
    let kinds = edges.iter().map(|e| e.3).collect();
    let costs = edges.iter().map(|e| e.4).collect();
    Ok(FgcInstance::new(graph, kinds, costs, p, q)?)
}

/// Canonical text form; parsing it gives back an equal instance.
pub fn serialize_instance(inst: &FgcInstance) -> String {
    let mut out = format!(
        "fgc 1\np {}\nq {}\nnodes {}\n",
        inst.p(),
        inst.q(),
        inst.vertex_count()
    );
    for (e, &(u, v)) in inst.graph().edges().iter().enumerate() {
        writeln!(
            out,
            "edge {u} {v} {} {}",
            kind_char(inst.kind(e)),
            inst.costs()[e]
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonInstance {
    p: u32,
    q: u32,
    nodes: usize,
    edges: Vec<JsonEdge>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonEdge {
    u: usize,
    v: usize,
    kind: char,
    cost: f64,
}

pub fn to_json(inst: &FgcInstance) -> String {
    let doc = JsonInstance {
        p: inst.p(),
        q: inst.q(),
        nodes: inst.vertex_count(),
        edges: inst
            .graph()
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| JsonEdge {
                u,
                v,
                kind: kind_char(inst.kind(e)),
                cost: inst.costs()[e],
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).unwrap() + "\n"
}

pub fn parse_json(text: &str) -> Result<FgcInstance, ParseError> {
    let doc: JsonInstance =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    if doc.p == 0 {
        return Err(ParseError::OutOfRange("p must be at least 1".into()));
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, e) in doc.edges.iter().enumerate() {
        let kind = match e.kind {
            'S' => EdgeKind::Safe,
            'U' => EdgeKind::Unsafe,
            other => {
                return Err(ParseError::Json(format!(
                    "edge {i}: kind must be S or U, got {other:?}"
                )))
            }
        };
        edges.push((0, e.u, e.v, kind, e.cost));
    }
    let inst = build(doc.nodes, &edges, doc.p, doc.q).map_err(|err| match err {
        ParseError::Invariant(e @ (InstanceError::Graph(_) | InstanceError::BadCost { .. })) => {
            ParseError::OutOfRange(e.to_string())
        }
        other => other,
    })?;
    validate_instance(&inst)?;
    Ok(inst)
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads a file, choosing the format from the extension.
pub fn read_instance(path: impl AsRef<Path>) -> Result<FgcInstance, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if is_json(path) {
        parse_json(&text)
    } else {
        parse_instance(&text)
    }
}

pub fn write_instance(path: impl AsRef<Path>, inst: &FgcInstance) -> Result<(), ParseError> {
    let path = path.as_ref();
    let text = if is_json(path) {
        to_json(inst)
    } else {
        serialize_instance(inst)
    };
    std::fs::write(path, text).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("bad edge reference `{0}`: use a 0-based edge id, or s<k> / u<k> for the k-th safe / unsafe edge")]
pub struct EdgeRefError(pub String);

/// Parses a comma-separated edge list.
///
/// Each item is either a 0-based edge id or a name `s<k>` / `u<k>` for the
/// `k`-th (1-based) safe or unsafe edge in id order.
pub fn parse_edge_list(inst: &FgcInstance, list: &str) -> Result<EdgeSelection, EdgeRefError> {
    let mut ids = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || EdgeRefError(item.to_string());
        let id = if let Ok(id) = item.parse::<usize>() {
            id
        } else {
            let (kind, k) = match item.split_at(1) {
                ("s" | "S", k) => (EdgeKind::Safe, k),
                ("u" | "U", k) => (EdgeKind::Unsafe, k),
                _ => return Err(bad()),
            };
            let k: usize = k.parse().map_err(|_| bad())?;
            (0..inst.edge_count())
                .filter(|&e| inst.kind(e) == kind)
                .nth(k.checked_sub(1).ok_or_else(bad)?)
                .ok_or_else(bad)?
        };
        if id >= inst.edge_count() {
            return Err(bad());
        }
        ids.push(id);
    }
    Ok(EdgeSelection::new(ids))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_VERTEX: &str = "\
# one safe and two unsafe parallel edges
fgc 1
p 1
q 1
nodes 2
edge 0 1 S 5   # s1
edge 0 1 U 1
edge 0 1 U 1
";

    #[test]
    fn parse_and_round_trip() {
        let inst = parse_instance(TWO_VERTEX).unwrap();
        assert_eq!(
            (inst.p(), inst.q(), inst.vertex_count(), inst.edge_count()),
            (1, 1, 2, 3)
        );
        assert_eq!(inst.costs(), &[5.0, 1.0, 1.0]);
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
        assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
        assert_eq!(parse_json(&to_json(&inst)).unwrap(), inst);
    }

    #[test]
    fn fractional_costs_round_trip() {
        let text = "fgc 1\np 1\nq 0\nnodes 2\nedge 0 1 S 0.1\nedge 1 0 S 2.675\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn self_loop() {
        let err =
            parse_instance("fgc 1\np 1\nq 0\nnodes 2\nedge 0 1 S 1\nedge 0 0 S 1\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Range {
                line: 6,
                message: "self-loop on vertex 0".into()
            }
        );
    }

    #[test]
    fn missing_key_is_named() {
        let err = parse_instance("fgc 1\nq 0\nnodes 2\nedge 0 1 S 1\n").unwrap_err();
        assert_eq!(err, ParseError::MissingKey { key: "p" });
        assert_eq!(err.category(), "syntax");
        assert!(err.to_string().contains("`p`"));
    }

    #[test]
    fn error_categories() {
        let cases = [
            ("p 1\n", "syntax"),
            ("fgc 1\np x\n", "syntax"),
            ("fgc 1\np 1\nq 0\nnodes 2\nedge 0 1 X 1\n", "syntax"),
            ("fgc 1\np 1\nq 0\nnodes 2\nedge 0 1 S\n", "syntax"),
            ("fgc 1\np 1\np 2\n", "syntax"),
            ("fgc 1\np 1\nq 0\nnodes 2\nedge 0 5 S 1\n", "range"),
            ("fgc 1\np 1\nq 0\nnodes 2\nedge 0 1 S -1\n", "range"),
            ("fgc 1\np 0\nq 0\nnodes 2\nedge 0 1 S 1\n", "range"),
            ("fgc 1\np 1\nq 0\nnodes 3\nedge 0 1 S 1\n", "invariant"),
            ("fgc 1\np 2\nq 0\nnodes 2\nedge 0 1 S 1\n", "invariant"),
        ];
        for (text, want) in cases {
            assert_eq!(
                parse_instance(text).unwrap_err().category(),
                want,
                "{text:?}"
            );
        }
        let err = parse_instance("fgc 1\np 1\nq 0\nnodes 2\nbogus\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                line: 5,
                message: "unknown key `bogus`".into()
            }
        );
    }

    #[test]
    fn json_errors() {
        assert_eq!(parse_json("{").unwrap_err().category(), "syntax");
        let loop_ = r#"{"p":1,"q":0,"nodes":2,"edges":[{"u":1,"v":1,"kind":"S","cost":1}]}"#;
        assert_eq!(parse_json(loop_).unwrap_err().category(), "range");
        let disconnected = r#"{"p":1,"q":0,"nodes":3,"edges":[{"u":0,"v":1,"kind":"S","cost":1}]}"#;
        assert_eq!(
            parse_json(disconnected).unwrap_err().category(),
            "invariant"
        );
    }

    #[test]
    fn files_by_extension() {
        let dir = tempfile::tempdir().unwrap();
        let inst = parse_instance(TWO_VERTEX).unwrap();
        for name in ["a.fgc", "a.json"] {
            let path = dir.path().join(name);
            write_instance(&path, &inst).unwrap();
            assert_eq!(read_instance(&path).unwrap(), inst);
        }
        assert!(std::fs::read_to_string(dir.path().join("a.json"))
            .unwrap()
            .starts_with('{'));
        assert_eq!(
            read_instance(dir.path().join("none.fgc"))
                .unwrap_err()
                .category(),
            "io"
        );
    }

    #[test]
    fn edge_lists() {
        let inst = parse_instance(TWO_VERTEX).unwrap();
        assert_eq!(
            parse_edge_list(&inst, "u1").unwrap(),
            EdgeSelection::new([1])
        );
        assert_eq!(
            parse_edge_list(&inst, "s1, u2").unwrap(),
            EdgeSelection::new([0, 2])
        );
        assert_eq!(
            parse_edge_list(&inst, "2,0").unwrap(),
            EdgeSelection::new([0, 2])
        );
        assert_eq!(parse_edge_list(&inst, "").unwrap(), EdgeSelection::empty());
        for bad in ["u3", "s0", "3", "x1", "u"] {
            assert!(parse_edge_list(&inst, bad).is_err(), "{bad}");
        }
    }
}
