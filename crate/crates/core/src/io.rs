//! Text formats.
//!
//! Graphs use the DIMACS edge format with 1-based ids:
//!
//! ```text
//! c any comment
//! c meta generator=layered columns=2
//! c set T 1 8
//! p edge 8 15
//! e 1 2
//! ```
//!
//! `c set <name> <ids..>` lines attach named vertex sets (terminals, source,
//! targets) to the instance. `c meta` lines are kept verbatim.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::paths::InducedPath;
use crate::set::VertexSet;

/// A parsed graph with its named vertex sets, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub sets: BTreeMap<String, Vec<usize>>,
    pub meta: Vec<String>,
}

impl Instance {
    pub fn new(graph: Graph) -> Self {
        Instance { graph, sets: BTreeMap::new(), meta: Vec::new() }
    }

    /// The named set as a [`VertexSet`], if present.
    pub fn vertex_set(&self, name: &str) -> Option<Result<VertexSet>> {
        self.sets.get(name).map(|ids| self.graph.set(ids.iter().copied()))
    }

    /// The named set, which must hold exactly one vertex.
    pub fn vertex(&self, name: &str) -> Option<Result<usize>> {
        self.sets.get(name).map(|ids| match ids.as_slice() {
            [v] => Ok(*v),
            _ => Err(Error::Precondition(format!("set {name} must hold exactly one vertex"))),
        })
    }
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    let id: usize =
        tok.parse().map_err(|_| Error::Parse { line, msg: format!("expected a vertex id, found {tok:?}") })?;
    if id == 0 {
        return Err(Error::Parse { line, msg: "vertex ids are 1-based".into() });
    }
    Ok(id - 1)
}

/// Parses 1-based vertex ids from a whitespace or comma separated list.
pub fn parse_id_list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(|t| parse_id(t, 0)).collect()
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut sets: Vec<(usize, String, Vec<usize>)> = Vec::new();
    let mut meta = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => match toks.next() {
                Some("set") => {
                    let name =
                        toks.next().ok_or_else(|| Error::Parse { line, msg: "set line without a name".into() })?;
                    let ids = toks.map(|t| parse_id(t, line)).collect::<Result<Vec<_>>>()?;
                    sets.push((line, name.to_string(), ids));
                }
                Some("meta") => meta.push(toks.collect::<Vec<_>>().join(" ")),
                _ => {}
            },
            "p" => {
                if header.is_some() {
                    return Err(Error::Parse { line, msg: "second problem line".into() });
                }
                let fields: Vec<&str> = toks.collect();
                let [fmt, n, m] = fields.as_slice() else {
                    return Err(Error::Parse { line, msg: "expected `p edge <n> <m>`".into() });
                };
                if *fmt != "edge" {
                    return Err(Error::Parse { line, msg: format!("unsupported format {fmt:?}") });
                }
                let count = |s: &str| {
                    s.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("expected a count, found {s:?}") })
                };
                header = Some((count(n)?, count(m)?));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(Error::Parse { line, msg: "edge before the problem line".into() });
                };
                let fields: Vec<&str> = toks.collect();
                let [u, v] = fields.as_slice() else {
                    return Err(Error::Parse { line, msg: "expected `e <u> <v>`".into() });
                };
                let (u, v) = (parse_id(u, line)?, parse_id(v, line)?);
                for x in [u, v] {
                    if x >= n {
                        return Err(Error::Parse { line, msg: format!("vertex {} out of range 1..={n}", x + 1) });
                    }
                }
                if u == v {
                    return Err(Error::Parse { line, msg: format!("self-loop on vertex {}", u + 1) });
                }
                edges.push((line, u, v));
            }
            other => return Err(Error::Parse { line, msg: format!("unknown line type {other:?}") }),
        }
    }

    let Some((n, m)) = header else {
        return Err(Error::Parse { line: text.lines().count(), msg: "missing `p edge` line".into() });
    };
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("problem line declares {m} edges, found {}", edges.len()),
        });
    }
    let mut seen = std::collections::HashSet::new();
    for &(line, u, v) in &edges {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse { line, msg: format!("duplicate edge {}-{}", u + 1, v + 1) });
        }
    }
    let graph = Graph::from_edges(n, edges.iter().map(|&(_, u, v)| (u, v)))
        .map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    let mut named = BTreeMap::new();
    for (line, name, ids) in sets {
        if let Some(&bad) = ids.iter().find(|&&v| v >= n) {
            return Err(Error::Parse { line, msg: format!("vertex {} out of range 1..={n}", bad + 1) });
        }
        named.insert(name, ids);
    }
    Ok(Instance { graph, sets: named, meta })
}

/// Serializes an instance; [`parse_instance`] reads it back unchanged.
pub fn write_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    for m in &inst.meta {
        writeln!(out, "c meta {m}").unwrap();
    }
    for (name, ids) in &inst.sets {
        writeln!(out, "c set {name} {}", join_ids(ids.iter().copied())).unwrap();
    }
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Space-separated 1-based ids.
pub fn join_ids<I: IntoIterator<Item = usize>>(ids: I) -> String {
    ids.into_iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// `1 2 3 bd=<branch depth>`
pub fn format_path(p: &InducedPath) -> String {
    format!("{} bd={}", join_ids(p.seq.iter().copied()), p.branch_depth)
}

/// Ascending 1-based ids.
pub fn format_set(s: &VertexSet) -> String {
    join_ids(s.iter())
}

/// `# count=<K> raw=<K_raw> bound_ln=<ln bound or NA>`
pub fn format_footer(count: u64, raw: u64, bound_ln: Option<f64>) -> String {
    match bound_ln {
        Some(b) => format!("# count={count} raw={raw} bound_ln={b:.6}"),
        None => format!("# count={count} raw={raw} bound_ln=NA"),
    }
}
