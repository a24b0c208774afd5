//! JSON documents for quivers and traces, and Graphviz DOT output.
//!
//! A quiver document lists vertices in index order and arrows by label:
//!
//! ```json
//! {
//!   "vertices": [{"label": "1", "provenance": "original"}, ...],
//!   "arrows": [{"from": "1", "to": "2", "mult": 1}, ...]
//! }
//! ```
//!
//! Serialization is canonical: arrows sorted by `(tail, head)` index, fields in
//! declaration order, two-space indentation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bipartitize::{MutationEvent, Trace};
use crate::quiver::{Provenance, Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError::Invalid { path: path.into(), message: message.into() }
}

impl From<serde_json::Error> for SchemaError {
    fn from(e: serde_json::Error) -> Self {
        SchemaError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProvenanceTag {
    #[default]
    Original,
    Inserted,
}

impl From<Provenance> for ProvenanceTag {
    fn from(p: Provenance) -> Self {
        match p {
            Provenance::Original => ProvenanceTag::Original,
            Provenance::Inserted => ProvenanceTag::Inserted,
        }
    }
}

impl From<ProvenanceTag> for Provenance {
    fn from(p: ProvenanceTag) -> Self {
        match p {
            ProvenanceTag::Original => Provenance::Original,
            ProvenanceTag::Inserted => Provenance::Inserted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub label: String,
    #[serde(default)]
    pub provenance: ProvenanceTag,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowRecord {
    pub from: String,
    pub to: String,
    #[serde(default = "one")]
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    pub vertices: Vec<VertexRecord>,
    #[serde(default)]
    pub arrows: Vec<ArrowRecord>,
}

impl QuiverDocument {
    pub fn from_quiver(q: &Quiver) -> Self {
        QuiverDocument {
            vertices: q
                .vertices()
                .map(|v| VertexRecord { label: q.label(v).to_string(), provenance: q.provenance(v).into() })
                .collect(),
            arrows: q
                .arrows()
                .into_iter()
                .map(|a| ArrowRecord {
                    from: q.label(a.tail).to_string(),
                    to: q.label(a.head).to_string(),
                    mult: a.multiplicity,
                })
                .collect(),
        }
    }

    /// Validates the document; `at` prefixes error paths.
    fn to_quiver_at(&self, at: &str) -> Result<Quiver, SchemaError> {
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.label.as_str(), i).is_some() {
                return Err(invalid(format!("{at}vertices[{i}].label"), format!("duplicate label {:?}", v.label)));
            }
        }
        let mut q = Quiver::with_labels(self.vertices.iter().map(|v| v.label.clone()))
            .map_err(|e| invalid(format!("{at}vertices"), e.to_string()))?;
        for (i, v) in self.vertices.iter().enumerate() {
            q.set_provenance(VertexId(i), v.provenance.into());
        }
        let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            let path = format!("{at}arrows[{i}]");
            let t = *index
                .get(a.from.as_str())
                .ok_or_else(|| invalid(format!("{path}.from"), format!("unknown vertex {:?}", a.from)))?;
            let h = *index
                .get(a.to.as_str())
                .ok_or_else(|| invalid(format!("{path}.to"), format!("unknown vertex {:?}", a.to)))?;
            if t == h {
                return Err(invalid(path, format!("loop at {:?}", a.from)));
            }
            if a.mult == 0 {
                return Err(invalid(format!("{path}.mult"), "multiplicity must be positive"));
            }
            if let Some(k) = seen.get(&(t, h)) {
                return Err(invalid(path, format!("duplicates {at}arrows[{k}]")));
            }
            if let Some(k) = seen.get(&(h, t)) {
                return Err(invalid(path, format!("2-cycle with {at}arrows[{k}]")));
            }
            seen.insert((t, h), i);
            q.add_arrows(VertexId(t), VertexId(h), a.mult as i64).expect("validated endpoints");
        }
        Ok(q)
    }

    pub fn to_quiver(&self) -> Result<Quiver, SchemaError> {
        self.to_quiver_at("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EventRecord {
    InsertVertex { vertex: String, head_of_alpha: String, tail_of_alpha: String },
    MutateAt { vertex: String },
    MutateSources { vertices: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub input: QuiverDocument,
    pub events: Vec<EventRecord>,
    #[serde(rename = "final")]
    pub final_quiver: QuiverDocument,
    pub ell: usize,
    pub j: usize,
}

impl TraceDocument {
    /// Event vertices are written with the final quiver's labels.
    pub fn from_trace(t: &Trace) -> Self {
        let fin = &t.final_quiver;
        let name = |v: &VertexId| {
            if v.0 < fin.vertex_count() {
                fin.label(*v).to_string()
            } else {
                format!("#{}", v.0)
            }
        };
        let events = t
            .events
            .iter()
            .map(|e| match e {
                MutationEvent::InsertVertex { vertex, head_of_alpha, tail_of_alpha } => EventRecord::InsertVertex {
                    vertex: name(vertex),
                    head_of_alpha: name(head_of_alpha),
                    tail_of_alpha: name(tail_of_alpha),
                },
                MutationEvent::MutateAt(v) => EventRecord::MutateAt { vertex: name(v) },
                MutationEvent::MutateSources(vs) => EventRecord::MutateSources { vertices: vs.iter().map(name).collect() },
            })
            .collect();
        TraceDocument {
            input: QuiverDocument::from_quiver(&t.input),
            events,
            final_quiver: QuiverDocument::from_quiver(fin),
            ell: t.ell,
            j: t.j,
        }
    }

    /// Resolves labels against the final quiver, whose leading vertices must
    /// be the input's in the same order.
    pub fn to_trace(&self) -> Result<Trace, SchemaError> {
        let input = self.input.to_quiver_at("input.")?;
        let fin = self.final_quiver.to_quiver_at("final.")?;
        if fin.vertex_count() < input.vertex_count()
            || input.labels() != &fin.labels()[..input.vertex_count()]
        {
            return Err(invalid("final.vertices", "must start with the input vertices in input order"));
        }
        let resolve = |path: String, label: &str| {
            fin.vertex_by_label(label).ok_or_else(|| invalid(path, format!("unknown vertex {label:?}")))
        };
        let mut events = Vec::with_capacity(self.events.len());
        for (i, e) in self.events.iter().enumerate() {
            let p = |field: &str| format!("events[{i}].{field}");
            events.push(match e {
                EventRecord::InsertVertex { vertex, head_of_alpha, tail_of_alpha } => MutationEvent::InsertVertex {
                    vertex: resolve(p("vertex"), vertex)?,
                    head_of_alpha: resolve(p("head_of_alpha"), head_of_alpha)?,
                    tail_of_alpha: resolve(p("tail_of_alpha"), tail_of_alpha)?,
                },
                EventRecord::MutateAt { vertex } => MutationEvent::MutateAt(resolve(p("vertex"), vertex)?),
                EventRecord::MutateSources { vertices } => MutationEvent::MutateSources(
                    vertices
                        .iter()
                        .enumerate()
                        .map(|(k, l)| resolve(format!("events[{i}].vertices[{k}]"), l))
                        .collect::<Result<_, _>>()?,
                ),
            });
        }
        Ok(Trace { input, events, j: self.j, ell: self.ell, final_quiver: fin })
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn parse_quiver(text: &str) -> Result<Quiver, SchemaError> {
    serde_json::from_str::<QuiverDocument>(text)?.to_quiver()
}

pub fn serialize_quiver(q: &Quiver) -> String {
    to_json(&QuiverDocument::from_quiver(q))
}

pub fn parse_trace(text: &str) -> Result<Trace, SchemaError> {
    serde_json::from_str::<TraceDocument>(text)?.to_trace()
}

pub fn serialize_trace(t: &Trace) -> String {
    to_json(&TraceDocument::from_trace(t))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph with one edge per arrow copy; inserted vertices are drawn
/// as dashed boxes.
pub fn emit_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph quiver {\n");
    for v in q.vertices() {
        let attrs = match q.provenance(v) {
            Provenance::Original => "",
            Provenance::Inserted => " [shape=box, style=dashed]",
        };
        let _ = writeln!(out, "    {}{};", quote(q.label(v)), attrs);
    }
    for a in q.arrows() {
        for _ in 0..a.multiplicity {
            let _ = writeln!(out, "    {} -> {};", quote(q.label(a.tail)), quote(q.label(a.head)));
        }
    }
    out.push_str("}\n");
    out
}
