//! The `.es` text format, labelling files and DOT export.
//!
//! ```text
//! # two conflicting events
//! name pair
//! event a
//! event b
//! conflict a b
//! ```
//!
//! Directives may appear in any order; references are resolved once the
//! whole file has been read.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::domain::{DomainGraph, EdgeColoring};
use crate::graph::OrthoGraph;
use crate::label::{symbol_name, LabelError, Labelling};
use crate::structure::{EventStructure, EventStructureSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("SyntaxError: line {line}: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("DuplicateEvent: line {0}: event declared twice")]
    DuplicateEvent(usize),
    #[error("UnknownEventRef: line {0}: reference to an undeclared event")]
    UnknownEventRef(usize),
    #[error(transparent)]
    Label(#[from] LabelError),
}

fn syntax(line: usize, message: impl Into<String>) -> IoError {
    IoError::SyntaxError {
        line,
        message: message.into(),
    }
}

/// A parsed `.es` file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EsDocument {
    pub name: Option<String>,
    pub spec: EventStructureSpec,
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

pub fn parse_document(text: &str) -> Result<EsDocument, IoError> {
    let mut doc = EsDocument::default();
    let mut declared = HashSet::new();
    let mut refs: Vec<(usize, String)> = Vec::new();
    for (line, words) in content_lines(text) {
        let args = &words[1..];
        let arity = match words[0] {
            "name" | "event" => 1,
            "cover" | "conflict" => 2,
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        };
        if args.len() != arity {
            return Err(syntax(line, format!("`{}` takes {arity} argument(s)", words[0])));
        }
        if let Some(bad) = args.iter().find(|a| !is_ident(a)) {
            return Err(syntax(line, format!("`{bad}` is not an identifier")));
        }
        match words[0] {
            "name" => {
                if doc.name.is_some() {
                    return Err(syntax(line, "second `name` directive"));
                }
                doc.name = Some(args[0].to_owned());
            }
            "event" => {
                if !declared.insert(args[0].to_owned()) {
                    return Err(IoError::DuplicateEvent(line));
                }
                doc.spec.events.push(args[0].to_owned());
            }
            kind => {
                refs.extend(args.iter().map(|a| (line, (*a).to_owned())));
                let pair = (args[0].to_owned(), args[1].to_owned());
                if kind == "cover" {
                    doc.spec.covers.push(pair);
                } else {
                    doc.spec.base_conflicts.push(pair);
                }
            }
        }
    }
    if let Some((line, _)) = refs.iter().find(|(_, id)| !declared.contains(id)) {
        return Err(IoError::UnknownEventRef(*line));
    }
    Ok(doc)
}

pub fn parse_es(text: &str) -> Result<EventStructureSpec, IoError> {
    parse_document(text).map(|d| d.spec)
}

pub fn serialize_document(doc: &EsDocument) -> String {
    let mut out = String::new();
    if let Some(name) = &doc.name {
        writeln!(out, "name {name}").unwrap();
    }
    for e in &doc.spec.events {
        writeln!(out, "event {e}").unwrap();
    }
    for (p, c) in &doc.spec.covers {
        writeln!(out, "cover {p} {c}").unwrap();
    }
    for (a, b) in &doc.spec.base_conflicts {
        writeln!(out, "conflict {a} {b}").unwrap();
    }
    out
}

pub fn serialize_es(spec: &EventStructureSpec) -> String {
    serialize_document(&EsDocument {
        name: None,
        spec: spec.clone(),
    })
}

/// `alphabet <k>` followed by `<event> <symbol>` in declaration order.
pub fn serialize_labelling(e: &EventStructure, lam: &Labelling) -> String {
    let mut out = format!("alphabet {}\n", lam.alphabet().len());
    for x in e.events() {
        writeln!(out, "{} {}", e.name(x), lam.symbol(x)).unwrap();
    }
    out
}

/// Reads a labelling of `e`. Symbols enter the alphabet in order of first
/// appearance; unused fresh symbols pad it to the declared size.
pub fn parse_labelling(e: &EventStructure, text: &str) -> Result<Labelling, IoError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| syntax(1, "missing `alphabet` header"))?;
    let declared: usize = match header.as_slice() {
        ["alphabet", k] => k.parse().map_err(|_| syntax(line, format!("`{k}` is not a size")))?,
        _ => return Err(syntax(line, "expected `alphabet <k>`")),
    };
    let mut alphabet: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut assignment: Vec<Option<usize>> = vec![None; e.len()];
    for (line, words) in lines {
        let [event, symbol] = words.as_slice() else {
            return Err(syntax(line, "expected `<event> <symbol>`"));
        };
        if !is_ident(event) || !is_ident(symbol) {
            return Err(syntax(line, "malformed identifier"));
        }
        let x = e.event(event).map_err(|_| IoError::UnknownEventRef(line))?;
        if assignment[x.index()].is_some() {
            return Err(syntax(line, format!("`{event}` labelled twice")));
        }
        let next = alphabet.len();
        let s = *index.entry((*symbol).to_owned()).or_insert_with(|| {
            alphabet.push((*symbol).to_owned());
            next
        });
        assignment[x.index()] = Some(s);
    }
    if alphabet.len() > declared {
        return Err(syntax(line, format!("{} symbols used, alphabet declares {declared}", alphabet.len())));
    }
    let mut fresh = 0;
    while alphabet.len() < declared {
        let candidate = symbol_name(fresh);
        fresh += 1;
        if !index.contains_key(&candidate) {
            alphabet.push(candidate);
        }
    }
    let got = assignment.iter().filter(|s| s.is_some()).count();
    if got != e.len() {
        return Err(LabelError::PartialLabelling { expected: e.len(), got }.into());
    }
    Ok(Labelling::new(alphabet, assignment.into_iter().flatten().collect())?)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT of the orthogonality graph, optionally filled by colour.
pub fn graph_to_dot(g: &OrthoGraph, colors: Option<&[usize]>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for (v, name) in g.names().iter().enumerate() {
        match colors {
            Some(c) => writeln!(
                out,
                "  n{v} [label={}, style=filled, colorscheme=set312, fillcolor={}];",
                quote(name),
                c[v] % 12 + 1
            ),
            None => writeln!(out, "  n{v} [label={}];", quote(name)),
        }
        .unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "  n{a} -- n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Directed DOT of the Hasse diagram of the domain; edges are labelled by
/// the added event and, if given, its symbol.
pub fn domain_to_dot(d: &DomainGraph, symbols: Option<&EdgeColoring>) -> String {
    let mut out = String::from("digraph D {\n  rankdir=BT;\n  node [shape=box];\n");
    for v in 0..d.nodes().len() {
        writeln!(out, "  n{v} [label={}];", quote(&d.node_label(v))).unwrap();
    }
    for (k, edge) in d.edges().iter().enumerate() {
        let event = &d.names()[edge.event.index()];
        let label = match symbols {
            Some(ec) => format!("{event}/{}", ec.alphabet[ec.symbols[k]]),
            None => event.clone(),
        };
        writeln!(out, "  n{} -> n{} [label={}];", edge.from, edge.to, quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// What [`export_dot`] renders.
#[derive(Debug, Clone, Copy)]
pub enum DotTarget<'a> {
    Graph(&'a OrthoGraph, Option<&'a [usize]>),
    Domain(&'a DomainGraph, Option<&'a EdgeColoring>),
}

pub fn export_dot(target: DotTarget<'_>) -> String {
    match target {
        DotTarget::Graph(g, c) => graph_to_dot(g, c),
        DotTarget::Domain(d, ec) => domain_to_dot(d, ec),
    }
}
