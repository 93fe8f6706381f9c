//! The domain of history-aware configurations and the correspondence between
//! labellings and concurrent edge colourings of its Hasse diagram.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::label::Labelling;
use crate::structure::{EventId, EventStructure};

pub const DEFAULT_DOMAIN_CAP: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("DomainTooLarge: more than {0} configurations")]
    DomainTooLarge(usize),
    #[error("PartialLabelling: labelling covers {got} events, domain has {expected}")]
    PartialLabelling { expected: usize, got: usize },
    #[error("NotConcurrent: the edge colouring violates the square condition")]
    NotConcurrent,
    #[error("MissingEdge: no edge adds `{0}` on top of its strict past")]
    MissingEdge(String),
}

/// Lower-closed conflict-free event set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    members: FixedBitSet,
}

impl Configuration {
    pub fn events(&self) -> Vec<EventId> {
        self.members.ones().map(EventId::new).collect()
    }

    pub fn contains(&self, x: EventId) -> bool {
        self.members.contains(x.index())
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }
}

/// Hasse edge `from < to` where `to = from + {event}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainEdge {
    pub from: usize,
    pub to: usize,
    pub event: EventId,
}

#[derive(Debug, Clone)]
pub struct DomainGraph {
    names: Vec<String>,
    strict_down: Vec<FixedBitSet>,
    nodes: Vec<Configuration>,
    edges: Vec<DomainEdge>,
    out: Vec<Vec<usize>>,
    index: HashMap<FixedBitSet, usize>,
}

/// Breadth-first closure from the empty configuration.
pub fn enumerate_domain(e: &EventStructure, cap: usize) -> Result<DomainGraph, DomainError> {
    let n = e.len();
    let strict_down: Vec<FixedBitSet> = e
        .events()
        .map(|x| {
            let mut s = e.down_set(x).clone();
            s.set(x.index(), false);
            s
        })
        .collect();
    let mut d = DomainGraph {
        names: e.names().to_vec(),
        strict_down,
        nodes: Vec::new(),
        edges: Vec::new(),
        out: Vec::new(),
        index: HashMap::new(),
    };
    let empty = FixedBitSet::with_capacity(n);
    d.index.insert(empty.clone(), 0);
    d.nodes.push(Configuration { members: empty });
    d.out.push(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let current = d.nodes[i].members.clone();
        for x in e.events() {
            let xi = x.index();
            if current.contains(xi)
                || !d.strict_down[xi].is_subset(&current)
                || !e.conflict_set(x).is_disjoint(&current)
            {
                continue;
            }
            let mut next = current.clone();
            next.insert(xi);
            let j = match d.index.get(&next) {
                Some(&j) => j,
                None => {
                    if d.nodes.len() == cap {
                        return Err(DomainError::DomainTooLarge(cap));
                    }
                    let j = d.nodes.len();
                    d.index.insert(next.clone(), j);
                    d.nodes.push(Configuration { members: next });
                    d.out.push(Vec::new());
                    queue.push_back(j);
                    j
                }
            };
            d.out[i].push(d.edges.len());
            d.edges.push(DomainEdge { from: i, to: j, event: x });
        }
    }
    Ok(d)
}

impl DomainGraph {
    pub fn nodes(&self) -> &[Configuration] {
        &self.nodes
    }

    pub fn edges(&self) -> &[DomainEdge] {
        &self.edges
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn event_count(&self) -> usize {
        self.names.len()
    }

    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = &DomainEdge> + '_ {
        self.out[node].iter().map(|&k| &self.edges[k])
    }

    pub fn node_of(&self, members: &FixedBitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    fn edge_adding(&self, node: usize, x: EventId) -> Option<usize> {
        self.out[node].iter().copied().find(|&k| self.edges[k].event == x)
    }

    /// Largest number of upper covers of a configuration.
    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Text label of a node, e.g. `{a,b}`.
    pub fn node_label(&self, node: usize) -> String {
        let names: Vec<&str> = self.nodes[node]
            .members
            .ones()
            .map(|i| self.names[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

pub fn max_out_degree(d: &DomainGraph) -> usize {
    d.max_out_degree()
}

/// Symbol per Hasse edge, indexed like [`DomainGraph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub alphabet: Vec<String>,
    pub symbols: Vec<usize>,
}

/// Colours every edge `I < I + {x}` with the symbol of `x`.
pub fn lift_labelling(d: &DomainGraph, lam: &Labelling) -> Result<EdgeColoring, DomainError> {
    if lam.len() != d.event_count() {
        return Err(DomainError::PartialLabelling {
            expected: d.event_count(),
            got: lam.len(),
        });
    }
    Ok(EdgeColoring {
        alphabet: lam.alphabet().to_vec(),
        symbols: d.edges.iter().map(|edge| lam.symbol_index(edge.event)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeViolation {
    /// Two out-edges of `node` share a symbol.
    NonDeterministic { node: usize, first: EventId, second: EventId },
    /// The square on `bottom` spanned by `x` and `y` has mismatched sides.
    NonConcurrentSquare { bottom: usize, x: EventId, y: EventId },
    /// The colouring does not have one symbol per edge.
    NotTotal { edges: usize, symbols: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoringReport {
    pub deterministic: bool,
    pub concurrent: bool,
    pub violations: Vec<EdgeViolation>,
}

pub fn verify_edge_coloring(d: &DomainGraph, ec: &EdgeColoring) -> EdgeColoringReport {
    if ec.symbols.len() != d.edges.len() {
        return EdgeColoringReport {
            deterministic: false,
            concurrent: false,
            violations: vec![EdgeViolation::NotTotal {
                edges: d.edges.len(),
                symbols: ec.symbols.len(),
            }],
        };
    }
    let mut violations = Vec::new();
    let mut deterministic = true;
    let mut concurrent = true;
    for (node, out) in d.out.iter().enumerate() {
        for (i, &k1) in out.iter().enumerate() {
            for &k2 in &out[i + 1..] {
                let (e1, e2) = (d.edges[k1], d.edges[k2]);
                if ec.symbols[k1] == ec.symbols[k2] {
                    deterministic = false;
                    violations.push(EdgeViolation::NonDeterministic {
                        node,
                        first: e1.event,
                        second: e2.event,
                    });
                }
                let mut top = d.nodes[e1.to].members.clone();
                top.insert(e2.event.index());
                if d.node_of(&top).is_none() {
                    continue;
                }
                // Opposite sides: (I, I+x) with (I+y, I+x+y), and symmetrically.
                let across_x = d.edge_adding(e2.to, e1.event);
                let across_y = d.edge_adding(e1.to, e2.event);
                let ok = matches!((across_x, across_y), (Some(ax), Some(ay))
                    if ec.symbols[ax] == ec.symbols[k1] && ec.symbols[ay] == ec.symbols[k2]);
                if !ok {
                    concurrent = false;
                    violations.push(EdgeViolation::NonConcurrentSquare {
                        bottom: node,
                        x: e1.event,
                        y: e2.event,
                    });
                }
            }
        }
    }
    EdgeColoringReport {
        deterministic,
        concurrent,
        violations,
    }
}

/// Reads `lambda(x)` off the edge from the strict past of `x` to its
/// principal ideal.
pub fn labelling_from_edge_coloring(d: &DomainGraph, ec: &EdgeColoring) -> Result<Labelling, DomainError> {
    if !verify_edge_coloring(d, ec).concurrent {
        return Err(DomainError::NotConcurrent);
    }
    let mut assignment = Vec::with_capacity(d.event_count());
    for (i, past) in d.strict_down.iter().enumerate() {
        let x = EventId::new(i);
        let edge = d
            .node_of(past)
            .and_then(|node| d.edge_adding(node, x))
            .ok_or_else(|| DomainError::MissingEdge(d.names[i].clone()))?;
        assignment.push(ec.symbols[edge]);
    }
    if d.edges.iter().zip(&ec.symbols).any(|(edge, &s)| assignment[edge.event.index()] != s) {
        return Err(DomainError::NotConcurrent);
    }
    Labelling::new(ec.alphabet.clone(), assignment).map_err(|_| DomainError::NotConcurrent)
}
