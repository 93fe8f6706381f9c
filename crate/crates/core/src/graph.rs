//! The orthogonality graph and the pure graph computations run on it.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bits::BitMatrix;
use crate::structure::{EventId, EventStructure};

/// Default vertex cap for the exact chromatic number search.
pub const DEFAULT_CHROMATIC_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("InstanceTooLarge: {vertices} vertices exceed the exact-colouring cap of {cap}")]
    InstanceTooLarge { vertices: usize, cap: usize },
}

/// Undirected simple graph; vertex `i` is event `i` when built from a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoGraph {
    names: Vec<String>,
    adj: BitMatrix,
}

impl OrthoGraph {
    pub fn from_structure(e: &EventStructure) -> Self {
        Self {
            names: e.names().to_vec(),
            adj: e.orthogonal_table().clone(),
        }
    }

    /// Raw graph from an edge list; self-loops are dropped.
    pub fn from_edges(names: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let mut adj = BitMatrix::new(names.len());
        for &(a, b) in edges {
            if a != b {
                adj.set_sym(a, b);
            }
        }
        Self { names, adj }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj.get(a, b)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.row(v).ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row(v).count_ones(..)
    }

    /// Edges `(a, b)` with `a < b`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj.upper_pairs().collect()
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> OrthoGraph {
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        let mut adj = BitMatrix::new(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    adj.set_sym(i, j);
                }
            }
        }
        OrthoGraph { names, adj }
    }
}

/// Proper vertex colouring with colours `0..colors_used`, no gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    colors_used: usize,
}

impl Coloring {
    /// Renumbers arbitrary colour values by first appearance.
    pub fn normalized(raw: &[usize]) -> Self {
        let mut map: Vec<(usize, usize)> = Vec::new();
        let colors = raw
            .iter()
            .map(|&c| match map.iter().find(|(k, _)| *k == c) {
                Some(&(_, v)) => v,
                None => {
                    map.push((c, map.len()));
                    map.len() - 1
                }
            })
            .collect();
        Self {
            colors,
            colors_used: map.len(),
        }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn colors_used(&self) -> usize {
        self.colors_used
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_proper(&self, g: &OrthoGraph) -> bool {
        self.colors.len() == g.len() && g.edges().iter().all(|&(a, b)| self.colors[a] != self.colors[b])
    }
}

/// Clique number and a maximum clique.
///
/// The witness is the colex-least maximum clique: the one whose largest
/// vertex is smallest, recursively.
pub fn clique_number(g: &OrthoGraph) -> (usize, Vec<usize>) {
    let all: Vec<usize> = (0..g.len()).collect();
    let mut best = Vec::new();
    let mut k = 1;
    while let Some(c) = colex_least_clique(g, &all, k) {
        best = c;
        k += 1;
    }
    (best.len(), best)
}

/// Whether `g` contains a clique with `k` vertices.
pub fn has_clique(g: &OrthoGraph, k: usize) -> bool {
    let all: Vec<usize> = (0..g.len()).collect();
    colex_least_clique(g, &all, k).is_some()
}

/// Largest clique inside `candidates` (sorted), colex-least among maxima.
pub fn max_clique_within(g: &OrthoGraph, candidates: &[usize]) -> Vec<usize> {
    let mut best = Vec::new();
    let mut k = 1;
    while let Some(c) = colex_least_clique(g, candidates, k) {
        best = c;
        k += 1;
    }
    best
}

fn colex_least_clique(g: &OrthoGraph, cands: &[usize], k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    for (i, &v) in cands.iter().enumerate() {
        if i + 1 < k {
            continue;
        }
        let sub: Vec<usize> = cands[..i].iter().copied().filter(|&u| g.adjacent(u, v)).collect();
        if sub.len() + 1 < k {
            continue;
        }
        if let Some(mut c) = colex_least_clique(g, &sub, k - 1) {
            c.push(v);
            return Some(c);
        }
    }
    None
}

/// Greedy colouring in vertex order; an upper bound for the search.
pub fn greedy_coloring(g: &OrthoGraph, order: &[usize]) -> Coloring {
    let mut raw = vec![usize::MAX; g.len()];
    for &v in order {
        raw[v] = least_free_color(g, &raw, v);
    }
    Coloring::normalized(&raw)
}

fn least_free_color(g: &OrthoGraph, raw: &[usize], v: usize) -> usize {
    let taken: Vec<usize> = g.neighbors(v).map(|u| raw[u]).filter(|&c| c != usize::MAX).collect();
    (0..).find(|c| !taken.contains(c)).expect("unbounded range")
}

pub fn chromatic_number(g: &OrthoGraph) -> Result<(usize, Coloring), GraphError> {
    chromatic_number_with_cap(g, DEFAULT_CHROMATIC_CAP)
}

/// Exact chromatic number by iterative deepening on the colour count.
///
/// Each round is a DSATUR-ordered backtracking search in which a vertex may
/// open at most one fresh colour, seeded with a maximum clique coloured
/// `0..omega`. The greedy colouring bounds the rounds from above.
pub fn chromatic_number_with_cap(g: &OrthoGraph, cap: usize) -> Result<(usize, Coloring), GraphError> {
    let n = g.len();
    if n > cap {
        return Err(GraphError::InstanceTooLarge { vertices: n, cap });
    }
    if n == 0 {
        return Ok((0, Coloring::normalized(&[])));
    }
    let (omega, clique) = clique_number(g);
    let order: Vec<usize> = (0..n).collect();
    let greedy = greedy_coloring(g, &order);
    for k in omega..greedy.colors_used() {
        let mut raw = vec![usize::MAX; n];
        for (c, &v) in clique.iter().enumerate() {
            raw[v] = c;
        }
        if dsatur(g, k, &mut raw, omega) {
            let coloring = Coloring::normalized(&raw);
            return Ok((coloring.colors_used(), coloring));
        }
    }
    Ok((greedy.colors_used(), greedy))
}

fn dsatur(g: &OrthoGraph, k: usize, raw: &mut [usize], used: usize) -> bool {
    let n = g.len();
    let mut pick: Option<(usize, usize, usize)> = None;
    for v in (0..n).filter(|&v| raw[v] == usize::MAX) {
        let mut seen = 0u128;
        let mut free_deg = 0;
        for u in g.neighbors(v) {
            match raw[u] {
                usize::MAX => free_deg += 1,
                c => seen |= 1u128 << c.min(127),
            }
        }
        let sat = seen.count_ones() as usize;
        let better = match pick {
            None => true,
            Some((_, s, d)) => sat > s || (sat == s && free_deg > d),
        };
        if better {
            pick = Some((v, sat, free_deg));
        }
    }
    let Some((v, _, _)) = pick else {
        return true;
    };
    let limit = k.min(used + 1);
    for c in 0..limit {
        if g.neighbors(v).any(|u| raw[u] == c) {
            continue;
        }
        raw[v] = c;
        if dsatur(g, k, raw, used.max(c + 1)) {
            return true;
        }
    }
    raw[v] = usize::MAX;
    false
}

/// Breadth-first 2-colouring; `None` iff some component has an odd cycle.
pub fn bipartite_two_coloring(g: &OrthoGraph) -> Option<Coloring> {
    let n = g.len();
    let mut raw = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if raw[root] != usize::MAX {
            continue;
        }
        raw[root] = 0;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v) {
                if raw[u] == usize::MAX {
                    raw[u] = 1 - raw[v];
                    queue.push_back(u);
                } else if raw[u] == raw[v] {
                    return None;
                }
            }
        }
    }
    Some(Coloring::normalized(&raw))
}

/// Convenience: `clique_number` of the structure's graph.
pub fn degree(e: &EventStructure) -> usize {
    clique_number(&OrthoGraph::from_structure(e)).0
}

/// Maximum clique of the graph as event ids.
pub fn max_clique(e: &EventStructure) -> Vec<EventId> {
    clique_number(&OrthoGraph::from_structure(e))
        .1
        .into_iter()
        .map(EventId::new)
        .collect()
}
