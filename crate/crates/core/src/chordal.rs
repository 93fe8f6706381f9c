//! Colouring the subgraph induced by an antichain through a perfect
//! elimination ordering.
//!
//! Degree-3 structures have no straight cycle longer than 3, so antichains
//! induce chordal graphs. Chordality is not assumed: the maximum cardinality
//! search order is checked to be a perfect elimination ordering before it is
//! used, and `NotChordal` is returned otherwise.

use thiserror::Error;

use crate::graph::{Coloring, OrthoGraph};
use crate::structure::{EventId, EventStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordalError {
    #[error("NotAnAntichain: `{0}` and `{1}` are comparable")]
    NotAnAntichain(String, String),
    #[error("NotChordal: elimination ordering fails at `{0}`")]
    NotChordal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntichainColoring {
    /// The antichain in index order; `coloring` is indexed like this list.
    pub events: Vec<EventId>,
    /// Perfect elimination ordering (reverse of the search order).
    pub elimination_order: Vec<EventId>,
    pub coloring: Coloring,
}

/// Maximum cardinality search; returns positions in visit order, ties by
/// lowest index.
pub fn maximum_cardinality_search(g: &OrthoGraph) -> Vec<usize> {
    let n = g.len();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// Checks that `elimination` is a perfect elimination ordering: the later
/// neighbours of every vertex are pairwise adjacent. Returns the first
/// offending vertex otherwise.
pub fn check_perfect_elimination(g: &OrthoGraph, elimination: &[usize]) -> Result<(), usize> {
    let mut pos = vec![0; g.len()];
    for (i, &v) in elimination.iter().enumerate() {
        pos[v] = i;
    }
    for &v in elimination {
        let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        for (i, &a) in later.iter().enumerate() {
            if later[i + 1..].iter().any(|&b| !g.adjacent(a, b)) {
                return Err(v);
            }
        }
    }
    Ok(())
}

pub fn antichain_chordal_coloring(
    e: &EventStructure,
    antichain: &[EventId],
) -> Result<AntichainColoring, ChordalError> {
    let mut events = antichain.to_vec();
    events.sort_unstable();
    events.dedup();
    for (i, &x) in events.iter().enumerate() {
        if let Some(&y) = events[i + 1..].iter().find(|&&y| e.comparable(x, y)) {
            return Err(ChordalError::NotAnAntichain(e.name(x).to_owned(), e.name(y).to_owned()));
        }
    }
    let full = OrthoGraph::from_structure(e);
    let idx: Vec<usize> = events.iter().map(|x| x.index()).collect();
    let g = full.induced(&idx);

    let search = maximum_cardinality_search(&g);
    let elimination: Vec<usize> = search.iter().rev().copied().collect();
    check_perfect_elimination(&g, &elimination)
        .map_err(|v| ChordalError::NotChordal(e.name(events[v]).to_owned()))?;

    let mut raw = vec![usize::MAX; g.len()];
    for &v in &search {
        let taken: Vec<usize> = g.neighbors(v).map(|u| raw[u]).collect();
        raw[v] = (0..).find(|c| !taken.contains(c)).expect("unbounded range");
    }
    Ok(AntichainColoring {
        elimination_order: elimination.iter().map(|&v| events[v]).collect(),
        events,
        coloring: Coloring::normalized(&raw),
    })
}
