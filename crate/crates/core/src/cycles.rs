//! Straight cycles: cycles of the orthogonality graph whose vertices form an
//! antichain. Degree-3 structures have none of length 4 or more.

use crate::graph::OrthoGraph;
use crate::structure::{EventId, EventStructure};

/// Default length bound for the straight-cycle search.
pub const DEFAULT_MAX_LEN: usize = 8;

/// Closed vertex sequence `x_0 .. x_n` with `x_n == x_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraightCycle {
    pub vertices: Vec<EventId>,
}

impl StraightCycle {
    /// Number of edges, i.e. distinct vertices.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn render(&self, e: &EventStructure) -> String {
        self.vertices.iter().map(|&x| e.name(x)).collect::<Vec<_>>().join(" ")
    }
}

/// Some straight cycle with length in `4..=max_len`, if any.
pub fn find_straight_cycle(e: &EventStructure, max_len: usize) -> Option<StraightCycle> {
    let g = OrthoGraph::from_structure(e);
    find_straight_cycle_in(&g, |a, b| e.comparable(EventId::new(a), EventId::new(b)), max_len).map(
        |vs| StraightCycle {
            vertices: vs.into_iter().map(EventId::new).collect(),
        },
    )
}

/// Search over an arbitrary graph with an arbitrary comparability predicate.
///
/// Depth-first over simple paths starting at their least vertex whose vertex
/// sets stay antichains. Returns the closed sequence.
pub fn find_straight_cycle_in<F>(g: &OrthoGraph, comparable: F, max_len: usize) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> bool,
{
    if max_len < 4 {
        return None;
    }
    let mut path = Vec::with_capacity(max_len);
    for start in 0..g.len() {
        path.clear();
        path.push(start);
        if extend(g, &comparable, max_len, &mut path) {
            path.push(start);
            return Some(path);
        }
    }
    None
}

fn extend<F>(g: &OrthoGraph, comparable: &F, max_len: usize, path: &mut Vec<usize>) -> bool
where
    F: Fn(usize, usize) -> bool,
{
    let start = path[0];
    let last = *path.last().expect("non-empty path");
    if path.len() >= 4 && g.adjacent(last, start) {
        return true;
    }
    if path.len() == max_len {
        return false;
    }
    let next: Vec<usize> = g
        .neighbors(last)
        .filter(|&v| v > start && !path.contains(&v))
        .filter(|&v| path.iter().all(|&u| !comparable(u, v)))
        .collect();
    for v in next {
        path.push(v);
        if extend(g, comparable, max_len, path) {
            return true;
        }
        path.pop();
    }
    false
}
