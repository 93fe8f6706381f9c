//! Shape summary of a structure.

use crate::graph::{clique_number, OrthoGraph};
use crate::poset::width;
use crate::structure::EventStructure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralReport {
    pub events: usize,
    pub is_forest: bool,
    pub is_graded: bool,
    pub is_simple: bool,
    pub degree: usize,
    pub height: usize,
    pub width: usize,
    /// `lower_cover_counts[k]` = number of events with exactly `k` lower
    /// covers; always has at least four entries.
    pub lower_cover_counts: Vec<usize>,
}

impl StructuralReport {
    pub fn of(e: &EventStructure) -> Self {
        let g = OrthoGraph::from_structure(e);
        let degree = clique_number(&g).0;
        let is_graded = is_graded(e);
        let mut lower_cover_counts = vec![0; 4];
        for x in e.events() {
            let k = e.lower_covers(x).len();
            if k >= lower_cover_counts.len() {
                lower_cover_counts.resize(k + 1, 0);
            }
            lower_cover_counts[k] += 1;
        }
        Self {
            events: e.len(),
            is_forest: is_forest(e),
            is_graded,
            is_simple: is_graded && degree <= 3 && triangles_contain_minimal_conflict(e),
            degree,
            height: e.max_height(),
            width: width(e),
            lower_cover_counts,
        }
    }

    /// `key: value` lines, the format printed by the CLI.
    pub fn to_key_values(&self) -> String {
        let mut out = format!(
            "events: {}\nis_forest: {}\nis_graded: {}\nis_simple: {}\ndegree: {}\nheight: {}\nwidth: {}\n",
            self.events,
            self.is_forest,
            self.is_graded,
            self.is_simple,
            self.degree,
            self.height,
            self.width
        );
        for (k, count) in self.lower_cover_counts.iter().enumerate() {
            out.push_str(&format!("e{k}: {count}\n"));
        }
        out
    }
}

pub fn is_forest(e: &EventStructure) -> bool {
    e.events().all(|x| e.lower_covers(x).len() <= 1)
}

pub fn is_graded(e: &EventStructure) -> bool {
    e.cover_pairs().all(|(p, c)| e.height(p) + 1 == e.height(c))
}

fn triangles_contain_minimal_conflict(e: &EventStructure) -> bool {
    for (a, b) in e.orthogonal_pairs() {
        let mut common = e.orthogonal_set(a).clone();
        common.intersect_with(e.orthogonal_set(b));
        for c in common.ones().filter(|&c| c > b.index()) {
            let c = crate::structure::EventId::new(c);
            if !(e.minimal_conflict(a, b) || e.minimal_conflict(a, c) || e.minimal_conflict(b, c)) {
                return false;
            }
        }
    }
    true
}
