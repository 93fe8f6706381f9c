//! Labelling by levels of a stratifying function.
//!
//! Each level is an antichain, coloured with at most three colours through
//! its perfect elimination ordering; pairing that colour with the level
//! modulo `skewness + 1` separates orthogonal events on different levels.

use std::collections::BTreeMap;

use crate::chordal::antichain_chordal_coloring;
use crate::structure::{EventId, EventStructure};

use super::{LabelError, Labelling};

/// A function from events to levels whose level sets are antichains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stratifying {
    /// Height in the order.
    Height,
    /// Number of events strictly below.
    BelowCount,
    /// Explicit level per event, in index order.
    Levels(Vec<usize>),
}

impl Stratifying {
    pub fn levels(&self, e: &EventStructure) -> Vec<usize> {
        match self {
            Stratifying::Height => e.events().map(|x| e.height(x)).collect(),
            Stratifying::BelowCount => e.events().map(|x| e.down_set(x).count_ones(..) - 1).collect(),
            Stratifying::Levels(v) => v.clone(),
        }
    }

    fn checked_levels(&self, e: &EventStructure) -> Result<Vec<usize>, LabelError> {
        let levels = self.levels(e);
        if levels.len() != e.len() {
            return Err(LabelError::PartialLabelling {
                expected: e.len(),
                got: levels.len(),
            });
        }
        for x in e.events() {
            for y in e.events().skip(x.index() + 1) {
                if levels[x.index()] == levels[y.index()] && e.comparable(x, y) {
                    return Err(LabelError::NotStratifying(e.name(x).to_owned(), e.name(y).to_owned()));
                }
            }
        }
        Ok(levels)
    }
}

/// Largest level gap across an orthogonal pair.
pub fn skewness(e: &EventStructure, h: &Stratifying) -> Result<usize, LabelError> {
    let levels = h.checked_levels(e)?;
    Ok(skew_of(e, &levels))
}

fn skew_of(e: &EventStructure, levels: &[usize]) -> usize {
    e.orthogonal_pairs()
        .map(|(a, b)| levels[a.index()].abs_diff(levels[b.index()]))
        .max()
        .unwrap_or(0)
}

pub fn label_stratified(e: &EventStructure, h: &Stratifying) -> Result<Labelling, LabelError> {
    let levels = h.checked_levels(e)?;
    let modulus = skew_of(e, &levels) + 1;
    let mut by_level: BTreeMap<usize, Vec<EventId>> = BTreeMap::new();
    for x in e.events() {
        by_level.entry(levels[x.index()]).or_default().push(x);
    }
    let mut color = vec![0usize; e.len()];
    for members in by_level.values() {
        let c = antichain_chordal_coloring(e, members)?;
        for (i, &x) in c.events.iter().enumerate() {
            color[x.index()] = c.coloring.color(i);
        }
    }
    let raw: Vec<String> = e
        .events()
        .map(|x| format!("c{}q{}", color[x.index()], levels[x.index()] % modulus))
        .collect();
    Ok(Labelling::canonical(&raw))
}
