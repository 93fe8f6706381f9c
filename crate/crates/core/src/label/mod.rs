//! Nice labellings: the verifier and every labelling strategy.

mod basic;
mod quotient;
mod stratified;
mod tree;

pub use basic::{label_degree2, label_dilworth, label_exact};
pub use quotient::{label_quotient, label_simple12, quotient_graph, simple12_partition, Partition, Simple12Parts};
pub use stratified::{label_stratified, skewness, Stratifying};
pub use tree::{
    label_forest3, label_forest3_traced, label_tree, neighborhood_sets, tree_order, Clause, NeighborhoodSets,
    TreeLabelling, TreeOrder, TreeStep,
};

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::chordal::ChordalError;
use crate::graph::GraphError;
use crate::structure::{EventId, EventStructure, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("PartialLabelling: labelling covers {got} events, structure has {expected}")]
    PartialLabelling { expected: usize, got: usize },
    #[error("DuplicateSymbol: `{0}` appears twice in the alphabet")]
    DuplicateSymbol(String),
    #[error("SymbolOutOfRange: symbol index {0} is outside the alphabet")]
    SymbolOutOfRange(usize),
    #[error("NotAForest: `{0}` has more than one lower cover")]
    NotAForest(String),
    #[error("DegreeTooHigh: degree {degree} exceeds {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("NotATree: {0}")]
    NotATree(String),
    #[error("InternalContradiction: {0}")]
    InternalContradiction(String),
    #[error("NotStratifying: `{0}` and `{1}` share a level but are comparable")]
    NotStratifying(String, String),
    #[error("NotSimple: the structure is not graded or has a 3-clique without a minimal conflict")]
    NotSimple,
    #[error("GreedyAssertionFailed: {0}")]
    GreedyAssertionFailed(String),
    #[error("UnexpectedOddCycle: a degree-2 structure has a non-bipartite graph")]
    UnexpectedOddCycle,
    #[error("InvalidPartition: {0}")]
    InvalidPartition(String),
    #[error("ImproperClassColoring: colouring of class {0} is not proper")]
    ImproperClassColoring(usize),
    #[error("ImproperQuotientColoring: colouring of the quotient graph is not proper")]
    ImproperQuotientColoring,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Chordal(#[from] ChordalError),
}

/// A total map from events to the symbols of an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    alphabet: Vec<String>,
    assignment: Vec<usize>,
}

impl Labelling {
    pub fn new(alphabet: Vec<String>, assignment: Vec<usize>) -> Result<Self, LabelError> {
        let mut seen = HashSet::new();
        for s in &alphabet {
            if !seen.insert(s.as_str()) {
                return Err(LabelError::DuplicateSymbol(s.clone()));
            }
        }
        if let Some(&bad) = assignment.iter().find(|&&i| i >= alphabet.len()) {
            return Err(LabelError::SymbolOutOfRange(bad));
        }
        Ok(Self { alphabet, assignment })
    }

    /// Symbols `a0, a1, ..` numbered by first appearance of the raw values.
    pub fn canonical<T: PartialEq>(raw: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let assignment = raw
            .iter()
            .map(|v| match seen.iter().position(|s| *s == v) {
                Some(i) => i,
                None => {
                    seen.push(v);
                    seen.len() - 1
                }
            })
            .collect();
        Self {
            alphabet: (0..seen.len()).map(symbol_name).collect(),
            assignment,
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn symbol(&self, x: EventId) -> &str {
        &self.alphabet[self.assignment[x.index()]]
    }

    pub fn symbol_index(&self, x: EventId) -> usize {
        self.assignment[x.index()]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Number of distinct symbols actually assigned.
    pub fn symbols_used(&self) -> usize {
        self.assignment.iter().collect::<HashSet<_>>().len()
    }

    /// Keeps the first `n` events.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            assignment: self.assignment[..n].to_vec(),
        }
    }
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.assignment.iter().map(|&i| self.alphabet[i].as_str()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Name of the `i`-th canonical symbol.
pub fn symbol_name(i: usize) -> String {
    format!("a{i}")
}

/// Orthogonal pairs sharing a symbol; empty iff `lam` is a nice labelling.
pub fn verify_nice(e: &EventStructure, lam: &Labelling) -> Result<Vec<(EventId, EventId)>, LabelError> {
    if lam.len() != e.len() {
        return Err(LabelError::PartialLabelling {
            expected: e.len(),
            got: lam.len(),
        });
    }
    Ok(e
        .orthogonal_pairs()
        .filter(|&(a, b)| lam.symbol_index(a) == lam.symbol_index(b))
        .collect())
}

pub(crate) fn check_degree(e: &EventStructure, max: usize) -> Result<usize, LabelError> {
    let degree = crate::graph::degree(e);
    if degree > max {
        Err(LabelError::DegreeTooHigh { degree, max })
    } else {
        Ok(degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn verify_examples() {
        let fork = fixtures::fork();
        let lam = Labelling::canonical(&["A", "A", "B", "A", "B"]);
        assert!(verify_nice(&fork, &lam).unwrap().is_empty());

        let conf = fixtures::pair_conf();
        let lam = Labelling::canonical(&["A", "A"]);
        assert_eq!(verify_nice(&conf, &lam).unwrap(), vec![(EventId::new(0), EventId::new(1))]);

        let chain = fixtures::chain3();
        let lam = Labelling::canonical(&["A", "A", "A"]);
        assert!(verify_nice(&chain, &lam).unwrap().is_empty());

        assert_eq!(
            verify_nice(&chain, &Labelling::canonical(&["A"])).unwrap_err(),
            LabelError::PartialLabelling { expected: 3, got: 1 }
        );
    }

    #[test]
    fn labelling_validation() {
        assert!(matches!(
            Labelling::new(vec!["a".into(), "a".into()], vec![0]),
            Err(LabelError::DuplicateSymbol(_))
        ));
        assert!(matches!(
            Labelling::new(vec!["a".into()], vec![1]),
            Err(LabelError::SymbolOutOfRange(1))
        ));
        let lam = Labelling::canonical(&[5, 3, 5]);
        assert_eq!(lam.alphabet(), &["a0", "a1"]);
        assert_eq!(lam.symbols_used(), 2);
        assert_eq!(lam.to_string(), "[a0 a1 a0]");
    }
}
