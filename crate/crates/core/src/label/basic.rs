use crate::graph::{bipartite_two_coloring, chromatic_number, OrthoGraph};
use crate::poset::min_chain_partition;
use crate::structure::EventStructure;

use super::{check_degree, LabelError, Labelling};

/// One symbol per chain of a minimum chain partition.
///
/// Orthogonal events are incomparable and so never share a chain.
pub fn label_dilworth(e: &EventStructure) -> Labelling {
    let mut chain_of = vec![0usize; e.len()];
    for (i, chain) in min_chain_partition(e).iter().enumerate() {
        for &x in chain {
            chain_of[x.index()] = i;
        }
    }
    Labelling::canonical(&chain_of)
}

/// Two-letter labelling of a structure of degree at most 2.
pub fn label_degree2(e: &EventStructure) -> Result<Labelling, LabelError> {
    check_degree(e, 2)?;
    let coloring = bipartite_two_coloring(&OrthoGraph::from_structure(e)).ok_or(LabelError::UnexpectedOddCycle)?;
    Ok(Labelling::canonical(coloring.colors()))
}

/// Optimal labelling from the exact chromatic number.
pub fn label_exact(e: &EventStructure) -> Result<Labelling, LabelError> {
    let (_, coloring) = chromatic_number(&OrthoGraph::from_structure(e))?;
    Ok(Labelling::canonical(coloring.colors()))
}
