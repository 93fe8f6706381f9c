//! Coherent event structures, their orthogonality graph, and nice
//! labellings.
//!
//! ```
//! use eventlab::{fixtures, graph, label};
//!
//! let e = fixtures::fig1();
//! let g = graph::OrthoGraph::from_structure(&e);
//! assert_eq!(graph::clique_number(&g).0, 3);
//! assert_eq!(graph::chromatic_number(&g).unwrap().0, 4);
//! let lam = label::label_simple12(&e).unwrap();
//! assert!(label::verify_nice(&e, &lam).unwrap().is_empty());
//! ```

pub mod bits;
pub mod chordal;
pub mod cycles;
pub mod domain;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod io;
pub mod label;
pub mod poset;
pub mod report;
pub mod structure;

pub use structure::{EventId, EventStructure, EventStructureSpec, RelationKind, StructureError};
