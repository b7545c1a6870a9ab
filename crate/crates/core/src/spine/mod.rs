//! Based graphs at the level of isomorphism classes: the degree filtration,
//! forest collapses, the quotient posets `Q_{n,D}`, loop stabilization and
//! symmetry groups.

pub mod enumerate;
pub mod graph;
pub mod roses;
pub mod symmetry;

pub use enumerate::{
    collapse, enumerate_classes, forest_collapses, quotient_comparison, quotient_poset, GraphClass, QuotientComparison,
    QuotientPoset, MAX_EDGES,
};
pub use graph::{graph_from_text, graph_to_text, BasedGraph, Violation};
pub use roses::{verify_roses, RosesInstance, RosesPart, RosesReport};
pub use symmetry::{
    automorphism_count, stabilizer_stability_check, symmetry_generators, symmetry_group, verify_stabilizer_splitting,
    SplittingReport, SplittingWitness, StabilizerStabilityReport, SYMMETRY_MAX_ORDER,
};
