//! Δ-complexes, their chain complexes and integral homology.

pub mod chain;
pub mod delta;
pub mod format;
pub mod subcomplex;

pub use chain::{induced_map, ChainComplex, HomologyCoordinates, HomologyProfile};
pub use delta::{DeltaComplex, Simplex};
pub use format::{parse_text, to_text};
pub use subcomplex::{
    intersect_subcomplexes, relative_homology, verify_cover_sphericity, CoverReport, Expectation,
    IntersectionCheck, Subcomplex,
};
