//! Integral homology of finite groups through the normalized bar complex.

pub mod bar;
pub mod checks;

pub use bar::{
    group_homology, group_homology_capped, homomorphism_induced_map, inclusion_induced_map, BarComplex, BarHomology,
    InducedMap,
    DEFAULT_MAX_CHAIN_RANK,
};
pub use checks::{
    abelianization, conjugation_invariance_check, kunneth_check, stability_check, KunnethDegree, KunnethReport,
    StabilityReport,
};
