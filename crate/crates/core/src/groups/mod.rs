//! Finite permutation groups and simplicial actions.

pub mod action;
pub mod families;
pub mod finite;
pub mod perm;

pub use action::SimplicialAction;
pub use families::{signed_symmetric_group, signed_symmetric_group_capped, symmetric_group, weyl_d_group};
pub use finite::{direct_product, FinitePermGroup, GroupSummary, DEFAULT_MAX_ORDER};
pub use perm::Perm;
