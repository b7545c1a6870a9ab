pub mod complexes;
pub mod error;
pub mod exactlin;
pub mod grouphomology;
pub mod groups;
pub mod quillen;
pub mod spine;
pub mod suites;
pub mod wordcomplexes;

pub use error::{Error, Result};
