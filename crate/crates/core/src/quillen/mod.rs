//! The spectral-sequence side of the stability argument: the E¹ page built
//! from flag stabilizers, the shape of d¹, and the comparison tools.

mod e1;
mod filtered;
mod pipeline;
mod transfer;

pub use e1::{d1_pattern_check, e1_page, D1Report, D1Step, E1Entry, E1Page};
pub use filtered::{
    counter_instance, random_comparison_instance, verify_filtered_comparison, FilteredChainComplex,
    FilteredComparisonReport, FilteredMapData, RelativeCheck,
};
pub use transfer::{verify_orbit_quotient_transfer, word_transfer_check, word_transfer_instance, TransferReport};
pub use pipeline::{stability_pipeline, PipelineReport};
