//! Partitions of `[n]` indexed by antichains, and the maps between them and
//! copies of a poset in the Boolean lattice.

mod count;
mod maps;
mod types;

pub use count::{
    count_all_modes, count_copies, count_copies_direct, count_weighted_partitions, CopyCounts,
    CopyMode, WeightedPartitionCount, COUNT_CAP,
};
pub use maps::{
    f1_partition, f2_build, shadow_antichain, shadow_partition, shadow_weighting, Correspondence,
    ShadowMap,
};
pub use types::{CopyMap, Partition, Weighting, MAX_GROUND};
