//! Parameter regions and closed-form equilibrium constructions, with the
//! expected quantities every region III equilibrium shares.

mod construct;
mod region;
mod stats;

pub use construct::{
    default_equilibrium, min_cut_mix, partition_equilibrium, region1_equilibrium, region2_equilibrium,
    region3_equilibrium, scaled_equilibrium, Construction, EquilibriumProfile, Partition,
};
pub(crate) use region::require_region_three;
pub use region::{classify_region, partition_threshold, Region};
pub use stats::{
    check_probability_bounds, cut_edge_statistics, equilibrium_quantities, profile_quantities, BoundCheck, CutEdgeStat,
    EquilibriumQuantities,
};
