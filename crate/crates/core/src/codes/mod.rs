//! Subspaces, orbit codes and the block-structure bounds.

mod blocks;
mod orbit;
mod report;
mod subspace;

pub use blocks::{
    block_bound, block_bound_refined, block_generator, block_structure, instance_string, lemma_blockdiag_coprime_check,
    lemma_fullrank_coprime_check, BlockBound, BlockDiagReport, BlockStructure, ComponentCode, FullRankReport, SubBlock,
};
pub use orbit::{conjugate_code, orbit_code, stab_intersection_order, CodeGroup, DistanceDistribution, OrbitCode};
pub use report::{code_report, CodeReport, ComponentReport};
pub use subspace::{act, subspace_distance, subspace_from_rows, Subspace};
