use serde::Serialize;

use super::{block_structure, Subspace};
use crate::error::Result;
use crate::matrixcore::ElementaryDivisor;

/// Parameters of one component code in a [`CodeReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub block: usize,
    pub divisor: String,
    pub degree: usize,
    pub k: usize,
    pub cardinality: usize,
    pub min_distance: Option<usize>,
    pub stab_order: u64,
    pub max_overlap: usize,
    pub basis: String,
}

/// Summary of the orbit code of a subspace under a block-diagonal generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub group_order: u64,
    pub cardinality: usize,
    pub min_distance: Option<usize>,
    pub distance_distribution: Vec<u64>,
    pub bound_literal: usize,
    pub bound_refined: usize,
    pub lcm_cardinality: u64,
    pub field: String,
    pub block_diagonal: bool,
    pub skipped_blocks: Vec<usize>,
    pub components: Vec<ComponentReport>,
}

pub fn code_report(u: &Subspace, divisors: &[ElementaryDivisor]) -> Result<CodeReport> {
    let bs = block_structure(u, divisors)?;
    let code = bs.code()?;
    let bound = bs.bound()?;
    let components = bs
        .component_codes()?
        .into_iter()
        .map(|c| {
            let block = &bs.blocks()[c.block];
            ComponentReport {
                block: c.block,
                divisor: block.divisor.power().to_string(),
                degree: block.size(),
                k: block.k(),
                cardinality: c.code.cardinality(),
                min_distance: c.code.min_distance().ok(),
                stab_order: c.code.stab_order(),
                max_overlap: bound.overlaps[c.block].expect("component blocks have an overlap"),
                basis: c.code.base().to_string(),
            }
        })
        .collect();
    Ok(CodeReport {
        q: u.field().size(),
        n: u.n(),
        k: u.k(),
        group_order: code.group_order(),
        cardinality: code.cardinality(),
        min_distance: code.min_distance().ok(),
        distance_distribution: code.distance_distribution()?.0,
        bound_literal: bound.literal,
        bound_refined: bound.refined,
        lcm_cardinality: bound.lcm_cardinality,
        field: u.field().designator(),
        block_diagonal: bs.is_block_diagonal(),
        skipped_blocks: bs.skipped_blocks(),
        components,
    })
}
