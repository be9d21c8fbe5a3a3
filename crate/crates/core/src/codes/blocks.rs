use std::ops::Range;

use serde::Serialize;

use super::{orbit_code, OrbitCode, Subspace};
use crate::algebra::numtheory::{gcd, lcm};
use crate::algebra::{poly_is_irreducible, FieldSpec};
use crate::error::{Error, Result};
use crate::groups::cyclic_group;
use crate::matrixcore::{block_diag, companion, ElementaryDivisor, Mat};

/// One diagonal block of a block-structured generator together with the
/// rows of the subspace basis whose pivots fall inside it.
#[derive(Clone, Debug)]
pub struct SubBlock {
    pub divisor: ElementaryDivisor,
    pub columns: Range<usize>,
    /// Indices into the subspace basis.
    pub rows: Vec<usize>,
    /// The selected rows restricted to `columns`; `None` when no pivot lands here.
    pub matrix: Option<Mat>,
    pub companion: Mat,
}

impl SubBlock {
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    pub fn subspace(&self) -> Option<Subspace> {
        self.matrix.as_ref().map(|m| Subspace::from_rows(m).expect("pivot rows have full rank"))
    }
}

/// A subspace split along the blocks of `diag(companion(p_1^e_1), ...)`.
#[derive(Clone, Debug)]
pub struct BlockStructure {
    subspace: Subspace,
    generator: Mat,
    blocks: Vec<SubBlock>,
}

/// A component orbit code together with its block index.
#[derive(Clone, Debug)]
pub struct ComponentCode {
    pub block: usize,
    pub code: OrbitCode,
}

impl ComponentCode {
    /// `dim(base ∩ base M^j)` for the block companion `M`.
    fn overlap(&self, j: u64) -> usize {
        let n = self.code.cardinality() as u64;
        let base = self.code.base();
        base.intersection_dim_unchecked(&self.code.codebook()[(j % n) as usize])
    }
}

/// Both variants of the block bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockBound {
    /// `2k - 2 Σ v_i` with `v_i` maximized over non-stabilizing component powers.
    pub literal: usize,
    /// `2k - 2 max_j Σ_i overlap_i(j)` over global powers `1 <= j < lcm`.
    pub refined: usize,
    pub lcm_cardinality: u64,
    /// Per-block maximal overlap; `None` for blocks without pivot rows.
    pub overlaps: Vec<Option<usize>>,
}

fn check_divisors(field: &FieldSpec, divisors: &[ElementaryDivisor]) -> Result<()> {
    for d in divisors {
        if d.base.field() != field {
            return Err(Error::FieldMismatch);
        }
        if d.exponent == 0 || !d.base.is_monic() || !poly_is_irreducible(&d.base)? {
            return Err(Error::InvalidField(format!(
                "divisor base {} must be monic irreducible with a positive exponent",
                d.base.pretty()
            )));
        }
        if d.is_power_of_x() {
            return Err(Error::Singular);
        }
    }
    Ok(())
}

/// Block-diagonal generator `diag(companion(p_i^e_i))` in the given order.
pub fn block_generator(field: &FieldSpec, divisors: &[ElementaryDivisor]) -> Result<Mat> {
    if divisors.is_empty() {
        return Err(Error::DimensionMismatch("at least one divisor is required".into()));
    }
    check_divisors(field, divisors)?;
    let blocks = divisors.iter().map(|d| companion(&d.power())).collect::<Result<Vec<_>>>()?;
    block_diag(&blocks)
}

/// Splits `u` along the blocks given by `divisors`. Block `i` receives the
/// basis rows whose pivot column lies in its column range.
pub fn block_structure(u: &Subspace, divisors: &[ElementaryDivisor]) -> Result<BlockStructure> {
    let total: usize = divisors.iter().map(ElementaryDivisor::degree).sum();
    if total != u.n() {
        return Err(Error::DimensionMismatch(format!(
            "divisor degrees sum to {total} but the ambient dimension is {}",
            u.n()
        )));
    }
    let generator = block_generator(u.field(), divisors)?;
    let pivots = u.pivots();
    let mut start = 0;
    let mut blocks = Vec::with_capacity(divisors.len());
    for d in divisors {
        let columns = start..start + d.degree();
        start = columns.end;
        let rows: Vec<usize> = (0..u.k()).filter(|&r| columns.contains(&pivots[r])).collect();
        let matrix = (!rows.is_empty()).then(|| u.basis().select(&rows, columns.clone()));
        blocks.push(SubBlock { divisor: d.clone(), companion: companion(&d.power())?, columns, rows, matrix });
    }
    Ok(BlockStructure { subspace: u.clone(), generator, blocks })
}

impl BlockStructure {
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    pub fn blocks(&self) -> &[SubBlock] {
        &self.blocks
    }

    /// Blocks without pivot rows; these have no component code.
    pub fn skipped_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].k() == 0).collect()
    }

    /// True when every basis row is supported inside its own block.
    pub fn is_block_diagonal(&self) -> bool {
        self.blocks.iter().all(|b| {
            b.rows.iter().all(|&r| {
                let row = self.subspace.basis().row(r);
                row.iter().enumerate().all(|(c, &v)| v == 0 || b.columns.contains(&c))
            })
        })
    }

    /// The orbit code of the whole subspace under the block generator.
    pub fn code(&self) -> Result<OrbitCode> {
        orbit_code(&self.subspace, &cyclic_group(&self.generator)?)
    }

    /// Orbit code of each nonempty block under its companion matrix.
    pub fn component_codes(&self) -> Result<Vec<ComponentCode>> {
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if let Some(s) = b.subspace() {
                out.push(ComponentCode { block: i, code: orbit_code(&s, &cyclic_group(&b.companion)?)? });
            }
        }
        Ok(out)
    }

    pub fn bound(&self) -> Result<BlockBound> {
        let comps = self.component_codes()?;
        Ok(bound_from_components(self.subspace.k(), self.blocks.len(), &comps))
    }
}

fn bound_from_components(k: usize, blocks: usize, comps: &[ComponentCode]) -> BlockBound {
    let mut overlaps = vec![None; blocks];
    let mut l = 1u64;
    for c in comps {
        let n = c.code.cardinality() as u64;
        l = lcm(l, n);
        let v = if n == 1 { c.code.k() } else { (1..n).map(|j| c.overlap(j)).max().expect("n > 1") };
        overlaps[c.block] = Some(v);
    }
    let literal = 2 * k - 2 * overlaps.iter().flatten().sum::<usize>();
    let refined =
        (1..l).map(|j| comps.iter().map(|c| c.overlap(j)).sum::<usize>()).max().map_or(0, |best| 2 * k - 2 * best);
    BlockBound { literal, refined, lcm_cardinality: l, overlaps }
}

/// Literal block bound and the lcm of the component code sizes.
pub fn block_bound(bs: &BlockStructure) -> Result<(usize, u64)> {
    let b = bs.bound()?;
    Ok((b.literal, b.lcm_cardinality))
}

/// Bound from a joint scan over global powers below the lcm of the component sizes.
pub fn block_bound_refined(bs: &BlockStructure) -> Result<usize> {
    Ok(bs.bound()?.refined)
}

fn pairwise_coprime(sizes: &[u64]) -> bool {
    sizes.iter().enumerate().all(|(i, &a)| sizes[i + 1..].iter().all(|&b| gcd(a, b) == 1))
}

fn component_distance(code: &OrbitCode) -> Option<usize> {
    code.min_distance().ok()
}

/// Outcome of checking the equality `d(C) = min_i d(C_i)` for full-rank slices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FullRankReport {
    Skipped { reason: String },
    Holds { distance: usize, component_distances: Vec<Option<usize>> },
    Counterexample { distance: Option<usize>, component_distances: Vec<Option<usize>>, instance: String },
}

/// Compares the orbit code distance with the minimum component distance,
/// where component `i` is the orbit of the full column slice of block `i`.
pub fn lemma_fullrank_coprime_check(u: &Subspace, divisors: &[ElementaryDivisor]) -> Result<FullRankReport> {
    let bs = block_structure(u, divisors)?;
    let k = u.k();
    let mut comps = Vec::with_capacity(divisors.len());
    for b in bs.blocks() {
        if k > b.size() {
            return Ok(FullRankReport::Skipped { reason: format!("k = {k} exceeds block size {}", b.size()) });
        }
        let all: Vec<usize> = (0..k).collect();
        let slice = u.basis().select(&all, b.columns.clone());
        if slice.rank() != k {
            return Ok(FullRankReport::Skipped { reason: format!("slice {:?} is rank deficient", b.columns) });
        }
        comps.push(orbit_code(&Subspace::from_rows(&slice)?, &cyclic_group(&b.companion)?)?);
    }
    let sizes: Vec<u64> = comps.iter().map(|c| c.cardinality() as u64).collect();
    if !pairwise_coprime(&sizes) {
        return Ok(FullRankReport::Skipped { reason: format!("component sizes {sizes:?} are not pairwise coprime") });
    }
    let component_distances: Vec<Option<usize>> = comps.iter().map(component_distance).collect();
    let Some(expected) = component_distances.iter().flatten().min().copied() else {
        return Ok(FullRankReport::Skipped { reason: "every component code is a singleton".into() });
    };
    let distance = component_distance(&bs.code()?);
    if distance == Some(expected) {
        Ok(FullRankReport::Holds { distance: expected, component_distances })
    } else {
        Ok(FullRankReport::Counterexample { distance, component_distances, instance: instance_string(u, divisors) })
    }
}

/// Brute-force distance next to both bound variants for a block-diagonal subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BlockDiagReport {
    Skipped { reason: String },
    Compared { distance: usize, literal: usize, refined: usize, literal_matches: bool, refined_matches: bool },
}

/// Builds `diag(blocks)` and compares its orbit code distance with the
/// literal and refined block bounds.
pub fn lemma_blockdiag_coprime_check(sub_blocks: &[Mat], divisors: &[ElementaryDivisor]) -> Result<BlockDiagReport> {
    if sub_blocks.len() != divisors.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} sub-blocks for {} divisors",
            sub_blocks.len(),
            divisors.len()
        )));
    }
    for (m, d) in sub_blocks.iter().zip(divisors) {
        if m.cols() != d.degree() {
            return Err(Error::DimensionMismatch(format!(
                "sub-block with {} columns for a divisor of degree {}",
                m.cols(),
                d.degree()
            )));
        }
        if m.rows() == 0 || m.rank() != m.rows() {
            return Ok(BlockDiagReport::Skipped { reason: "sub-blocks must have full row rank".into() });
        }
    }
    let field = sub_blocks[0].field();
    let k: usize = sub_blocks.iter().map(Mat::rows).sum();
    let n: usize = sub_blocks.iter().map(Mat::cols).sum();
    let mut full = Mat::zeros(field, k, n);
    let (mut r0, mut c0) = (0, 0);
    for m in sub_blocks {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                full.set(r0 + r, c0 + c, m.get(r, c));
            }
        }
        r0 += m.rows();
        c0 += m.cols();
    }
    let bs = block_structure(&Subspace::from_rows(&full)?, divisors)?;
    let comps = bs.component_codes()?;
    let sizes: Vec<u64> = comps.iter().map(|c| c.code.cardinality() as u64).collect();
    if !pairwise_coprime(&sizes) {
        return Ok(BlockDiagReport::Skipped { reason: format!("component sizes {sizes:?} are not pairwise coprime") });
    }
    let Some(distance) = component_distance(&bs.code()?) else {
        return Ok(BlockDiagReport::Skipped { reason: "the code is a singleton".into() });
    };
    let b = bound_from_components(k, divisors.len(), &comps);
    Ok(BlockDiagReport::Compared {
        distance,
        literal: b.literal,
        refined: b.refined,
        literal_matches: b.literal == distance,
        refined_matches: b.refined == distance,
    })
}

/// Reproducible command-line arguments for an instance.
pub fn instance_string(u: &Subspace, divisors: &[ElementaryDivisor]) -> String {
    let divs: Vec<String> = divisors.iter().map(|d| d.power().to_string()).collect();
    format!(
        "--field {} --n {} --divisors \"{}\" --subspace \"{}\"",
        u.field().designator(),
        u.n(),
        divs.join(";"),
        u.basis()
    )
}
