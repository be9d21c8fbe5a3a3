use std::collections::HashMap;

use super::Subspace;
use crate::algebra::FieldSpec;
use crate::error::{Error, Result};
use crate::groups::{cyclic_group, group_closure, CyclicGroup, GeneratedGroup, DEFAULT_CLOSURE_CAP};
use crate::matrixcore::Mat;

/// The group defining an orbit code.
#[derive(Clone, Debug)]
pub enum CodeGroup {
    Cyclic(CyclicGroup),
    Generated(GeneratedGroup),
}

impl CodeGroup {
    pub fn order(&self) -> u64 {
        match self {
            CodeGroup::Cyclic(g) => g.order(),
            CodeGroup::Generated(g) => g.order(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            CodeGroup::Cyclic(g) => g.dimension(),
            CodeGroup::Generated(g) => g.dimension(),
        }
    }

    pub fn generators(&self) -> Vec<Mat> {
        match self {
            CodeGroup::Cyclic(g) => vec![g.generator().clone()],
            CodeGroup::Generated(g) => g.generators().to_vec(),
        }
    }

    /// Image of `u` under every group element, in the group's element order.
    fn images(&self, u: &Subspace) -> Vec<Subspace> {
        match self {
            CodeGroup::Cyclic(g) => {
                let a = g.generator();
                let mut out = Vec::with_capacity(g.order() as usize);
                let mut cur = u.clone();
                for _ in 0..g.order() {
                    let next = cur.act_unchecked(a);
                    out.push(cur);
                    cur = next;
                }
                out
            }
            CodeGroup::Generated(g) => g.elements().iter().map(|e| u.act_unchecked(e)).collect(),
        }
    }
}

/// Orbit of a subspace under a matrix group.
///
/// `images[j]` is the codebook index of the image of the base point under
/// the j-th group element (powers of the generator for cyclic groups).
#[derive(Clone, Debug)]
pub struct OrbitCode {
    base: Subspace,
    group: CodeGroup,
    codebook: Vec<Subspace>,
    images: Vec<usize>,
    stab_order: u64,
}

/// `(D_0, ..., D_k)`: codewords at distance `2i` from the base point.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(transparent)]
pub struct DistanceDistribution(pub Vec<u64>);

impl DistanceDistribution {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl OrbitCode {
    pub fn new(base: &Subspace, group: CodeGroup) -> Result<Self> {
        if group.dimension() != base.n() {
            return Err(Error::DimensionMismatch(format!(
                "group acts on F^{} but the subspace lives in F^{}",
                group.dimension(),
                base.n()
            )));
        }
        if group.generators()[0].field() != base.field() {
            return Err(Error::FieldMismatch);
        }
        let all = group.images(base);
        let mut index: HashMap<Subspace, usize> = HashMap::new();
        let mut codebook = Vec::new();
        let mut images = Vec::with_capacity(all.len());
        for s in all {
            let next = codebook.len();
            let i = *index.entry(s.clone()).or_insert(next);
            if i == next {
                codebook.push(s);
            }
            images.push(i);
        }
        let order = group.order();
        let stab_direct = images.iter().filter(|&&i| i == 0).count() as u64;
        if stab_direct * codebook.len() as u64 != order {
            return Err(Error::Invariant(format!(
                "orbit-stabilizer: {} codewords, stabilizer {stab_direct}, group order {order}",
                codebook.len()
            )));
        }
        Ok(Self { base: base.clone(), group, codebook, images, stab_order: stab_direct })
    }

    pub fn base(&self) -> &Subspace {
        &self.base
    }

    pub fn group(&self) -> &CodeGroup {
        &self.group
    }

    pub fn field(&self) -> &FieldSpec {
        self.base.field()
    }

    /// Codewords in first-occurrence order along the group elements.
    pub fn codebook(&self) -> &[Subspace] {
        &self.codebook
    }

    pub fn cardinality(&self) -> usize {
        self.codebook.len()
    }

    pub fn group_order(&self) -> u64 {
        self.group.order()
    }

    /// Order of the group's intersection with the stabilizer of the base point.
    pub fn stab_order(&self) -> u64 {
        self.stab_order
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn k(&self) -> usize {
        self.base.k()
    }

    /// Codebook index of the image under the `j`-th group element.
    pub fn image_index(&self, j: usize) -> usize {
        self.images[j]
    }

    /// Minimum distance over non-stabilizing group elements.
    pub fn min_distance(&self) -> Result<usize> {
        if self.codebook.len() < 2 {
            return Err(Error::SingletonCode);
        }
        Ok(self.codebook[1..].iter().map(|c| self.base.distance_unchecked(c)).min().expect("at least two codewords"))
    }

    /// Minimum distance over all pairs of codewords.
    pub fn pairwise_min_distance(&self) -> Result<usize> {
        if self.codebook.len() < 2 {
            return Err(Error::SingletonCode);
        }
        let mut best = usize::MAX;
        for (i, a) in self.codebook.iter().enumerate() {
            for b in &self.codebook[i + 1..] {
                best = best.min(a.distance_unchecked(b));
            }
        }
        Ok(best)
    }

    /// Counts over all group elements, divided by the stabilizer order.
    pub fn distance_distribution(&self) -> Result<DistanceDistribution> {
        let k = self.k();
        let per_codeword: Vec<usize> = self.codebook.iter().map(|c| self.base.distance_unchecked(c)).collect();
        let mut raw = vec![0u64; k + 1];
        for &i in &self.images {
            raw[per_codeword[i] / 2] += 1;
        }
        let stab = self.stab_order;
        if let Some(bad) = raw.iter().find(|&&r| r % stab != 0) {
            return Err(Error::Invariant(format!("raw count {bad} not divisible by stabilizer order {stab}")));
        }
        let dist: Vec<u64> = raw.iter().map(|r| r / stab).collect();
        if dist[0] != 1 || dist.iter().sum::<u64>() != self.codebook.len() as u64 {
            return Err(Error::Invariant(format!("distribution {dist:?} fails normalization")));
        }
        Ok(DistanceDistribution(dist))
    }
}

/// Orbit code of `u` under the cyclic group `g`.
pub fn orbit_code(u: &Subspace, g: &CyclicGroup) -> Result<OrbitCode> {
    OrbitCode::new(u, CodeGroup::Cyclic(g.clone()))
}

/// Number of powers `A^j`, `0 <= j < N`, fixing `u`.
pub fn stab_intersection_order(u: &Subspace, g: &CyclicGroup) -> Result<u64> {
    Ok(orbit_code(u, g)?.stab_order())
}

/// The conjugate code: base point `U L` under `L^{-1} S L`.
pub fn conjugate_code(code: &OrbitCode, l: &Mat) -> Result<OrbitCode> {
    let l_inv = l.inv()?;
    let base = code.base().act(l)?;
    let conj = |a: &Mat| l_inv.mul_unchecked(a).mul_unchecked(l);
    let group = match code.group() {
        CodeGroup::Cyclic(g) => CodeGroup::Cyclic(cyclic_group(&conj(g.generator()))?),
        CodeGroup::Generated(g) => {
            let gens: Vec<Mat> = g.generators().iter().map(conj).collect();
            CodeGroup::Generated(group_closure(&gens, DEFAULT_CLOSURE_CAP)?)
        }
    };
    OrbitCode::new(&base, group)
}
