//! Seeded random instances shared by the harness and the acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{enumerate_irreducibles, FieldSpec, Poly};
use crate::codes::{lemma_fullrank_coprime_check, FullRankReport, Subspace};
use crate::error::Result;
use crate::matrixcore::{ElementaryDivisor, Mat};

pub fn random_matrix<R: Rng>(field: &FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Mat {
    let q = field.size();
    let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
    Mat::new(field, rows, cols, data).expect("codes are in range")
}

/// Uniform over GL_n(F_q) by rejection.
pub fn random_invertible<R: Rng>(field: &FieldSpec, n: usize, rng: &mut R) -> Mat {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Uniform full-rank `k x n` matrix by rejection.
pub fn random_full_rank<R: Rng>(field: &FieldSpec, k: usize, n: usize, rng: &mut R) -> Mat {
    loop {
        let m = random_matrix(field, k, n, rng);
        if m.rank() == k {
            return m;
        }
    }
}

pub fn random_subspace<R: Rng>(field: &FieldSpec, n: usize, k: usize, rng: &mut R) -> Subspace {
    Subspace::from_rows(&random_full_rank(field, k, n, rng)).expect("full rank")
}

pub fn random_poly<R: Rng>(field: &FieldSpec, max_degree: usize, rng: &mut R) -> Poly {
    let d = rng.gen_range(0..=max_degree);
    let coeffs = (0..=d).map(|_| rng.gen_range(0..field.size())).collect();
    Poly::new(field, coeffs).expect("codes are in range")
}

/// Random monic polynomial of the given degree with nonzero constant term.
pub fn random_unit_poly<R: Rng>(field: &FieldSpec, degree: usize, rng: &mut R) -> Poly {
    let mut coeffs: Vec<u32> = (0..degree).map(|_| rng.gen_range(0..field.size())).collect();
    coeffs[0] = rng.gen_range(1..field.size());
    coeffs.push(1);
    Poly::new(field, coeffs).expect("codes are in range")
}

/// Prime-power divisors `p^e` with `p != x` and `deg(p^e) <= max_degree`.
pub fn divisor_atoms(field: &FieldSpec, max_degree: usize) -> Vec<ElementaryDivisor> {
    let mut atoms = Vec::new();
    for d in 1..=max_degree {
        for p in enumerate_irreducibles(field, d) {
            if p.coeffs() == [0, 1] {
                continue;
            }
            for e in 1..=(max_degree / d) as u32 {
                atoms.push(ElementaryDivisor::new(p.clone(), e));
            }
        }
    }
    atoms
}

/// A block-structured instance: divisors in block order and a subspace.
#[derive(Clone, Debug)]
pub struct BlockInstance {
    pub divisors: Vec<ElementaryDivisor>,
    pub subspace: Subspace,
    pub block_diagonal: bool,
}

fn random_divisors<R: Rng>(
    atoms: &[ElementaryDivisor],
    t_max: usize,
    n_max: usize,
    rng: &mut R,
) -> Vec<ElementaryDivisor> {
    loop {
        let t = rng.gen_range(1..=t_max);
        let divs: Vec<ElementaryDivisor> = (0..t).map(|_| atoms.choose(rng).expect("atoms").clone()).collect();
        let n: usize = divs.iter().map(ElementaryDivisor::degree).sum();
        if (2..=n_max).contains(&n) {
            return divs;
        }
    }
}

/// `diag(blocks)` as a row matrix.
pub fn block_diagonal_rows(field: &FieldSpec, blocks: &[Mat]) -> Mat {
    let k: usize = blocks.iter().map(Mat::rows).sum();
    let n: usize = blocks.iter().map(Mat::cols).sum();
    let mut full = Mat::zeros(field, k, n);
    let (mut r0, mut c0) = (0, 0);
    for m in blocks {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                full.set(r0 + r, c0 + c, m.get(r, c));
            }
        }
        r0 += m.rows();
        c0 += m.cols();
    }
    full
}

/// Full-rank sub-blocks `k_i x d_i` with `1 <= k_i <= d_i`.
pub fn random_sub_blocks<R: Rng>(field: &FieldSpec, divisors: &[ElementaryDivisor], rng: &mut R) -> Vec<Mat> {
    divisors
        .iter()
        .map(|d| {
            let size = d.degree();
            random_full_rank(field, rng.gen_range(1..=size), size, rng)
        })
        .collect()
}

/// Instances over F_2 with at most `t_max` blocks in dimension at most
/// `n_max`, alternating block-diagonal and general subspaces. Instances
/// whose code is a single codeword are redrawn.
pub fn block_instances<R: Rng>(count: usize, t_max: usize, n_max: usize, rng: &mut R) -> Result<Vec<BlockInstance>> {
    let field = FieldSpec::prime(2)?;
    let atoms = divisor_atoms(&field, n_max.min(6));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let divisors = random_divisors(&atoms, t_max, n_max, rng);
        let n: usize = divisors.iter().map(ElementaryDivisor::degree).sum();
        let block_diagonal = out.len() % 2 == 0;
        let subspace = if block_diagonal {
            let blocks = random_sub_blocks(&field, &divisors, rng);
            Subspace::from_rows(&block_diagonal_rows(&field, &blocks))?
        } else {
            let k = rng.gen_range(1..n);
            random_subspace(&field, n, k, rng)
        };
        let bs = crate::codes::block_structure(&subspace, &divisors)?;
        if bs.code()?.cardinality() < 2 {
            continue;
        }
        out.push(BlockInstance { divisors, subspace, block_diagonal: bs.is_block_diagonal() });
    }
    Ok(out)
}

/// Instances meeting the hypotheses of the full-rank coprime equality,
/// with at least two blocks. Gives up after `attempts` draws.
pub fn fullrank_instances<R: Rng>(
    count: usize,
    n_max: usize,
    attempts: usize,
    rng: &mut R,
) -> Result<Vec<(BlockInstance, FullRankReport)>> {
    let field = FieldSpec::prime(2)?;
    let atoms = divisor_atoms(&field, n_max.min(6));
    let mut out = Vec::with_capacity(count);
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        let divisors = random_divisors(&atoms, 3, n_max, rng);
        if divisors.len() < 2 {
            continue;
        }
        let n: usize = divisors.iter().map(ElementaryDivisor::degree).sum();
        let k_max = divisors.iter().map(ElementaryDivisor::degree).min().expect("nonempty");
        let k = rng.gen_range(1..=k_max);
        let subspace = random_subspace(&field, n, k, rng);
        let report = lemma_fullrank_coprime_check(&subspace, &divisors)?;
        if matches!(report, FullRankReport::Skipped { .. }) {
            continue;
        }
        out.push((BlockInstance { divisors, subspace, block_diagonal: false }, report));
    }
    Ok(out)
}
