//! Brute-force references used to cross-check the algebraic routes.

use std::collections::{BTreeSet, HashSet};

use crate::algebra::{FieldSpec, Poly};
use crate::codes::Subspace;
use crate::error::{Error, Result};
use crate::matrixcore::Mat;

/// Least `e >= 1` with `x^e = 1 mod f`, by repeated multiplication by `x`.
pub fn incremental_poly_order(f: &Poly) -> Result<u64> {
    let d = f.degree().ok_or(Error::ConstantPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if f.coeff(0) == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    let field = f.field();
    let one = Poly::one(field);
    let x = Poly::x(field);
    let bound = (field.size() as u64).pow(d as u32);
    let mut cur = x.rem(f)?;
    for e in 1..=bound {
        if cur == one {
            return Ok(e);
        }
        cur = cur.mul(&x).rem(f)?;
    }
    Err(Error::Invariant(format!("no order found for {} below {bound}", f.pretty())))
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `d` over F_q: `(1/d) sum_{e|d} mu(d/e) q^e`.
pub fn irreducible_count(q: u64, d: u64) -> u64 {
    let total: i64 = (1..=d).filter(|e| d.is_multiple_of(*e)).map(|e| mobius(d / e) * q.pow(e as u32) as i64).sum();
    (total / d as i64) as u64
}

/// Smallest `j >= 1` with `A^j = I`.
pub fn incremental_matrix_order(a: &Mat) -> u64 {
    let mut cur = a.clone();
    let mut j = 1;
    while !cur.is_identity() {
        cur = cur.mul_unchecked(a);
        j += 1;
    }
    j
}

/// Number of powers `A^j`, `0 <= j < ord(A)`, fixing `u`, by direct powering.
pub fn direct_stabilizer_count(u: &Subspace, a: &Mat) -> Result<u64> {
    let n = incremental_matrix_order(a);
    let mut power = Mat::identity(a.field(), a.rows());
    let mut count = 0;
    for _ in 0..n {
        if Subspace::from_rows(&u.basis().mul(&power)?)? == *u {
            count += 1;
        }
        power = power.mul(a)?;
    }
    Ok(count)
}

/// Every element of GL_n(F_q), in lexicographic order of entries.
pub fn general_linear_group(field: &FieldSpec, n: usize) -> Vec<Mat> {
    let q = field.size();
    let cells = n * n;
    let total = (q as u64).pow(cells as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut data = vec![0u32; cells];
        for v in data.iter_mut().rev() {
            *v = (code % q as u64) as u32;
            code /= q as u64;
        }
        let m = Mat::new(field, n, n, data).expect("codes are in range");
        if m.is_invertible() {
            out.push(m);
        }
    }
    out
}

fn element_set(elements: impl Iterator<Item = Mat>) -> BTreeSet<Vec<u32>> {
    elements.map(|m| m.data().to_vec()).collect()
}

/// Conjugacy classes of cyclic subgroups of GL_n(F_q) by exhaustive
/// conjugation. Feasible for `q^(n^2)` up to a few thousand.
pub fn cyclic_subgroup_classes(field: &FieldSpec, n: usize) -> Vec<Vec<BTreeSet<Vec<u32>>>> {
    let gl = general_linear_group(field, n);
    let inverses: Vec<Mat> = gl.iter().map(|l| l.inv().expect("invertible")).collect();
    let mut subgroups: Vec<(BTreeSet<Vec<u32>>, Mat)> = Vec::new();
    let mut seen = HashSet::new();
    for g in &gl {
        let order = incremental_matrix_order(g);
        let set = element_set((0..order).map(|j| g.pow(j).expect("square")));
        if seen.insert(set.clone()) {
            subgroups.push((set, g.clone()));
        }
    }
    let mut classified = HashSet::new();
    let mut classes = Vec::new();
    for (set, g) in &subgroups {
        if classified.contains(set) {
            continue;
        }
        let mut class = BTreeSet::new();
        for (l, l_inv) in gl.iter().zip(&inverses) {
            let h = l_inv.mul_unchecked(g).mul_unchecked(l);
            let order = incremental_matrix_order(&h);
            class.insert(element_set((0..order).map(|j| h.pow(j).expect("square"))));
        }
        classified.extend(class.iter().cloned());
        classes.push(class.into_iter().collect());
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklace_counts() {
        assert_eq!(irreducible_count(2, 1), 2);
        assert_eq!(irreducible_count(2, 3), 2);
        assert_eq!(irreducible_count(2, 4), 3);
        assert_eq!(irreducible_count(3, 2), 3);
        assert_eq!(irreducible_count(4, 2), 6);
    }

    #[test]
    fn gl_sizes() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(general_linear_group(&f2, 2).len(), 6);
        assert_eq!(general_linear_group(&f2, 3).len(), 168);
        assert_eq!(general_linear_group(&FieldSpec::prime(3).unwrap(), 2).len(), 48);
    }

    #[test]
    fn gl2_f2_has_three_cyclic_classes() {
        let f2 = FieldSpec::prime(2).unwrap();
        let classes = cyclic_subgroup_classes(&f2, 2);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c[0].len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }
}
