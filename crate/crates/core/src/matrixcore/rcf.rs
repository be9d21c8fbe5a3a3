use std::cmp::Ordering;

use super::{block_diag, companion, smith_invariant_factors, Mat};
use crate::algebra::{poly_factor, Poly};
use crate::error::{Error, Result};

/// A prime-power elementary divisor `base^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryDivisor {
    pub base: Poly,
    pub exponent: u32,
}

impl ElementaryDivisor {
    pub fn new(base: Poly, exponent: u32) -> Self {
        Self { base, exponent }
    }

    pub fn power(&self) -> Poly {
        self.base.pow(self.exponent as u64)
    }

    /// `deg(base^exponent)`.
    pub fn degree(&self) -> usize {
        self.base.degree().unwrap_or(0) * self.exponent as usize
    }

    /// True for the divisors `x^e`, which only occur for singular matrices.
    pub fn is_power_of_x(&self) -> bool {
        self.base.coeffs() == [0, 1]
    }
}

/// Canonical order: base ascending (degree first), then exponent descending.
impl Ord for ElementaryDivisor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base.cmp(&other.base).then(other.exponent.cmp(&self.exponent))
    }
}

impl PartialOrd for ElementaryDivisor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rational canonical form: canonically ordered elementary divisors and the
/// block diagonal of their companion matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcfData {
    pub divisors: Vec<ElementaryDivisor>,
    pub n: usize,
    pub matrix: Mat,
}

impl RcfData {
    /// Assembles the canonical form from a multiset of elementary divisors.
    pub fn from_divisors(mut divisors: Vec<ElementaryDivisor>) -> Result<Self> {
        divisors.sort();
        let blocks = divisors.iter().map(|d| companion(&d.power())).collect::<Result<Vec<_>>>()?;
        let matrix = block_diag(&blocks)?;
        Ok(Self { n: matrix.rows(), divisors, matrix })
    }
}

/// Elementary divisors of any square matrix, in canonical order. Singular
/// matrices yield divisors `x^e`.
pub fn elementary_divisors(a: &Mat) -> Result<Vec<ElementaryDivisor>> {
    let mut out = Vec::new();
    for d in smith_invariant_factors(a)? {
        for (base, exponent) in poly_factor(&d)? {
            out.push(ElementaryDivisor { base, exponent });
        }
    }
    out.sort();
    Ok(out)
}

/// Rational canonical form of an invertible matrix.
pub fn rcf(a: &Mat) -> Result<RcfData> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("rational canonical form of a non-square matrix".into()));
    }
    let divisors = elementary_divisors(a)?;
    if divisors.iter().any(ElementaryDivisor::is_power_of_x) {
        return Err(Error::Singular);
    }
    RcfData::from_divisors(divisors)
}

/// Characteristic polynomial: product of the invariant factors of `xI - A`.
pub fn char_poly(a: &Mat) -> Result<Poly> {
    let one = Poly::one(a.field());
    Ok(smith_invariant_factors(a)?.iter().fold(one, |acc, d| acc.mul(d)))
}

/// Minimal polynomial: the last invariant factor of `xI - A`.
pub fn min_poly(a: &Mat) -> Result<Poly> {
    Ok(smith_invariant_factors(a)?.pop().unwrap_or_else(|| Poly::one(a.field())))
}

/// Similarity test: equal canonical divisor sequences.
pub fn mat_conjugate_test(a: &Mat, b: &Mat) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch("conjugacy test needs square matrices of equal size".into()));
    }
    Ok(rcf(a)?.divisors == rcf(b)?.divisors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    fn p(f: &FieldSpec, c: &[u32]) -> Poly {
        Poly::new(f, c.to_vec()).unwrap()
    }

    #[test]
    fn companion_already_canonical() {
        let f = FieldSpec::prime(2).unwrap();
        let g = p(&f, &[1, 1, 0, 1]);
        let c = companion(&g).unwrap();
        let r = rcf(&c).unwrap();
        assert_eq!(r.divisors, vec![ElementaryDivisor::new(g.clone(), 1)]);
        assert_eq!(r.matrix, c);
        assert_eq!(char_poly(&c).unwrap(), g);
        assert_eq!(min_poly(&c).unwrap(), g);
    }

    #[test]
    fn identity_divisors() {
        let f = FieldSpec::prime(2).unwrap();
        let id = Mat::identity(&f, 2);
        let x1 = p(&f, &[1, 1]);
        assert_eq!(
            rcf(&id).unwrap().divisors,
            vec![ElementaryDivisor::new(x1.clone(), 1), ElementaryDivisor::new(x1.clone(), 1)]
        );
        assert_eq!(char_poly(&id).unwrap(), x1.mul(&x1));
        assert_eq!(min_poly(&id).unwrap(), x1);
    }

    #[test]
    fn singular_rejected() {
        let f = FieldSpec::prime(2).unwrap();
        let a = Mat::from_rows(&f, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(rcf(&a), Err(Error::Singular));
        assert!(elementary_divisors(&a).unwrap().iter().any(ElementaryDivisor::is_power_of_x));
    }

    #[test]
    fn conjugacy_examples() {
        let f = FieldSpec::prime(2).unwrap();
        let c = companion(&p(&f, &[1, 1, 1])).unwrap();
        let id = Mat::identity(&f, 2);
        assert!(mat_conjugate_test(&c, &c).unwrap());
        assert!(!mat_conjugate_test(&id, &c).unwrap());
        assert!(mat_conjugate_test(&id, &Mat::identity(&f, 3)).is_err());
    }

    #[test]
    fn exponents_descend_within_a_base() {
        let f = FieldSpec::prime(2).unwrap();
        let x1 = p(&f, &[1, 1]);
        let m = block_diag(&[companion(&x1).unwrap(), companion(&x1.mul(&x1)).unwrap()]).unwrap();
        let r = rcf(&m).unwrap();
        assert_eq!(r.divisors, vec![ElementaryDivisor::new(x1.clone(), 2), ElementaryDivisor::new(x1, 1)]);
        assert_eq!(rcf(&r.matrix).unwrap().divisors, r.divisors);
    }
}
