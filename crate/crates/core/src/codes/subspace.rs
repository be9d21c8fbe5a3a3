use std::fmt;

use crate::algebra::FieldSpec;
use crate::error::{Error, Result};
use crate::matrixcore::Mat;

/// A point of the Grassmannian: the row space of a full-rank matrix, held
/// as its reduced row echelon basis. Equal subspaces have identical bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    /// Row space of `rows`, canonicalized; zero rows are dropped.
    pub fn from_rows(rows: &Mat) -> Result<Self> {
        let red = rows.rref();
        if red.rank == 0 {
            return Err(Error::ZeroSubspace);
        }
        let keep: Vec<usize> = (0..red.rank).collect();
        Ok(Self { basis: red.rref.select(&keep, 0..rows.cols()) })
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.basis.cols()
    }

    /// Dimension of the subspace.
    pub fn k(&self) -> usize {
        self.basis.rows()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.k()).map(|r| self.basis.row(r).iter().position(|&v| v != 0).expect("basis rows are nonzero")).collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!("subspaces of F^{} and F^{}", self.n(), other.n())));
        }
        Ok(())
    }

    /// The right action `rowsp(U A)` for invertible `A`.
    pub fn act(&self, a: &Mat) -> Result<Self> {
        if a.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if !a.is_square() || a.rows() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "acting on F^{} with a {}x{} matrix",
                self.n(),
                a.rows(),
                a.cols()
            )));
        }
        if !a.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(self.act_unchecked(a))
    }

    /// Action by a matrix the caller knows to be invertible of matching size.
    pub(crate) fn act_unchecked(&self, a: &Mat) -> Self {
        let img = self.basis.mul_unchecked(a);
        let red = img.rref();
        debug_assert_eq!(red.rank, self.k());
        Self { basis: red.rref }
    }

    pub fn intersection_dim(&self, other: &Self) -> Result<usize> {
        self.check_ambient(other)?;
        Ok(self.intersection_dim_unchecked(other))
    }

    pub(crate) fn intersection_dim_unchecked(&self, other: &Self) -> usize {
        let stacked = self.basis.stack(&other.basis).expect("same ambient space");
        self.k() + other.k() - stacked.rank()
    }

    /// Subspace distance `dim U + dim V - 2 dim(U ∩ V)`.
    pub fn distance(&self, other: &Self) -> Result<usize> {
        self.check_ambient(other)?;
        Ok(self.distance_unchecked(other))
    }

    pub(crate) fn distance_unchecked(&self, other: &Self) -> usize {
        let i = self.intersection_dim_unchecked(other);
        self.k() + other.k() - 2 * i
    }
}

pub fn subspace_from_rows(rows: &Mat) -> Result<Subspace> {
    Subspace::from_rows(rows)
}

pub fn act(u: &Subspace, a: &Mat) -> Result<Subspace> {
    u.act(a)
}

pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    u.distance(v)
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rowsp[{}]", self.basis)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(f: &FieldSpec, rows: &[&[u32]]) -> Subspace {
        let m = Mat::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        Subspace::from_rows(&m).unwrap()
    }

    #[test]
    fn canonicalization() {
        let f = FieldSpec::prime(2).unwrap();
        let u = sub(&f, &[&[1, 1, 0], &[1, 0, 0]]);
        assert_eq!(u.basis(), &Mat::from_rows(&f, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap());
        assert_eq!(sub(&f, &[&[1, 0], &[1, 0]]).k(), 1);
        assert_eq!(Subspace::from_rows(&Mat::zeros(&f, 2, 3)), Err(Error::ZeroSubspace));
    }

    #[test]
    fn action_examples() {
        let f = FieldSpec::prime(2).unwrap();
        let a = Mat::from_rows(&f, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap();
        let u = sub(&f, &[&[1, 0, 0]]);
        assert_eq!(u.act(&a).unwrap(), sub(&f, &[&[0, 1, 0]]));
        assert_eq!(u.act(&Mat::identity(&f, 3)).unwrap(), u);
        let a2 = a.mul(&a).unwrap();
        assert_eq!(u.act(&a).unwrap().act(&a).unwrap(), u.act(&a2).unwrap());
        assert_eq!(u.act(&Mat::zeros(&f, 3, 3)), Err(Error::Singular));
        assert!(u.act(&Mat::identity(&f, 2)).is_err());
    }

    #[test]
    fn distance_examples() {
        let f = FieldSpec::prime(2).unwrap();
        let u = sub(&f, &[&[1, 0, 0]]);
        assert_eq!(u.distance(&u).unwrap(), 0);
        assert_eq!(sub(&f, &[&[1, 0]]).distance(&sub(&f, &[&[0, 1]])).unwrap(), 2);
        assert_eq!(u.distance(&sub(&f, &[&[1, 0, 0], &[0, 1, 0]])).unwrap(), 1);
        assert!(u.distance(&sub(&f, &[&[1, 0]])).is_err());
    }
}
