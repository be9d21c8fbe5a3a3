use std::fmt;
use std::hash::{Hash, Hasher};

use crate::algebra::{FieldSpec, Poly};
use crate::error::{Error, Result};

/// Dense matrix over GF(q), row-major element codes.
#[derive(Clone)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: Mat,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl Mat {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for &c in &data {
            field.check(c)?;
        }
        Ok(Self { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if b != 0 {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        Self { field: f.clone(), rows: self.rows, cols: other.cols, data: out }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Self { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = &self.field;
        Self {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Rows stacked on top of `other`'s rows.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("stacking matrices of different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Submatrix of the given rows restricted to columns `cols`.
    pub fn select(&self, rows: &[usize], cols: std::ops::Range<usize>) -> Self {
        let width = cols.len();
        let mut data = Vec::with_capacity(rows.len() * width);
        for &r in rows {
            data.extend_from_slice(&self.row(r)[cols.clone()]);
        }
        Self { field: self.field.clone(), rows: rows.len(), cols: width, data }
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> RrefResult {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RrefResult { rank: pivots.len(), rref: m, pivot_cols: pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Inverse by Gauss-Jordan on `[A | I]`.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let red = aug.rref();
        if red.pivot_cols.len() < n || red.pivot_cols[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let rows: Vec<usize> = (0..n).collect();
        Ok(red.rref.select(&rows, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut det = 1u32;
        for c in 0..m.rows {
            let Some(p) = (c..m.rows).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("pivot is nonzero");
            for i in c + 1..m.rows {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// `self^e` for a square matrix.
    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// `f(self)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let id = Self::identity(&self.field, n);
        let mut acc = Self::zeros(&self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul_unchecked(self).add(&id.scale(c))?;
        }
        Ok(acc)
    }
}

/// Companion matrix of a monic `f` of degree `s >= 1`: ones on the
/// superdiagonal, last row `(-f_0, ..., -f_{s-1})`.
pub fn companion(f: &Poly) -> Result<Mat> {
    let s = match f.degree() {
        Some(s) if s >= 1 => s,
        _ => return Err(Error::ConstantPolynomial),
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let field = f.field();
    let mut m = Mat::zeros(field, s, s);
    for i in 0..s - 1 {
        m.set(i, i + 1, 1);
    }
    for j in 0..s {
        m.set(s - 1, j, field.neg(f.coeff(j)));
    }
    Ok(m)
}

/// Block-diagonal assembly of square blocks, in the given order.
pub fn block_diag(blocks: &[Mat]) -> Result<Mat> {
    let first = blocks.first().ok_or_else(|| Error::DimensionMismatch("no blocks".into()))?;
    let field = first.field().clone();
    if blocks.iter().any(|b| !b.is_square()) {
        return Err(Error::DimensionMismatch("block-diagonal assembly needs square blocks".into()));
    }
    if blocks.iter().any(|b| *b.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let n: usize = blocks.iter().map(Mat::rows).sum();
    let mut out = Mat::zeros(&field, n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(off + i, off + j, b.get(i, j));
            }
        }
        off += b.rows();
    }
    Ok(out)
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && self.field == other.field
    }
}

impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// The text format: rows separated by `;`, entries by `,`.
impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            (0..self.rows).map(|r| self.row(r).iter().map(u32::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", rows.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn m(f: &FieldSpec, rows: &[&[u32]]) -> Mat {
        Mat::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let f = FieldSpec::prime(3).unwrap();
        let a = m(&f, &[&[1, 2, 0], &[0, 1, 2]]);
        assert_eq!(a.mul(&Mat::identity(&f, 3)).unwrap(), a);
    }

    #[test]
    fn swap_is_an_involution() {
        let f = f2();
        let s = m(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(s.inv().unwrap(), s);
    }

    #[test]
    fn singular_inverse() {
        let f = f2();
        assert_eq!(m(&f, &[&[1, 1], &[1, 1]]).inv(), Err(Error::Singular));
    }

    #[test]
    fn transpose_of_the_order_seven_generator() {
        let f = f2();
        let a = m(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]);
        assert_eq!(a.transpose(), m(&f, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]]));
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let r = m(&f, &[&[1, 1, 0], &[1, 1, 1]]).rref();
        assert_eq!(r.rref, m(&f, &[&[1, 1, 0], &[0, 0, 1]]));
        assert_eq!(r.pivot_cols, vec![0, 2]);
        assert_eq!(r.rank, 2);

        let id = Mat::identity(&f, 4).rref();
        assert_eq!(id.pivot_cols, vec![0, 1, 2, 3]);

        let z = Mat::zeros(&f, 2, 3).rref();
        assert_eq!(z.rank, 0);
        assert!(z.rref.is_zero());
    }

    #[test]
    fn companion_examples() {
        let f = f2();
        let p = Poly::new(&f, vec![1, 1, 0, 1]).unwrap();
        assert_eq!(companion(&p).unwrap(), m(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]));
        assert_eq!(companion(&Poly::new(&f, vec![1, 1]).unwrap()).unwrap(), m(&f, &[&[1]]));
        let f3 = FieldSpec::prime(3).unwrap();
        let p = Poly::new(&f3, vec![1, 0, 1]).unwrap();
        assert_eq!(companion(&p).unwrap(), m(&f3, &[&[0, 1], &[2, 0]]));
        assert_eq!(companion(&Poly::one(&f)), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn block_diag_examples() {
        let f = f2();
        let one = m(&f, &[&[1]]);
        assert_eq!(block_diag(&[one.clone(), one.clone()]).unwrap(), Mat::identity(&f, 2));
        assert_eq!(block_diag(std::slice::from_ref(&one)).unwrap(), one);
        assert!(block_diag(&[m(&f, &[&[1, 0]])]).is_err());
    }

    #[test]
    fn det_and_pow() {
        let f = f2();
        let a = m(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]);
        assert_eq!(a.det().unwrap(), 1);
        assert!(a.pow(7).unwrap().is_identity());
        assert!(!a.pow(1).unwrap().is_identity());
        assert_eq!(m(&f, &[&[1, 1], &[1, 1]]).det().unwrap(), 0);
    }

    #[test]
    fn text_format() {
        let f = f2();
        let a = m(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]);
        assert_eq!(a.to_string(), "0,1,0;0,0,1;1,1,0");
    }
}
