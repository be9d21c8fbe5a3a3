//! Smith normal form of `xI - A` over GF(q)[x].

use super::Mat;
use crate::algebra::{FieldSpec, Poly};
use crate::error::{Error, Result};

/// Matrix with polynomial entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    /// The characteristic matrix `xI - A`.
    pub fn characteristic(a: &Mat) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch("characteristic matrix of a non-square matrix".into()));
        }
        let field = a.field();
        let n = a.rows();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let c = field.neg(a.get(i, j));
                let e = if i == j { Poly::from_codes(field, vec![c, 1]) } else { Poly::constant(field, c) };
                entries.push(e);
            }
        }
        Ok(Self { field: field.clone(), rows: n, cols: n, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    fn idx(&self, r: usize, c: usize) -> usize {
        r * self.cols + c
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                let (ia, ib) = (self.idx(a, j), self.idx(b, j));
                self.entries.swap(ia, ib);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                let (ia, ib) = (self.idx(i, a), self.idx(i, b));
                self.entries.swap(ia, ib);
            }
        }
    }

    /// row[target] -= factor * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, factor: &Poly) {
        for j in 0..self.cols {
            let s = self.get(source, j).mul(factor);
            let t = self.idx(target, j);
            self.entries[t] = self.entries[t].sub(&s);
        }
    }

    /// col[target] -= factor * col[source]
    fn col_axpy(&mut self, target: usize, source: usize, factor: &Poly) {
        for i in 0..self.rows {
            let s = self.get(i, source).mul(factor);
            let t = self.idx(i, target);
            self.entries[t] = self.entries[t].sub(&s);
        }
    }

    /// Diagonalizes in place with elementary row and column operations so
    /// that the diagonal forms a divisibility chain of monic polynomials
    /// (zeros last). Returns the diagonal.
    pub fn smith_diagonal(mut self) -> Vec<Poly> {
        let size = self.rows.min(self.cols);
        let mut diag = Vec::with_capacity(size);
        for t in 0..size {
            loop {
                // Smallest-degree nonzero entry of the trailing block becomes the pivot.
                let pivot = (t..self.rows)
                    .flat_map(|i| (t..self.cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| !self.get(i, j).is_zero())
                    .min_by_key(|&(i, j)| self.get(i, j).degree());
                let Some((pi, pj)) = pivot else {
                    break;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let piv = self.get(t, t).clone();

                let mut leftover = false;
                for i in t + 1..self.rows {
                    if self.get(i, t).is_zero() {
                        continue;
                    }
                    let (quot, rem) = self.get(i, t).divmod(&piv).expect("pivot is nonzero");
                    self.row_axpy(i, t, &quot);
                    leftover |= !rem.is_zero();
                }
                for j in t + 1..self.cols {
                    if self.get(t, j).is_zero() {
                        continue;
                    }
                    let (quot, rem) = self.get(t, j).divmod(&piv).expect("pivot is nonzero");
                    self.col_axpy(j, t, &quot);
                    leftover |= !rem.is_zero();
                }
                if leftover {
                    // A remainder of smaller degree than the pivot now sits in row/column t.
                    continue;
                }
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.get(i, j).divisible_by(&piv).expect("pivot is nonzero"))
                });
                match offender {
                    Some(i) => {
                        // Pull the non-divisible row into row t; the next pass reduces it.
                        let minus_one = Poly::constant(&self.field, self.field.neg(1));
                        self.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            diag.push(self.get(t, t).monic());
        }
        diag
    }
}

/// Nonunit invariant factors `d_1 | d_2 | ... | d_r` of `xI - A`, monic.
pub fn smith_invariant_factors(a: &Mat) -> Result<Vec<Poly>> {
    let diag = PolyMat::characteristic(a)?.smith_diagonal();
    Ok(diag.into_iter().filter(|d| d.degree().unwrap_or(0) >= 1).collect())
}
