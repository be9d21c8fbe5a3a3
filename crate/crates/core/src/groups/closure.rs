use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::matrixcore::Mat;

/// Default element cap for [`group_closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A finite matrix group given by generators, with all elements listed in
/// breadth-first discovery order (identity first).
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    generators: Vec<Mat>,
    elements: Vec<Mat>,
}

impl GeneratedGroup {
    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn dimension(&self) -> usize {
        self.elements[0].rows()
    }
}

/// Breadth-first closure of `gens` under right multiplication. In a finite
/// group this is the generated subgroup; inverses come for free.
pub fn group_closure(gens: &[Mat], element_cap: usize) -> Result<GeneratedGroup> {
    let first = gens.first().ok_or_else(|| Error::DimensionMismatch("closure needs at least one generator".into()))?;
    let field = first.field();
    let n = first.rows();
    for g in gens {
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !g.is_square() || g.rows() != n {
            return Err(Error::DimensionMismatch("generators must be square of equal size".into()));
        }
        if !g.is_invertible() {
            return Err(Error::Singular);
        }
    }
    let id = Mat::identity(field, n);
    let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul_unchecked(g);
            if seen.insert(y.clone()) {
                if elements.len() >= element_cap {
                    return Err(Error::ClosureCapExceeded(element_cap));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(GeneratedGroup { generators: gens.to_vec(), elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    #[test]
    fn trivial_group() {
        let f = FieldSpec::prime(2).unwrap();
        let g = group_closure(&[Mat::identity(&f, 3)], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn full_linear_group_of_dimension_three() {
        let f = FieldSpec::prime(2).unwrap();
        let a = Mat::from_rows(&f, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap();
        let g = group_closure(&[a.clone(), a.transpose()], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), (8 - 1) * (8 - 2) * (8 - 4));
        assert_eq!(group_closure(std::slice::from_ref(&a), 100).unwrap().order(), 7);
    }

    #[test]
    fn cap_is_reported() {
        let f = FieldSpec::prime(2).unwrap();
        let a = Mat::from_rows(&f, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(group_closure(&[a.clone(), a.transpose()], 100).unwrap_err(), Error::ClosureCapExceeded(100));
    }

    #[test]
    fn singular_generator_rejected() {
        let f = FieldSpec::prime(2).unwrap();
        assert_eq!(group_closure(&[Mat::zeros(&f, 2, 2)], 10).unwrap_err(), Error::Singular);
    }
}
