//! Two small families of matrix groups showing that equal elementary divisors
//! of generators do not make non-cyclic groups conjugate.

use serde::Serialize;

use crate::algebra::FieldSpec;
use crate::error::Result;
use crate::groups::{group_closure, DEFAULT_CLOSURE_CAP};
use crate::matrixcore::{mat_conjugate_test, Mat};

/// `companion(x^3+x+1)`, valid over any field of characteristic 2.
pub fn matrix_a(field: &FieldSpec) -> Result<Mat> {
    Mat::from_rows(field, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]])
}

/// `companion(x^3+x^2+1)`.
pub fn matrix_b1(field: &FieldSpec) -> Result<Mat> {
    Mat::from_rows(field, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 1]])
}

/// A matrix over GF(4) similar to [`matrix_b1`]; code 2 is a root of `x^2+x+1`.
pub fn matrix_b2(field: &FieldSpec) -> Result<Mat> {
    Mat::from_rows(field, &[vec![3, 1, 2], vec![2, 2, 3], vec![0, 1, 0]])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

fn claim(name: &str, holds: bool, detail: String) -> Claim {
    Claim { name: name.into(), holds, detail }
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn general_linear_order(q: u64, n: u32) -> u64 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

/// Evaluates every claim of both examples.
pub fn worked_examples() -> Result<Vec<Claim>> {
    let f2 = FieldSpec::prime(2)?;
    let a = matrix_a(&f2)?;
    let cyclic = group_closure(std::slice::from_ref(&a), DEFAULT_CLOSURE_CAP)?.order();
    let full = group_closure(&[a.clone(), a.transpose()], DEFAULT_CLOSURE_CAP)?.order();
    let gl3 = general_linear_order(2, 3);
    let mut out = vec![
        claim(
            "transpose-similar",
            mat_conjugate_test(&a, &a.transpose())?,
            "A and A^t share their elementary divisor".into(),
        ),
        claim("cyclic-order", cyclic == 7, format!("|<A>| = {cyclic}")),
        claim("transpose-closure", full == gl3, format!("|<A, A^t>| = {full}, |GL_3(F_2)| = {gl3}")),
        claim("not-conjugate-1", cyclic != full, format!("{cyclic} != {full}")),
    ];

    let f4 = FieldSpec::new(2, 2, None)?;
    let a4 = matrix_a(&f4)?;
    let b1 = matrix_b1(&f4)?;
    let b2 = matrix_b2(&f4)?;
    let g1 = group_closure(&[a4.clone(), b1.clone()], DEFAULT_CLOSURE_CAP)?.order();
    let g2 = group_closure(&[a4, b2.clone()], DEFAULT_CLOSURE_CAP)?.order();
    out.push(claim(
        "similar-generators",
        mat_conjugate_test(&b1, &b2)?,
        "B_1 and B_2 share their elementary divisor".into(),
    ));
    out.push(claim("not-conjugate-2", g1 != g2, format!("|<A, B_1>| = {g1}, |<A, B_2>| = {g2}")));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(general_linear_order(2, 3), 168);
        assert_eq!(general_linear_order(2, 2), 6);
        assert_eq!(general_linear_order(3, 1), 2);
    }

    #[test]
    fn all_claims_hold() {
        for c in worked_examples().unwrap() {
            assert!(c.holds, "{c:?}");
        }
    }
}
