//! Text formats for fields, polynomials, matrices and divisor lists.
//!
//! Polynomials are comma-separated coefficient codes, constant term first
//! (`"1,1,0,1"` is `x^3+x+1`). Matrices separate rows with `;` and entries
//! with `,`. Parse errors carry the byte offset of the offending token.

use crate::algebra::{poly_factor, FieldSpec, Poly};
use crate::codes::Subspace;
use crate::error::{Error, Result};
use crate::matrixcore::{ElementaryDivisor, Mat};

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Splits `s` on `sep`, yielding each trimmed piece with its absolute offset.
fn pieces(s: &str, sep: char, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), sep))) {
        if c == sep {
            let raw = &s[start..i];
            let lead = raw.len() - raw.trim_start().len();
            out.push((base + start + lead, raw.trim()));
            start = i + c.len_utf8();
        }
    }
    out
}

fn parse_codes(field: &FieldSpec, s: &str, base: usize) -> Result<Vec<u32>> {
    pieces(s, ',', base)
        .into_iter()
        .map(|(pos, tok)| {
            if tok.is_empty() {
                return Err(parse_err(pos, "empty entry"));
            }
            let v: u32 = tok.parse().map_err(|_| parse_err(pos, format!("invalid element code {tok:?}")))?;
            if v >= field.size() {
                return Err(parse_err(pos, format!("element code {v} out of range for GF({})", field.size())));
            }
            Ok(v)
        })
        .collect()
}

fn parse_small(tok: &str, pos: usize, what: &str) -> Result<u32> {
    tok.trim().parse().map_err(|_| parse_err(pos, format!("invalid {what} {tok:?}")))
}

/// Parses `"p"` or `"p^m"` with an optional modulus over the prime field.
pub fn parse_field(designator: &str, modulus: Option<&str>) -> Result<FieldSpec> {
    let (p, m) = match designator.split_once('^') {
        Some((p, m)) => (parse_small(p, 0, "characteristic")?, parse_small(m, p.len() + 1, "extension degree")?),
        None => (parse_small(designator, 0, "field size")?, 1),
    };
    let modulus = match modulus {
        Some(s) => {
            let prime = FieldSpec::prime(p)?;
            Some(parse_codes(&prime, s, 0)?)
        }
        None => None,
    };
    FieldSpec::new(p, m, modulus.as_deref())
}

pub fn parse_poly(field: &FieldSpec, s: &str) -> Result<Poly> {
    parse_poly_at(field, s, 0)
}

fn parse_poly_at(field: &FieldSpec, s: &str, base: usize) -> Result<Poly> {
    if s.trim().is_empty() {
        return Err(parse_err(base, "empty polynomial"));
    }
    Poly::new(field, parse_codes(field, s, base)?)
}

pub fn parse_matrix(field: &FieldSpec, s: &str) -> Result<Mat> {
    if s.trim().is_empty() {
        return Err(parse_err(0, "empty matrix"));
    }
    let mut rows = Vec::new();
    for (pos, row) in pieces(s, ';', 0) {
        let r = parse_codes(field, row, pos)?;
        if let Some(first) = rows.first().map(Vec::len) {
            if r.len() != first {
                return Err(parse_err(pos, format!("row has {} entries, expected {first}", r.len())));
            }
        }
        rows.push(r);
    }
    Mat::from_rows(field, &rows)
}

pub fn parse_subspace(field: &FieldSpec, s: &str) -> Result<Subspace> {
    Subspace::from_rows(&parse_matrix(field, s)?)
}

/// Parses `;`-separated prime-power polynomials into elementary divisors,
/// keeping the given order.
pub fn parse_divisors(field: &FieldSpec, s: &str) -> Result<Vec<ElementaryDivisor>> {
    let mut out = Vec::new();
    for (pos, tok) in pieces(s, ';', 0) {
        let f = parse_poly_at(field, tok, pos)?;
        if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
            return Err(parse_err(pos, format!("divisor {} must be monic of positive degree", f.pretty())));
        }
        let mut factors = poly_factor(&f)?;
        if factors.len() != 1 {
            return Err(parse_err(pos, format!("divisor {} is not a power of an irreducible", f.pretty())));
        }
        let (base, exponent) = factors.pop().expect("one factor");
        out.push(ElementaryDivisor::new(base, exponent));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_designators() {
        assert_eq!(parse_field("2", None).unwrap().size(), 2);
        let f4 = parse_field("2^2", None).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(parse_field("3^2", Some("2,2,1")).unwrap().size(), 9);
        assert_eq!(parse_field("4", None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(parse_field("2^x", None), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn polynomial_round_trip() {
        let f = FieldSpec::prime(2).unwrap();
        let p = parse_poly(&f, "1,1,0,1").unwrap();
        assert_eq!(p.pretty(), "x^3+x+1");
        assert_eq!(parse_poly(&f, &p.to_string()).unwrap(), p);
        assert_eq!(parse_poly(&f, " 1, 0 ,1").unwrap().pretty(), "x^2+1");
    }

    #[test]
    fn positions_are_reported() {
        let f = FieldSpec::prime(2).unwrap();
        assert_eq!(parse_poly(&f, "1,,1").unwrap_err(), Error::Parse { pos: 2, msg: "empty entry".into() });
        assert!(matches!(parse_poly(&f, "1,2"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_matrix(&f, "1,0;0,a"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_matrix(&f, "1,0;0"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_divisors(&f, "1,1,1;0,1,1"), Err(Error::Parse { pos: 6, .. })));
    }

    #[test]
    fn matrices_and_subspaces() {
        let f = FieldSpec::prime(2).unwrap();
        let a = parse_matrix(&f, "0,1,0;0,0,1;1,1,0").unwrap();
        assert_eq!(a.to_string(), "0,1,0;0,0,1;1,1,0");
        assert_eq!(parse_subspace(&f, "1,1,0;1,0,0").unwrap().basis().to_string(), "1,0,0;0,1,0");
    }

    #[test]
    fn divisor_lists() {
        let f = FieldSpec::prime(2).unwrap();
        let d = parse_divisors(&f, "1,1,0,1;1,0,1").unwrap();
        assert_eq!(d[0], ElementaryDivisor::new(parse_poly(&f, "1,1,0,1").unwrap(), 1));
        assert_eq!(d[1], ElementaryDivisor::new(parse_poly(&f, "1,1").unwrap(), 2));
        assert!(parse_divisors(&f, "0,1,1").is_err());
    }
}
