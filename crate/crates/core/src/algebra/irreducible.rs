//! Irreducibility, enumeration, factorization and polynomial order.

use std::sync::Arc;

use super::numtheory::prime_factors;
use super::{FieldSpec, Poly};
use crate::error::{Error, Result};

fn monic_count(q: u64, d: usize) -> usize {
    q.checked_pow(d as u32)
        .and_then(|n| usize::try_from(n).ok())
        .filter(|&n| n <= 1 << 26)
        .unwrap_or_else(|| panic!("enumerating monic polynomials of degree {d} over GF({q}) is beyond resource limits"))
}

/// Coefficients of the monic degree-`d` polynomial with index `code`
/// (base-q digits, constant term least significant).
fn monic_from_code(q: u64, d: usize, mut code: u64) -> Vec<u32> {
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push((code % q) as u32);
        code /= q;
    }
    c.push(1);
    c
}

fn monic_code(q: u64, coeffs: &[u32]) -> u64 {
    coeffs[..coeffs.len() - 1].iter().rev().fold(0, |acc, &c| acc * q + c as u64)
}

/// All monic irreducibles of degree exactly `d`, in ascending [`Poly`] order
/// (for fixed degree: the base-q integer formed by the coefficients).
///
/// Built by a sieve: every product of a lower-degree irreducible with a
/// monic cofactor is struck out.
pub fn enumerate_irreducibles(field: &FieldSpec, d: usize) -> Vec<Poly> {
    assert!(d >= 1, "degree must be positive");
    let list = match field.irreducible_cache(d) {
        Some(list) => list,
        None => {
            let list = Arc::new(sieve(field, d));
            field.store_irreducibles(d, list.clone());
            list
        }
    };
    list.iter().map(|c| Poly::from_codes(field, c.clone())).collect()
}

fn sieve(field: &FieldSpec, d: usize) -> Vec<Vec<u32>> {
    let q = field.size() as u64;
    let total = monic_count(q, d);
    if d == 1 {
        return (0..q).map(|c| vec![c as u32, 1]).collect();
    }
    let mut reducible = vec![false; total];
    for e in 1..=d / 2 {
        let cofactors = monic_count(q, d - e);
        for g in enumerate_irreducibles(field, e) {
            for h in 0..cofactors as u64 {
                let h = Poly::from_codes(field, monic_from_code(q, d - e, h));
                let prod = g.mul(&h);
                reducible[monic_code(q, prod.coeffs()) as usize] = true;
            }
        }
    }
    (0..total as u64).filter(|&code| !reducible[code as usize]).map(|code| monic_from_code(q, d, code)).collect()
}

/// Irreducibility by trial division with every monic irreducible of degree
/// at most half the degree of `f`.
pub fn poly_is_irreducible(f: &Poly) -> Result<bool> {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    if deg == 1 {
        return Ok(true);
    }
    let f = f.monic();
    for e in 1..=deg / 2 {
        for g in enumerate_irreducibles(f.field(), e) {
            if f.divisible_by(&g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Complete factorization of a monic polynomial into (monic irreducible,
/// multiplicity) pairs, ascending by the irreducible.
pub fn poly_factor(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    match f.degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(Error::ConstantPolynomial),
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut e = 1;
    while rest.degree().unwrap_or(0) >= 2 * e {
        for g in enumerate_irreducibles(f.field(), e) {
            let mut mult = 0;
            loop {
                let (quot, rem) = rest.divmod(&g)?;
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
            if rest.degree().unwrap_or(0) < 2 * e {
                break;
            }
        }
        e += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        // No factor of degree <= deg/2 remains, so the cofactor is irreducible.
        match out.iter_mut().find(|(g, _)| *g == rest) {
            Some((_, m)) => *m += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Least `e >= 1` with `f | x^e - 1`, for `f` with nonzero constant term.
///
/// For irreducible `f` the order divides `q^deg - 1` and is found by
/// stripping prime factors from that exponent; otherwise powers of `x` are
/// stepped through until they return to one.
pub fn poly_order(f: &Poly) -> Result<u64> {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    if f.coeff(0) == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    let f = f.monic();
    let field = f.field().clone();
    let bound = (field.size() as u64)
        .checked_pow(deg as u32)
        .map(|n| n - 1)
        .ok_or_else(|| Error::ResourceLimit(format!("q^{deg} overflows")))?;

    if poly_is_irreducible(&f)? {
        let x = Poly::x(&field);
        let one = Poly::one(&field);
        let mut e = bound;
        for (r, _) in prime_factors(bound) {
            while e % r == 0 && x.powmod(e / r, &f)? == one {
                e /= r;
            }
        }
        return Ok(e);
    }

    // x^k mod f, advanced by one multiplication by x per step.
    let c = f.coeffs();
    let mut cur = vec![0u32; deg];
    if deg == 1 {
        cur[0] = field.neg(c[0]);
    } else {
        cur[1] = 1;
    }
    let mut k = 1u64;
    loop {
        if cur[0] == 1 && cur[1..].iter().all(|&v| v == 0) {
            return Ok(k);
        }
        if k >= bound {
            return Err(Error::Invariant(format!("order of {} exceeds q^deg - 1", f.pretty())));
        }
        let top = cur[deg - 1];
        for i in (1..deg).rev() {
            cur[i] = field.sub(cur[i - 1], field.mul(top, c[i]));
        }
        cur[0] = field.neg(field.mul(top, c[0]));
        k += 1;
    }
}
