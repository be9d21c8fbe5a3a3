use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::FieldSpec;
use crate::error::{Error, Result};

/// A polynomial over a [`FieldSpec`], coefficients in ascending powers.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector and has degree `None`.
#[derive(Clone)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

fn trim(c: &mut Vec<u32>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

impl Poly {
    pub fn new(field: &FieldSpec, coeffs: Vec<u32>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_codes(field, coeffs))
    }

    pub(crate) fn from_codes(field: &FieldSpec, mut coeffs: Vec<u32>) -> Self {
        trim(&mut coeffs);
        Self { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &FieldSpec, c: u32) -> Self {
        Self::from_codes(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &FieldSpec) -> Self {
        Self { field: field.clone(), coeffs: vec![0, 1] }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.field == other.field);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_codes(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = &self.field;
        Self::from_codes(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.field == other.field);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_codes(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading()).ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[top - dd] = factor;
            for (k, &dk) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                rem[idx] = f.sub(rem[idx], f.mul(factor, dk));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_codes(f, quot), Self::from_codes(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// True when `divisor` divides `self`.
    pub fn divisible_by(&self, divisor: &Self) -> Result<bool> {
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Scales to leading coefficient one; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.field.inv(self.leading()) {
            Some(inv) if !self.is_one() => self.scale(inv),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus` by repeated squaring.
    pub fn powmod(&self, mut e: u64, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, at: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, at), c))
    }

    /// Human-readable form such as `x^3+x+1`; coefficients are element codes.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let term = match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Degree first, then the coefficient sequence read from the leading term
/// down. For monic polynomials of equal degree this is the order of the
/// base-q integers whose digits are the coefficients.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// The comma-separated ascending coefficient format, e.g. `1,1,0,1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn p(f: &FieldSpec, c: &[u32]) -> Poly {
        Poly::new(f, c.to_vec()).unwrap()
    }

    #[test]
    fn square_of_x_plus_one_in_char_two() {
        let f = f2();
        assert_eq!(p(&f, &[1, 1]).mul(&p(&f, &[1, 1])), p(&f, &[1, 0, 1]));
    }

    #[test]
    fn gcd_by_euclid() {
        let f = f2();
        assert_eq!(p(&f, &[1, 0, 1]).gcd(&p(&f, &[1, 1])), p(&f, &[1, 1]));
        assert!(Poly::zero(&f).gcd(&Poly::zero(&f)).is_zero());
    }

    #[test]
    fn divide_by_one() {
        let f = FieldSpec::prime(3).unwrap();
        let g = p(&f, &[2, 0, 1, 1]);
        let (q, r) = g.divmod(&Poly::one(&f)).unwrap();
        assert_eq!(q, g);
        assert!(r.is_zero());
    }

    #[test]
    fn divide_by_zero_is_error() {
        let f = f2();
        assert_eq!(p(&f, &[1, 1]).divmod(&Poly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let f = f2();
        let z = p(&f, &[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&f, &[1, 1, 0]).degree(), Some(1));
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let f = FieldSpec::prime(3).unwrap();
        let m = p(&f, &[1, 2, 0, 1]);
        let x = Poly::x(&f);
        let mut acc = Poly::one(&f);
        for e in 0..30u64 {
            assert_eq!(x.powmod(e, &m).unwrap(), acc.rem(&m).unwrap());
            acc = acc.mul(&x).rem(&m).unwrap();
        }
    }

    #[test]
    fn ordering_is_degree_then_top_down() {
        let f = f2();
        let a = p(&f, &[1, 1, 0, 1]);
        let b = p(&f, &[1, 0, 1, 1]);
        assert!(a < b);
        assert!(p(&f, &[1, 1]) < a);
    }

    #[test]
    fn display_formats() {
        let f = f2();
        let a = p(&f, &[1, 1, 0, 1]);
        assert_eq!(a.to_string(), "1,1,0,1");
        assert_eq!(a.pretty(), "x^3+x+1");
    }

    #[test]
    fn divmod_reconstructs() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        let a = p(&f, &[3, 2, 0, 1, 2]);
        let b = p(&f, &[1, 3, 2]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }
}
