//! The ambient field GF(p^m).
//!
//! Elements are integer codes in `[0, q)`: the base-p digits of a code
//! (least significant first) are the coefficients of the element's
//! polynomial representative modulo the field modulus. Multiplication goes
//! through exp/log tables built once per field.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};

/// Largest field size accepted by [`FieldSpec::new`].
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// Shared handle to a finite field GF(p^m) with an explicit modulus.
///
/// Cloning is cheap. Two handles compare equal when they present the same
/// field by the same modulus.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    irreducibles: RwLock<HashMap<usize, Arc<Vec<Vec<u32>>>>>,
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^m). Without a modulus the smallest monic irreducible of
    /// degree m over F_p is chosen (see [`crate::algebra::enumerate_irreducibles`]
    /// for the order). For m = 1 the modulus is `x`.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q =
            (p as u64).checked_pow(m).filter(|&q| q <= MAX_FIELD_SIZE as u64).ok_or_else(|| {
                Error::InvalidField(format!("{p}^{m} exceeds the supported field size {MAX_FIELD_SIZE}"))
            })? as u32;

        let modulus = if m == 1 {
            match modulus {
                Some(c) if c != [0, 1] => {
                    if c.len() != 2 || c[1] != 1 || c[0] >= p {
                        return Err(Error::BadModulus(1));
                    }
                    // Any monic linear modulus presents the same prime field.
                    vec![0, 1]
                }
                _ => vec![0, 1],
            }
        } else {
            let prime = Self::prime(p)?;
            match modulus {
                Some(c) => {
                    if c.len() != m as usize + 1 || c[m as usize] != 1 || c.iter().any(|&d| d >= p) {
                        return Err(Error::BadModulus(m as usize));
                    }
                    let f = super::Poly::new(&prime, c.to_vec())?;
                    if !super::poly_is_irreducible(&f)? {
                        return Err(Error::ReducibleModulus(p));
                    }
                    c.to_vec()
                }
                None => {
                    let irr = super::enumerate_irreducibles(&prime, m as usize);
                    irr.first()
                        .ok_or_else(|| Error::Invariant("no irreducible of requested degree".into()))?
                        .coeffs()
                        .to_vec()
                }
            }
        };
        Ok(Self::build(p, m, q, modulus))
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_FIELD_SIZE {
            return Err(Error::InvalidField(format!("{p} exceeds the supported field size")));
        }
        Ok(Self::build(p, 1, p, vec![0, 1]))
    }

    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Self {
        let mut inner = FieldInner {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            irreducibles: RwLock::new(HashMap::new()),
        };
        inner.build_tables();
        FieldSpec(Arc::new(inner))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Field size q = p^m.
    pub fn size(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients over F_p, ascending powers.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The `p^m` designator used by the text interfaces.
    pub fn designator(&self) -> String {
        if self.0.m == 1 {
            format!("{}", self.0.p)
        } else {
            format!("{}^{}", self.0.p, self.0.m)
        }
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code >= self.0.q {
            return Err(Error::ElementOutOfRange { code, q: self.0.q });
        }
        Ok(FieldElement { field: self.clone(), code })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 1 }
    }

    /// Checks that `code` is a valid element code.
    pub fn check(&self, code: u32) -> Result<u32> {
        if code < self.0.q {
            Ok(code)
        } else {
            Err(Error::ElementOutOfRange { code, q: self.0.q })
        }
    }

    // Raw arithmetic on element codes. Callers guarantee codes are in range.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            return a ^ b;
        }
        if f.m == 1 {
            let s = a + b;
            return if s >= f.p { s - f.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..f.m {
            let d = (a % f.p + b % f.p) % f.p;
            out += d * place;
            place *= f.p;
            a /= f.p;
            b /= f.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 || a == 0 {
            return a;
        }
        if f.m == 1 {
            return f.p - a;
        }
        let mut a = a;
        let (mut out, mut place) = (0, 1);
        for _ in 0..f.m {
            let d = (f.p - a % f.p) % f.p;
            out += d * place;
            place *= f.p;
            a /= f.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.0;
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let f = &*self.0;
        let l = f.log[a as usize];
        Some(f.exp[((f.q - 1 - l) % (f.q - 1)) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.0;
        let l = (f.log[a as usize] as u64 * (e % (f.q as u64 - 1))) % (f.q as u64 - 1);
        f.exp[l as usize]
    }

    pub(crate) fn irreducible_cache(&self, d: usize) -> Option<Arc<Vec<Vec<u32>>>> {
        self.0.irreducibles.read().ok()?.get(&d).cloned()
    }

    pub(crate) fn store_irreducibles(&self, d: usize, list: Arc<Vec<Vec<u32>>>) {
        if let Ok(mut cache) = self.0.irreducibles.write() {
            cache.entry(d).or_insert(list);
        }
    }
}

impl FieldInner {
    /// Multiplies two codes through their polynomial representatives.
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let m = self.m as usize;
        let p = self.p;
        let digits = |mut v: u32| {
            let mut d = vec![0u32; m];
            for slot in d.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            d
        };
        let (da, db) = (digits(a), digits(b));
        let mut prod = vec![0u32; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce by the monic modulus from the top down.
        for top in (m..2 * m).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (k, &mk) in self.modulus.iter().enumerate().take(m) {
                let idx = top - m + k;
                prod[idx] = (prod[idx] + (p - c) * mk % p) % p;
            }
            prod[top] = 0;
        }
        prod[..m].iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        let generator = (1..q)
            .find(|&g| {
                let mut x = 1u32;
                for k in 1..=order {
                    x = self.poly_mul(x, g);
                    if x == 1 {
                        return k == order;
                    }
                }
                false
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..order {
            exp[k as usize] = x;
            log[x as usize] = k;
            x = self.poly_mul(x, generator);
        }
        for k in order..2 * order {
            exp[k as usize] = exp[(k - order) as usize];
        }
        self.exp = exp;
        self.log = log;
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.m.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}; modulus {:?})", self.designator(), self.0.modulus)
    }
}

/// An element of a [`FieldSpec`], carried with its field for checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    code: u32,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self { field: self.field.clone(), code: self.field.add(self.code, other.code) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self { field: self.field.clone(), code: self.field.sub(self.code, other.code) })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self { field: self.field.clone(), code: self.field.mul(self.code, other.code) })
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field.clone(), code: self.field.neg(self.code) }
    }

    pub fn inv(&self) -> Result<Self> {
        let code = self.field.inv(self.code).ok_or(Error::ZeroInverse)?;
        Ok(Self { field: self.field.clone(), code })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_has_linear_modulus() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf4_default_modulus() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(FieldSpec::new(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus(2)));
        assert_eq!(FieldSpec::new(2, 2, Some(&[1, 1, 0])), Err(Error::BadModulus(2)));
        assert_eq!(FieldSpec::new(4, 1, None), Err(Error::NotPrime(4)));
    }

    #[test]
    fn gf4_mu_squared() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        let mu = f.element(2).unwrap();
        assert_eq!(mu.mul(&mu).unwrap().code(), 3);
    }

    #[test]
    fn gf3_inverse_of_two() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f.element(2).unwrap().inv().unwrap().code(), 2);
        assert_eq!(f.zero().inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn mismatched_fields() {
        let a = FieldSpec::new(2, 1, None).unwrap().one();
        let b = FieldSpec::new(3, 1, None).unwrap().one();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn exhaustive_field_axioms_small_fields() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            let q = f.size();
            for a in 0..q {
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_multiplication_matches_polynomial_multiplication() {
        let f = FieldSpec::new(3, 2, None).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(f.mul(a, b), f.0.poly_mul(a, b));
            }
        }
    }
}
