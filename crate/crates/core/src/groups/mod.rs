//! Cyclic subgroups of GL_n(F_q).
//!
//! Two routes decide whether `<A>` and `<B>` are conjugate:
//! [`cyclic_conjugacy_oracle`] searches for a generator power `B^i` similar
//! to `A`, while [`signature_conjugacy_test`] only compares the multisets of
//! (order of irreducible, exponent) over the elementary divisors. The oracle
//! is ground truth; the harness in [`crate::verify`] reports any instance
//! where the two disagree.

mod closure;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

pub use closure::{group_closure, GeneratedGroup, DEFAULT_CLOSURE_CAP};

use crate::algebra::numtheory::{gcd, lcm, multiplicative_order, prime_factors};
use crate::algebra::{enumerate_irreducibles, poly_order, FieldSpec, Poly};
use crate::error::{Error, Result};
use crate::matrixcore::{rcf, ElementaryDivisor, Mat, RcfData};

/// Order of an elementary divisor `p^e` as a polynomial.
pub fn divisor_order(d: &ElementaryDivisor) -> Result<u64> {
    poly_order(&d.power())
}

/// Multiplicative order of an invertible matrix: the lcm of the orders of
/// its elementary divisors, confirmed by exponentiation.
pub fn matrix_order(a: &Mat) -> Result<u64> {
    let form = rcf(a)?;
    let mut n = 1u64;
    for d in &form.divisors {
        n = lcm(n, divisor_order(d)?);
    }
    if !a.pow(n)?.is_identity() {
        return Err(Error::Invariant(format!("A^{n} is not the identity")));
    }
    for (r, _) in prime_factors(n) {
        if a.pow(n / r)?.is_identity() {
            return Err(Error::Invariant(format!("A^{} is already the identity", n / r)));
        }
    }
    Ok(n)
}

/// The cyclic group generated by an invertible matrix.
#[derive(Debug)]
pub struct CyclicGroup {
    generator: Mat,
    order: u64,
    elements: OnceLock<Vec<Mat>>,
}

impl Clone for CyclicGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        Self { generator: self.generator.clone(), order: self.order, elements }
    }
}

impl CyclicGroup {
    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// `(A^0, A^1, ..., A^{N-1})`, computed on first use.
    pub fn elements(&self) -> &[Mat] {
        self.elements.get_or_init(|| {
            let mut out = Vec::with_capacity(self.order as usize);
            let mut cur = Mat::identity(self.generator.field(), self.generator.rows());
            for _ in 0..self.order {
                let next = cur.mul_unchecked(&self.generator);
                out.push(cur);
                cur = next;
            }
            out
        })
    }
}

pub fn cyclic_group(a: &Mat) -> Result<CyclicGroup> {
    let order = matrix_order(a)?;
    Ok(CyclicGroup { generator: a.clone(), order, elements: OnceLock::new() })
}

/// One elementary divisor seen through its order: `(ord p, e, deg p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignatureEntry {
    pub order: u64,
    pub exponent: u32,
    pub degree: usize,
}

/// Multiset of [`SignatureEntry`] over the elementary divisors of a generator.
///
/// Equality ignores `degree`, which is determined by `order` (it is the
/// multiplicative order of q modulo `order`) and is checked on construction.
#[derive(Clone, Debug)]
pub struct GroupSignature {
    entries: Vec<SignatureEntry>,
}

impl GroupSignature {
    pub fn from_divisors(field: &FieldSpec, divisors: &[ElementaryDivisor]) -> Result<Self> {
        let q = field.size() as u64;
        let mut entries = Vec::with_capacity(divisors.len());
        for d in divisors {
            let order = poly_order(&d.base)?;
            let degree = d.base.degree().unwrap_or(0);
            if multiplicative_order(q, order) != Some(degree as u64) {
                return Err(Error::Invariant(format!(
                    "degree {degree} of {} disagrees with its order {order}",
                    d.base.pretty()
                )));
            }
            entries.push(SignatureEntry { order, exponent: d.exponent, degree });
        }
        entries.sort();
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[SignatureEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The `(order, exponent)` multiset as a sorted key.
    pub fn key(&self) -> Vec<(u64, u32)> {
        let mut k: Vec<(u64, u32)> = self.entries.iter().map(|e| (e.order, e.exponent)).collect();
        k.sort();
        k
    }
}

impl PartialEq for GroupSignature {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for GroupSignature {}

impl fmt::Display for GroupSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.entries.iter().map(|e| format!("({},{},{})", e.order, e.exponent, e.degree)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn signature(a: &Mat) -> Result<GroupSignature> {
    GroupSignature::from_divisors(a.field(), &rcf(a)?.divisors)
}

fn check_pair(a: &Mat, b: &Mat) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch("generators must be square of equal size".into()));
    }
    Ok(())
}

/// Ground-truth conjugacy of `<A>` and `<B>`: equal orders N and some
/// `i` coprime to N with `A ~ B^i`. Returns the smallest such `i`.
pub fn cyclic_conjugacy_oracle(a: &Mat, b: &Mat) -> Result<Option<u64>> {
    check_pair(a, b)?;
    let n = matrix_order(a)?;
    if matrix_order(b)? != n {
        return Ok(None);
    }
    let target = rcf(a)?.divisors;
    let mut power = b.clone();
    for i in 1..=n {
        if gcd(i, n) == 1 && rcf(&power)?.divisors == target {
            return Ok(Some(i));
        }
        power = power.mul_unchecked(b);
    }
    Ok(None)
}

/// Conjugacy by elementary-divisor counts and signatures alone.
pub fn signature_conjugacy_test(a: &Mat, b: &Mat) -> Result<bool> {
    check_pair(a, b)?;
    let (sa, sb) = (signature(a)?, signature(b)?);
    Ok(sa.len() == sb.len() && sa == sb)
}

/// Signature of `A^i` for `i` coprime to the order of `A`.
pub fn power_divisor_check(a: &Mat, i: u64) -> Result<GroupSignature> {
    let n = matrix_order(a)?;
    if gcd(i, n) != 1 {
        return Err(Error::NotCoprime { power: i, order: n });
    }
    signature(&a.pow(i)?)
}

/// A conjugacy class of cyclic subgroups, represented by a canonical form.
#[derive(Clone, Debug)]
pub struct ClassRep {
    pub rcf: RcfData,
    pub signature: GroupSignature,
    pub group_order: u64,
}

/// One representative per signature class of cyclic subgroups of GL_n(F_q).
///
/// Every multiset of elementary divisors `p^e` (`p != x`) of total degree
/// `n` is generated; multisets are grouped by signature and each group is
/// represented by its smallest divisor sequence. Output is sorted by that
/// sequence.
pub fn enumerate_class_reps(field: &FieldSpec, n: usize) -> Result<Vec<ClassRep>> {
    if n == 0 {
        return Err(Error::DimensionMismatch("dimension must be positive".into()));
    }
    let mut atoms = Vec::new();
    for d in 1..=n {
        for p in enumerate_irreducibles(field, d) {
            if p.coeffs() == [0, 1] {
                continue;
            }
            for e in 1..=(n / d) as u32 {
                atoms.push(ElementaryDivisor::new(p.clone(), e));
            }
        }
    }
    atoms.sort();

    let mut base_orders: HashMap<Poly, u64> = HashMap::new();
    let mut power_orders: HashMap<ElementaryDivisor, u64> = HashMap::new();
    for a in &atoms {
        if !base_orders.contains_key(&a.base) {
            base_orders.insert(a.base.clone(), poly_order(&a.base)?);
        }
        power_orders.insert(a.clone(), divisor_order(a)?);
    }

    let mut multisets = Vec::new();
    let mut stack = Vec::new();
    collect_multisets(&atoms, 0, n, &mut stack, &mut multisets);

    let mut cells: BTreeMap<Vec<(u64, u32)>, Vec<usize>> = BTreeMap::new();
    for ms in multisets {
        let mut key: Vec<(u64, u32)> = ms.iter().map(|&i| (base_orders[&atoms[i].base], atoms[i].exponent)).collect();
        key.sort();
        match cells.get(&key) {
            Some(best) if *best <= ms => {}
            _ => {
                cells.insert(key, ms);
            }
        }
    }

    let mut reps: Vec<(Vec<usize>, ClassRep)> = Vec::with_capacity(cells.len());
    for (_, ms) in cells {
        let divisors: Vec<ElementaryDivisor> = ms.iter().map(|&i| atoms[i].clone()).collect();
        let group_order = divisors.iter().fold(1, |acc, d| lcm(acc, power_orders[d]));
        let signature = GroupSignature::from_divisors(field, &divisors)?;
        let rcf = RcfData::from_divisors(divisors)?;
        reps.push((ms, ClassRep { rcf, signature, group_order }));
    }
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(reps.into_iter().map(|(_, r)| r).collect())
}

/// Nondecreasing index sequences into `atoms` whose degrees sum to `remaining`.
fn collect_multisets(
    atoms: &[ElementaryDivisor],
    start: usize,
    remaining: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining == 0 {
        out.push(stack.clone());
        return;
    }
    for i in start..atoms.len() {
        let d = atoms[i].degree();
        if d <= remaining {
            stack.push(i);
            collect_multisets(atoms, i, remaining - d, stack, out);
            stack.pop();
        }
    }
}
