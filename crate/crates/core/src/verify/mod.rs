//! Seeded property harness over the whole library.
//!
//! Each suite draws its instances from its own ChaCha stream, so a suite
//! produces the same findings whether it runs alone or as part of `all`.
//! Proven identities fail hard. Claims with a known gap (the literal block
//! bound, the lcm cardinality for general subspaces, the signature test)
//! are reported as warnings.

pub mod gen;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::numtheory::{gcd, lcm};
use crate::algebra::{enumerate_irreducibles, poly_factor, poly_is_irreducible, poly_order, FieldSpec, Poly};
use crate::codes::{
    block_structure, conjugate_code, instance_string, lemma_blockdiag_coprime_check, orbit_code,
    stab_intersection_order, BlockDiagReport, FullRankReport, Subspace,
};
use crate::error::Result;
use crate::groups::{
    cyclic_conjugacy_oracle, cyclic_group, divisor_order, enumerate_class_reps, matrix_order, signature,
    signature_conjugacy_test,
};
use crate::matrixcore::{char_poly, elementary_divisors, mat_conjugate_test, min_poly, rcf, ElementaryDivisor, Mat};
use crate::text::{parse_divisors, parse_subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Rcf,
    Groups,
    Codes,
    Bounds,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Algebra, Suite::Rcf, Suite::Groups, Suite::Codes, Suite::Bounds];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Rcf => "rcf",
            Suite::Groups => "groups",
            Suite::Codes => "codes",
            Suite::Bounds => "bounds",
            Suite::All => "all",
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap_or(0) as u64
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "algebra" => Ok(Suite::Algebra),
            "rcf" => Ok(Suite::Rcf),
            "groups" => Ok(Suite::Groups),
            "codes" => Ok(Suite::Codes),
            "bounds" => Ok(Suite::Bounds),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Level {
    Warn,
    Fail,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Warn => "WARN",
            Level::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub level: Level,
    pub suite: &'static str,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: &'static str,
    pub checks: usize,
    pub warnings: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub suites: Vec<SuiteSummary>,
    pub findings: Vec<Finding>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.level != Level::Fail)
    }

    pub fn warnings(&self) -> usize {
        self.findings.iter().filter(|f| f.level == Level::Warn).count()
    }

    pub fn failures(&self) -> usize {
        self.findings.iter().filter(|f| f.level == Level::Fail).count()
    }
}

struct Harness {
    suite: &'static str,
    checks: usize,
    findings: Vec<Finding>,
}

impl Harness {
    fn new(suite: Suite) -> Self {
        Self { suite: suite.name(), checks: 0, findings: Vec::new() }
    }

    fn push(&mut self, level: Level, check: &'static str, detail: String) {
        self.findings.push(Finding { level, suite: self.suite, check, detail });
    }

    /// Hard assertion; library errors count as failures.
    fn check(&mut self, check: &'static str, outcome: Result<std::result::Result<(), String>>) {
        self.checks += 1;
        match outcome {
            Ok(Ok(())) => {}
            Ok(Err(detail)) => self.push(Level::Fail, check, detail),
            Err(e) => self.push(Level::Fail, check, format!("error: {e}")),
        }
    }

    fn warn(&mut self, check: &'static str, detail: String) {
        self.push(Level::Warn, check, detail);
    }

    fn summary(&self) -> SuiteSummary {
        SuiteSummary {
            suite: self.suite,
            checks: self.checks,
            warnings: self.findings.iter().filter(|f| f.level == Level::Warn).count(),
            failures: self.findings.iter().filter(|f| f.level == Level::Fail).count(),
        }
    }
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn rng_for(seed: u64, suite: Suite) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.stream());
    rng
}

/// Runs `suite` with `trials` random instances per property.
pub fn run(suite: Suite, trials: usize, seed: u64) -> Result<VerifyReport> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::ALL.to_vec() } else { vec![suite] };
    let mut summaries = Vec::new();
    let mut findings = Vec::new();
    for s in suites {
        let mut h = Harness::new(s);
        if trials > 0 {
            let mut rng = rng_for(seed, s);
            match s {
                Suite::Algebra => algebra_suite(&mut h, trials, &mut rng)?,
                Suite::Rcf => rcf_suite(&mut h, trials, &mut rng)?,
                Suite::Groups => groups_suite(&mut h, trials, &mut rng)?,
                Suite::Codes => codes_suite(&mut h, trials, &mut rng)?,
                Suite::Bounds => bounds_suite(&mut h, trials, &mut rng)?,
                Suite::All => unreachable!("expanded above"),
            }
        }
        summaries.push(h.summary());
        findings.extend(h.findings);
    }
    Ok(VerifyReport { seed, trials, suites: summaries, findings })
}

fn small_fields() -> Result<Vec<FieldSpec>> {
    Ok(vec![
        FieldSpec::prime(2)?,
        FieldSpec::prime(3)?,
        FieldSpec::prime(5)?,
        FieldSpec::new(2, 2, None)?,
        FieldSpec::new(2, 3, None)?,
        FieldSpec::new(3, 2, None)?,
    ])
}

fn algebra_suite(h: &mut Harness, trials: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let fields = small_fields()?;
    for (q, max_d) in [(2u32, 8usize), (3, 5), (5, 3)] {
        let f = FieldSpec::prime(q)?;
        for d in 1..=max_d {
            let got = enumerate_irreducibles(&f, d).len() as u64;
            let want = oracle::irreducible_count(q as u64, d as u64);
            h.check("irreducible-count", Ok(ensure(got == want, || format!("F_{q} degree {d}: {got} != {want}"))));
        }
    }
    for _ in 0..trials {
        let f = fields.choose(rng).expect("fields");
        let q = f.size();
        let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
        h.check(
            "field-axioms",
            Ok(ensure(
                f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                    && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                    && f.add(a, f.neg(a)) == 0
                    && (a == 0 || f.mul(a, f.inv(a).expect("nonzero")) == 1),
                || format!("GF({q}) at ({a},{b},{c})"),
            )),
        );

        let x = gen::random_poly(f, 6, rng);
        let y = gen::random_poly(f, 4, rng);
        if !y.is_zero() {
            h.check(
                "division",
                x.divmod(&y).map(|(quo, rem)| {
                    ensure(
                        quo.mul(&y).add(&rem) == x && rem.degree().is_none_or(|r| r < y.degree().unwrap_or(0)),
                        || format!("{x} / {y}"),
                    )
                }),
            );
        }

        let prime = FieldSpec::prime(*[2u32, 3].choose(rng).expect("primes"))?;
        let g = gen::random_unit_poly(&prime, rng.gen_range(1..=5), rng);
        h.check(
            "poly-order",
            poly_order(&g).and_then(|o| oracle::incremental_poly_order(&g).map(|r| (o, r))).map(|(o, r)| {
                ensure(o == r, || format!("order of {} over F_{}: {o} vs {r}", g.pretty(), prime.size()))
            }),
        );
        h.check(
            "factorization",
            poly_factor(&g).and_then(|fs| {
                let mut prod = Poly::one(&prime);
                for (p, e) in &fs {
                    if !poly_is_irreducible(p)? {
                        return Ok(Err(format!("factor {} of {} is reducible", p.pretty(), g.pretty())));
                    }
                    prod = prod.mul(&p.pow(*e as u64));
                }
                Ok(ensure(prod == g, || format!("factors of {} do not multiply back", g.pretty())))
            }),
        );
    }
    Ok(())
}

fn rcf_suite(h: &mut Harness, trials: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let fields = [FieldSpec::prime(2)?, FieldSpec::prime(3)?, FieldSpec::new(2, 2, None)?];
    for _ in 0..trials {
        let f = fields.choose(rng).expect("fields");
        let n = rng.gen_range(1..=4);
        let a = gen::random_invertible(f, n, rng);
        let l = gen::random_invertible(f, n, rng);
        h.check(
            "similarity-invariance",
            (|| {
                let b = l.inv()?.mul(&a)?.mul(&l)?;
                let (ra, rb) = (rcf(&a)?, rcf(&b)?);
                Ok(ensure(ra.divisors == rb.divisors, || format!("A = {a}, L = {l}")))
            })(),
        );
        h.check(
            "canonical-idempotent",
            (|| {
                let r = rcf(&a)?;
                let again = rcf(&r.matrix)?;
                let degree: usize = r.divisors.iter().map(|d| d.degree()).sum();
                Ok(ensure(again.divisors == r.divisors && degree == n && mat_conjugate_test(&a, &r.matrix)?, || {
                    format!("A = {a}")
                }))
            })(),
        );
        h.check(
            "cayley-hamilton",
            (|| {
                let cp = char_poly(&a)?;
                let mp = min_poly(&a)?;
                Ok(ensure(
                    cp.degree() == Some(n)
                        && a.eval_poly(&cp)?.is_zero()
                        && a.eval_poly(&mp)?.is_zero()
                        && cp.divisible_by(&mp)?,
                    || format!("A = {a}"),
                ))
            })(),
        );
        h.check(
            "transpose-similar",
            mat_conjugate_test(&a, &a.transpose()).map(|ok| ensure(ok, || format!("A = {a}"))),
        );
    }
    Ok(())
}

/// `diag(mu, mu^2)` and `mu I` over GF(4): equal signatures, but the groups
/// they generate are not conjugate.
pub fn signature_gap_instance() -> Result<(Mat, Mat)> {
    let f4 = FieldSpec::new(2, 2, None)?;
    let a = Mat::from_rows(&f4, &[vec![2, 0], vec![0, 3]])?;
    let b = Mat::from_rows(&f4, &[vec![2, 0], vec![0, 2]])?;
    Ok((a, b))
}

fn groups_suite(h: &mut Harness, trials: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    for (q, n) in [(2u32, 2usize), (2, 3), (3, 2)] {
        let f = FieldSpec::prime(q)?;
        let reps = enumerate_class_reps(&f, n)?.len();
        let brute = oracle::cyclic_subgroup_classes(&f, n).len();
        h.check("class-count", Ok(ensure(reps == brute, || format!("F_{q}, n={n}: {reps} reps vs {brute} classes"))));
    }

    let (a, b) = signature_gap_instance()?;
    let by_signature = signature_conjugacy_test(&a, &b)?;
    let witness = cyclic_conjugacy_oracle(&a, &b)?;
    if by_signature != witness.is_some() {
        h.warn(
            "signature-vs-oracle",
            format!("over GF(4): <{a}> and <{b}> signature test {by_signature}, witness power {witness:?}"),
        );
    }

    for _ in 0..trials {
        let q = *[2u32, 3].choose(rng).expect("primes");
        let f = FieldSpec::prime(q)?;
        let n = rng.gen_range(1..=if q == 2 { 4 } else { 3 });
        let a = gen::random_invertible(&f, n, rng);
        let order = matrix_order(&a)?;
        h.check(
            "order-lcm",
            (|| {
                let by_divisors =
                    elementary_divisors(&a)?.iter().try_fold(1, |acc, d| divisor_order(d).map(|o| lcm(acc, o)))?;
                let direct = oracle::incremental_matrix_order(&a);
                Ok(ensure(order == by_divisors && order == direct, || {
                    format!("A = {a} over F_{q}: {order}, {by_divisors}, {direct}")
                }))
            })(),
        );

        let coprime: Vec<u64> = (1..=order).filter(|&i| gcd(i, order) == 1).collect();
        let i = *coprime.choose(rng).expect("1 is coprime");
        h.check(
            "power-signature",
            (|| {
                let (s, t) = (signature(&a)?, signature(&a.pow(i)?)?);
                Ok(ensure(s == t, || format!("A = {a} over F_{q}, i = {i}: {s} vs {t}")))
            })(),
        );

        let l = gen::random_invertible(&f, n, rng);
        let b = l.inv()?.mul(&a.pow(i)?)?.mul(&l)?;
        let witness = cyclic_conjugacy_oracle(&a, &b)?;
        h.check(
            "oracle-finds-conjugate",
            Ok(ensure(witness.is_some(), || format!("A = {a}, B = {b} over F_{q}, built with power {i}"))),
        );
        if !signature_conjugacy_test(&a, &b)? {
            h.warn("signature-vs-oracle", format!("A = {a}, B = {b} over F_{q}: conjugate but signatures differ"));
        }

        let c = gen::random_invertible(&f, n, rng);
        let by_signature = signature_conjugacy_test(&a, &c)?;
        let witness = cyclic_conjugacy_oracle(&a, &c)?;
        if by_signature != witness.is_some() {
            h.warn(
                "signature-vs-oracle",
                format!("A = {a}, B = {c} over F_{q}: signature test {by_signature}, witness power {witness:?}"),
            );
        }
    }
    Ok(())
}

fn codes_suite(h: &mut Harness, trials: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..trials {
        let q = *[2u32, 3].choose(rng).expect("primes");
        let f = FieldSpec::prime(q)?;
        let n = rng.gen_range(2..=if q == 2 { 5 } else { 4 });
        let k = rng.gen_range(1..n);
        let u = gen::random_subspace(&f, n, k, rng);
        let a = gen::random_invertible(&f, n, rng);

        let mix = gen::random_invertible(&f, k, rng);
        h.check(
            "action-well-defined",
            (|| {
                let other_rep = mix.mul(u.basis())?;
                let via_rep = Subspace::from_rows(&other_rep.mul(&a)?)?;
                Ok(ensure(via_rep == u.act(&a)?, || format!("U = {u}, A = {a} over F_{q}")))
            })(),
        );

        let v = gen::random_subspace(&f, n, rng.gen_range(1..n), rng);
        h.check(
            "distance-preserving",
            (|| {
                Ok(ensure(u.act(&a)?.distance(&v.act(&a)?)? == u.distance(&v)?, || {
                    format!("U = {u}, V = {v}, A = {a}")
                }))
            })(),
        );

        let g = cyclic_group(&a)?;
        let code = match orbit_code(&u, &g) {
            Ok(code) => code,
            Err(e) => {
                h.check("orbit-stabilizer", Err(e));
                continue;
            }
        };
        h.check(
            "orbit-stabilizer",
            (|| {
                let direct = oracle::direct_stabilizer_count(&u, &a)?;
                let stab = stab_intersection_order(&u, &g)?;
                Ok(ensure(code.cardinality() as u64 * stab == g.order() && direct == stab, || {
                    format!("U = {u}, A = {a}: |C| = {}, stab {stab}, direct {direct}", code.cardinality())
                }))
            })(),
        );
        h.check(
            "distribution",
            code.distance_distribution().map(|d| {
                ensure(d.0[0] == 1 && d.total() == code.cardinality() as u64, || format!("U = {u}, A = {a}: {:?}", d.0))
            }),
        );
        if code.cardinality() > 1 {
            h.check(
                "min-distance-pairwise",
                (|| {
                    let (m, p) = (code.min_distance()?, code.pairwise_min_distance()?);
                    Ok(ensure(m == p, || format!("U = {u}, A = {a}: {m} vs {p}")))
                })(),
            );
        }

        let l = gen::random_invertible(&f, n, rng);
        h.check(
            "conjugate-code",
            (|| {
                let conj = conjugate_code(&code, &l)?;
                Ok(ensure(
                    conj.cardinality() == code.cardinality()
                        && conj.distance_distribution()? == code.distance_distribution()?,
                    || format!("U = {u}, A = {a}, L = {l}"),
                ))
            })(),
        );
    }
    Ok(())
}

fn fmt_opt(d: Option<usize>) -> String {
    d.map_or_else(|| "-".into(), |d| d.to_string())
}

/// The 3+2 instance over F_2: blocks `x^3+x+1` and `x^2+x+1`, subspace
/// spanned by the first unit vector of each block.
pub fn separation_instance() -> Result<(Subspace, Vec<ElementaryDivisor>)> {
    let f = FieldSpec::prime(2)?;
    Ok((parse_subspace(&f, "1,0,0,0,0;0,0,0,1,0")?, parse_divisors(&f, "1,1,0,1;1,1,1")?))
}

fn bounds_suite(h: &mut Harness, trials: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let (u, divs) = separation_instance()?;
    let bs = block_structure(&u, &divs)?;
    let bound = bs.bound()?;
    let d = bs.code()?.min_distance()?;
    h.check(
        "separation-instance",
        Ok(ensure((d, bound.literal, bound.refined) == (2, 4, 2), || {
            format!("distance {d}, literal {}, refined {}", bound.literal, bound.refined)
        })),
    );
    if bound.literal > d {
        h.warn(
            "literal-bound",
            format!("{}: literal bound {} exceeds distance {d}", instance_string(&u, &divs), bound.literal),
        );
    }

    for inst in gen::block_instances(trials, 3, 8, rng)? {
        let bs = block_structure(&inst.subspace, &inst.divisors)?;
        let code = bs.code()?;
        let d = code.min_distance()?;
        let b = bs.bound()?;
        let label = instance_string(&inst.subspace, &inst.divisors);
        if inst.block_diagonal {
            h.check(
                "refined-exact",
                Ok(ensure(d == b.refined, || format!("{label}: distance {d}, refined {}", b.refined))),
            );
            h.check(
                "lcm-cardinality",
                Ok(ensure(code.cardinality() as u64 == b.lcm_cardinality, || {
                    format!("{label}: |C| = {}, lcm {}", code.cardinality(), b.lcm_cardinality)
                })),
            );
        } else {
            h.check(
                "refined-valid",
                Ok(ensure(d >= b.refined, || format!("{label}: distance {d} < refined {}", b.refined))),
            );
            if code.cardinality() as u64 != b.lcm_cardinality {
                h.warn("lcm-cardinality", format!("{label}: |C| = {}, lcm {}", code.cardinality(), b.lcm_cardinality));
            }
        }
        if b.literal > d {
            h.warn("literal-bound", format!("{label}: literal bound {} exceeds distance {d}", b.literal));
        }
    }

    for (inst, report) in gen::fullrank_instances(trials, 8, 50 * trials, rng)? {
        let label = instance_string(&inst.subspace, &inst.divisors);
        let outcome = match report {
            FullRankReport::Counterexample { distance, component_distances, .. } => Err(format!(
                "{label}: distance {}, component distances {}",
                fmt_opt(distance),
                component_distances.iter().map(|d| fmt_opt(*d)).collect::<Vec<_>>().join(" ")
            )),
            _ => Ok(()),
        };
        h.check("fullrank-min", Ok(outcome));
    }

    let f = FieldSpec::prime(2)?;
    let atoms = gen::divisor_atoms(&f, 6);
    for _ in 0..trials {
        let t = rng.gen_range(2..=3);
        let divs: Vec<_> = (0..t).map(|_| atoms.choose(rng).expect("atoms").clone()).collect();
        if divs.iter().map(|d| d.degree()).sum::<usize>() > 8 {
            continue;
        }
        let blocks = gen::random_sub_blocks(&f, &divs, rng);
        let label = {
            let full = gen::block_diagonal_rows(&f, &blocks);
            instance_string(&Subspace::from_rows(&full)?, &divs)
        };
        match lemma_blockdiag_coprime_check(&blocks, &divs)? {
            BlockDiagReport::Skipped { .. } => {}
            BlockDiagReport::Compared { distance, literal, refined, literal_matches, refined_matches } => {
                h.check(
                    "blockdiag-refined",
                    Ok(ensure(refined_matches, || format!("{label}: distance {distance}, refined {refined}"))),
                );
                if !literal_matches {
                    h.warn("blockdiag-literal", format!("{label}: distance {distance}, literal {literal}"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_vacuous() {
        let r = run(Suite::All, 0, 1).unwrap();
        assert!(r.passed());
        assert!(r.findings.is_empty());
        assert_eq!(r.suites.len(), 5);
    }

    #[test]
    fn suites_are_deterministic() {
        for s in Suite::ALL {
            let a = run(s, 3, 9).unwrap();
            assert_eq!(a, run(s, 3, 9).unwrap(), "{s}");
        }
    }

    #[test]
    fn small_runs_pass() {
        for s in [Suite::Algebra, Suite::Rcf, Suite::Codes] {
            let r = run(s, 10, 4).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.findings);
        }
    }

    #[test]
    fn signature_gap_is_reported() {
        let r = run(Suite::Groups, 1, 1).unwrap();
        assert!(r.findings.iter().any(|f| f.level == Level::Warn && f.detail.contains("GF(4)")));
    }

    #[test]
    fn separation_instance_warns() {
        let r = run(Suite::Bounds, 1, 1).unwrap();
        assert!(r.findings.iter().any(|f| f.check == "literal-bound" && f.detail.contains("1,0,0,0,0;0,0,0,1,0")));
    }

    #[test]
    fn suite_names() {
        assert_eq!("bounds".parse::<Suite>().unwrap(), Suite::Bounds);
        assert!("nope".parse::<Suite>().is_err());
    }
}
