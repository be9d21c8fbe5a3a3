//! Acceptance criteria. One PASS/FAIL line per criterion; exits non-zero if
//! any criterion fails. Every random choice is drawn from `SEED`.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbit_codes::algebra::numtheory::{gcd, lcm};
use orbit_codes::algebra::{FieldSpec, Poly};
use orbit_codes::codes::{
    block_structure, conjugate_code, instance_string, lemma_blockdiag_coprime_check, orbit_code, BlockDiagReport,
    FullRankReport, Subspace,
};
use orbit_codes::groups::{
    cyclic_conjugacy_oracle, cyclic_group, divisor_order, enumerate_class_reps, group_closure, matrix_order, signature,
    signature_conjugacy_test, DEFAULT_CLOSURE_CAP,
};
use orbit_codes::matrixcore::{companion, elementary_divisors, mat_conjugate_test, Mat};
use orbit_codes::verify::{gen, oracle, separation_instance};
use orbit_codes::worked::{matrix_a, matrix_b1, matrix_b2};

const SEED: u64 = 1;

type Outcome = Result<Vec<String>, String>;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn findings(head: String, lines: &[String]) -> String {
    lines.iter().fold(head, |acc, l| format!("{acc}\n    finding: {l}"))
}

fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

fn example_one() -> Outcome {
    let f = f2();
    let a = companion(&Poly::new(&f, vec![1, 1, 0, 1]).map_err(err)?).map_err(err)?;
    let printed = Mat::from_rows(&f, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).map_err(err)?;
    ensure(a == printed, || format!("companion is {a}"))?;
    ensure(a == matrix_a(&f).map_err(err)?, || "library matrix differs".into())?;
    let cyclic = group_closure(std::slice::from_ref(&a), DEFAULT_CLOSURE_CAP).map_err(err)?.order();
    ensure(cyclic == 7 && matrix_order(&a).map_err(err)? == 7, || format!("|<A>| = {cyclic}"))?;
    let full = group_closure(&[a.clone(), a.transpose()], DEFAULT_CLOSURE_CAP).map_err(err)?.order();
    let gl3: u64 = (0..3).map(|i| 8 - 2u64.pow(i)).product();
    ensure(full == 168 && full == gl3, || format!("|<A, A^t>| = {full}, product formula {gl3}"))?;
    ensure(mat_conjugate_test(&a, &a.transpose()).map_err(err)?, || "A and A^t not similar".into())?;
    ensure(cyclic != full, || "orders coincide".into())?;
    Ok(vec![format!("|<A>| = {cyclic}, |<A, A^t>| = {full}")])
}

fn example_two() -> Outcome {
    let f4 = FieldSpec::new(2, 2, None).map_err(err)?;
    ensure(f4.modulus() == [1, 1, 1], || format!("modulus {:?}", f4.modulus()))?;
    let (a, b1, b2) = (matrix_a(&f4).map_err(err)?, matrix_b1(&f4).map_err(err)?, matrix_b2(&f4).map_err(err)?);
    ensure(mat_conjugate_test(&b1, &b2).map_err(err)?, || "B_1 and B_2 not similar".into())?;
    let g1 = group_closure(&[a.clone(), b1], DEFAULT_CLOSURE_CAP).map_err(err)?.order();
    let g2 = group_closure(&[a, b2], DEFAULT_CLOSURE_CAP).map_err(err)?.order();
    ensure(g1 != g2, || format!("both orders {g1}"))?;
    Ok(vec![format!("|<A, B_1>| = {g1}, |<A, B_2>| = {g2}")])
}

fn random_coprime<R: Rng>(order: u64, rng: &mut R) -> u64 {
    let units: Vec<u64> = (1..=order).filter(|&i| gcd(i, order) == 1).collect();
    *units.choose(rng).expect("1 is a unit")
}

fn classification() -> Outcome {
    let mut rng = rng();
    let mut log = Vec::new();
    let mut disagreements = Vec::new();
    let mut pairs = 0usize;
    for (q, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (2, 4)] {
        let f = FieldSpec::prime(q).map_err(err)?;
        let reps: Vec<Mat> = enumerate_class_reps(&f, n).map_err(err)?.into_iter().map(|r| r.rcf.matrix).collect();
        let mut compare = |a: &Mat, b: &Mat, expect_conjugate: Option<bool>| -> Result<(), String> {
            pairs += 1;
            let by_signature = signature_conjugacy_test(a, b).map_err(err)?;
            let witness = cyclic_conjugacy_oracle(a, b).map_err(err)?;
            if by_signature != witness.is_some() || expect_conjugate.is_some_and(|e| e != witness.is_some()) {
                disagreements.push(format!(
                    "F_{q} n={n}: A = {a}, B = {b}: signature {by_signature}, witness {witness:?}, expected {expect_conjugate:?}"
                ));
            }
            Ok(())
        };
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                compare(a, b, Some(i == j))?;
            }
        }
        for (i, r) in reps.iter().enumerate() {
            let order = matrix_order(r).map_err(err)?;
            for _ in 0..10 {
                let l = gen::random_invertible(&f, n, &mut rng);
                let power = random_coprime(order, &mut rng);
                let conj = l.inv().map_err(err)?.mul(&r.pow(power).map_err(err)?).map_err(err)?.mul(&l).map_err(err)?;
                for (j, other) in reps.iter().enumerate() {
                    compare(&conj, other, Some(i == j))?;
                }
            }
        }
        log.push(format!("F_{q} n={n}: {} classes", reps.len()));
    }

    let f = f2();
    let reps = enumerate_class_reps(&f, 2).map_err(err)?;
    let brute = oracle::cyclic_subgroup_classes(&f, 2);
    ensure(reps.len() == 3 && brute.len() == 3, || {
        format!("{} reps, {} brute-force classes", reps.len(), brute.len())
    })?;
    let mut hit = vec![false; brute.len()];
    for r in &reps {
        let g = cyclic_group(&r.rcf.matrix).map_err(err)?;
        let set: std::collections::BTreeSet<Vec<u32>> = g.elements().iter().map(|m| m.data().to_vec()).collect();
        let class =
            brute.iter().position(|c| c.contains(&set)).ok_or_else(|| format!("<{}> not found", r.rcf.matrix))?;
        ensure(!hit[class], || format!("two reps in class {class}"))?;
        hit[class] = true;
    }
    ensure(disagreements.is_empty(), || {
        findings(format!("{} disagreements in {pairs} pairs", disagreements.len()), &disagreements)
    })?;
    log.push(format!("{pairs} pairs, 0 disagreements"));
    Ok(log)
}

fn order_is_divisor_lcm() -> Outcome {
    let mut rng = rng();
    for t in 0..200 {
        let q = *[2u32, 3].choose(&mut rng).unwrap();
        let f = FieldSpec::prime(q).map_err(err)?;
        let n = rng.gen_range(1..=5);
        let a = gen::random_invertible(&f, n, &mut rng);
        let by_divisors = elementary_divisors(&a)
            .map_err(err)?
            .iter()
            .try_fold(1, |acc, d| divisor_order(d).map(|o| lcm(acc, o)))
            .map_err(err)?;
        let order = matrix_order(&a).map_err(err)?;
        let direct = oracle::incremental_matrix_order(&a);
        ensure(order == by_divisors && order == direct, || {
            format!("trial {t}: A = {a} over F_{q}: order {order}, lcm {by_divisors}, direct {direct}")
        })?;
    }
    Ok(vec!["200 matrices".into()])
}

fn power_lemma() -> Outcome {
    let mut rng = rng();
    let mut powers = 0;
    for t in 0..50 {
        let q = *[2u32, 3].choose(&mut rng).unwrap();
        let f = FieldSpec::prime(q).map_err(err)?;
        let n = rng.gen_range(1..=4);
        let a = gen::random_invertible(&f, n, &mut rng);
        let order = matrix_order(&a).map_err(err)?;
        let sig = signature(&a).map_err(err)?;
        for i in (1..order).filter(|&i| gcd(i, order) == 1) {
            powers += 1;
            let s = signature(&a.pow(i).map_err(err)?).map_err(err)?;
            ensure(s == sig, || format!("trial {t}: A = {a} over F_{q}, i = {i}: {s} vs {sig}"))?;
        }
    }
    Ok(vec![format!("50 matrices, {powers} coprime powers")])
}

/// Raw distance counts over all group elements, computed directly.
fn raw_counts(u: &Subspace, a: &Mat, order: u64) -> Result<Vec<u64>, String> {
    let mut counts = vec![0u64; u.k() + 1];
    let mut cur = u.clone();
    for _ in 0..order {
        counts[u.distance(&cur).map_err(err)? / 2] += 1;
        cur = cur.act(a).map_err(err)?;
    }
    Ok(counts)
}

fn orbit_identities() -> Outcome {
    let mut rng = rng();
    for t in 0..100 {
        let q = *[2u32, 3].choose(&mut rng).unwrap();
        let f = FieldSpec::prime(q).map_err(err)?;
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(1..n);
        let a = gen::random_invertible(&f, n, &mut rng);
        let u = gen::random_subspace(&f, n, k, &mut rng);
        let g = cyclic_group(&a).map_err(err)?;
        let code = orbit_code(&u, &g).map_err(err)?;
        let stab = code.stab_order();
        let label = format!("trial {t}: U = {u}, A = {a} over F_{q}");
        ensure(code.cardinality() as u64 * stab == g.order(), || format!("{label}: orbit-stabilizer"))?;
        let raw = raw_counts(&u, &a, g.order())?;
        ensure(raw.iter().all(|r| r % stab == 0), || format!("{label}: raw {raw:?}, stab {stab}"))?;
        let dist = code.distance_distribution().map_err(err)?;
        let expected: Vec<u64> = raw.iter().map(|r| r / stab).collect();
        ensure(dist.0 == expected, || format!("{label}: {:?} vs {expected:?}", dist.0))?;
        ensure(dist.0[0] == 1 && dist.total() == code.cardinality() as u64, || format!("{label}: {:?}", dist.0))?;
    }
    Ok(vec!["100 codes".into()])
}

fn singer_line_code() -> Outcome {
    let f = f2();
    let g = cyclic_group(&companion(&Poly::new(&f, vec![1, 1, 0, 1]).map_err(err)?).map_err(err)?).map_err(err)?;
    let u = Subspace::from_rows(&Mat::from_rows(&f, &[vec![1, 0, 0]]).map_err(err)?).map_err(err)?;
    let code = orbit_code(&u, &g).map_err(err)?;
    let (card, d, dist) =
        (code.cardinality(), code.min_distance().map_err(err)?, code.distance_distribution().map_err(err)?);
    ensure(card == 7 && d == 2 && dist.0 == [1, 6], || {
        format!("cardinality {card}, distance {d}, distribution {:?}", dist.0)
    })?;
    Ok(vec![format!("cardinality {card}, distance {d}, distribution {:?}", dist.0)])
}

fn conjugate_codes() -> Outcome {
    let mut rng = rng();
    for t in 0..50 {
        let q = *[2u32, 3].choose(&mut rng).unwrap();
        let f = FieldSpec::prime(q).map_err(err)?;
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..n);
        let a = gen::random_invertible(&f, n, &mut rng);
        let u = gen::random_subspace(&f, n, k, &mut rng);
        let l = gen::random_invertible(&f, n, &mut rng);
        let code = orbit_code(&u, &cyclic_group(&a).map_err(err)?).map_err(err)?;
        let conj = conjugate_code(&code, &l).map_err(err)?;
        let (d1, d2) = (code.distance_distribution().map_err(err)?, conj.distance_distribution().map_err(err)?);
        ensure(code.cardinality() == conj.cardinality() && d1 == d2, || {
            format!("trial {t}: U = {u}, A = {a}, L = {l} over F_{q}: {:?} vs {:?}", d1.0, d2.0)
        })?;
    }
    Ok(vec!["50 pairs".into()])
}

fn bound_harness() -> Outcome {
    let mut log = Vec::new();
    let (u, divs) = separation_instance().map_err(err)?;
    let bs = block_structure(&u, &divs).map_err(err)?;
    let b = bs.bound().map_err(err)?;
    let d = bs.code().map_err(err)?.min_distance().map_err(err)?;
    ensure((b.literal, b.refined, d) == (4, 2, 2), || {
        format!("literal {}, refined {}, distance {d}", b.literal, b.refined)
    })?;
    log.push(format!("WARN separation instance: literal {} vs distance {d} (refined {})", b.literal, b.refined));

    let mut rng = rng();
    let instances = gen::block_instances(100, 3, 8, &mut rng).map_err(err)?;
    let (mut diagonal, mut literal_invalid, mut violations) = (0, 0, Vec::new());
    for inst in &instances {
        let bs = block_structure(&inst.subspace, &inst.divisors).map_err(err)?;
        let d = bs.code().map_err(err)?.min_distance().map_err(err)?;
        let b = bs.bound().map_err(err)?;
        let label = instance_string(&inst.subspace, &inst.divisors);
        if b.literal > d {
            literal_invalid += 1;
        }
        if inst.block_diagonal {
            diagonal += 1;
            if d != b.refined {
                violations.push(format!("{label}: block-diagonal, distance {d}, refined {}", b.refined));
            }
        } else if d < b.refined {
            violations.push(format!("{label}: distance {d} < refined {}", b.refined));
        }
    }
    ensure(violations.is_empty(), || {
        findings(
            format!("{} of {} instances violate the refined bound", violations.len(), instances.len()),
            &violations,
        )
    })?;
    log.push(format!(
        "{} instances ({diagonal} block-diagonal), literal bound invalid on {literal_invalid}",
        instances.len()
    ));
    Ok(log)
}

fn lemma_checks() -> Outcome {
    let mut rng = rng();
    let fullrank = gen::fullrank_instances(40, 8, 20_000, &mut rng).map_err(err)?;
    let mut counterexamples = Vec::new();
    for (inst, report) in &fullrank {
        if let FullRankReport::Counterexample { distance, component_distances, .. } = report {
            counterexamples.push(format!(
                "{}: distance {distance:?}, component distances {component_distances:?}",
                instance_string(&inst.subspace, &inst.divisors)
            ));
        }
    }

    let f = f2();
    let atoms = gen::divisor_atoms(&f, 6);
    let (mut compared, mut literal_mismatch, mut refined_mismatch) = (0, 0, Vec::new());
    for _ in 0..200 {
        let t = rng.gen_range(2..=3);
        let divs: Vec<_> = (0..t).map(|_| atoms.choose(&mut rng).unwrap().clone()).collect();
        if divs.iter().map(|d| d.degree()).sum::<usize>() > 8 {
            continue;
        }
        let blocks = gen::random_sub_blocks(&f, &divs, &mut rng);
        if let BlockDiagReport::Compared { distance, refined, literal_matches, refined_matches, .. } =
            lemma_blockdiag_coprime_check(&blocks, &divs).map_err(err)?
        {
            compared += 1;
            if !literal_matches {
                literal_mismatch += 1;
            }
            if !refined_matches {
                let u = Subspace::from_rows(&gen::block_diagonal_rows(&f, &blocks)).map_err(err)?;
                refined_mismatch
                    .push(format!("{}: distance {distance}, refined {refined}", instance_string(&u, &divs)));
            }
        }
    }
    ensure(fullrank.len() >= 20, || format!("only {} full-rank instances", fullrank.len()))?;
    ensure(compared > 0, || "no block-diagonal coprime instances".into())?;
    ensure(refined_mismatch.is_empty(), || {
        findings(format!("{} block-diagonal refined mismatches", refined_mismatch.len()), &refined_mismatch)
    })?;
    ensure(counterexamples.is_empty(), || {
        let head =
            format!("{} of {} full-rank instances break d(C) = min d(C_i)", counterexamples.len(), fullrank.len());
        findings(head, &counterexamples)
    })?;
    Ok(vec![format!(
        "{} full-rank instances hold; {compared} block-diagonal instances, literal form differs on {literal_mismatch}",
        fullrank.len()
    )])
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "transpose example over F_2", limit: Some(Duration::from_secs(1)), run: example_one },
        Criterion { id: 2, name: "similar generators over F_4", limit: Some(Duration::from_secs(5)), run: example_two },
        Criterion {
            id: 3,
            name: "signature test vs power oracle",
            limit: Some(Duration::from_secs(60)),
            run: classification,
        },
        Criterion {
            id: 4,
            name: "order is lcm of divisor orders",
            limit: Some(Duration::from_secs(30)),
            run: order_is_divisor_lcm,
        },
        Criterion { id: 5, name: "coprime powers keep the signature", limit: None, run: power_lemma },
        Criterion { id: 6, name: "orbit-stabilizer and distribution", limit: None, run: orbit_identities },
        Criterion { id: 7, name: "Singer line code", limit: Some(Duration::from_secs(1)), run: singer_line_code },
        Criterion { id: 8, name: "conjugate codes", limit: None, run: conjugate_codes },
        Criterion { id: 9, name: "block bound harness", limit: Some(Duration::from_secs(300)), run: bound_harness },
        Criterion { id: 10, name: "equality lemmas", limit: Some(Duration::from_secs(120)), run: lemma_checks },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let limit = c.limit.map_or_else(|| "-".to_string(), |l| format!("{l:?}"));
        match outcome {
            Ok(notes) => {
                println!("PASS [{:>2}] {} ({elapsed:.2?}, limit {limit})", c.id, c.name);
                for n in notes {
                    println!("    {n}");
                }
            }
            Err(msg) => {
                failed += 1;
                println!("FAIL [{:>2}] {} ({elapsed:.2?}, limit {limit}): {msg}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
