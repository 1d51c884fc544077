//! Acceptance checks AC1–AC8. Prints one `[PASS]`/`[FAIL]` line per criterion
//! and exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use resolv_core::catalog::{builtin_catalog, compare, random_presentation};
use resolv_core::information::{bogoliubov_dimension, entropy_numbers, information_score, lower_bound_checks};
use resolv_core::matrix_rep::pauli;
use resolv_core::resolution::{clifford_resolution, deserialize, serialize, verify};
use resolv_core::{
    CycElement, CycScalar, CycTarget, Field, FiniteFreeResolution, Limits, Matrix, ScalarMatrix, Word,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(started: Instant, budget: Duration) -> Result<(), String> {
    let took = started.elapsed();
    ensure(took < budget, format!("took {took:.2?}, budget {budget:?}"))
}

fn clifford_relations(m: usize) -> Vec<CycElement> {
    let d = 2 * m;
    let mut out = Vec::new();
    for k in 0..d {
        for l in k..d {
            let mut x = CycElement::zero(d);
            x.add_term(Word::new(vec![k, l]), CycScalar::one());
            x.add_term(Word::new(vec![l, k]), CycScalar::one());
            if k == l {
                x.add_term(Word::unit(), -CycScalar::one());
            }
            out.push(x);
        }
    }
    out
}

fn ac1() -> Check {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_resolv"))
        .args(["clifford", "--m", "1"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), "clifford --m 1 exited nonzero")?;
    let res = deserialize(&String::from_utf8_lossy(&out.stdout)).map_err(|e| e.to_string())?;
    ensure(res.dims() == [2, 3], format!("m=1 dims {:?}", res.dims()))?;
    ensure(res.degrees() == [2], format!("m=1 degrees {:?}", res.degrees()))?;
    ensure(res.relations() == clifford_relations(1).as_slice(), "m=1 relations differ")?;
    let m2 = clifford_resolution(2, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(m2.dims() == [4, 10], format!("m=2 dims {:?}", m2.dims()))?;
    ensure(m2.relations() == clifford_relations(2).as_slice(), "m=2 relations differ")?;
    within(started, Duration::from_secs(1))?;
    Ok("dims [2,3] / [4,10], degrees [2], relations e_k e_l + e_l e_k − δ_kl".into())
}

fn ac2() -> Check {
    let started = Instant::now();
    let limits = Limits::default();
    let res = clifford_resolution(1, &limits).map_err(|e| e.to_string())?;
    let report = verify(&res, 4, &limits).map_err(|e| e.to_string())?;
    ensure(report.surjective && report.generated_dim == 4, "not surjective onto M₂")?;
    ensure(report.relations_vanish, "relations do not vanish")?;
    let mut seen = Vec::new();
    for (k, expected) in [(2usize, 3usize), (3, 11), (4, 27)] {
        let c = report.exactness_by_degree[&k];
        let space = resolv_core::free_algebra::filtration_dim(2, k).unwrap();
        ensure(
            c.equal && c.kernel_dim == expected && c.ideal_dim == expected && space - 4 == expected,
            format!("degree {k}: kernel {} ideal {} expected {expected}", c.kernel_dim, c.ideal_dim),
        )?;
        seen.push(format!("{}", c.kernel_dim));
    }
    ensure(report.passed(), "verification failed")?;
    within(started, Duration::from_secs(5))?;
    Ok(format!("surjective, relations vanish, kernel = ideal = {} at degrees 2/3/4", seen.join("/")))
}

fn ac3() -> Check {
    let [sx, sy, _] = pauli();
    let s = CycScalar::inv_sqrt2();
    let target = CycTarget::new(2, vec![sx.scale(&s), sy.scale(&s)]).map_err(|e| e.to_string())?;
    let r = lower_bound_checks(&target, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(r.min_generators == 2, format!("min generators {}", r.min_generators))?;
    ensure(r.min_relation_degree == Some(2), format!("min relation degree {:?}", r.min_relation_degree))?;
    ensure(r.min_relations_at_degree_2 == 3, format!("min relations {}", r.min_relations_at_degree_2))?;
    Ok("min generators 2, min relation degree 2, min relations 3".into())
}

fn ac4() -> Check {
    let started = Instant::now();
    let limits = Limits::default();
    let mut dims = Vec::new();
    for (m, expected) in [(1usize, 1usize), (2, 6)] {
        let res = clifford_resolution(m, &limits).map_err(|e| e.to_string())?;
        let b = bogoliubov_dimension(&res, &limits).map_err(|e| e.to_string())?.dimension;
        ensure(b == expected && b == m * (2 * m - 1), format!("m={m}: {b}, expected {expected}"))?;
        dims.push(b);
    }
    within(started, Duration::from_secs(10))?;
    Ok(format!("m=1 → {}, m=2 → {}", dims[0], dims[1]))
}

fn ac5() -> Check {
    let res = clifford_resolution(1, &Limits::default()).map_err(|e| e.to_string())?;
    let (s, _) = entropy_numbers(&res).map_err(|e| e.to_string())?;
    let err = (s - 24f64.ln()).abs();
    ensure(err <= 1e-9, format!("s_numbers {s:.12}, |Δ| = {err:e}"))?;
    ensure(format!("{s:.9}") == "3.178053830", format!("rendered {s:.9}"))?;
    Ok(format!("s_numbers = {s:.9} (|s − ln 24| = {err:.1e})"))
}

fn ac6() -> Check {
    let started = Instant::now();
    let limits = Limits::default();
    let mut entries = builtin_catalog(&limits).map_err(|e| e.to_string())?;
    for seed in 1..=20 {
        entries.push(random_presentation(seed, 2, 2, &limits).map_err(|e| e.to_string())?);
    }
    let report = compare(&entries, None, &limits);
    ensure(report.failed.is_empty(), format!("unverified entries: {:?}", report.failed))?;
    let below: Vec<&str> = report.ranked.iter().filter(|r| r.info.score < 20).map(|r| r.name.as_str()).collect();
    ensure(below.is_empty(), format!("entries scoring below 20: {below:?}"))?;
    let clifford = report.row("clifford-m1").ok_or("clifford-m1 missing")?;
    ensure(clifford.info.score == 20 && clifford.is_min, format!("clifford-m1 score {}", clifford.info.score))?;
    let over: Vec<&str> = report
        .ranked
        .iter()
        .filter(|r| r.dims[0] == 2 && r.degrees == [2] && r.info.bogoliubov_dim > 1)
        .map(|r| r.name.as_str())
        .collect();
    ensure(over.is_empty(), format!("Bogoliubov dimension above 1: {over:?}"))?;
    within(started, Duration::from_secs(60))?;
    Ok(format!("{} entries verified, minimum 20 attained by clifford-m1, max bog 1 among d₁=2", report.ranked.len()))
}

fn small_scalar() -> impl Strategy<Value = CycScalar> {
    let half = CycScalar::from_rational(resolv_core::scalar::rational(1, 2));
    prop_oneof![
        Just(CycScalar::zero()),
        Just(CycScalar::one()),
        Just(-CycScalar::one()),
        Just(CycScalar::i()),
        Just(-CycScalar::i()),
        Just(half),
        Just(CycScalar::sqrt2()),
        Just(CycScalar::from(3)),
    ]
}

fn square(n: usize) -> impl Strategy<Value = ScalarMatrix> {
    prop::collection::vec(small_scalar(), n * n).prop_map(move |v| Matrix::new(n, n, v).unwrap())
}

fn element(d: usize) -> impl Strategy<Value = CycElement> {
    let word = prop::collection::vec(0..d, 0..=3).prop_map(Word::new);
    prop::collection::vec((word, small_scalar()), 0..5).prop_map(move |terms| {
        let mut x = CycElement::zero(d);
        for (w, c) in terms {
            x.add_term(w, c);
        }
        x
    })
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn ac7() -> Check {
    let limits = Limits::default();
    let base = clifford_resolution(1, &limits).map_err(|e| e.to_string())?;
    let before = information_score(&base, &limits).map_err(|e| e.to_string())?;
    let invertible = square(2).prop_filter("singular", |l| l.rank() == 2);
    runner(50)
        .run(&invertible, |l| {
            let moved = base.transformed(&l).unwrap();
            let after = information_score(&moved, &limits).unwrap();
            prop_assert_eq!(
                (before.raw_params, before.bogoliubov_dim, before.score),
                (after.raw_params, after.bogoliubov_dim, after.score)
            );
            prop_assert!(verify(&moved, 4, &limits).unwrap().passed());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("50 random invertible L: (raw, bog, score) = (21, 1, 20) and verify passes".into())
}

fn ac8() -> Check {
    const CASES: u32 = 200;
    let mut passed = Vec::new();

    runner(CASES)
        .run(&(small_scalar(), small_scalar(), small_scalar()), |(a, b, c)| {
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c));
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(a * inv, CycScalar::one());
            } else {
                prop_assert!(a.is_zero());
            }
            Ok(())
        })
        .map_err(|e| format!("field axioms: {e}"))?;
    passed.push("field axioms");

    runner(CASES)
        .run(&(element(2), element(2), square(2)), |(x, y, a)| {
            let lhs = x.mul(&y).unwrap().derivation(&a).unwrap();
            let rhs = x.derivation(&a).unwrap().mul(&y).unwrap().add(&x.mul(&y.derivation(&a).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| format!("Leibniz: {e}"))?;
    passed.push("Leibniz");

    let target = || (square(2), square(2)).prop_map(|(a, b)| CycTarget::new(2, vec![a, b]).unwrap());
    runner(CASES)
        .run(&(target(), element(2), element(2)), |(t, x, y)| {
            let lhs = t.evaluate(&x.mul(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs, t.evaluate(&x).unwrap().mul(&t.evaluate(&y).unwrap()).unwrap());
            Ok(())
        })
        .map_err(|e| format!("homomorphism: {e}"))?;
    passed.push("homomorphism");

    let shaped = (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(small_scalar(), r * c).prop_map(move |v| Matrix::new(r, c, v).unwrap())
    });
    runner(CASES)
        .run(&shaped, |m: ScalarMatrix| {
            let (rank, kernel) = m.rank_and_kernel();
            prop_assert_eq!(rank + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
            Ok(())
        })
        .map_err(|e| format!("rank–nullity: {e}"))?;
    passed.push("rank–nullity");

    runner(CASES)
        .run(&(target(), prop::collection::vec(element(2), 0..4)), |(t, rels)| {
            let res = FiniteFreeResolution::presentation("round-trip", rels, t).unwrap();
            let text = serialize(&res);
            prop_assert_eq!(deserialize(&text).unwrap(), res);
            Ok(())
        })
        .map_err(|e| format!("serialization round trip: {e}"))?;
    passed.push("serialization round trip");

    Ok(format!("{CASES} cases each: {}", passed.join(", ")))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Check); 8] = [
        ("AC1", "Clifford construction", ac1),
        ("AC2", "verification of Clifford m=1 at D=4", ac2),
        ("AC3", "lower bounds on the Pauli target", ac3),
        ("AC4", "Bogoliubov dimension", ac4),
        ("AC5", "entropy", ac5),
        ("AC6", "minimality at desk scale", ac6),
        ("AC7", "orbit invariance", ac7),
        ("AC8", "algebraic property suites", ac8),
    ];
    let mut failures = 0;
    for (id, title, check) in criteria {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title} ({secs:.2} s): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {id} {title} ({secs:.2} s): {detail}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
