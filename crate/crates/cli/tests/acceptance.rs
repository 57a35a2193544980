//! Acceptance criteria 1-10, one line each. Runs without the libtest harness
//! so the lines are always printed.

use std::ops::RangeInclusive;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use monodromy::braid::{
    band_generator, garside_delta, normal_form, permutation_of, words_equal, words_equal_by_handles,
};
use monodromy::config::defaults;
use monodromy::equiv::{bfs_hurwitz_equiv, check_certificate, hurwitz_invariant_mismatch, rewrite_theorem_main};
use monodromy::instances::{gen_instances, Profile};
use monodromy::semigroup::{check_cl1, delta_tilde_squared};
use monodromy::sym::{
    apply_sym_certificate, hurwitz_element, lambda_conjugate, marked_equiv, marked_orbit_case, sym_hurwitz_move,
};
use monodromy::verify::{fixture, verify_with, S1_JSON, S2_JSON};
use monodromy::{BraidWord, Direction, Factor, Factorization, Move, Permutation, SearchLimits, SingClass};

type Outcome = Result<String, String>;

const PROPERTY_CASES: usize = 10_000;

fn w(m: usize, l: &[i32]) -> BraidWord {
    BraidWord::new(m, l.to_vec()).unwrap()
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail} ({:.2}s)", took.as_secs_f64()))
    } else {
        Err(format!("{detail}, but took {:.2}s > {:.0?}", took.as_secs_f64(), limit))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Equality under normal forms, confirmed by handle reduction.
fn equal(a: &BraidWord, b: &BraidWord) -> bool {
    let nf = words_equal(a, b).unwrap();
    assert_eq!(words_equal_by_handles(a, b, 1_000_000), Some(nf), "word-problem methods disagree");
    nf
}

fn transpositions(s: &Factorization) -> String {
    s.factors()
        .iter()
        .map(|f| {
            let (a, b) = f.permutation_pair();
            format!("({a},{b})")
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (s1, s2) = (fixture(S1_JSON), fixture(S2_JSON));
    let bacb = [2, 1, 3, 2].repeat(3);
    let form1 = w(4, &[vec![-3, -3], bacb.clone(), vec![-1, -3, -3, -3]].concat());
    let form2 = w(4, &[bacb, vec![-1, -1, -1, -3, -3, -3]].concat());
    ensure(equal(&s1.alpha(), &s2.alpha()), || "α(s1) != α(s2)".into())?;
    ensure(equal(&s1.alpha(), &form1), || "α(s1) differs from its closed form".into())?;
    ensure(equal(&s2.alpha(), &form2), || "α(s2) differs from its closed form".into())?;
    let (g1, g2) = (transpositions(&s1), transpositions(&s2));
    ensure(g1 == "(1,3)(2,3)(1,4)(2,4)(3,4)(3,4)", || format!("γ̃(s1) = {g1}"))?;
    ensure(g2 == "(2,3)(1,4)(1,4)(2,3)(2,3)(1,4)", || format!("γ̃(s2) = {g2}"))?;
    let (o1, o2) = (s1.generated_sym_subgroup().unwrap().order(), s2.generated_sym_subgroup().unwrap().order());
    ensure((o1, o2) == (24, 4), || format!("orders {o1}, {o2}"))?;
    ensure(hurwitz_invariant_mismatch(&s1, &s2).unwrap().is_some(), || "s1, s2 not separated".into())?;
    let timed = within(Duration::from_secs(1), start, format!("γ̃(s1) = {g1}, γ̃(s2) = {g2}, orders 24 vs 4"))?;

    // the same facts through the command line
    let out = Command::new(env!("CARGO_BIN_EXE_monodromy")).args(["verify-paper", "--json"]).output().unwrap();
    ensure(out.status.success(), || format!("verify-paper exited with {}", out.status))?;
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let detail = |id: &str| {
        report["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).map(|c| c["details"].as_str().unwrap().to_owned())
    };
    let images = detail("sym-images").unwrap_or_default();
    ensure(images.contains(&g1) && images.contains(&g2), || format!("verify-paper printed `{images}`"))?;
    ensure(report["status"] == "pass", || "verify-paper reported a failure".into())?;
    Ok(format!("{timed}; verify-paper agrees"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (a, c, bacb) = (w(4, &[1]), w(4, &[3]), w(4, &[2, 1, 3, 2]));
    ensure(equal(&c.compose(&bacb).unwrap(), &bacb.compose(&a).unwrap()), || "c(bacb) != (bacb)a".into())?;
    ensure(equal(&a.compose(&bacb).unwrap(), &bacb.compose(&c).unwrap()), || "a(bacb) != (bacb)c".into())?;
    within(Duration::from_millis(100), start, "c(bacb) = (bacb)a and a(bacb) = (bacb)c".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for m in 2..=6 {
        let d = delta_tilde_squared(m).unwrap();
        ensure(equal(&d.alpha(), &garside_delta(m).unwrap().pow(2)), || format!("α(δ̃²_{m}) != Δ²"))?;
        if m > 2 {
            let mut expected: Vec<Factor> = (1..m)
                .map(|k| {
                    let f = d.factors()[k - 1].clone();
                    assert!(equal(&f.value(), &band_generator(m, k, m).unwrap().pow(2)));
                    f
                })
                .collect();
            expected.extend(delta_tilde_squared(m - 1).unwrap().widen(m).unwrap().factors().iter().cloned());
            ensure(d.factors() == expected.as_slice(), || format!("recursion fails at m={m}"))?;
        }
    }
    within(Duration::from_secs(5), start, "m = 2..6".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for m in 2..=6 {
        let d2 = garside_delta(m).unwrap().pow(2);
        for i in 1..m as i32 {
            let a = w(m, &[i]);
            ensure(equal(&d2.compose(&a).unwrap(), &a.compose(&d2).unwrap()), || format!("m={m}, a{i}"))?;
        }
    }
    within(Duration::from_secs(1), start, "m = 2..6, every generator".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for m in 2..=4 {
        for g in 0..=2 {
            let h = hurwitz_element(m, g).unwrap();
            for i in 1..m {
                let moved = lambda_conjugate(&h, &Permutation::transposition(m, i, i + 1)).unwrap();
                let out = marked_equiv(&moved, &h, &SearchLimits::default()).unwrap();
                let cert = out.certificate().ok_or_else(|| format!("m={m} g={g} i={i}: {out:?}"))?;
                ensure(apply_sym_certificate(&moved, cert).unwrap() == h, || format!("m={m} g={g} i={i}: replay"))?;
                n += 1;
            }
        }
    }
    within(Duration::from_secs(30), start, format!("{n} certificates replayed"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for (m, g) in [(3, 0), (3, 1), (3, 2), (4, 0), (4, 1)] {
        let len = 2 * (m + g - 1);
        // k marks of 2 and k of 0 are the same case up to relabeling
        for twos in 1..=len / 2 {
            let case = marked_orbit_case(m, g, twos, 20_000_000).unwrap();
            ensure(case.holds(), || format!("{case:?}"))?;
            n += 1;
        }
    }
    within(Duration::from_secs(60), start, format!("{n} mark multisets, each orbit complete"))
}

fn random_word(rng: &mut ChaCha8Rng, m: usize, lens: RangeInclusive<usize>) -> BraidWord {
    let len = rng.gen_range(lens);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..m as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(m, letters).unwrap()
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let d = delta_tilde_squared(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(defaults().seeds.d2_conjugators);
    let mut moves = 0;
    for k in 0..20 {
        let g = random_word(&mut rng, 3, 1..=4);
        let s = d.simultaneous_conjugate(&g).unwrap();
        let out = bfs_hurwitz_equiv(&s, &d, &SearchLimits::default()).unwrap();
        let cert = out.certificate().ok_or_else(|| format!("conjugator {k} {:?}: {out:?}", g.letters()))?;
        ensure(check_certificate(&s, &d, cert).ok, || format!("conjugator {k}: replay"))?;
        moves += cert.len();
    }
    within(Duration::from_secs(120), start, format!("20 conjugators, {moves} moves in total"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let seed = defaults().seeds.gen_instances;
    let mut total = 0;
    for profile in [Profile::Conjugate, Profile::Shuffle] {
        for pair in gen_instances(3, 10, profile, seed).unwrap() {
            let out = rewrite_theorem_main(&pair.s1, &pair.s2, &SearchLimits::default()).unwrap();
            let cert = out.certificate().ok_or_else(|| format!("{}: {out:?}", pair.name))?;
            ensure(check_certificate(&pair.s1, &pair.s2, cert).ok, || format!("{}: replay", pair.name))?;
            ensure(cert.count_inserts() == cert.count_cancels(), || format!("{}: inserts != cancels", pair.name))?;
            total += 1;
        }
    }
    within(Duration::from_secs(600), start, format!("{total} pairs certified"))
}

fn random_factorization(rng: &mut ChaCha8Rng, strands: RangeInclusive<usize>) -> Factorization {
    let m = rng.gen_range(strands);
    let len = rng.gen_range(2..=6);
    let factors = (0..len)
        .map(|_| {
            let class = match rng.gen_range(0..4) {
                0 => SingClass::Abar1,
                i => SingClass::A(i - 1),
            };
            Factor::new(class, random_word(rng, m, 0..=4))
        })
        .collect();
    Factorization::new(m, factors).unwrap()
}

fn random_move(rng: &mut ChaCha8Rng, s: &Factorization) -> (usize, Direction) {
    let i = rng.gen_range(1..s.len());
    (i, if rng.gen_bool(0.5) { Direction::R } else { Direction::L })
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(defaults().seeds.properties);
    let mut suites = Vec::new();
    let mut run = |name: &str, mut case: Box<dyn FnMut(&mut ChaCha8Rng) -> bool + '_>| -> Result<(), String> {
        for k in 0..PROPERTY_CASES {
            if !case(&mut rng) {
                return Err(format!("{name}: case {k} fails"));
            }
        }
        suites.push(name.to_owned());
        Ok(())
    };
    run(
        "alpha",
        Box::new(|rng| {
            let s = random_factorization(rng, 2..=5);
            let (i, d) = random_move(rng, &s);
            s.alpha_nf() == s.hurwitz(i, d).unwrap().alpha_nf()
        }),
    )?;
    run(
        "round-trip",
        Box::new(|rng| {
            let s = random_factorization(rng, 2..=5);
            let (i, d) = random_move(rng, &s);
            s.hurwitz(i, d).unwrap().hurwitz(i, d.inverse()).unwrap().matches(&s)
        }),
    )?;
    run(
        "degree-and-order",
        Box::new(|rng| {
            let s = random_factorization(rng, 2..=5);
            let (i, d) = random_move(rng, &s);
            let t = s.hurwitz(i, d).unwrap();
            s.multi_degree() == t.multi_degree()
                && s.generated_sym_subgroup().unwrap().order() == t.generated_sym_subgroup().unwrap().order()
        }),
    )?;
    run(
        "c-multi-degree",
        Box::new(|rng| {
            let m = rng.gen_range(2..=5);
            let s = random_factorization(rng, m..=m);
            let g = random_word(rng, m, 0..=4);
            let at = rng.gen_range(1..=s.len() + 1);
            let t = s.apply(&Move::Insert(at, g)).unwrap();
            t.c_multi_degree() == s.c_multi_degree() && t.apply(&Move::Cancel(at)).unwrap() == s
        }),
    )?;
    run(
        "sym-image",
        Box::new(|rng| {
            let s = random_factorization(rng, 2..=5);
            let (i, d) = random_move(rng, &s);
            s.hurwitz(i, d).unwrap().sym_image() == sym_hurwitz_move(&s.sym_image(), i, d).unwrap()
        }),
    )?;
    run(
        "cl1",
        Box::new(|rng| {
            let m = rng.gen_range(2..=4);
            let (s, t) = (random_factorization(rng, m..=m), random_factorization(rng, m..=m));
            check_cl1(&s, &t).unwrap()
        }),
    )?;
    run(
        "word-problem",
        Box::new(|rng| {
            let m = rng.gen_range(2..=6);
            let a = random_word(rng, m, 0..=40);
            // half the time compare with a word known to be equal
            let b = if rng.gen_bool(0.5) { normal_form(&a).to_word() } else { random_word(rng, m, 0..=40) };
            let nf = words_equal(&a, &b).unwrap();
            let perm_ok = !nf || permutation_of(&a) == permutation_of(&b);
            words_equal_by_handles(&a, &b, 1_000_000) == Some(nf) && perm_ok
        }),
    )?;
    within(Duration::from_secs(600), start, format!("{} suites x {PROPERTY_CASES} cases", suites.len()))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let (s1, s2) = (fixture(S1_JSON), fixture(S2_JSON));
    let mut n = 0;
    for (j, f) in s1.factors().iter().enumerate() {
        for p in 0..f.conj.len() {
            let mut letters = f.conj.letters().to_vec();
            letters[p] = -letters[p];
            let mut factors = s1.factors().to_vec();
            factors[j] = Factor::new(f.class, w(4, &letters));
            let report = verify_with(&Factorization::new(4, factors).unwrap(), &s2);
            ensure(!report.passed(), || format!("flipping letter {p} of factor {} goes unnoticed", j + 1))?;
            n += 1;
        }
    }
    within(Duration::from_secs(300), start, format!("all {n} single-letter flips detected"))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(c).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {}: pass - {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL - {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
