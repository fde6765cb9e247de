//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::time::Instant;

use mlde_core::catalog::{
    self, check_fundamental_system, positivity_holds, positivity_values, verify_all, verify_s6_log,
};
use mlde_core::characters::verify_characters;
use mlde_core::classify::{classify_all, classify_case, enumerate_case, CaseSpec, DEFAULT_DEPTHS};
use mlde_core::forms::relations;
use mlde_core::mlde::{build_flat, build_sharp, frobenius_solve, mu, serre_derivation};
use mlde_core::rational::{fmt_rational, int, rat};
use mlde_core::{PuiseuxSeries, Rational};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<f64>);

fn fifths(v: &[i64]) -> Vec<Rational> {
    let mut out: Vec<Rational> = v.iter().map(|&n| rat(n, 5)).collect();
    out.sort();
    out
}

fn show(v: &[Rational]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}

fn expect_set(what: &str, got: &[Rational], want: &[Rational]) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!(
            "{what}: got {{{}}}, want {{{}}}",
            show(got),
            show(want)
        ))
    }
}

fn classification() -> Outcome {
    // the printed candidate sets, in fifths
    let case1 = fifths(&[
        -318, -198, -138, -78, -48, -38, -18, -6, -3, 2, 6, 12, 18, 22, 27, 30, 32,
    ]);
    let case2 = fifths(&[-3, 6, 42]);
    let case3 = fifths(&[-66, -18, -8, -3, 6]);
    let case4 = fifths(&[-8, -6, -3, 2, 12, 42]);
    let all = fifths(&[
        -318, -198, -138, -78, -48, -38, -18, -6, -3, 2, 6, 12, 18, 22, 27, 30, 32, 54, 42, 90,
        -66, -30, -8,
    ]);
    for (k, want) in [(1u8, &case1), (2, &case2), (3, &case3), (4, &case4)] {
        let c = CaseSpec::new(k)
            .unwrap()
            .with_depth(DEFAULT_DEPTHS[k as usize - 1]);
        expect_set(
            &format!("case {k} at depth {}", c.filter_depth),
            &classify_case(&c).final_set,
            want,
        )?;
    }
    let (got, _) = classify_all(DEFAULT_DEPTHS).map_err(|e| e.to_string())?;
    expect_set("union", &got, &all)?;
    Ok(format!(
        "4 case sets and the {}-value union match",
        got.len()
    ))
}

fn raw_sets() -> Outcome {
    let case1 = fifths(&[
        -2838, -1398, -918, -678, -534, -438, -318, -278, -246, -198, -150, -138, -118, -102, -78,
        -54, -48, -38, -30, -22, -18, -6, -3, 2, 6, 10, 12, 18, 22, 24, 26, 27, 30, 32, 33, 34, 36,
        37, 38, 39, 40, 41,
    ]);
    let case4 = fifths(&[
        -17, -16, -15, -14, -13, -12, -9, -8, -6, -3, 0, 2, 12, 18, 27, 42, 72, 162,
    ]);
    let raw = |k: u8| {
        let mut v: Vec<Rational> = enumerate_case(&CaseSpec::new(k).unwrap())
            .into_iter()
            .map(|c| c.s)
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let got1 = raw(1);
    let got4 = raw(4);
    expect_set("case 1 raw", &got1, &case1)?;
    expect_set("case 4 raw", &got4, &case4)?;
    Ok(format!(
        "case 1: {} values, case 4: {} values",
        got1.len(),
        got4.len()
    ))
}

fn frobenius_fixtures() -> Outcome {
    let sections = [
        "B.a", "B.d", "B.e", "B.f", "B.h", "B.l", "B.q", "C.e", "C.f",
    ];
    let (mut fixtures, mut coeffs) = (0, 0);
    for e in catalog::all_entries()
        .iter()
        .filter(|e| sections.contains(&e.section()))
    {
        let n = e.printed_prefix.len();
        let op = build_flat(&e.s, n + 2);
        let f =
            frobenius_solve(&op, &e.exponent, n).map_err(|err| format!("{}: {err}", e.label))?;
        let lead = &e.printed_prefix[0];
        let got: Vec<Rational> = f
            .integer_steps(n - 1)
            .unwrap()
            .iter()
            .map(|c| c * lead)
            .collect();
        if got != e.printed_prefix {
            return Err(format!(
                "{}: computed {} vs printed {}",
                e.label,
                show(&got),
                show(&e.printed_prefix)
            ));
        }
        fixtures += 1;
        coeffs += n;
    }
    if fixtures < 9 || coeffs < 40 {
        return Err(format!("only {fixtures} fixtures / {coeffs} coefficients"));
    }
    Ok(format!(
        "{fixtures} fixtures, {coeffs} printed coefficients"
    ))
}

fn relations_check() -> Outcome {
    let mut failing = Vec::new();
    for g in 'a'..='g' {
        let order = if g <= 'd' { 50 } else { 25 };
        for r in relations::verify_group(g, Some(order)).map_err(|e| e.to_string())? {
            if !r.status.is_verified() {
                if g <= 'd' {
                    return Err(format!("{} fails in group {g}", r.label));
                }
                if let Some(a) = &r.amendment {
                    if !a.status.is_verified() {
                        return Err(format!("{}: amendment does not verify", r.label));
                    }
                }
                failing.push(r.label);
            }
        }
    }
    let want: Vec<String> = relations::QUARANTINED
        .iter()
        .map(|s| s.to_string())
        .collect();
    if failing != want {
        return Err(format!("quarantine mismatch: {failing:?} vs {want:?}"));
    }
    Ok(format!(
        "(a)–(d) at 50, (e)–(g) at 25; quarantine asserted exactly ({} relations: {})",
        failing.len(),
        failing.join(" ")
    ))
}

fn catalog_check() -> Outcome {
    let reps = verify_all(None, None);
    let mut failing = Vec::new();
    for r in &reps {
        let printed =
            r.status.is_verified() && r.companion.as_ref().is_none_or(|c| c.is_verified());
        if !printed {
            failing.push(r.label.clone());
        }
    }
    let mut want: Vec<String> = catalog::QUARANTINED.iter().map(|s| s.to_string()).collect();
    failing.sort();
    want.sort();
    if failing != want {
        return Err(format!("quarantine mismatch: {failing:?} vs {want:?}"));
    }
    let low = reps.iter().filter_map(|r| match &r.status {
        catalog::EntryStatus::Verified { order } if *order < 25 => Some(r.label.clone()),
        _ => None,
    });
    if let Some(l) = low.into_iter().next() {
        return Err(format!("{l} verified below order 25"));
    }
    let log = verify_s6_log(25).map_err(|e| e.to_string())?;
    if !(log.log_part_matches_f45 && log.plain_prefix_matches && log.annihilated) {
        return Err(format!("s=6 logarithmic solution: {log:?}"));
    }
    Ok(format!(
        "{} entries verified, {} quarantined (asserted exactly), s=6 log solution matches",
        reps.len() - failing.len(),
        failing.len()
    ))
}

fn random_series(rng: &mut ChaCha8Rng, order: usize) -> PuiseuxSeries {
    let base = rat(rng.gen_range(-30..=30), rng.gen_range(1..=12));
    let coeffs: Vec<i64> = (0..=order).map(|_| rng.gen_range(-50..=50)).collect();
    let mut f = PuiseuxSeries::from_ints(base.clone(), 1, &coeffs);
    if f.is_zero() {
        f = PuiseuxSeries::monomial(int(1), base.clone(), base + int(order as i64 + 1));
    }
    f
}

fn operator_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let order = 30;
    let e4 = common::e4(order + 2);
    for (s, t, c) in [
        (rat(32, 5), rat(19, 5), rat(11, 3600)),
        (rat(-8, 5), rat(1, 5), rat(551, 3600)),
    ] {
        let flat = build_flat(&s, order + 2);
        let sharp = build_sharp(&mu(&t), order + 2);
        for i in 0..20 {
            let f = random_series(&mut rng, order);
            let lhs = flat.apply(&f).map_err(|e| e.to_string())?;
            let l = sharp.apply(&f).map_err(|e| e.to_string())?;
            let rhs = serre_derivation(&serre_derivation(&l, &int(4)), &int(6))
                .sub(&e4.mul(&l).scale(&c));
            if let Some((e, d)) = lhs.first_difference(&rhs) {
                return Err(format!(
                    "s={}: series {i} differs at q^{e} by {d}",
                    fmt_rational(&s)
                ));
            }
        }
    }
    Ok(
        "s=32/5 via (♯_{μ(19/5)}) and s=−8/5 via (♯_{μ(1/5)}), 20 random series each to order 30"
            .into(),
    )
}

fn wronskians() -> Outcome {
    let list = fifths(&[
        -48, -38, -6, -3, 2, 6, 12, 18, 22, 27, 30, 32, 54, 90, -66, -30, -8,
    ]);
    for s in &list {
        let c =
            check_fundamental_system(s, 25).map_err(|e| format!("s={}: {e}", fmt_rational(s)))?;
        if !(c.exponent_sum_is_one && c.wronskian_constant) {
            return Err(format!("s={}: {c:?}", fmt_rational(s)));
        }
    }
    Ok(format!(
        "all {} values: Σα = 1 and W/η²⁴ constant to order 25",
        list.len()
    ))
}

fn characters() -> Outcome {
    let names = ["A2", "D4", "E6", "E7", "E8", "G2", "F4"];
    let mut exps = Vec::new();
    for name in names {
        let r = verify_characters(name, 25).map_err(|e| format!("{name}: {e}"))?;
        if !r.verified || !r.exponents_are_indicial_roots {
            return Err(format!("{name} not verified"));
        }
        exps.push(r.exponents);
    }
    expect_set(
        "A2 exponents",
        &exps[0],
        &[rat(-1, 15), rat(1, 15), rat(4, 15), rat(11, 15)],
    )?;
    expect_set("E8 exponents", &exps[4], &[rat(-19, 60), rat(29, 60)])?;
    Ok(format!(
        "{} verified; A2 {{{}}}, E8 {{{}}}",
        names.join(" "),
        show(&exps[0]),
        show(&exps[4])
    ))
}

fn positivity() -> Outcome {
    for s in positivity_values() {
        if !positivity_holds(&s, 100).map_err(|e| e.to_string())? {
            return Err(format!(
                "s={} has a negative or non-integral 5·a_n",
                fmt_rational(&s)
            ));
        }
    }
    Ok("s ∈ {−33/5, −58/5, −108/5, −258/5}: 5·a_n ∈ ℤ≥0 for n < 100".into())
}

fn run_property<S: Strategy>(
    name: &str,
    strat: S,
    body: impl Fn(&S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: common::CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strat, |v| body(&v))
        .map_err(|e| format!("{name}: {e}"))
}

fn properties() -> Outcome {
    use common::*;
    run_property(
        "ring axioms",
        (series(), series(), series()),
        |(a, b, c)| ring_axioms(a, b, c),
    )?;
    run_property("Leibniz", (series(), series()), |(a, b)| leibniz(a, b))?;
    run_property(
        "pow_rational",
        (unit_series(), rational(7, 5), rational(7, 5)),
        |(f, x, y)| pow_additivity(f, x, y),
    )?;
    run_property(
        "η-conjugation",
        (series(), rational(12, 2), rational(12, 5)),
        |(f, k, l)| eta_conjugation(f, k, l),
    )?;
    run_property("weighted at k=0", rational(300, 5), weighted_zero_is_flat)?;
    if !eta24_prefix() {
        return Err("η²⁴ anchor".into());
    }
    Ok(format!("5 suites × {} cases", CASES))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("classification", classification, Some(60.0)),
        ("raw Diophantine sets", raw_sets, None),
        ("Frobenius fixtures", frobenius_fixtures, None),
        ("differential relations", relations_check, Some(120.0)),
        ("catalog verification", catalog_check, None),
        ("operator identities", operator_identities, None),
        ("Wronskian / exponent sums", wronskians, None),
        ("character cross-checks", characters, Some(300.0)),
        (
            "integrality and positivity at four exponent families",
            positivity,
            None,
        ),
        ("property suites", properties, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        let r = match (r, limit) {
            (Ok(_), Some(l)) if secs > *l => Err(format!("took {secs:.1}s, limit {l}s")),
            (r, _) => r,
        };
        match r {
            Ok(msg) => println!("PASS {:>2} {name} ({secs:.1}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
