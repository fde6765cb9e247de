//! Strategies and property bodies shared by the property suites and the acceptance run.
#![allow(dead_code)]

use mlde_core::forms::{euler_product, form_series, FormName};
use mlde_core::mlde::{build_flat, build_flat_weighted, serre_derivation};
use mlde_core::rational::{int, rat};
use mlde_core::{PuiseuxSeries, Rational};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const CASES: u32 = 256;

pub fn rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(n, d)| rat(n, d))
}

/// A truncated series `q^base Σ c_n q^{n/grid}` with small integer coefficients.
pub fn series() -> impl Strategy<Value = PuiseuxSeries> {
    (
        rational(12, 6),
        prop::sample::select(vec![1u64, 2, 3, 5]),
        prop::collection::vec(-9i64..=9, 1..16),
    )
        .prop_map(|(b, g, c)| PuiseuxSeries::from_ints(b, g, &c))
}

/// A series with leading coefficient 1 (so rational powers exist).
pub fn unit_series() -> impl Strategy<Value = PuiseuxSeries> {
    (rational(6, 4), prop::collection::vec(-5i64..=5, 1..12)).prop_map(|(b, mut c)| {
        c.insert(0, 1);
        PuiseuxSeries::from_ints(b, 1, &c)
    })
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn ring_axioms(
    a: &PuiseuxSeries,
    b: &PuiseuxSeries,
    c: &PuiseuxSeries,
) -> Result<(), TestCaseError> {
    check(a.add(b).agrees_with(&b.add(a)), "addition commutes")?;
    check(
        a.add(b).add(c).agrees_with(&a.add(&b.add(c))),
        "addition associates",
    )?;
    check(a.mul(b).agrees_with(&b.mul(a)), "multiplication commutes")?;
    check(
        a.mul(b).mul(c).agrees_with(&a.mul(&b.mul(c))),
        "multiplication associates",
    )?;
    check(
        a.mul(&b.add(c)).agrees_with(&a.mul(b).add(&a.mul(c))),
        "distributive",
    )?;
    check(a.sub(a).is_zero(), "a − a = 0")
}

pub fn leibniz(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<(), TestCaseError> {
    let lhs = a.mul(b).euler_derivative();
    let rhs = a
        .euler_derivative()
        .mul(b)
        .add(&a.mul(&b.euler_derivative()));
    check(lhs.agrees_with(&rhs), "D(fg) = D(f)g + fD(g)")
}

pub fn pow_additivity(f: &PuiseuxSeries, x: &Rational, y: &Rational) -> Result<(), TestCaseError> {
    let fx = f
        .pow_rational(x)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let fy = f
        .pow_rational(y)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let fxy = f
        .pow_rational(&(x + y))
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(fx.mul(&fy).agrees_with(&fxy), "f^x f^y = f^{x+y}")
}

/// `η^{2ℓ}` through `order` steps.
pub fn eta_power(two_l: &Rational, order: usize) -> PuiseuxSeries {
    euler_product(order)
        .pow_rational(two_l)
        .expect("unit series")
        .shift(&(two_l / int(24)))
}

pub fn eta_conjugation(f: &PuiseuxSeries, k: &Rational, l: &Rational) -> Result<(), TestCaseError> {
    let order = 20;
    let f = f.truncate(&(f.base_exponent() + int(order as i64)));
    let e = eta_power(&(l * int(2)), order + 2);
    let lhs = serre_derivation(&e.mul(&f), k);
    let rhs = e.mul(&serre_derivation(&f, &(k - l)));
    check(lhs.agrees_with(&rhs), "ϑ_k(η^{2ℓ}f) = η^{2ℓ}ϑ_{k−ℓ}(f)")
}

pub fn weighted_zero_is_flat(s: &Rational) -> Result<(), TestCaseError> {
    let a = build_flat(s, 12);
    let b = build_flat_weighted(s, &int(0), 12);
    check(a.coeffs.len() == b.coeffs.len(), "same order")?;
    for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
        check(x.agrees_with(y), "coefficient series agree")?;
    }
    Ok(())
}

/// Sanity anchor for the η-power helper: `η^{24} = Δ`'s first coefficients.
pub fn eta24_prefix() -> bool {
    let d = eta_power(&int(24), 3);
    d.base_exponent() == &int(1)
        && d.integer_steps(3).unwrap() == vec![int(1), int(-24), int(252), int(-1472)]
}

pub fn e4(order: usize) -> PuiseuxSeries {
    form_series(FormName::E4, order)
}
