//! Eisenstein series, Dedekind η and the ten named level-N forms.
//!
//! Series are memoized per form at the largest order requested so far;
//! smaller requests are served by truncation.

pub mod relations;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, legendre3, sigma, sigma_odd};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::series::PuiseuxSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormName {
    E2,
    E4,
    E6,
    E8,
    Eta,
    H2,
    Delta2,
    I3,
    Delta3,
    Theta,
    Delta4,
    Psi1,
    Psi2,
    I15,
    Delta15,
}

impl FormName {
    pub const ALL: [FormName; 15] = [
        FormName::E2,
        FormName::E4,
        FormName::E6,
        FormName::E8,
        FormName::Eta,
        FormName::H2,
        FormName::Delta2,
        FormName::I3,
        FormName::Delta3,
        FormName::Theta,
        FormName::Delta4,
        FormName::Psi1,
        FormName::Psi2,
        FormName::I15,
        FormName::Delta15,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormName::E2 => "E2",
            FormName::E4 => "E4",
            FormName::E6 => "E6",
            FormName::E8 => "E8",
            FormName::Eta => "eta",
            FormName::H2 => "H2",
            FormName::Delta2 => "Delta2",
            FormName::I3 => "I3",
            FormName::Delta3 => "Delta3",
            FormName::Theta => "theta",
            FormName::Delta4 => "Delta4",
            FormName::Psi1 => "psi1",
            FormName::Psi2 => "psi2",
            FormName::I15 => "I15",
            FormName::Delta15 => "Delta15",
        }
    }

    /// `(weight, level)` of the form; η and the E_k are level 1.
    pub fn weight_level(self) -> (Rational, u32) {
        match self {
            FormName::E2 => (int(2), 1),
            FormName::E4 => (int(4), 1),
            FormName::E6 => (int(6), 1),
            FormName::E8 => (int(8), 1),
            FormName::Eta => (rat(1, 2), 1),
            FormName::H2 | FormName::Delta2 => (int(2), 2),
            FormName::I3 | FormName::Delta3 => (int(1), 3),
            FormName::Theta | FormName::Delta4 => (rat(1, 2), 4),
            FormName::Psi1 | FormName::Psi2 => (rat(1, 5), 5),
            FormName::I15 | FormName::Delta15 => (int(1), 15),
        }
    }

    pub fn is_table1(self) -> bool {
        !matches!(
            self,
            FormName::E2 | FormName::E4 | FormName::E6 | FormName::E8 | FormName::Eta
        )
    }
}

impl fmt::Display for FormName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FormName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownForm(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedForm {
    pub name: FormName,
    pub weight: Rational,
    pub level: u32,
    /// 1 for E2, 0 otherwise.
    pub quasimodular_depth: u8,
    pub series: PuiseuxSeries,
}

fn named(name: FormName, series: PuiseuxSeries) -> NamedForm {
    let (weight, level) = name.weight_level();
    NamedForm {
        name,
        weight,
        level,
        quasimodular_depth: u8::from(name == FormName::E2),
        series,
    }
}

/// `E_k` for `k ∈ {2,4,6,8}` through `q^order`.
pub fn eisenstein(k: u32, order: usize) -> Result<NamedForm> {
    let name = match k {
        2 => FormName::E2,
        4 => FormName::E4,
        6 => FormName::E6,
        8 => FormName::E8,
        _ => return Err(Error::UnknownForm(format!("E{k}"))),
    };
    Ok(named(name, form_series(name, order)))
}

pub fn eta(order: usize) -> NamedForm {
    named(FormName::Eta, form_series(FormName::Eta, order))
}

/// One of the ten Table-1 forms.
pub fn table1_form(name: &str, order: usize) -> Result<NamedForm> {
    let n: FormName = name.parse()?;
    if !n.is_table1() {
        return Err(Error::UnknownForm(name.to_string()));
    }
    Ok(named(n, form_series(n, order)))
}

/// Any named form by enum.
pub fn named_form(name: FormName, order: usize) -> NamedForm {
    named(name, form_series(name, order))
}

fn cache() -> &'static Mutex<HashMap<FormName, PuiseuxSeries>> {
    static C: OnceLock<Mutex<HashMap<FormName, PuiseuxSeries>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Series of `name` exact through `q^{base + order}`.
pub fn form_series(name: FormName, order: usize) -> PuiseuxSeries {
    let want = |s: &PuiseuxSeries| s.base_exponent() + int(order as i64 + 1);
    if let Some(s) = cache().lock().unwrap().get(&name) {
        let p = want(s);
        if s.precision() >= p {
            return s.truncate(&p);
        }
    }
    let s = build(name, order);
    let mut c = cache().lock().unwrap();
    let keep = match c.get(&name) {
        Some(old) => old.precision() < s.precision(),
        None => true,
    };
    if keep {
        c.insert(name, s.clone());
    }
    s
}

fn build(name: FormName, n: usize) -> PuiseuxSeries {
    match name {
        FormName::E2 => eisenstein_series(-24, 1, n),
        FormName::E4 => eisenstein_series(240, 3, n),
        FormName::E6 => eisenstein_series(-504, 5, n),
        FormName::E8 => eisenstein_series(480, 7, n),
        FormName::Eta => euler_product(n).shift(&rat(1, 24)),
        FormName::H2 => {
            let mut c = vec![BigInt::one()];
            c.extend((1..=n as u64).map(|k| BigInt::from(24 * sigma_odd(k))));
            PuiseuxSeries::from_bigints(int(0), 1, c)
        }
        FormName::I3 => {
            let mut c = vec![BigInt::one()];
            c.extend(
                (1..=n as u64)
                    .map(|k| BigInt::from(6 * divisors(k).into_iter().map(legendre3).sum::<i64>())),
            );
            PuiseuxSeries::from_bigints(int(0), 1, c)
        }
        FormName::Theta => {
            let mut c = vec![BigInt::zero(); n + 1];
            c[0] = BigInt::one();
            let mut k = 1usize;
            while k * k <= n {
                c[k * k] += 2;
                k += 1;
            }
            PuiseuxSeries::from_bigints(int(0), 1, c)
        }
        FormName::Delta2 => eta_quotient(&[(2, 8), (1, -4)], n),
        FormName::Delta3 => eta_quotient(&[(3, 3), (1, -1)], n),
        FormName::Delta4 => eta_quotient(&[(4, 2), (2, -1)], n),
        FormName::I15 => eta_quotient(&[(3, 2), (5, 2), (1, -1), (15, -1)], n),
        FormName::Delta15 => eta_quotient(&[(1, 2), (15, 2), (3, -1), (5, -1)], n),
        FormName::Psi1 | FormName::Psi2 => {
            let which = if name == FormName::Psi1 { 1 } else { 2 };
            let eta25 = euler_product(n)
                .pow_rational(&rat(2, 5))
                .expect("unit series");
            eta25.mul(&rr_factor(which, n)).shift(&rat(1, 60))
        }
    }
}

fn eisenstein_series(c: i64, k: u32, n: usize) -> PuiseuxSeries {
    let mut v = vec![BigInt::one()];
    v.extend((1..=n as u64).map(|m| sigma(m, k) * c));
    PuiseuxSeries::from_bigints(int(0), 1, v)
}

/// `∏_{n≥1}(1−qⁿ)` through `q^order`.
pub fn euler_product(order: usize) -> PuiseuxSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for m in 1..=order {
        for k in (m..=order).rev() {
            let t = c[k - m].clone();
            c[k] -= t;
        }
    }
    PuiseuxSeries::from_bigints(int(0), 1, c)
}

/// `∏ η(q^m)^e` through `order` steps past its leading exponent `Σ m·e/24`.
pub fn eta_quotient(factors: &[(u64, i64)], order: usize) -> PuiseuxSeries {
    let mut acc = PuiseuxSeries::one(order);
    let mut base = Rational::zero();
    for &(m, e) in factors {
        let inner = euler_product(order / m as usize).substitute_power(m);
        acc = acc.mul(&inner.pow_rational(&int(e)).expect("unit series"));
        base += rat(m as i64 * e, 24);
    }
    acc.shift(&base)
}

/// The integer-coefficient Rogers–Ramanujan factor: `ψ_i = η^{2/5}·R_i`, with
/// `R_1 = q^{−1/60}∏_{n≡±1 (5)}(1−qⁿ)^{−1}` and `R_2 = q^{11/60}∏_{n≡±2 (5)}(1−qⁿ)^{−1}`.
pub fn rr_factor(which: u8, order: usize) -> PuiseuxSeries {
    let keep = |n: usize| match which {
        1 => n % 5 == 1 || n % 5 == 4,
        _ => n % 5 == 2 || n % 5 == 3,
    };
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for m in (1..=order).filter(|&m| keep(m)) {
        for k in m..=order {
            let t = c[k - m].clone();
            c[k] += t;
        }
    }
    let base = if which == 1 { rat(-1, 60) } else { rat(11, 60) };
    PuiseuxSeries::from_bigints(base, 1, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PuiseuxSeries, n: usize) -> Vec<i64> {
        s.integer_steps(n)
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c.to_integer()).unwrap())
            .collect()
    }

    /// Pentagonal-number theorem, independent of the product code.
    fn pentagonal(n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n + 1];
        for k in -(n as i64)..=(n as i64) {
            let e = k * (3 * k - 1) / 2;
            if e >= 0 && (e as usize) <= n {
                c[e as usize] += if k % 2 == 0 { 1 } else { -1 };
            }
        }
        c
    }

    #[test]
    fn eisenstein_prefixes() {
        assert_eq!(
            ints(&eisenstein(2, 5).unwrap().series, 3),
            vec![1, -24, -72, -96]
        );
        assert_eq!(
            ints(&eisenstein(4, 5).unwrap().series, 2),
            vec![1, 240, 2160]
        );
        let e4 = form_series(FormName::E4, 50);
        assert_eq!(e4.mul(&e4), form_series(FormName::E8, 50));
        assert!(eisenstein(10, 3).is_err());
    }

    #[test]
    fn eta_is_pentagonal() {
        let e = eta(60).series;
        assert_eq!(e.base_exponent(), &rat(1, 24));
        assert_eq!(ints(&e, 60), pentagonal(60));
        assert_eq!(e.invert().unwrap().base_exponent(), &rat(-1, 24));
        assert!(e
            .mul(&e.invert().unwrap())
            .agrees_with(&PuiseuxSeries::one(50)));
    }

    #[test]
    fn ramanujan_tau() {
        let d = eta(10).series.pow_int(24).unwrap();
        assert_eq!(d.base_exponent(), &int(1));
        assert_eq!(ints(&d, 5), vec![1, -24, 252, -1472, 4830, -6048]);
        // brute-force product oracle
        let mut c = [0i64; 11];
        c[0] = 1;
        for m in 1..=10usize {
            for _ in 0..24 {
                for k in (m..=10).rev() {
                    c[k] -= c[k - m];
                }
            }
        }
        assert_eq!(ints(&d, 9), c[..10].to_vec());
    }

    #[test]
    fn table1_prefixes() {
        assert_eq!(
            ints(&table1_form("theta", 10).unwrap().series, 9),
            vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
        );
        assert_eq!(
            ints(&table1_form("H2", 5).unwrap().series, 3),
            vec![1, 24, 24, 96]
        );
        assert_eq!(
            ints(&table1_form("I3", 5).unwrap().series, 4),
            vec![1, 6, 0, 6, 6]
        );
        let r1 = rr_factor(1, 10);
        assert_eq!(r1.base_exponent(), &rat(-1, 60));
        assert_eq!(ints(&r1, 5), vec![1, 1, 1, 1, 2, 2]);
        let psi1 = table1_form("psi1", 30).unwrap().series;
        let quotient = psi1
            .div(&eta(30).series.pow_rational(&rat(2, 5)).unwrap())
            .unwrap();
        assert!(quotient.agrees_with(&r1));
        assert!(table1_form("E4", 3).is_err());
        assert!(table1_form("nope", 3).is_err());
    }

    #[test]
    fn table1_leading_terms() {
        let expect = [
            ("H2", int(0)),
            ("Delta2", rat(1, 2)),
            ("I3", int(0)),
            ("Delta3", rat(1, 3)),
            ("theta", int(0)),
            ("Delta4", rat(1, 4)),
            ("psi1", int(0)),
            ("psi2", rat(1, 5)),
            ("I15", int(0)),
            ("Delta15", int(1)),
        ];
        for (n, e) in expect {
            let f = table1_form(n, 30).unwrap();
            assert_eq!(f.series.base_exponent(), &e, "{n}");
            assert_eq!(
                f.series.leading_coefficient(),
                Some(&Rational::one()),
                "{n}"
            );
            if !matches!(n, "psi1" | "psi2") {
                assert!(f.series.is_integral(), "{n}");
                assert_eq!(f.series.order(), 30, "{n}");
            }
        }
    }
}
