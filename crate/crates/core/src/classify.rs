//! Diophantine classification of the parameters `s` for which (♭_s) has a solution of CFT type.
//!
//! For each indicial root the `n = 1` step of the recursion is a quadratic in `t = m·s` that
//! factors as `(t − A)(t + B(a₁)) = C`; integer divisor pairs of `C` give the raw candidates,
//! which are then filtered by solving the recursion and demanding non-negative integer
//! coefficients.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mlde::{build_flat, flat_roots, frobenius_solve};
use crate::rational::{fmt_rational, int, is_integer, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSpec {
    pub case_id: u8,
    /// `t = m·s`.
    pub m: i64,
    /// `C` in `(t − A)(t + B) = C`, as implied by the `n = 1` quadratic.
    pub c: i64,
    /// `C` as printed; cases 2–4 carry the opposite sign.
    pub printed_c: i64,
    /// The `s` killing the linear factor of the `n = 1` polynomial.
    pub excluded_linear_root: Rational,
    pub filter_depth: usize,
}

pub const DEFAULT_DEPTHS: [usize; 4] = [4, 32, 23, 3];

impl CaseSpec {
    pub fn new(case_id: u8) -> Result<Self> {
        let (m, c, printed_c, ex) = match case_id {
            1 => (5, -2880, -2880, rat(54, 5)),
            2 => (15, -100800, 100800, int(18)),
            3 => (5, -4200, 4200, int(-6)),
            4 => (5, -180, 180, rat(-66, 5)),
            _ => return Err(Error::Parse(format!("case must be 1..=4, got {case_id}"))),
        };
        let filter_depth = DEFAULT_DEPTHS[case_id as usize - 1];
        Ok(CaseSpec {
            case_id,
            m,
            c,
            printed_c,
            excluded_linear_root: ex,
            filter_depth,
        })
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.filter_depth = depth;
        self
    }

    /// The indicial root this case studies, in the order `−s/24−1/20, −s/24+3/4, s/24+1/4, s/24+1/20`.
    pub fn root(&self, s: &Rational) -> Rational {
        flat_roots(s)[self.case_id as usize - 1].clone()
    }

    /// `(t, a₁)` from a divisor pair `d·e = C`; `a₁` is `None` when not integral.
    fn split_divisors(&self, d: i64, e: i64) -> (i64, Option<i64>) {
        match self.case_id {
            // (t−42)(t+a1+66)
            1 => {
                let t = 42 + d;
                (t, Some(e - t - 66))
            }
            // (t−306)(t+3a1+326)
            2 => {
                let t = 306 + d;
                let r = e - t - 326;
                (t, (r % 3 == 0).then_some(r / 3))
            }
            // (t+78)(t−a1−52)
            3 => {
                let t = d - 78;
                (t, Some(t - 52 - e))
            }
            // (t+18)(t−a1−9)
            _ => {
                let t = d - 18;
                (t, Some(t - 9 - e))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    #[serde(serialize_with = "ser_rat")]
    pub s: Rational,
    pub a1: i64,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

fn ser_rats<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

fn ser_depth_map<S: serde::Serializer>(
    m: &BTreeMap<usize, Vec<Rational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| {
        (
            k.to_string(),
            v.iter().map(fmt_rational).collect::<Vec<_>>(),
        )
    }))
}

/// Divisor-pair trace entry.
#[derive(Clone, Debug, Serialize)]
pub struct Factorization {
    pub d: i64,
    pub e: i64,
    pub t: i64,
    pub a1: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Flagged {
    #[serde(serialize_with = "ser_rat")]
    pub s: Rational,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    #[serde(rename = "case")]
    pub case_id: u8,
    pub depth: usize,
    pub factorizations: Vec<Factorization>,
    pub raw: Vec<Candidate>,
    #[serde(rename = "survivors", serialize_with = "ser_depth_map")]
    pub survivors_by_depth: BTreeMap<usize, Vec<Rational>>,
    pub flagged: Vec<Flagged>,
    #[serde(rename = "final", serialize_with = "ser_rats")]
    pub final_set: Vec<Rational>,
}

impl CandidateReport {
    pub fn raw_s(&self) -> Vec<Rational> {
        self.raw.iter().map(|c| c.s.clone()).collect()
    }
}

fn factorizations(case: &CaseSpec) -> Vec<Factorization> {
    let n = case.c.unsigned_abs();
    let mut out = Vec::new();
    for d in crate::arith::divisors(n) {
        let d = d as i64;
        for d in [d, -d] {
            let e = case.c / d;
            let (t, a1) = case.split_divisors(d, e);
            out.push(Factorization { d, e, t, a1 });
        }
    }
    out
}

/// All `(s, a₁)` with `a₁ ≥ 0` from divisor pairs of `C`, sorted by `s`.
pub fn enumerate_case(case: &CaseSpec) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = factorizations(case)
        .into_iter()
        .filter_map(|f| {
            f.a1.filter(|a| *a >= 0).map(|a| Candidate {
                s: rat(f.t, case.m),
                a1: a,
            })
        })
        .filter(|c| c.s != case.excluded_linear_root)
        .collect();
    out.sort_by(|a, b| a.s.cmp(&b.s));
    out.dedup_by(|a, b| a.s == b.s);
    out
}

/// Formal conformal weights `α_j − α` that are positive integers.
fn positive_integral_weights(case: &CaseSpec, s: &Rational) -> Vec<Rational> {
    let a = case.root(s);
    flat_roots(s)
        .iter()
        .map(|r| r - &a)
        .filter(|w| is_integer(w) && w.is_positive())
        .collect()
}

/// Exact coefficients `a_0..a_depth` of the solution at the case's root.
pub fn case_solution(case: &CaseSpec, s: &Rational, depth: usize) -> Result<Vec<Rational>> {
    let op = build_flat(s, depth + 1);
    let f = frobenius_solve(&op, &case.root(s), depth)?;
    f.integer_steps(depth)
}

/// Largest `d ≤ depth` such that `a_1..a_d` are all non-negative integers.
fn cft_depth(a: &[Rational]) -> usize {
    a.iter()
        .skip(1)
        .take_while(|x| is_integer(x) && !x.is_negative())
        .count()
}

pub fn filter_candidates(
    case: &CaseSpec,
    candidates: &[Candidate],
    depth: usize,
) -> CandidateReport {
    let results: Vec<(Rational, std::result::Result<usize, String>)> = candidates
        .par_iter()
        .map(|c| {
            let s = c.s.clone();
            let w = positive_integral_weights(case, &s);
            if !w.is_empty() {
                let ws: Vec<String> = w.iter().map(fmt_rational).collect();
                return (
                    s,
                    Err(format!(
                        "positive integral formal conformal weight {}",
                        ws.join(", ")
                    )),
                );
            }
            match case_solution(case, &s, depth) {
                Ok(a) => {
                    if a[1] != int(c.a1) {
                        return (
                            s,
                            Err(format!(
                                "recursion gives a1 = {}, divisor pair gives {}",
                                a[1], c.a1
                            )),
                        );
                    }
                    (s, Ok(cft_depth(&a)))
                }
                Err(Error::Resonance { n }) => (s, Err(format!("resonance at step {n}"))),
                Err(e) => (s, Err(e.to_string())),
            }
        })
        .collect();
    let mut survivors_by_depth = BTreeMap::new();
    for d in 1..=depth {
        let v: Vec<Rational> = results
            .iter()
            .filter(|(_, r)| matches!(r, Ok(k) if *k >= d))
            .map(|(s, _)| s.clone())
            .collect();
        survivors_by_depth.insert(d, v);
    }
    let flagged = results
        .iter()
        .filter_map(|(s, r)| {
            r.as_ref().err().map(|reason| Flagged {
                s: s.clone(),
                reason: reason.clone(),
            })
        })
        .collect();
    let final_set = survivors_by_depth.get(&depth).cloned().unwrap_or_default();
    CandidateReport {
        case_id: case.case_id,
        depth,
        factorizations: factorizations(case),
        raw: candidates.to_vec(),
        survivors_by_depth,
        flagged,
        final_set,
    }
}

pub fn classify_case(case: &CaseSpec) -> CandidateReport {
    filter_candidates(case, &enumerate_case(case), case.filter_depth)
}

/// The union of the four filtered cases and the four excluded linear roots, sorted.
pub fn classify_all(depths: [usize; 4]) -> Result<(Vec<Rational>, Vec<CandidateReport>)> {
    let reports: Vec<CandidateReport> = (1..=4u8)
        .into_par_iter()
        .map(|k| {
            CaseSpec::new(k)
                .map(|c| c.with_depth(depths[k as usize - 1]))
                .map(|c| classify_case(&c))
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<Rational> = reports
        .iter()
        .flat_map(|r| r.final_set.iter().cloned())
        .collect();
    for k in 1..=4u8 {
        all.push(CaseSpec::new(k)?.excluded_linear_root);
    }
    all.sort();
    all.dedup();
    Ok((all, reports))
}

/// The six values whose solutions of CFT type are quasimodular of depth 1.
pub fn quasimodular_values() -> Vec<Rational> {
    vec![
        rat(-318, 5),
        rat(-198, 5),
        rat(-138, 5),
        rat(-78, 5),
        rat(-18, 5),
        rat(42, 5),
    ]
}

/// (3.10) without the quasimodular values.
pub fn modular_list(all: &[Rational]) -> Vec<Rational> {
    let q = quasimodular_values();
    all.iter().filter(|s| !q.contains(s)).cloned().collect()
}

/// The printed factored `n = 1` polynomial of each case.
pub fn n1_polynomial_fixture(case_id: u8, s: &Rational, a1: &Rational) -> Result<Rational> {
    let s2 = s * s;
    Ok(match case_id {
        1 => {
            (int(5) * s - int(54))
                * (int(25) * &s2 + int(5) * s * a1 + int(120) * s - int(42) * a1 + int(108))
        }
        2 => {
            (s - int(18))
                * (int(75) * &s2 + int(15) * s * a1 + int(100) * s - int(306) * a1 + int(348))
        }
        3 => {
            (s + int(6))
                * (int(25) * &s2 - int(5) * s * a1 + int(130) * s - int(78) * a1 + int(144))
        }
        4 => {
            (int(5) * s + int(66))
                * (int(25) * &s2 - int(5) * s * a1 + int(45) * s - int(18) * a1 + int(18))
        }
        _ => return Err(Error::Parse(format!("case must be 1..=4, got {case_id}"))),
    })
}

/// The `s²` coefficient printed for case 1; the recursion gives −355500.
pub const PRINTED_N2_CASE1_S2: i64 = -255500;

/// The printed `n = 2` polynomial of each case (case 1 with its `s²` coefficient amended).
pub fn n2_polynomial_fixture(
    case_id: u8,
    s: &Rational,
    a1: &Rational,
    a2: &Rational,
) -> Result<Rational> {
    n2_polynomial(case_id, s, a1, a2, false)
}

fn n2_polynomial(
    case_id: u8,
    s: &Rational,
    a1: &Rational,
    a2: &Rational,
    as_printed: bool,
) -> Result<Rational> {
    // Σ c·s^i·a1^j·a2^k
    let table: &[(i64, u32, u32, u32)] = match case_id {
        1 => &[
            (-386208, 0, 0, 0),
            (-720360, 1, 0, 0),
            (
                if as_printed {
                    PRINTED_N2_CASE1_S2
                } else {
                    -355500
                },
                2,
                0,
                0,
            ),
            (-15750, 3, 0, 0),
            (3125, 4, 0, 0),
            (-72792, 0, 1, 0),
            (-22140, 1, 1, 0),
            (-26250, 2, 1, 0),
            (1375, 3, 1, 0),
            (139536, 0, 0, 1),
            (-12960, 1, 0, 1),
            (300, 2, 0, 1),
        ],
        2 => &[
            (625, 4, 0, 0),
            (-1350, 3, 0, 0),
            (475, 3, 1, 0),
            (-155340, 2, 0, 0),
            (-13650, 2, 1, 0),
            (140, 2, 0, 1),
            (-385128, 1, 0, 0),
            (-1836, 1, 1, 0),
            (-8736, 1, 0, 1),
            (-474336, 0, 0, 0),
            (161352, 0, 1, 0),
            (136080, 0, 0, 1),
        ],
        3 => &[
            (-245592, 0, 0, 0),
            (-295812, 1, 0, 0),
            (-124830, 2, 0, 0),
            (-9975, 3, 0, 0),
            (625, 4, 0, 0),
            (15120, 0, 1, 0),
            (9216, 1, 1, 0),
            (-6180, 2, 1, 0),
            (-400, 3, 1, 0),
            (54648, 0, 0, 1),
            (5016, 1, 0, 1),
            (110, 2, 0, 1),
        ],
        4 => &[
            (-661608, 0, 0, 0),
            (-1138860, 1, 0, 0),
            (-551250, 2, 0, 0),
            (-47625, 3, 0, 0),
            (3125, 4, 0, 0),
            (-41472, 0, 1, 0),
            (11160, 1, 1, 0),
            (-24000, 2, 1, 0),
            (-1750, 3, 1, 0),
            (176904, 0, 0, 1),
            (18360, 1, 0, 1),
            (450, 2, 0, 1),
        ],
        _ => return Err(Error::Parse(format!("case must be 1..=4, got {case_id}"))),
    };
    let mut acc = Rational::zero();
    for &(c, i, j, k) in table {
        acc += int(c)
            * num_traits::pow(s.clone(), i as usize)
            * num_traits::pow(a1.clone(), j as usize)
            * num_traits::pow(a2.clone(), k as usize);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case4_raw() {
        let c = CaseSpec::new(4).unwrap();
        let raw: Vec<Rational> = enumerate_case(&c).into_iter().map(|c| c.s).collect();
        let want = [
            rat(-17, 5),
            rat(-16, 5),
            int(-3),
            rat(-14, 5),
            rat(-13, 5),
            rat(-12, 5),
            rat(-9, 5),
            rat(-8, 5),
            rat(-6, 5),
            rat(-3, 5),
            int(0),
            rat(2, 5),
            rat(12, 5),
            rat(18, 5),
            rat(27, 5),
            rat(42, 5),
            rat(72, 5),
            rat(162, 5),
        ];
        assert_eq!(raw, want);
    }

    #[test]
    fn n1_fixture() {
        assert!(n1_polynomial_fixture(1, &rat(6, 5), &int(8))
            .unwrap()
            .is_zero());
        assert!(!n1_polynomial_fixture(1, &rat(6, 5), &int(9))
            .unwrap()
            .is_zero());
        assert!(n1_polynomial_fixture(3, &int(-6), &int(17))
            .unwrap()
            .is_zero());
    }

    fn strs(v: &[Rational]) -> Vec<String> {
        v.iter().map(fmt_rational).collect()
    }

    #[test]
    fn printed_constant_signs() {
        // expanding the factored form against the n = 1 quadratic fixes the sign of C
        for k in 1..=4u8 {
            let c = CaseSpec::new(k).unwrap();
            for f in factorizations(&c) {
                if let Some(a1) = f.a1 {
                    let s = rat(f.t, c.m);
                    if s != c.excluded_linear_root {
                        assert!(
                            n1_polynomial_fixture(k, &s, &int(a1)).unwrap().is_zero(),
                            "case {k} s={s}"
                        );
                    }
                }
            }
            assert_eq!(c.printed_c.abs(), c.c.abs());
        }
    }

    #[test]
    fn fixtures_agree_with_recursion() {
        for k in 1..=4u8 {
            let c = CaseSpec::new(k).unwrap();
            for cand in enumerate_case(&c) {
                let a = case_solution(&c, &cand.s, 2).unwrap();
                assert_eq!(a[1], int(cand.a1));
                assert!(n1_polynomial_fixture(k, &cand.s, &a[1]).unwrap().is_zero());
                assert!(
                    n2_polynomial_fixture(k, &cand.s, &a[1], &a[2])
                        .unwrap()
                        .is_zero(),
                    "case {k} s={}",
                    cand.s
                );
            }
        }
    }

    #[test]
    fn printed_case1_n2_slip() {
        let c = CaseSpec::new(1).unwrap();
        let a = case_solution(&c, &rat(6, 5), 2).unwrap();
        assert!(!n2_polynomial(1, &rat(6, 5), &a[1], &a[2], true)
            .unwrap()
            .is_zero());
        assert!(n2_polynomial(1, &rat(6, 5), &a[1], &a[2], false)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn finals_and_union() {
        let (all, reps) = classify_all(DEFAULT_DEPTHS).unwrap();
        assert_eq!(strs(&reps[1].final_set), ["-3/5", "6/5", "42/5"]);
        assert_eq!(
            strs(&reps[2].final_set),
            ["-66/5", "-18/5", "-8/5", "-3/5", "6/5"]
        );
        assert_eq!(
            strs(&reps[3].final_set),
            ["-8/5", "-6/5", "-3/5", "2/5", "12/5", "42/5"]
        );
        assert_eq!(reps[0].final_set.len(), 17);
        assert_eq!(all.len(), 23);
        assert_eq!(modular_list(&all).len(), 17);
        for r in &reps {
            assert!(r.flagged.is_empty());
            let mut prev: Option<&Vec<Rational>> = None;
            for v in r.survivors_by_depth.values() {
                if let Some(p) = prev {
                    assert!(v.iter().all(|x| p.contains(x)));
                }
                prev = Some(v);
            }
        }
    }

    #[test]
    fn stable_past_stated_depth() {
        for k in [1u8, 3, 4] {
            let c = CaseSpec::new(k).unwrap();
            let base = classify_case(&c).final_set;
            let deeper = classify_case(&c.clone().with_depth(c.filter_depth + 10)).final_set;
            assert_eq!(base, deeper, "case {k}");
        }
    }
}
