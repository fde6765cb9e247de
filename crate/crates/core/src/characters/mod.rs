//! Characters: the M(3,5) minimal model, lattice VOAs, and the assembled Ramond-twisted
//! characters of the W-algebras attached to the Deligne exceptional series.

mod lattice;

pub use lattice::{
    cartan_a, cartan_d, cartan_e7, fundamental_weight, inverse, lattice_theta,
    lattice_voa_character, IntegralLattice,
};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::euler_product;
use crate::mlde::{build_flat, build_sharp, flat_roots, frobenius_solve, indicial, mu};
use crate::rational::{fmt_rational, int, is_integer, rat, Rational};
use crate::series::{PuiseuxSeries, SeriesJson};

/// Central charge of the M(3,5) minimal model.
pub fn minimal_central_charge() -> Rational {
    rat(-3, 5)
}

/// The four conformal weights of M(3,5), with their Kac label `s` (`r = 1`).
const WEIGHTS: [(i64, i64, i64); 4] = [(0, 1, 1), (-1, 20, 2), (1, 5, 3), (3, 4, 4)];

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalCharacter {
    pub h: Rational,
    pub series: PuiseuxSeries,
}

pub fn minimal_weights() -> Vec<Rational> {
    WEIGHTS.iter().map(|&(n, d, _)| rat(n, d)).collect()
}

/// `q^{−c/24}/φ(q) · Σ_k (q^{((30k+5r−3s)²−4)/60} − q^{((30k+5r+3s)²−4)/60})`, through `order` steps.
pub fn minimal_character(h: &Rational, order: usize) -> Result<MinimalCharacter> {
    let &(_, _, s) = WEIGHTS
        .iter()
        .find(|&&(n, d, _)| &rat(n, d) == h)
        .ok_or_else(|| Error::UnknownWeight(h.clone()))?;
    let r = 1i64;
    // exponents relative to h: ((30k+a)²−(5r−3s)²)/60 is an integer for every k
    let a0 = 5 * r - 3 * s;
    let step = |a: i64| -> Option<i64> {
        let n = a * a - a0 * a0;
        debug_assert_eq!(n % 60, 0);
        Some(n / 60)
    };
    let mut num = vec![Rational::zero(); order + 1];
    let kmax = (order as f64 / 15.0).sqrt() as i64 + 2;
    for k in -kmax..=kmax {
        for (a, sign) in [(30 * k + 5 * r - 3 * s, 1), (30 * k + 5 * r + 3 * s, -1)] {
            if let Some(e) = step(a) {
                if (0..=order as i64).contains(&e) {
                    num[e as usize] += int(sign);
                }
            }
        }
    }
    let base = h - minimal_central_charge() / int(24);
    let numer = PuiseuxSeries::new(int(0), 1, num);
    let series = numer.div(&euler_product(order))?.shift(&base);
    Ok(MinimalCharacter {
        h: h.clone(),
        series,
    })
}

/// The weight `h'` with `L(−3/5,h) ⊠ L(−3/5,3/4) = L(−3/5,h')`.
pub fn fuse_with_three_quarters(h: &Rational) -> Result<Rational> {
    let pairs = [(rat(-1, 20), rat(1, 5)), (rat(3, 4), int(0))];
    for (a, b) in pairs {
        if h == &a {
            return Ok(b);
        }
        if h == &b {
            return Ok(a);
        }
    }
    Err(Error::UnknownWeight(h.clone()))
}

/// `χ_M·χ_{L(h)} + χ_{M⊠P}·χ_{L(h⊠3/4)}`, known through `order` steps past its leading term.
#[allow(non_snake_case)]
pub fn assemble_L_character(
    chi_m: &PuiseuxSeries,
    chi_mp: &PuiseuxSeries,
    h: &Rational,
    order: usize,
) -> Result<PuiseuxSeries> {
    let partner = fuse_with_three_quarters(h)?;
    let a = chi_m.mul(&minimal_character(h, order)?.series);
    if chi_mp.is_zero() {
        return Ok(a);
    }
    let b = chi_mp.mul(&minimal_character(&partner, order)?.series);
    Ok(a.add(&b))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeligneDatum {
    pub name: &'static str,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub h_vee: Rational,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub s: Rational,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub central_charge_w: Rational,
    /// `None` for the formal values of `h∨`.
    pub dim: Option<i64>,
    #[serde(serialize_with = "crate::rational::ser_rationals")]
    pub ramond_exponents: Vec<Rational>,
}

pub fn deligne_s(h: &Rational) -> Rational {
    int(6) * (int(7) * h - int(18)) / (int(5) * (h + int(6)))
}

pub fn deligne_dim(h: &Rational) -> Rational {
    int(2) * (int(5) * h - int(6)) * (h + int(1)) / (h + int(6))
}

fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn deligne_table() -> Vec<DeligneDatum> {
    let rows: [(&str, Rational, Option<i64>, Vec<Rational>); 10] = [
        ("A1", int(2), Some(3), flat_roots(&rat(-3, 5)).to_vec()),
        (
            "A2",
            int(3),
            Some(8),
            rats(&[(-1, 15), (1, 15), (4, 15), (11, 15)]),
        ),
        (
            "G2",
            int(4),
            Some(14),
            rats(&[(-1, 10), (1, 10), (3, 10), (7, 10)]),
        ),
        (
            "D4",
            int(6),
            Some(28),
            rats(&[(-3, 20), (3, 20), (7, 20), (13, 20)]),
        ),
        (
            "F4",
            int(9),
            Some(52),
            rats(&[(-1, 5), (1, 5), (2, 5), (3, 5)]),
        ),
        (
            "E6",
            int(12),
            Some(78),
            rats(&[(-7, 30), (7, 30), (13, 30), (17, 30)]),
        ),
        (
            "E7",
            int(18),
            Some(133),
            rats(&[(-11, 40), (11, 40), (19, 40), (21, 40)]),
        ),
        ("E8", int(30), Some(248), rats(&[(-19, 60), (29, 60)])),
        ("formal24", int(24), None, flat_roots(&int(6)).to_vec()),
        (
            "formal3/2",
            rat(3, 2),
            None,
            flat_roots(&rat(-6, 5)).to_vec(),
        ),
    ];
    rows.into_iter()
        .map(|(name, h, dim, mut ex)| {
            let s = deligne_s(&h);
            ex.sort();
            ex.dedup();
            DeligneDatum {
                name,
                central_charge_w: s.clone(),
                s,
                h_vee: h,
                dim,
                ramond_exponents: ex,
            }
        })
        .collect()
}

pub fn deligne_datum(name: &str) -> Result<DeligneDatum> {
    deligne_table()
        .into_iter()
        .find(|d| d.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::CharacterConstructionUnavailable(name.to_string()))
}

/// One basis element `L(N_m; h)` of the Ramond-twisted character space: the lattice
/// cosets of `N_m` and of `P⊠N_m`, and the minimal-model weight.
struct BasisSpec {
    coset: Vec<Rational>,
    partner: Vec<Rational>,
    h: Rational,
}

struct LatticeCase {
    gram: Vec<Vec<i64>>,
    basis: Vec<BasisSpec>,
}

fn scaled(v: &[Rational], k: i64) -> Vec<Rational> {
    v.iter().map(|x| x * int(k)).collect()
}

fn lattice_case(name: &str) -> Result<LatticeCase> {
    let low = rat(-1, 20);
    let high = rat(3, 4);
    let spec = |coset: Vec<Rational>, partner: Vec<Rational>, h: &Rational| BasisSpec {
        coset,
        partner,
        h: h.clone(),
    };
    Ok(match name {
        "A2" => {
            // √3A₁: N_k = coset k/6 of the rank-1 lattice with Gram [6]; P⊠N_k = N_{k+3}
            let n = |k: i64| vec![rat(k.rem_euclid(6), 6)];
            LatticeCase {
                gram: vec![vec![6]],
                basis: vec![
                    spec(n(0), n(3), &low),
                    spec(n(4), n(7), &high),
                    spec(n(2), n(5), &low),
                    spec(n(0), n(3), &high),
                ],
            }
        }
        "D4" => {
            // (√2ℤ)³: N_{k₁k₂k₃}; P⊠N_k = N_{1−k}
            let n = |k: [i64; 3]| k.iter().map(|&x| rat(x, 2)).collect::<Vec<_>>();
            let c = |k: [i64; 3]| n(k.map(|x| 1 - x));
            LatticeCase {
                gram: vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]],
                basis: vec![
                    spec(n([0, 0, 0]), c([0, 0, 0]), &low),
                    spec(n([0, 1, 1]), c([0, 1, 1]), &high),
                    spec(n([1, 1, 0]), c([1, 1, 0]), &low),
                    spec(n([0, 0, 0]), c([0, 0, 0]), &high),
                ],
            }
        }
        "E6" => {
            // A₅: N_k = kω₁; P⊠N_k = N_{k+3}
            let g = cartan_a(5);
            let w = fundamental_weight(&g, 1);
            let n = |k: i64| scaled(&w, k.rem_euclid(6));
            LatticeCase {
                basis: vec![
                    spec(n(0), n(3), &low),
                    spec(n(4), n(7), &high),
                    spec(n(2), n(5), &low),
                    spec(n(0), n(3), &high),
                ],
                gram: g,
            }
        }
        "E7" => {
            // D₆: N₀ = 0, N₁ = ω₁, N₂ = ω₅, N₃ = ω₆; P⊠N_k = N_{3−k}
            let g = cartan_d(6);
            let n = |k: usize| match k {
                0 => vec![Rational::zero(); 6],
                1 => fundamental_weight(&g, 1),
                2 => fundamental_weight(&g, 5),
                _ => fundamental_weight(&g, 6),
            };
            LatticeCase {
                basis: vec![
                    spec(n(0), n(3), &low),
                    spec(n(2), n(1), &high),
                    spec(n(2), n(1), &low),
                    spec(n(0), n(3), &high),
                ],
                gram: g,
            }
        }
        "E8" => {
            // E₇: N₀ = 0, N₁ = ω₇; P⊠N_k = N_{1+k}
            let g = cartan_e7();
            let w = fundamental_weight(&g, 7);
            let zero = vec![Rational::zero(); 7];
            LatticeCase {
                basis: vec![spec(zero.clone(), w.clone(), &low), spec(zero, w, &high)],
                gram: g,
            }
        }
        other => return Err(Error::CharacterConstructionUnavailable(other.to_string())),
    })
}

/// The assembled Ramond-twisted character basis for a lattice case, each through `order` steps.
pub fn ramond_characters(name: &str, order: usize) -> Result<Vec<PuiseuxSeries>> {
    let case = lattice_case(name)?;
    case.basis
        .par_iter()
        .map(|b| {
            let m = IntegralLattice::new(case.gram.clone(), b.coset.clone())?;
            let mp = m.coset(b.partner.clone())?;
            let chi_m = lattice_voa_character(&m, order)?;
            let chi_mp = lattice_voa_character(&mp, order)?;
            assemble_L_character(&chi_m, &chi_mp, &b.h, order)?.truncate_steps(order)
        })
        .collect()
}

trait TruncateSteps: Sized {
    fn truncate_steps(self, order: usize) -> Result<Self>;
}

impl TruncateSteps for PuiseuxSeries {
    /// Truncates to `order` whole steps past the leading exponent, failing if not known that far.
    fn truncate_steps(self, order: usize) -> Result<Self> {
        let prec = self.base_exponent() + int(order as i64 + 1);
        if self.precision() < prec {
            return Err(Error::InsufficientOrder {
                needed: prec,
                available: self.precision(),
            });
        }
        Ok(self.truncate(&prec))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterCheck {
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub exponent: Rational,
    pub annihilated: bool,
    pub matches_frobenius: bool,
    pub nonnegative_integral: bool,
    /// Only for E8: annihilated by (♯_{μ(19/5)}).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sharp_annihilated: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentCheck {
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub exponent: Rational,
    pub cft_type: bool,
    pub character_type: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterReport {
    pub algebra: String,
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub s: Rational,
    #[serde(serialize_with = "crate::rational::ser_rationals")]
    pub exponents: Vec<Rational>,
    pub exponents_are_indicial_roots: bool,
    pub characters: Vec<SeriesJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CharacterCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub exponent_checks: Vec<ExponentCheck>,
    pub verified: bool,
}

/// True when a positive rational multiple of `f` has non-negative integer coefficients.
pub fn is_character_type(f: &PuiseuxSeries) -> bool {
    let d = Rational::from_integer(f.denominator());
    f.leading_coefficient().is_some_and(|c| c.is_positive())
        && f.coeffs().iter().all(|c| {
            let x = c * &d;
            is_integer(&x) && !x.is_negative()
        })
}

fn normalized(f: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let lead = f
        .leading_coefficient()
        .ok_or(Error::ZeroLeadingCoefficient)?
        .clone();
    Ok(f.scale(&lead.recip()))
}

fn indicial_set(s: &Rational, order: usize) -> Result<Vec<Rational>> {
    let mut r = indicial(&build_flat(s, order))?.roots;
    r.sort();
    r.dedup();
    Ok(r)
}

/// Cross-checks a Deligne-series algebra: lattice cases build and test their characters,
/// `G2`/`F4` (and `A1`) are checked on exponents and Frobenius solutions only.
pub fn verify_characters(name: &str, order: usize) -> Result<CharacterReport> {
    let datum = deligne_datum(name)?;
    let s = datum.s.clone();
    let roots = indicial_set(&s, 2)?;
    let exponents_are_indicial_roots = match datum.name {
        // the order-2 factor (♯_{μ(19/5)}) carries two of the four roots
        "E8" => datum.ramond_exponents.iter().all(|e| roots.contains(e)),
        _ => datum.ramond_exponents == roots,
    };
    let op = build_flat(&s, order + 2);
    match datum.name {
        "A2" | "D4" | "E6" | "E7" | "E8" => {
            let chars = ramond_characters(datum.name, order)?;
            let sharp = (datum.name == "E8").then(|| build_sharp(&mu(&rat(19, 5)), order + 2));
            let mut checks = Vec::new();
            for f in &chars {
                let exponent = f.base_exponent().clone();
                let annihilated = op.apply(f)?.is_zero();
                let matches_frobenius = match frobenius_solve(&op, &exponent, order) {
                    Ok(g) => normalized(f)? == g,
                    Err(_) => false,
                };
                let nonnegative_integral =
                    f.coeffs().iter().all(|c| is_integer(c) && !c.is_negative());
                let sharp_annihilated = match &sharp {
                    Some(o) => Some(o.apply(f)?.is_zero()),
                    None => None,
                };
                checks.push(CharacterCheck {
                    exponent,
                    annihilated,
                    matches_frobenius,
                    nonnegative_integral,
                    sharp_annihilated,
                });
            }
            let mut got: Vec<Rational> = checks.iter().map(|c| c.exponent.clone()).collect();
            got.sort();
            let verified = exponents_are_indicial_roots
                && got == datum.ramond_exponents
                && checks.iter().all(|c| {
                    c.annihilated
                        && c.matches_frobenius
                        && c.nonnegative_integral
                        && c.sharp_annihilated.unwrap_or(true)
                });
            Ok(CharacterReport {
                algebra: datum.name.to_string(),
                s,
                exponents: got,
                exponents_are_indicial_roots,
                characters: chars.iter().map(SeriesJson::from).collect(),
                checks,
                exponent_checks: Vec::new(),
                verified,
            })
        }
        "G2" | "F4" | "A1" => {
            let sols: Vec<PuiseuxSeries> = datum
                .ramond_exponents
                .iter()
                .map(|e| frobenius_solve(&op, e, order))
                .collect::<Result<_>>()?;
            let exponent_checks: Vec<ExponentCheck> = sols
                .iter()
                .map(|f| ExponentCheck {
                    exponent: f.base_exponent().clone(),
                    cft_type: f.is_cft_type(order),
                    character_type: is_character_type(f),
                })
                .collect();
            let verified =
                exponents_are_indicial_roots && exponent_checks.iter().all(|c| c.character_type);
            Ok(CharacterReport {
                algebra: datum.name.to_string(),
                s,
                exponents: datum.ramond_exponents.clone(),
                exponents_are_indicial_roots,
                characters: sols.iter().map(SeriesJson::from).collect(),
                checks: Vec::new(),
                exponent_checks,
                verified,
            })
        }
        other => Err(Error::CharacterConstructionUnavailable(other.to_string())),
    }
}

/// Full character construction; errors for algebras without a lattice realization.
pub fn characters_full(name: &str, order: usize) -> Result<CharacterReport> {
    let d = deligne_datum(name)?;
    if matches!(d.name, "G2" | "F4" | "A1" | "formal24" | "formal3/2") {
        return Err(Error::CharacterConstructionUnavailable(d.name.to_string()));
    }
    verify_characters(name, order)
}

/// `Σ exponents`, useful as a quick consistency check (`1` for order four, `1/6` for order two).
pub fn exponent_sum(d: &DeligneDatum) -> Rational {
    d.ramond_exponents
        .iter()
        .fold(Rational::zero(), |a, b| a + b)
}

pub fn describe(d: &DeligneDatum) -> String {
    format!(
        "{} h∨={} s={}",
        d.name,
        fmt_rational(&d.h_vee),
        fmt_rational(&d.s)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_prefixes() {
        let m = minimal_character(&rat(-1, 20), 10).unwrap();
        assert_eq!(m.series.base_exponent(), &rat(-1, 40));
        assert_eq!(
            m.series.integer_steps(4).unwrap(),
            rats(&[(1, 1), (1, 1), (1, 1), (2, 1), (3, 1)])
        );
        let v = minimal_character(&int(0), 10).unwrap();
        assert_eq!(v.series.integer_steps(1).unwrap(), vec![int(1), int(0)]);
        assert!(matches!(
            minimal_character(&rat(1, 7), 5),
            Err(Error::UnknownWeight(_))
        ));
    }

    #[test]
    fn minimal_characters_solve_their_equation() {
        let op = build_flat(&rat(-3, 5), 32);
        for h in minimal_weights() {
            let m = minimal_character(&h, 30).unwrap();
            assert!(m.series.is_cft_type(30), "h={h}");
            assert!(op.apply(&m.series).unwrap().is_zero(), "h={h}");
        }
    }

    #[test]
    fn table_formulae() {
        for d in deligne_table() {
            if let Some(dim) = d.dim {
                assert_eq!(deligne_dim(&d.h_vee), int(dim), "{}", d.name);
            }
        }
        assert_eq!(deligne_datum("formal24").unwrap().s, int(6));
        assert_eq!(deligne_datum("formal3/2").unwrap().s, rat(-6, 5));
        let c: Vec<Rational> = deligne_table()[1..8]
            .iter()
            .map(|d| d.central_charge_w.clone())
            .collect();
        assert_eq!(
            c,
            rats(&[(2, 5), (6, 5), (12, 5), (18, 5), (22, 5), (27, 5), (32, 5)])
        );
    }

    #[test]
    fn a2_and_e8() {
        let r = verify_characters("A2", 25).unwrap();
        assert_eq!(r.exponents, rats(&[(-1, 15), (1, 15), (4, 15), (11, 15)]));
        assert!(r.verified, "{:?}", r.checks);
        let r = verify_characters("E8", 25).unwrap();
        assert_eq!(r.exponents, rats(&[(-19, 60), (29, 60)]));
        assert!(r.verified, "{:?}", r.checks);
    }

    #[test]
    fn exponent_only_cases() {
        for n in ["G2", "F4"] {
            let r = verify_characters(n, 25).unwrap();
            assert!(r.exponents_are_indicial_roots);
            assert!(r.verified, "{n}");
            assert!(matches!(
                characters_full(n, 5),
                Err(Error::CharacterConstructionUnavailable(_))
            ));
        }
    }
}
