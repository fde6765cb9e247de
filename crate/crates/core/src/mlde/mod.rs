//! Monic MLDE operators `Σ c_j(q)·D^j` and the families (♯_s), (♭_s), (♭_s^k).

mod frobenius;
mod indicial;
mod wronskian;

pub use frobenius::{frobenius_solve, frobenius_solve_log, frobenius_solve_scaled};
pub use indicial::{flat_roots, indicial, indicial_polynomial, rational_roots, IndicialReport};
pub use wronskian::{modular_wronskian, modular_wronskian_log, LogPoly};

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{form_series, FormName};
use crate::rational::{ceil_i64, int, rat, Rational};
use crate::series::{LogSeries, PuiseuxSeries};

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Flat(Rational),
    Sharp(Rational),
    FlatWeighted {
        s: Rational,
        k: Rational,
    },
    /// The auxiliary third-order equation used by the s = −6/5 entries.
    ThirdOrderBc,
    /// The auxiliary third-order equation used by the s = 6 entries.
    ThirdOrderBk,
    Custom(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Flat(s) => write!(f, "flat_{s}"),
            Provenance::Sharp(s) => write!(f, "sharp_{s}"),
            Provenance::FlatWeighted { s, k } => write!(f, "flat_{s}^{k}"),
            Provenance::ThirdOrderBc => write!(f, "third_order_Bc"),
            Provenance::ThirdOrderBk => write!(f, "third_order_Bk"),
            Provenance::Custom(n) => write!(f, "custom:{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MldeOperator {
    pub weight: Rational,
    /// `c_0, …, c_n` with `c_n = 1`.
    pub coeffs: Vec<PuiseuxSeries>,
    pub provenance: Provenance,
}

/// `(α1(s), α2(s), α3(s))`.
pub fn alphas(s: &Rational) -> (Rational, Rational, Rational) {
    let s2 = s * s;
    let a1 = (int(-25) * &s2 + int(120) * s + int(1332)) / int(7200);
    let f = int(5) * s + int(6);
    let a2 = &f * &f / int(14400);
    let a3 = (s - int(18)) * (s + int(6)) * &f * &f / int(8294400);
    (a1, a2, a3)
}

/// `μ(t) = t(t+2)/144`.
pub fn mu(t: &Rational) -> Rational {
    t * (t + int(2)) / int(144)
}

fn e(k: u32, order: usize) -> PuiseuxSeries {
    let name = match k {
        2 => FormName::E2,
        4 => FormName::E4,
        6 => FormName::E6,
        _ => FormName::E8,
    };
    form_series(name, order)
}

impl MldeOperator {
    pub fn new(
        weight: Rational,
        coeffs: Vec<PuiseuxSeries>,
        provenance: Provenance,
    ) -> Result<Self> {
        let n = coeffs.len();
        if !(2..=5).contains(&n) {
            return Err(Error::Parse(format!(
                "operator order must be 1..=4, got {}",
                n as i64 - 1
            )));
        }
        let top = &coeffs[n - 1];
        if top.leading_coefficient() != Some(&Rational::one())
            || !top.base_exponent().is_zero()
            || top.coeffs().len() > 1 && top.coeffs()[1..].iter().any(|c| !c.is_zero())
        {
            return Err(Error::Parse("operator must be monic".into()));
        }
        Ok(MldeOperator {
            weight,
            coeffs,
            provenance,
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Absolute exponent below which every coefficient is known.
    pub fn precision(&self) -> Rational {
        self.coeffs.iter().map(|c| c.precision()).min().unwrap()
    }

    /// `Σ c_j·D^j f`; the coefficients must be known as far past `q^0` as `f` is past its leading term.
    pub fn apply(&self, f: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        let span = f.precision() - f.base_exponent();
        if self.precision() < span {
            return Err(Error::InsufficientOrder {
                needed: span,
                available: self.precision(),
            });
        }
        let mut d = f.clone();
        let mut acc: Option<PuiseuxSeries> = None;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                d = d.euler_derivative();
            }
            let t = if j == self.order() {
                d.clone()
            } else {
                c.mul(&d)
            };
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        Ok(acc.unwrap())
    }

    pub fn apply_log(&self, f: &LogSeries) -> Result<LogSeries> {
        let lo = std::cmp::min(f.plain.base_exponent(), f.log_part.base_exponent()).clone();
        let span = f.precision() - lo;
        if self.precision() < span {
            return Err(Error::InsufficientOrder {
                needed: span,
                available: self.precision(),
            });
        }
        let mut d = f.clone();
        let mut acc: Option<LogSeries> = None;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                d = d.euler_derivative();
            }
            let t = if j == self.order() {
                d.clone()
            } else {
                d.mul_series(c)
            };
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        Ok(acc.unwrap())
    }

    /// `c_j` as operator-coefficient vectors `[c_{j,0}, c_{j,1}, …]` at integer steps.
    pub(crate) fn grid_coefficient(&self, j: usize, i: usize) -> Result<Rational> {
        self.coeffs[j].coeff(&int(i as i64))
    }

    /// Composition `ϑ_w ∘ self`, which has weight `self.weight + 2` when `w = self.weight`.
    fn serre_compose(&self, w: &Rational, provenance: Provenance) -> Self {
        let n = self.order();
        let prec = ceil_i64(&self.precision()).max(1) as usize;
        let e2 = e(2, prec);
        let k = w / int(12);
        let mut out: Vec<PuiseuxSeries> = Vec::with_capacity(n + 2);
        for j in 0..=n + 1 {
            // D∘(c_j D^j) = D(c_j) D^j + c_j D^{j+1}
            let mut t = PuiseuxSeries::zero(self.precision());
            if j <= n {
                t = t
                    .add(&self.coeffs[j].euler_derivative())
                    .sub(&e2.mul(&self.coeffs[j]).scale(&k));
            }
            if j >= 1 {
                t = t.add(&self.coeffs[j - 1]);
            }
            out.push(t);
        }
        MldeOperator {
            weight: &self.weight + int(2),
            coeffs: out,
            provenance,
        }
    }
}

fn one(order: usize) -> PuiseuxSeries {
    PuiseuxSeries::one(order)
}

/// (♭_s) with coefficients known through `q^order`.
pub fn build_flat(s: &Rational, order: usize) -> MldeOperator {
    let (a1, a2, a3) = alphas(s);
    let (e2, e4, e6, e8) = (e(2, order), e(4, order), e(6, order), e(8, order));
    let de2 = e2.euler_derivative();
    let c3 = e2.neg();
    let c2 = de2.scale(&int(3)).add(&e4.scale(&a1));
    let c1 = de2
        .euler_derivative()
        .add(&e4.euler_derivative().scale(&(&a1 / int(2))))
        .sub(&e6.scale(&a2))
        .neg();
    let c0 = e8.scale(&a3);
    MldeOperator {
        weight: int(0),
        coeffs: vec![c0, c1, c2, c3, one(order)],
        provenance: Provenance::Flat(s.clone()),
    }
}

/// (♯_s): `f'' − (1/6)E2 f' − s·E4 f`.
pub fn build_sharp(s: &Rational, order: usize) -> MldeOperator {
    let c1 = e(2, order).scale(&rat(-1, 6));
    let c0 = e(4, order).scale(&-s.clone());
    MldeOperator {
        weight: int(0),
        coeffs: vec![c0, c1, one(order)],
        provenance: Provenance::Sharp(s.clone()),
    }
}

/// `ϑ_k^i` as an operator.
pub fn iterated_serre_operator(k: &Rational, i: usize, order: usize) -> MldeOperator {
    let mut op = MldeOperator {
        weight: k.clone(),
        coeffs: vec![one(order)],
        provenance: Provenance::Custom(format!("serre^{i}_{k}")),
    };
    for step in 0..i {
        let w = k + int(2 * step as i64);
        op = op.serre_compose(&w, Provenance::Custom(format!("serre^{i}_{k}")));
    }
    op
}

/// (♭_s^k) = ϑ_k^4 + (α1 − 11/36)E4 ϑ_k^2 + ((36α1+216α2−5)/216)E6 ϑ_k + α3 E8, expanded in D.
pub fn build_flat_weighted(s: &Rational, k: &Rational, order: usize) -> MldeOperator {
    let (a1, a2, a3) = alphas(s);
    let t4 = iterated_serre_operator(k, 4, order);
    let t2 = iterated_serre_operator(k, 2, order);
    let t1 = iterated_serre_operator(k, 1, order);
    let b2 = e(4, order).scale(&(&a1 - rat(11, 36)));
    let b1 = e(6, order).scale(&((int(36) * &a1 + int(216) * &a2 - int(5)) / int(216)));
    let b0 = e(8, order).scale(&a3);
    let mut coeffs = t4.coeffs.clone();
    for (j, c) in t2.coeffs.iter().enumerate() {
        coeffs[j] = coeffs[j].add(&b2.mul(c));
    }
    for (j, c) in t1.coeffs.iter().enumerate() {
        coeffs[j] = coeffs[j].add(&b1.mul(c));
    }
    coeffs[0] = coeffs[0].add(&b0);
    coeffs[4] = one(order);
    MldeOperator {
        weight: k.clone(),
        coeffs,
        provenance: Provenance::FlatWeighted {
            s: s.clone(),
            k: k.clone(),
        },
    }
}

fn third_order(e6_coeff: Rational, order: usize, provenance: Provenance) -> MldeOperator {
    let e2 = e(2, order);
    let c2 = e2.scale(&rat(-1, 2));
    let c1 = e2
        .euler_derivative()
        .scale(&rat(1, 2))
        .sub(&e(4, order).scale(&rat(9, 100)));
    let c0 = e(6, order).scale(&e6_coeff);
    MldeOperator {
        weight: int(0),
        coeffs: vec![c0, c1, c2, one(order)],
        provenance,
    }
}

/// `f''' − ½E2 f'' + (½E2' − 9/100 E4) f' + 19/5400 E6 f`, the s = −6/5 auxiliary operator.
pub fn build_third_order_bc(order: usize) -> MldeOperator {
    third_order(rat(19, 5400), order, Provenance::ThirdOrderBc)
}

/// `f''' − ½E2 f'' + (½E2' − 9/100 E4) f' + 9/200 E6 f`, the s = 6 auxiliary operator.
pub fn build_third_order_bk(order: usize) -> MldeOperator {
    third_order(rat(9, 200), order, Provenance::ThirdOrderBk)
}

/// `ϑ_k f = D f − (k/12)·E2·f`.
pub fn serre_derivation(f: &PuiseuxSeries, k: &Rational) -> PuiseuxSeries {
    if k.is_zero() {
        return f.euler_derivative();
    }
    let steps = ceil_i64(&f.relative_precision()).max(0) as usize + 1;
    f.euler_derivative()
        .sub(&e(2, steps).mul(f).scale(&(k / int(12))))
}

pub fn serre_derivation_log(f: &LogSeries, k: &Rational) -> LogSeries {
    let lo = std::cmp::min(f.plain.base_exponent(), f.log_part.base_exponent()).clone();
    let steps = ceil_i64(&(f.precision() - lo)).max(0) as usize + 1;
    let e2 = e(2, steps);
    f.euler_derivative()
        .sub(&f.mul_series(&e2).scale(&(k / int(12))))
}

/// `ϑ_k^i f = ϑ_{k+2i−2} ∘ ⋯ ∘ ϑ_k f`.
pub fn iterated_serre(f: &PuiseuxSeries, k: &Rational, i: usize) -> PuiseuxSeries {
    let mut g = f.clone();
    for step in 0..i {
        g = serre_derivation(&g, &(k + int(2 * step as i64)));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_values() {
        let (a1, _, a3) = alphas(&rat(6, 5));
        assert_eq!(a1, rat(1, 5));
        assert_eq!(a3, rat(-84, 5) * rat(36, 5) * int(144) / int(8294400));
        assert_eq!(alphas(&int(18)).2, int(0));
        let (_, _, a3) = alphas(&rat(32, 5));
        assert_eq!(
            a3,
            (rat(32, 5) - int(18)) * (rat(32, 5) + int(6)) * int(38 * 38) / int(8294400)
        );
        assert_eq!(mu(&rat(19, 5)), rat(551, 3600));
        assert_eq!(mu(&int(0)), int(0));
        assert_eq!(mu(&rat(1, 5)), rat(11, 3600));
    }

    #[test]
    fn weighted_at_zero_is_flat() {
        let s = rat(6, 5);
        let a = build_flat(&s, 20);
        let b = build_flat_weighted(&s, &int(0), 20);
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            assert!(x.agrees_with(y));
        }
    }

    #[test]
    fn apply_leading_term_is_indicial() {
        let s = rat(-3, 5);
        let op = build_flat(&s, 10);
        let alpha = rat(1, 7);
        let f = PuiseuxSeries::monomial(int(1), alpha.clone(), &alpha + int(5));
        let r = op.apply(&f).unwrap();
        let p = indicial_polynomial(&op);
        let val: Rational = p
            .iter()
            .enumerate()
            .map(|(j, c)| c * num_traits::pow(alpha.clone(), j))
            .sum();
        assert_eq!(r.coeff(&alpha).unwrap(), val);
    }

    #[test]
    fn serre_of_constant() {
        assert!(serre_derivation(&PuiseuxSeries::one(10), &int(0)).is_zero());
    }
}
