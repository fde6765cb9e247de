use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{MldeOperator, Provenance};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, from_big, int, is_integer, rat, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct IndicialReport {
    /// Low-to-high coefficients of `P(α)`.
    #[serde(serialize_with = "ser_rats")]
    pub polynomial: Vec<Rational>,
    #[serde(serialize_with = "ser_rats")]
    pub roots: Vec<Rational>,
    #[serde(serialize_with = "ser_diffs")]
    pub pair_differences: Vec<(usize, usize, Rational)>,
    pub degenerate: Vec<(usize, usize)>,
    pub resonant: Vec<(usize, usize)>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

fn ser_diffs<S: serde::Serializer>(
    v: &[(usize, usize, Rational)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(i, j, d)| (i, j, fmt_rational(d))))
}

impl IndicialReport {
    pub fn from_roots(polynomial: Vec<Rational>, roots: Vec<Rational>) -> Self {
        let mut pair_differences = Vec::new();
        let mut degenerate = Vec::new();
        let mut resonant = Vec::new();
        for i in 0..roots.len() {
            for j in 0..roots.len() {
                if i == j {
                    continue;
                }
                let d = &roots[i] - &roots[j];
                if i < j && d.is_zero() {
                    degenerate.push((i, j));
                }
                if is_integer(&d) && d.is_positive() {
                    resonant.push((i, j));
                }
                pair_differences.push((i, j, d));
            }
        }
        IndicialReport {
            polynomial,
            roots,
            pair_differences,
            degenerate,
            resonant,
        }
    }

    pub fn multiplicity(&self, alpha: &Rational) -> usize {
        self.roots.iter().filter(|r| *r == alpha).count()
    }

    pub fn sum(&self) -> Rational {
        self.roots.iter().sum()
    }
}

/// `P(α) = Σ_j c_j(0)·α^j`, low-to-high.
pub fn indicial_polynomial(op: &MldeOperator) -> Vec<Rational> {
    (0..=op.order())
        .map(|j| op.grid_coefficient(j, 0).expect("operator known at q^0"))
        .collect()
}

/// Closed-form roots of (♭_s) (and of (♭_s^k), which shares them).
pub fn flat_roots(s: &Rational) -> [Rational; 4] {
    let t = s / int(24);
    [
        -&t - rat(1, 20),
        -&t + rat(3, 4),
        &t + rat(1, 4),
        &t + rat(1, 20),
    ]
}

pub(crate) fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

pub(crate) fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * int(j as i64))
        .collect()
}

fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    // synthetic division by (x − r)
    let n = p.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (1..=n).rev() {
        carry = &p[k] + carry * r;
        out[k - 1] = carry.clone();
    }
    out
}

fn primitive_integer(p: &[Rational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: Vec<BigInt> = p
        .iter()
        .map(|c| (c * from_big(l.clone())).to_integer())
        .collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    v.into_iter()
        .map(|c| if g.is_zero() { c } else { c / &g })
        .collect()
}

fn divisors_big(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    Some(
        crate::arith::divisors(n)
            .into_iter()
            .map(BigInt::from)
            .collect(),
    )
}

/// Approximate complex roots (Durand–Kerner).
fn approximate_roots(p: &[BigInt]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let lead = p[n].to_f64().unwrap();
    let c: Vec<f64> = p
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::MAX) / lead)
        .collect();
    let bound = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * bound.min(1e6))
        .collect();
    let f = |x: Complex64| {
        c.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
    };
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = f(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    z
}

/// All rational roots with multiplicity; `Err(rest)` carries the irreducible remainder when it has degree ≥ 1.
pub fn rational_roots(
    p: &[Rational],
) -> std::result::Result<Vec<Rational>, (Vec<Rational>, Vec<Rational>)> {
    let mut p: Vec<Rational> = p.to_vec();
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    let mut roots = Vec::new();
    'outer: while p.len() > 1 {
        if p[0].is_zero() {
            roots.push(Rational::zero());
            p = deflate(&p, &Rational::zero());
            continue;
        }
        let z = primitive_integer(&p);
        let lead = z.last().unwrap().clone();
        let dens = divisors_big(&lead);
        for approx in approximate_roots(&z) {
            if approx.im.abs() > 1e-3 * (1.0 + approx.re.abs()) {
                continue;
            }
            let mut tries: Vec<Rational> = Vec::new();
            match &dens {
                Some(ds) => {
                    for d in ds {
                        let df = d.to_f64().unwrap();
                        let num = (approx.re * df).round();
                        if num.is_finite() && num.abs() < 1e15 {
                            tries.push(Rational::new(BigInt::from(num as i64), d.clone()));
                        }
                    }
                }
                None => {
                    // very large leading coefficient: fall back to continued fractions
                    tries.extend(convergents(approx.re));
                }
            }
            for r in tries {
                if eval(&p, &r).is_zero() {
                    roots.push(r.clone());
                    p = deflate(&p, &r);
                    continue 'outer;
                }
            }
        }
        return Err((roots, p));
    }
    Ok(roots)
}

fn convergents(x: f64) -> Vec<Rational> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    let mut out = Vec::new();
    for _ in 0..20 {
        let a = y.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (
            a.saturating_mul(h1).saturating_add(h0),
            a.saturating_mul(k1).saturating_add(k0),
        );
        if k2 == 0 || k2.abs() > 1 << 40 {
            break;
        }
        out.push(rat(h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

fn poly_string(p: &[Rational]) -> String {
    let mut parts = Vec::new();
    for (j, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        parts.push(match j {
            0 => format!("({})", fmt_rational(c)),
            1 => format!("({})·α", fmt_rational(c)),
            _ => format!("({})·α^{j}", fmt_rational(c)),
        });
    }
    parts.join(" + ")
}

fn same_multiset(a: &[Rational], b: &[Rational]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

pub fn indicial(op: &MldeOperator) -> Result<IndicialReport> {
    let p = indicial_polynomial(op);
    let generic =
        rational_roots(&p).map_err(|(_, rest)| Error::NonRationalRoot(poly_string(&rest)))?;
    let roots = match &op.provenance {
        Provenance::Flat(s) | Provenance::FlatWeighted { s, .. } => {
            let mut closed = flat_roots(s).to_vec();
            if let Provenance::FlatWeighted { k, .. } = &op.provenance {
                // (♭_s^k) solutions are η^{2k}·(♭_s) solutions
                for r in closed.iter_mut() {
                    *r += k / int(12);
                }
            }
            if !same_multiset(&closed, &generic) {
                return Err(Error::Unevaluable(format!(
                    "closed-form roots disagree with the indicial polynomial {}",
                    poly_string(&p)
                )));
            }
            closed
        }
        _ => {
            let mut g = generic;
            g.sort();
            g
        }
    };
    Ok(IndicialReport::from_roots(p, roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlde::{build_flat, build_third_order_bc};

    #[test]
    fn known_roots() {
        let r = indicial(&build_flat(&rat(6, 5), 5)).unwrap();
        assert_eq!(
            r.roots,
            vec![rat(-1, 10), rat(7, 10), rat(3, 10), rat(1, 10)]
        );
        let r = indicial(&build_flat(&rat(-3, 5), 5)).unwrap();
        assert!(same_multiset(
            &r.roots,
            &[rat(31, 40), rat(9, 40), rat(1, 40), rat(-1, 40)]
        ));
        let r = indicial(&build_flat(&int(6), 5)).unwrap();
        assert_eq!(r.degenerate, vec![(1, 2)]);
        assert_eq!(r.sum(), int(1));
    }

    #[test]
    fn third_order_sum() {
        let r = indicial(&build_third_order_bc(5)).unwrap();
        assert_eq!(r.sum(), rat(1, 2));
    }

    #[test]
    fn irrational_reported() {
        let p = vec![int(-2), int(0), int(1)];
        assert!(rational_roots(&p).is_err());
        let p = vec![rat(-1, 4), int(0), int(1)];
        let mut r = rational_roots(&p).unwrap();
        r.sort();
        assert_eq!(r, vec![rat(-1, 2), rat(1, 2)]);
    }
}
