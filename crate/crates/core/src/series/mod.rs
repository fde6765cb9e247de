//! Truncated Puiseux series `q^a · Σ c_n q^{n/D}` over the rationals.
//!
//! Every value carries its exclusive truncation exponent; all operations
//! propagate the tightest exponent they can justify, and comparing past it
//! is an error rather than a silent truncation.

mod json;
mod log;

pub use json::SeriesJson;
pub use log::LogSeries;

use std::cmp::{max, min};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, denom_u64, int, is_integer, scaled_index, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxSeries {
    base: Rational,
    grid: u64,
    coeffs: Vec<Rational>,
}

impl PuiseuxSeries {
    /// Builds and normalizes: leading zeros are stripped and the grid reduced.
    pub fn new(base: Rational, grid: u64, coeffs: Vec<Rational>) -> Self {
        assert!(grid > 0, "grid must be positive");
        let mut s = PuiseuxSeries { base, grid, coeffs };
        s.normalize();
        s
    }

    pub fn from_ints(base: Rational, grid: u64, coeffs: &[i64]) -> Self {
        Self::new(base, grid, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(base: Rational, grid: u64, coeffs: Vec<BigInt>) -> Self {
        Self::new(
            base,
            grid,
            coeffs.into_iter().map(Rational::from_integer).collect(),
        )
    }

    /// `O(q^prec)`.
    pub fn zero(prec: Rational) -> Self {
        PuiseuxSeries {
            base: prec,
            grid: 1,
            coeffs: Vec::new(),
        }
    }

    /// The constant `c`, known through `q^order`.
    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        Self::new(Rational::zero(), 1, coeffs)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// `c·q^e + O(q^prec)`.
    pub fn monomial(c: Rational, e: Rational, prec: Rational) -> Self {
        assert!(prec > e, "precision must exceed the exponent");
        let d = denom_u64(&(&prec - &e));
        let len = scaled_index(&(&prec - &e), d) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        coeffs[0] = c;
        Self::new(e, d, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.base = self.precision();
                self.grid = 1;
                self.coeffs.clear();
                return;
            }
            Some(k) if k > 0 => {
                self.base += Rational::new(BigInt::from(k), BigInt::from(self.grid));
                self.coeffs.drain(..k);
            }
            _ => {}
        }
        let mut g = self.grid.gcd(&(self.coeffs.len() as u64));
        for (i, c) in self.coeffs.iter().enumerate() {
            if g == 1 {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(&(i as u64));
            }
        }
        if g > 1 {
            self.grid /= g;
            self.coeffs = self.coeffs.iter().step_by(g as usize).cloned().collect();
        }
    }

    /// Exponent of the first stored coefficient; for the zero series, its precision.
    pub fn base_exponent(&self) -> &Rational {
        &self.base
    }

    pub fn grid(&self) -> u64 {
        self.grid
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `N` with the series exact modulo `q^{base + (N+1)/D}`; `-1` for `O(q^a)`.
    pub fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Exclusive truncation exponent.
    pub fn precision(&self) -> Rational {
        &self.base + Rational::new(BigInt::from(self.coeffs.len()), BigInt::from(self.grid))
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Number of known terms past the leading exponent, measured in whole powers of q.
    pub fn relative_precision(&self) -> Rational {
        Rational::new(BigInt::from(self.coeffs.len()), BigInt::from(self.grid))
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: &Rational) -> Result<Rational> {
        let prec = self.precision();
        if *e >= prec {
            return Err(Error::InsufficientOrder {
                needed: e.clone(),
                available: prec,
            });
        }
        if *e < self.base {
            return Ok(Rational::zero());
        }
        let x = (e - &self.base) * int(self.grid as i64);
        if !is_integer(&x) {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[x.to_integer().try_into().unwrap_or(usize::MAX)].clone())
    }

    /// `(exponent, coefficient)` pairs of the stored terms, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        let step = Rational::new(BigInt::one(), BigInt::from(self.grid));
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (&self.base + &step * int(i as i64), c))
    }

    /// Lowers the truncation exponent to `prec` (no-op if already lower).
    pub fn truncate(&self, prec: &Rational) -> Self {
        if *prec >= self.precision() {
            return self.clone();
        }
        if *prec <= self.base {
            return Self::zero(prec.clone());
        }
        let d = self.grid.lcm(&denom_u64(&(prec - &self.base)));
        let (len, v) = self.spread(&self.base, d, prec);
        debug_assert_eq!(len, v.len());
        Self::new(self.base.clone(), d, v)
    }

    /// Coefficients laid out on the grid `base + k/d`, for `k` below `(prec-base)·d`.
    fn spread(&self, base: &Rational, d: u64, prec: &Rational) -> (usize, Vec<Rational>) {
        let len = max(0, scaled_index(&(prec - base), d)) as usize;
        let mut out = vec![Rational::zero(); len];
        self.add_into(&mut out, base, d, &Rational::one());
        (len, out)
    }

    fn add_into(&self, out: &mut [Rational], base: &Rational, d: u64, scale: &Rational) {
        if self.coeffs.is_empty() {
            return;
        }
        let off = scaled_index(&(&self.base - base), d);
        let step = (d / self.grid) as i64;
        for (i, c) in self.coeffs.iter().enumerate() {
            let idx = off + step * i as i64;
            if idx < 0 {
                continue;
            }
            if idx as usize >= out.len() {
                break;
            }
            if !c.is_zero() {
                out[idx as usize] += c * scale;
            }
        }
    }

    fn lin_comb(terms: &[(&PuiseuxSeries, Rational)]) -> Self {
        let prec = terms
            .iter()
            .map(|(s, _)| s.precision())
            .min()
            .expect("no terms");
        let base = terms.iter().map(|(s, _)| s.base.clone()).min().unwrap();
        if base >= prec {
            return Self::zero(prec);
        }
        let mut d = denom_u64(&(&prec - &base));
        for (s, _) in terms {
            d = d.lcm(&s.grid).lcm(&denom_u64(&(&s.base - &base)));
        }
        let len = scaled_index(&(&prec - &base), d) as usize;
        let mut out = vec![Rational::zero(); len];
        for (s, c) in terms {
            s.add_into(&mut out, &base, d, c);
        }
        Self::new(base, d, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::lin_comb(&[(self, Rational::one()), (other, Rational::one())])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::lin_comb(&[(self, Rational::one()), (other, -Rational::one())])
    }

    /// `Σ c_i·s_i` in one pass.
    pub fn linear_combination(terms: &[(&PuiseuxSeries, Rational)]) -> Self {
        Self::lin_comb(terms)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision());
        }
        PuiseuxSeries {
            base: self.base.clone(),
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        let mut s = PuiseuxSeries {
            base: &self.base + e,
            grid: self.grid,
            coeffs: self.coeffs.clone(),
        };
        if s.coeffs.is_empty() {
            s.grid = 1;
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = min(
            &self.base + other.precision(),
            &other.base + self.precision(),
        );
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        let base = &self.base + &other.base;
        let d = self.grid.lcm(&other.grid).lcm(&denom_u64(&(&prec - &base)));
        let len = scaled_index(&(&prec - &base), d) as usize;
        let sa = (d / self.grid) as usize;
        let sb = (d / other.grid) as usize;
        let (la, a) = to_scaled_ints(&self.coeffs);
        let (lb, b) = to_scaled_ints(&other.coeffs);
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate() {
            let pi = i * sa;
            if pi >= len {
                break;
            }
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let k = pi + j * sb;
                if k >= len {
                    break;
                }
                if !y.is_zero() {
                    acc[k] += x * y;
                }
            }
        }
        let den = la * lb;
        Self::new(
            base,
            d,
            acc.into_iter()
                .map(|n| Rational::new(n, den.clone()))
                .collect(),
        )
    }

    /// `1/a`; the leading exponent negates and the relative precision is kept.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeffs.first().ok_or(Error::ZeroLeadingCoefficient)?;
        let n = self.coeffs.len();
        let u: Vec<Rational> = self.coeffs.iter().map(|c| c / c0).collect();
        let mut g: Vec<Rational> = Vec::with_capacity(n);
        if u.iter().all(is_integer) {
            let ui: Vec<BigInt> = u.iter().map(|x| x.to_integer()).collect();
            let mut gi: Vec<BigInt> = Vec::with_capacity(n);
            gi.push(BigInt::one());
            for m in 1..n {
                let mut acc = BigInt::zero();
                for k in 1..=m {
                    if !ui[k].is_zero() {
                        acc -= &ui[k] * &gi[m - k];
                    }
                }
                gi.push(acc);
            }
            g.extend(gi.into_iter().map(Rational::from_integer));
        } else {
            g.push(Rational::one());
            for m in 1..n {
                let mut acc = Rational::zero();
                for k in 1..=m {
                    if !u[k].is_zero() {
                        acc -= &u[k] * &g[m - k];
                    }
                }
                g.push(acc);
            }
        }
        let inv = c0.recip();
        Ok(Self::new(
            -&self.base,
            self.grid,
            g.into_iter().map(|x| x * &inv).collect(),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// `a^r` via the recursion `n·g_n = Σ_k ((r+1)k − n)·u_k·g_{n−k}` on the unit part.
    pub fn pow_rational(&self, r: &Rational) -> Result<Self> {
        let c0 = match self.coeffs.first() {
            Some(c) => c.clone(),
            None => {
                if r.is_zero() {
                    return Err(Error::ZeroLeadingCoefficient);
                }
                if r.is_positive() {
                    return Ok(Self::zero(&self.base * r));
                }
                return Err(Error::ZeroLeadingCoefficient);
            }
        };
        let lead = if is_integer(r) {
            pow_int_rational(&c0, r.to_integer().try_into().expect("exponent too large"))
        } else if c0.is_one() {
            Rational::one()
        } else {
            return Err(Error::NonUnitBase);
        };
        let n = self.coeffs.len();
        let u: Vec<Rational> = self.coeffs.iter().map(|c| c / &c0).collect();
        let mut g: Vec<Rational> = Vec::with_capacity(n);
        g.push(Rational::one());
        let r1 = r + Rational::one();
        for m in 1..n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if u[k].is_zero() || g[m - k].is_zero() {
                    continue;
                }
                let w = &r1 * int(k as i64) - int(m as i64);
                acc += w * &u[k] * &g[m - k];
            }
            g.push(acc / int(m as i64));
        }
        let base = &self.base * r;
        Ok(Self::new(
            base,
            self.grid,
            g.into_iter().map(|x| x * &lead).collect(),
        ))
    }

    /// Integer powers by repeated squaring (keeps integer coefficients integral).
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.invert()?.pow_int(-e);
        }
        if e == 0 {
            if self.is_zero() {
                return Err(Error::ZeroLeadingCoefficient);
            }
            let mut coeffs = vec![Rational::zero(); self.coeffs.len()];
            coeffs[0] = Rational::one();
            return Ok(Self::new(Rational::zero(), self.grid, coeffs));
        }
        let mut result: Option<Self> = None;
        let mut b = self.clone();
        let mut k = e;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => b.clone(),
                    Some(r) => r.mul(&b),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            b = b.mul(&b);
        }
        Ok(result.unwrap())
    }

    /// `q ↦ q^m`.
    pub fn substitute_power(&self, m: u64) -> Self {
        assert!(m > 0);
        if m == 1 {
            return self.clone();
        }
        let mi = int(m as i64);
        if self.is_zero() {
            return Self::zero(&self.base * &mi);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() * m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        Self::new(&self.base * &mi, self.grid, coeffs)
    }

    /// `D = q·d/dq`.
    pub fn euler_derivative(&self) -> Self {
        let coeffs = self.terms().map(|(e, c)| c * e).collect();
        Self::new(self.base.clone(), self.grid, coeffs)
    }

    /// Formal primitive under `D`: `c·q^e ↦ (c/e)·q^e`.
    pub fn integrate_q(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.terms() {
            if e.is_zero() {
                if !c.is_zero() {
                    return Err(Error::ConstantTermPresent);
                }
                coeffs.push(Rational::zero());
            } else {
                coeffs.push(c / e);
            }
        }
        Ok(Self::new(self.base.clone(), self.grid, coeffs))
    }

    /// First exponent where `self` and `other` differ, within the common precision.
    pub fn first_difference(&self, other: &Self) -> Option<(Rational, Rational)> {
        let d = self.sub(other);
        d.coeffs.first().map(|c| (d.base.clone(), c.clone()))
    }

    /// Equality of all coefficients below the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// Like [`agrees_with`](Self::agrees_with) but demands both sides be known below `upto`.
    pub fn agrees_to(&self, other: &Self, upto: &Rational) -> Result<bool> {
        for s in [self, other] {
            if s.precision() < *upto {
                return Err(Error::InsufficientOrder {
                    needed: upto.clone(),
                    available: s.precision(),
                });
            }
        }
        Ok(self.truncate(upto).agrees_with(&other.truncate(upto)))
    }

    /// Leading coefficient 1 and the next `depth` coefficients non-negative integers.
    pub fn is_cft_type(&self, depth: usize) -> bool {
        if self.coeffs.first().is_none_or(|c| !c.is_one()) {
            return false;
        }
        let step = self.grid as usize;
        (1..=depth).all(|n| match self.coeffs.get(n * step) {
            Some(c) => is_integer(c) && !c.is_negative(),
            None => false,
        }) && (0..(depth * step).min(self.coeffs.len()))
            .filter(|i| i % step != 0)
            .all(|i| self.coeffs[i].is_zero())
    }

    /// Coefficients at integer steps above the leading exponent: `c(base + n)`, `n = 0..=depth`.
    pub fn integer_steps(&self, depth: usize) -> Result<Vec<Rational>> {
        (0..=depth)
            .map(|n| self.coeff(&(&self.base + int(n as i64))))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    /// Lcm of coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        common_denominator(self.coeffs.iter())
    }
}

fn pow_int_rational(c: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

/// Scales a coefficient vector to integers: returns `(L, [c_i·L])`.
fn to_scaled_ints(cs: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let l = common_denominator(cs.iter());
    if l.is_one() {
        return (l, cs.iter().map(|c| c.numer().clone()).collect());
    }
    let v = cs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    (l, v)
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            if e.is_zero() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^({e})")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}))", self.precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn s(base: Rational, d: u64, c: &[i64]) -> PuiseuxSeries {
        PuiseuxSeries::from_ints(base, d, c)
    }

    #[test]
    fn add_and_regrid() {
        let a = s(int(0), 1, &[1, 1, 0]);
        let b = s(int(0), 1, &[0, 1, 1]);
        assert_eq!(a.add(&b), s(int(0), 1, &[1, 2, 1]));
        let half = PuiseuxSeries::monomial(int(1), rat(1, 2), int(2));
        let third = PuiseuxSeries::monomial(int(1), rat(1, 3), int(2));
        let sum = half.add(&third);
        assert_eq!(sum.grid(), 6);
        assert_eq!(sum.base_exponent(), &rat(1, 3));
        assert_eq!(sum.coeff(&rat(1, 2)).unwrap(), int(1));
        assert_eq!(sum.coeff(&rat(2, 3)).unwrap(), int(0));
    }

    #[test]
    fn mul_invert() {
        let a = s(int(0), 1, &[1, 1, 0, 0]);
        let b = s(int(0), 1, &[1, -1, 0, 0]);
        assert_eq!(a.mul(&b), s(int(0), 1, &[1, 0, -1, 0]));
        let inv = s(int(0), 1, &[1, -1, 0, 0, 0]).invert().unwrap();
        assert_eq!(inv, s(int(0), 1, &[1, 1, 1, 1, 1]));
        assert_eq!(
            PuiseuxSeries::zero(int(3)).invert(),
            Err(Error::ZeroLeadingCoefficient)
        );
    }

    #[test]
    fn mul_precision_is_tight() {
        // q^2·(1 + O(q^3)) times (1 + O(q^10)) is known below q^5
        let a = s(int(2), 1, &[1, 0, 0]);
        let b = s(int(0), 1, &[1; 10]);
        assert_eq!(a.mul(&b).precision(), int(5));
    }

    #[test]
    fn binomial_power() {
        let a = s(int(0), 1, &[1, -1, 0, 0]);
        let g = a.pow_rational(&rat(2, 5)).unwrap();
        assert_eq!(g.coeffs()[1], rat(-2, 5));
        assert_eq!(g.coeffs()[2], rat(-3, 25));
        // (2/5)(-3/5)(-8/5)/6 · (-1)^3
        assert_eq!(g.coeffs()[3], rat(-8, 125));
        assert_eq!(
            a.pow_rational(&int(0)).unwrap(),
            s(int(0), 1, &[1, 0, 0, 0])
        );
        let b = s(int(0), 1, &[2, 1]);
        assert_eq!(b.pow_rational(&rat(1, 2)), Err(Error::NonUnitBase));
    }

    #[test]
    fn substitution_derivative_integral() {
        let a = s(int(0), 1, &[1, 1]);
        assert_eq!(a.substitute_power(2), s(int(0), 1, &[1, 0, 1, 0]));
        let h = PuiseuxSeries::monomial(int(1), rat(1, 2), int(3));
        assert_eq!(h.euler_derivative().coeff(&rat(1, 2)).unwrap(), rat(1, 2));
        assert!(PuiseuxSeries::one(5).euler_derivative().is_zero());
        assert_eq!(
            PuiseuxSeries::one(3).integrate_q(),
            Err(Error::ConstantTermPresent)
        );
        let f = s(int(1), 1, &[3, 4, 5]);
        assert_eq!(f.integrate_q().unwrap().euler_derivative(), f);
    }

    #[test]
    fn cft_type() {
        assert!(s(int(0), 1, &[1, 8, 23]).is_cft_type(2));
        assert!(!s(int(0), 1, &[1, -26, -126]).is_cft_type(2));
        assert!(!s(int(0), 1, &[2, 1]).is_cft_type(1));
        assert!(!s(int(0), 2, &[1, 1, 1]).is_cft_type(1));
    }

    #[test]
    fn comparison_past_precision_errors() {
        let a = s(int(0), 1, &[1, 2]);
        assert!(matches!(
            a.coeff(&int(2)),
            Err(Error::InsufficientOrder { .. })
        ));
        assert!(a.agrees_to(&a, &int(3)).is_err());
    }
}
