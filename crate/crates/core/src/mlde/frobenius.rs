//! Frobenius recursion: writing `c_j = Σ_i c_{j,i} q^i` and `Q_i(x) = Σ_j c_{j,i} x^j`,
//! the coefficient of `q^{α+n}` in `L(q^α Σ a_n q^n)` is `Σ_{i=0}^{n} Q_i(α+n−i)·a_{n−i}`,
//! with `Q_0 = P` the indicial polynomial.

use num_traits::{One, Zero};

use super::indicial::{derivative, eval, indicial};
use super::MldeOperator;
use crate::error::{Error, Result};
use crate::rational::{int, is_integer, Rational};
use crate::series::{LogSeries, PuiseuxSeries};

struct Recursion {
    q: Vec<Vec<Rational>>,
    dq: Vec<Vec<Rational>>,
}

impl Recursion {
    fn new(op: &MldeOperator, order: usize) -> Result<Self> {
        let avail = op.precision();
        if avail <= int(order as i64) {
            return Err(Error::InsufficientOrder {
                needed: int(order as i64 + 1),
                available: avail,
            });
        }
        let mut q = Vec::with_capacity(order + 1);
        for i in 0..=order {
            let row: Vec<Rational> = (0..=op.order())
                .map(|j| op.grid_coefficient(j, i))
                .collect::<Result<_>>()?;
            q.push(row);
        }
        let dq = q.iter().map(|r| derivative(r)).collect();
        Ok(Recursion { q, dq })
    }

    fn p(&self) -> &[Rational] {
        &self.q[0]
    }

    /// `Σ_{i=1}^{n} Q_i(α+n−i)·a_{n−i}`.
    fn tail(&self, alpha: &Rational, a: &[Rational], n: usize) -> Rational {
        let mut s = Rational::zero();
        for i in 1..=n {
            let prev = &a[n - i];
            if prev.is_zero() {
                continue;
            }
            s += eval(&self.q[i], &(alpha + int((n - i) as i64))) * prev;
        }
        s
    }

    /// `Σ_{i=0}^{k} Q_i'(β+k−i)·h_{k−i}`.
    fn dtail(&self, beta: &Rational, h: &[Rational], k: usize) -> Rational {
        let mut s = Rational::zero();
        for i in 0..=k {
            let prev = &h[k - i];
            if prev.is_zero() {
                continue;
            }
            s += eval(&self.dq[i], &(beta + int((k - i) as i64))) * prev;
        }
        s
    }

    fn solve(&self, alpha: &Rational, order: usize) -> Result<Vec<Rational>> {
        if !eval(self.p(), alpha).is_zero() {
            return Err(Error::NotIndicialRoot(alpha.clone()));
        }
        let mut a = vec![Rational::one()];
        for n in 1..=order {
            let pn = eval(self.p(), &(alpha + int(n as i64)));
            if pn.is_zero() {
                return Err(Error::Resonance { n });
            }
            let t = self.tail(alpha, &a, n);
            a.push(-t / pn);
        }
        Ok(a)
    }
}

/// `q^α(1 + Σ_{n=1}^{order} a_n q^n)`.
pub fn frobenius_solve(op: &MldeOperator, alpha: &Rational, order: usize) -> Result<PuiseuxSeries> {
    let rec = Recursion::new(op, order)?;
    let a = rec.solve(alpha, order)?;
    Ok(PuiseuxSeries::new(alpha.clone(), 1, a))
}

/// As [`frobenius_solve`] but rescaled so that every coefficient is an integer with content 1
/// and positive leading term. Useful for comparison against printed integral normalizations.
pub fn frobenius_solve_scaled(
    op: &MldeOperator,
    alpha: &Rational,
    order: usize,
) -> Result<PuiseuxSeries> {
    let f = frobenius_solve(op, alpha, order)?;
    let d = f.denominator();
    Ok(f.scale(&Rational::from_integer(d)))
}

/// Logarithmic solution `f₀ + ℓ·f₁` attached to `alpha`.
///
/// For a double root `f₁` is the power-series solution at `alpha` itself; for a simple root
/// with a unique root `β = α + m` above it, `f₁` is a multiple of the solution at `β`. In both
/// cases `f₀` has zero coefficient at the exponent of `f₁`.
pub fn frobenius_solve_log(op: &MldeOperator, alpha: &Rational, order: usize) -> Result<LogSeries> {
    let rep = indicial(op)?;
    let mult = rep.multiplicity(alpha);
    if mult == 0 {
        return Err(Error::NotIndicialRoot(alpha.clone()));
    }
    if mult > 2 {
        return Err(Error::LogDepthExceeded(alpha.clone()));
    }
    let mut uppers: Vec<Rational> = rep
        .roots
        .iter()
        .filter(|r| {
            let d = *r - alpha;
            is_integer(&d) && d > Rational::zero()
        })
        .cloned()
        .collect();
    uppers.sort();
    uppers.dedup();
    let rec = Recursion::new(op, order)?;

    let (m, beta) = match (mult, uppers.len()) {
        (2, 0) => (0usize, alpha.clone()),
        (1, 0) => return Err(Error::NoLogNeeded(alpha.clone())),
        (1, 1) => {
            let b = uppers[0].clone();
            if rep.multiplicity(&b) > 1 {
                return Err(Error::LogDepthExceeded(alpha.clone()));
            }
            let m: usize = (&b - alpha)
                .to_integer()
                .try_into()
                .map_err(|_| Error::LogDepthExceeded(alpha.clone()))?;
            (m, b)
        }
        _ => return Err(Error::LogDepthExceeded(alpha.clone())),
    };
    if m > order {
        return Err(Error::InsufficientOrder {
            needed: int(m as i64),
            available: int(order as i64),
        });
    }
    let h = rec.solve(&beta, order - m)?;

    let mut g: Vec<Rational> = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    if m == 0 {
        g.push(Rational::zero());
    } else {
        g.push(Rational::one());
    }
    for n in 1..=order {
        let t = rec.tail(alpha, &g, n);
        if n < m {
            let pn = eval(rec.p(), &(alpha + int(n as i64)));
            g.push(-t / pn);
        } else if n == m {
            let dp = eval(&rec.dq[0], &beta);
            c = -t / dp;
            g.push(Rational::zero());
        } else {
            let k = n - m;
            let pn = eval(rec.p(), &(alpha + int(n as i64)));
            let extra = &c * rec.dtail(&beta, &h, k);
            g.push(-(t + extra) / pn);
        }
    }
    if m == 0 {
        // the first term n=0 of the derivative sum: P'(α)·h_0 = 0 at a double root
        debug_assert!(eval(&rec.dq[0], alpha).is_zero());
    }
    let plain = PuiseuxSeries::new(alpha.clone(), 1, g);
    let log_part = PuiseuxSeries::new(beta, 1, h).scale(&c);
    Ok(LogSeries::new(plain, log_part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlde::{build_flat, build_sharp};
    use crate::rational::rat;

    #[test]
    fn flat_six_fifths() {
        let op = build_flat(&rat(6, 5), 10);
        let f = frobenius_solve(&op, &rat(-1, 10), 3).unwrap();
        let want: Vec<Rational> = [1, 8, 23, 68].iter().map(|&x| int(x)).collect();
        assert_eq!(f.coeffs(), &want[..]);
    }

    #[test]
    fn not_a_root() {
        let op = build_flat(&rat(6, 5), 10);
        assert!(matches!(
            frobenius_solve(&op, &rat(1, 3), 3),
            Err(Error::NotIndicialRoot(_))
        ));
    }

    #[test]
    fn sharp_zero_log() {
        // s = −1/144 gives the double root 1/12
        let op = build_sharp(&rat(-1, 144), 12);
        let f = frobenius_solve_log(&op, &rat(1, 12), 10).unwrap();
        let r = op.apply_log(&f).unwrap();
        assert!(r.is_zero());
        assert!(!f.log_part.is_zero());
    }

    #[test]
    fn no_log_for_simple_root() {
        let op = build_flat(&rat(6, 5), 10);
        assert!(matches!(
            frobenius_solve_log(&op, &rat(-1, 10), 5),
            Err(Error::NoLogNeeded(_))
        ));
    }
}
