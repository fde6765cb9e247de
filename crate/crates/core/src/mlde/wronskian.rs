use super::{serre_derivation, serre_derivation_log};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::{LogSeries, PuiseuxSeries};

/// A polynomial in `ℓ` with series coefficients, `Σ_k ℓ^k·p_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPoly(pub Vec<PuiseuxSeries>);

impl LogPoly {
    fn from_log(f: &LogSeries) -> Self {
        LogPoly(vec![f.plain.clone(), f.log_part.clone()])
    }

    fn mul(&self, o: &Self) -> Self {
        let n = self.0.len() + o.0.len() - 1;
        let mut out: Vec<Option<PuiseuxSeries>> = vec![None; n];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                let t = a.mul(b);
                out[i + j] = Some(match out[i + j].take() {
                    None => t,
                    Some(x) => x.add(&t),
                });
            }
        }
        LogPoly(out.into_iter().map(Option::unwrap).collect())
    }

    fn add_scaled(&self, o: &Self, c: &Rational) -> Self {
        let n = self.0.len().max(o.0.len());
        let prec = self
            .0
            .iter()
            .chain(&o.0)
            .map(|s| s.precision())
            .min()
            .unwrap();
        let z = PuiseuxSeries::zero(prec);
        LogPoly(
            (0..n)
                .map(|k| {
                    let a = self.0.get(k).unwrap_or(&z);
                    let b = o.0.get(k).unwrap_or(&z);
                    a.add(&b.scale(c))
                })
                .collect(),
        )
    }

    /// True when every positive power of `ℓ` has vanished to its precision.
    pub fn is_log_free(&self) -> bool {
        self.0.iter().skip(1).all(|p| p.is_zero())
    }

    pub fn constant_term(&self) -> &PuiseuxSeries {
        &self.0[0]
    }
}

fn det<T: Clone>(m: &[Vec<T>], mul: &dyn Fn(&T, &T) -> T, add: &dyn Fn(&T, &T, i64) -> T) -> T {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<T> = None;
    for col in 0..n {
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = mul(&m[0][col], &det(&minor, mul, add));
        let sign = if col % 2 == 0 { 1 } else { -1 };
        acc = Some(match acc {
            None => {
                if sign == 1 {
                    t
                } else {
                    add(&t, &t, -2)
                }
            }
            Some(a) => add(&a, &t, sign),
        });
    }
    acc.unwrap()
}

/// `det(F, ϑ_0 F, ϑ_0² F, …, ϑ_0^{n−1} F)`.
pub fn modular_wronskian(system: &[PuiseuxSeries]) -> Result<PuiseuxSeries> {
    let n = system.len();
    if n == 0 {
        return Err(Error::Parse("empty system".into()));
    }
    let mut rows = vec![system.to_vec()];
    for i in 1..n {
        let k = int(2 * (i as i64 - 1));
        let next: Vec<PuiseuxSeries> = rows[i - 1]
            .iter()
            .map(|f| serre_derivation(f, &k))
            .collect();
        rows.push(next);
    }
    for f in system {
        if f.relative_precision() < int(n as i64) {
            return Err(Error::InsufficientOrder {
                needed: int(n as i64),
                available: f.relative_precision(),
            });
        }
    }
    Ok(det(&rows, &|a, b| a.mul(b), &|a, b, s| {
        a.add(&b.scale(&int(s)))
    }))
}

/// The Wronskian of a system containing logarithmic solutions, as a polynomial in `ℓ`.
pub fn modular_wronskian_log(system: &[LogSeries]) -> Result<LogPoly> {
    let n = system.len();
    if n == 0 {
        return Err(Error::Parse("empty system".into()));
    }
    let mut rows = vec![system.to_vec()];
    for i in 1..n {
        let k = int(2 * (i as i64 - 1));
        let next: Vec<LogSeries> = rows[i - 1]
            .iter()
            .map(|f| serre_derivation_log(f, &k))
            .collect();
        rows.push(next);
    }
    let m: Vec<Vec<LogPoly>> = rows
        .iter()
        .map(|r| r.iter().map(LogPoly::from_log).collect())
        .collect();
    Ok(det(&m, &|a, b| a.mul(b), &|a, b, s| {
        a.add_scaled(b, &int(s))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_and_repeated() {
        let f = PuiseuxSeries::from_ints(int(0), 1, &[1, 2, 3, 4, 5]);
        assert_eq!(modular_wronskian(std::slice::from_ref(&f)).unwrap(), f);
        let g = PuiseuxSeries::from_ints(int(1), 1, &[1, 7, 3, 4, 5]);
        assert!(modular_wronskian(&[f.clone(), f.clone(), g])
            .unwrap()
            .is_zero());
    }
}
