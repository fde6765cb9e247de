use serde::{Deserialize, Serialize};

use super::{LogSeries, PuiseuxSeries};
use crate::error::{Error, Result};
use crate::rational::{denom_u64, fmt_rational, parse_rational, scaled_index, Rational};

/// Interchange shape: `{base_exponent, grid, order, coeffs, log_coeffs?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub base_exponent: String,
    pub grid: u64,
    pub order: i64,
    pub coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_coeffs: Option<Vec<String>>,
}

fn layout(s: &PuiseuxSeries, base: &Rational, grid: u64, len: usize) -> Vec<String> {
    let mut out = vec![Rational::default(); len];
    s.add_into(&mut out, base, grid, &Rational::from_integer(1.into()));
    out.iter().map(fmt_rational).collect()
}

impl From<&PuiseuxSeries> for SeriesJson {
    fn from(s: &PuiseuxSeries) -> Self {
        SeriesJson {
            base_exponent: fmt_rational(s.base_exponent()),
            grid: s.grid(),
            order: s.order(),
            coeffs: s.coeffs().iter().map(fmt_rational).collect(),
            log_coeffs: None,
        }
    }
}

impl From<&LogSeries> for SeriesJson {
    fn from(s: &LogSeries) -> Self {
        // both parts share one (base, grid, order) frame
        let prec = s.precision();
        let base = std::cmp::min(s.plain.base_exponent(), s.log_part.base_exponent()).clone();
        let base = std::cmp::min(base, prec.clone());
        let grid = s
            .plain
            .grid()
            .max(1)
            .lcm_with(s.log_part.grid())
            .lcm_with(denom_u64(&(&prec - &base)))
            .lcm_with(denom_u64(&(s.plain.base_exponent() - &base)))
            .lcm_with(denom_u64(&(s.log_part.base_exponent() - &base)));
        let len = scaled_index(&(&prec - &base), grid) as usize;
        SeriesJson {
            base_exponent: fmt_rational(&base),
            grid,
            order: len as i64 - 1,
            coeffs: layout(&s.plain, &base, grid, len),
            log_coeffs: Some(layout(&s.log_part, &base, grid, len)),
        }
    }
}

trait LcmWith {
    fn lcm_with(self, o: u64) -> u64;
}

impl LcmWith for u64 {
    fn lcm_with(self, o: u64) -> u64 {
        num_integer::Integer::lcm(&self, &o)
    }
}

impl SeriesJson {
    fn parse_coeffs(v: &[String]) -> Result<Vec<Rational>> {
        v.iter().map(|c| parse_rational(c)).collect()
    }

    fn check(&self) -> Result<()> {
        if self.grid == 0 {
            return Err(Error::Parse("grid must be positive".into()));
        }
        if self.order + 1 != self.coeffs.len() as i64 {
            return Err(Error::Parse("coeffs length must be order+1".into()));
        }
        if let Some(l) = &self.log_coeffs {
            if l.len() != self.coeffs.len() {
                return Err(Error::Parse(
                    "log_coeffs must match coeffs in length".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn to_series(&self) -> Result<PuiseuxSeries> {
        self.check()?;
        if self
            .log_coeffs
            .as_ref()
            .is_some_and(|l| l.iter().any(|c| c != "0"))
        {
            return Err(Error::Parse("series has a logarithmic part".into()));
        }
        let base = parse_rational(&self.base_exponent)?;
        Ok(PuiseuxSeries::new(
            base,
            self.grid,
            Self::parse_coeffs(&self.coeffs)?,
        ))
    }

    pub fn to_log_series(&self) -> Result<LogSeries> {
        self.check()?;
        let base = parse_rational(&self.base_exponent)?;
        let plain = PuiseuxSeries::new(base.clone(), self.grid, Self::parse_coeffs(&self.coeffs)?);
        let log = match &self.log_coeffs {
            Some(l) => PuiseuxSeries::new(base, self.grid, Self::parse_coeffs(l)?),
            None => PuiseuxSeries::zero(plain.precision()),
        };
        Ok(LogSeries::new(plain, log))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn round_trip() {
        let s = PuiseuxSeries::new(rat(-1, 10), 1, vec![int(1), int(8), rat(23, 7), int(0)]);
        let j = serde_json::to_string(&SeriesJson::from(&s)).unwrap();
        let back: SeriesJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_series().unwrap(), s);

        let l = LogSeries::new(
            PuiseuxSeries::from_ints(rat(3, 2), 1, &[-3, 1, 0]),
            PuiseuxSeries::from_ints(rat(1, 2), 1, &[1, 2, 3, 4]),
        );
        let j = SeriesJson::from(&l);
        assert_eq!(j.base_exponent, "1/2");
        assert_eq!(j.to_log_series().unwrap(), l);
    }
}
