use super::PuiseuxSeries;
use crate::rational::Rational;

/// `plain + ℓ·log_part` with `D(ℓ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    pub plain: PuiseuxSeries,
    pub log_part: PuiseuxSeries,
}

impl LogSeries {
    pub fn new(plain: PuiseuxSeries, log_part: PuiseuxSeries) -> Self {
        LogSeries { plain, log_part }
    }

    /// An ordinary series viewed as a log series with zero log part.
    pub fn from_plain(plain: PuiseuxSeries) -> Self {
        let z = PuiseuxSeries::zero(plain.precision());
        LogSeries { plain, log_part: z }
    }

    pub fn precision(&self) -> Rational {
        std::cmp::min(self.plain.precision(), self.log_part.precision())
    }

    pub fn is_zero(&self) -> bool {
        self.plain.is_zero() && self.log_part.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        LogSeries::new(self.plain.add(&o.plain), self.log_part.add(&o.log_part))
    }

    pub fn sub(&self, o: &Self) -> Self {
        LogSeries::new(self.plain.sub(&o.plain), self.log_part.sub(&o.log_part))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LogSeries::new(self.plain.scale(c), self.log_part.scale(c))
    }

    /// Product with an ordinary series.
    pub fn mul_series(&self, s: &PuiseuxSeries) -> Self {
        LogSeries::new(self.plain.mul(s), self.log_part.mul(s))
    }

    /// `D(p + ℓ·l) = D(p) + l + ℓ·D(l)`.
    pub fn euler_derivative(&self) -> Self {
        LogSeries::new(
            self.plain.euler_derivative().add(&self.log_part),
            self.log_part.euler_derivative(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn derivative_product_rule() {
        let p = PuiseuxSeries::from_ints(rat(1, 2), 1, &[0, 3, 1, 0, 0]);
        let l = PuiseuxSeries::from_ints(rat(1, 2), 1, &[1, 2, 0, 5, 0]);
        let f = LogSeries::new(p.clone(), l.clone());
        let d = f.euler_derivative();
        assert_eq!(d.log_part, l.euler_derivative());
        assert_eq!(d.plain, p.euler_derivative().add(&l));
        // D²(p + ℓl) = D²p + 2Dl + ℓD²l
        let dd = d.euler_derivative();
        let expect = p
            .euler_derivative()
            .euler_derivative()
            .add(&l.euler_derivative().scale(&int(2)));
        assert_eq!(dd.plain, expect);
        assert_eq!(dd.log_part, l.euler_derivative().euler_derivative());
    }
}
