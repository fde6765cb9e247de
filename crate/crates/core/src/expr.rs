//! Expression trees over named forms.
//!
//! Evaluation keeps powers of η symbolic (`η^r · S`) so that the fractional
//! exponent of `ψ_i = η^{2/5}·R_i` never enters the heavy polynomial products:
//! the `R_i` have integer coefficients, and η-powers are only expanded when a
//! sum, substitution or integral forces it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops;
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use crate::catalog::poly::Polynomial;
use crate::error::{Error, Result};
use crate::forms::{euler_product, form_series, rr_factor, FormName};
use crate::rational::{ceil_i64, int, is_integer, rat, Rational};
use crate::series::PuiseuxSeries;

#[derive(Clone, Debug)]
pub enum Expr {
    Form(FormName),
    Const(Rational),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, Rational),
    Div(Box<Expr>, Box<Expr>),
    /// `f(q^m)`.
    Subst(Box<Expr>, u64),
    /// `D f`.
    Deriv(Box<Expr>),
    /// `∫_0^q f dq/q`.
    Integral(Box<Expr>),
    Poly(Arc<Polynomial>, Vec<Expr>),
    /// A term printed in a form that cannot be evaluated as written.
    Misprint(String),
}

pub fn form(n: FormName) -> Expr {
    Expr::Form(n)
}
pub fn psi1() -> Expr {
    Expr::Form(FormName::Psi1)
}
pub fn psi2() -> Expr {
    Expr::Form(FormName::Psi2)
}
pub fn eta() -> Expr {
    Expr::Form(FormName::Eta)
}
pub fn c(n: i64) -> Expr {
    Expr::Const(int(n))
}
pub fn cq(n: i64, d: i64) -> Expr {
    Expr::Const(rat(n, d))
}
pub fn cr(r: Rational) -> Expr {
    Expr::Const(r)
}
/// `η^{n/d}`.
pub fn eta_pow(n: i64, d: i64) -> Expr {
    eta().pow(rat(n, d))
}
pub fn poly(p: Arc<Polynomial>, args: Vec<Expr>) -> Expr {
    assert_eq!(
        p.arity(),
        args.len(),
        "{}: wrong number of arguments",
        p.name
    );
    Expr::Poly(p, args)
}

impl Expr {
    pub fn pow(self, r: Rational) -> Expr {
        Expr::Pow(Box::new(self), r)
    }
    pub fn powi(self, k: i64) -> Expr {
        self.pow(int(k))
    }
    pub fn at(self, m: u64) -> Expr {
        Expr::Subst(Box::new(self), m)
    }
    pub fn d(self) -> Expr {
        Expr::Deriv(Box::new(self))
    }
    pub fn integral(self) -> Expr {
        Expr::Integral(Box::new(self))
    }

    /// Weight, when the expression is (quasi)modular of a single weight.
    pub fn weight(&self) -> Option<Rational> {
        match self {
            Expr::Form(n) => Some(n.weight_level().0),
            Expr::Const(_) => Some(Rational::zero()),
            Expr::Add(v) => {
                let mut w = None;
                for e in v {
                    let x = e.weight()?;
                    match &w {
                        None => w = Some(x),
                        Some(y) if *y == x => {}
                        _ => return None,
                    }
                }
                w
            }
            Expr::Mul(v) => v.iter().map(|e| e.weight()).sum(),
            Expr::Pow(e, r) => Some(e.weight()? * r),
            Expr::Div(a, b) => Some(a.weight()? - b.weight()?),
            Expr::Subst(e, _) => e.weight(),
            Expr::Deriv(e) => Some(e.weight()? + int(2)),
            Expr::Integral(e) => Some(e.weight()? - int(2)),
            Expr::Poly(p, args) => {
                let ws: Option<Vec<Rational>> = args.iter().map(|a| a.weight()).collect();
                let ws = ws?;
                let mut w = None;
                for (_, ex) in &p.terms {
                    let x: Rational = ex.iter().zip(&ws).map(|(&k, w)| w * int(k as i64)).sum();
                    match &w {
                        None => w = Some(x),
                        Some(y) if *y == x => {}
                        _ => return None,
                    }
                }
                w
            }
            Expr::Misprint(_) => None,
        }
    }

    fn has_e2(&self) -> Result<bool> {
        Ok(self.e2_part()?.is_some())
    }

    /// `A` in the depth-1 decomposition `self = A·E2 + B` with `A`, `B` free of E2.
    ///
    /// `D(m) = ϑ_k(m) + (k/12)·E2·m` for `m` modular of weight `k` supplies the E2 terms.
    pub fn e2_part(&self) -> Result<Option<Expr>> {
        let unsupported = |why: &str| {
            Err(Error::Unevaluable(format!(
                "no depth-1 decomposition: {why}"
            )))
        };
        match self {
            Expr::Form(FormName::E2) => Ok(Some(c(1))),
            Expr::Form(_) | Expr::Const(_) => Ok(None),
            Expr::Add(v) => {
                let mut parts = Vec::new();
                for e in v {
                    if let Some(p) = e.e2_part()? {
                        parts.push(p);
                    }
                }
                Ok(match parts.len() {
                    0 => None,
                    1 => parts.pop(),
                    _ => Some(Expr::Add(parts)),
                })
            }
            Expr::Mul(v) => {
                let mut found = None;
                for (i, e) in v.iter().enumerate() {
                    if let Some(p) = e.e2_part()? {
                        if found.is_some() {
                            return unsupported("product of two quasimodular factors");
                        }
                        found = Some((i, p));
                    }
                }
                Ok(found.map(|(i, p)| {
                    let mut f: Vec<Expr> = v.clone();
                    f[i] = p;
                    Expr::Mul(f)
                }))
            }
            Expr::Div(a, b) => {
                if b.has_e2()? {
                    return unsupported("quasimodular denominator");
                }
                Ok(a.e2_part()?.map(|p| p / (**b).clone()))
            }
            Expr::Pow(e, r) => match e.e2_part()? {
                None => Ok(None),
                Some(p) if r.is_one() => Ok(Some(p)),
                Some(_) => unsupported("power of a quasimodular form"),
            },
            Expr::Subst(e, _) => {
                if e.has_e2()? {
                    return unsupported("E2(q^m)");
                }
                Ok(None)
            }
            Expr::Deriv(e) => {
                if e.has_e2()? {
                    return unsupported("derivative of a quasimodular form");
                }
                if contains_subst(e) {
                    return unsupported("derivative of a rescaled form");
                }
                let k = e.weight().ok_or_else(|| {
                    Error::Unevaluable("derivative of a mixed-weight expression".into())
                })?;
                Ok(Some(cr(k / int(12)) * (**e).clone()))
            }
            Expr::Integral(_) => unsupported("q-integral"),
            Expr::Poly(_, args) => {
                for a in args {
                    if a.has_e2()? {
                        return unsupported("quasimodular polynomial argument");
                    }
                }
                Ok(None)
            }
            Expr::Misprint(s) => Err(Error::Unevaluable(s.clone())),
        }
    }
}

fn contains_subst(e: &Expr) -> bool {
    match e {
        Expr::Subst(..) => true,
        Expr::Form(_) | Expr::Const(_) | Expr::Misprint(_) => false,
        Expr::Add(v) | Expr::Mul(v) => v.iter().any(contains_subst),
        Expr::Poly(_, v) => v.iter().any(contains_subst),
        Expr::Pow(a, _) | Expr::Deriv(a) | Expr::Integral(a) => contains_subst(a),
        Expr::Div(a, b) => contains_subst(a) || contains_subst(b),
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        match self {
            Expr::Add(mut v) => {
                v.push(o);
                Expr::Add(v)
            }
            s => Expr::Add(vec![s, o]),
        }
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        self + (-o)
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Const(r) => Expr::Const(-r),
            e => Expr::Mul(vec![c(-1), e]),
        }
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        match self {
            Expr::Mul(mut v) => {
                v.push(o);
                Expr::Mul(v)
            }
            s => Expr::Mul(vec![s, o]),
        }
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, o: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(o))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Form(n) => write!(f, "{n}"),
            Expr::Const(r) => write!(f, "{r}"),
            Expr::Add(v) => {
                write!(f, "(")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Expr::Mul(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, "·")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            Expr::Pow(e, r) => write!(f, "{e}^({r})"),
            Expr::Div(a, b) => write!(f, "{a}/({b})"),
            Expr::Subst(e, m) => write!(f, "[{e}](q^{m})"),
            Expr::Deriv(e) => write!(f, "D[{e}]"),
            Expr::Integral(e) => write!(f, "∫[{e}]dq/q"),
            Expr::Poly(p, args) => {
                write!(f, "{}(", p.name)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Misprint(s) => write!(f, "<{s}>"),
        }
    }
}

/// `η^eta · s`, or an exact constant.
#[derive(Clone, Debug)]
enum Value {
    Const(Rational),
    Series { eta: Rational, s: PuiseuxSeries },
}

/// `η^r` with the same relative precision as `like`, as a plain series.
fn eta_power_series(r: &Rational, rel: &Rational) -> PuiseuxSeries {
    let n = ceil_i64(rel).max(1) as usize;
    let unit = if is_integer(r) {
        euler_product(n)
            .pow_int(r.to_integer().to_i64().unwrap())
            .expect("unit series")
    } else {
        euler_product(n).pow_rational(r).expect("unit series")
    };
    unit.shift(&(r / int(24)))
}

impl Value {
    fn materialize(self) -> PuiseuxSeries {
        match self {
            Value::Const(_) => unreachable!("constants are materialized against a precision"),
            Value::Series { eta, s } => {
                if eta.is_zero() {
                    s
                } else {
                    s.mul(&eta_power_series(&eta, &s.relative_precision()))
                }
            }
        }
    }
}

struct Evaluator {
    order: usize,
}

fn add_values(vals: Vec<Value>) -> Value {
    let mut konst = Rational::zero();
    let mut groups: BTreeMap<Rational, Vec<PuiseuxSeries>> = BTreeMap::new();
    for v in vals {
        match v {
            Value::Const(c) => konst += c,
            Value::Series { eta, s } => groups.entry(eta).or_default().push(s),
        }
    }
    if groups.is_empty() {
        return Value::Const(konst);
    }
    let sum = |v: &[PuiseuxSeries]| {
        let terms: Vec<(&PuiseuxSeries, Rational)> =
            v.iter().map(|s| (s, Rational::one())).collect();
        PuiseuxSeries::linear_combination(&terms)
    };
    if groups.len() == 1 && (konst.is_zero() || groups.keys().next().unwrap().is_zero()) {
        let (eta, v) = groups.into_iter().next().unwrap();
        let mut s = sum(&v);
        if !konst.is_zero() {
            s = s.add(&PuiseuxSeries::monomial(
                konst,
                Rational::zero(),
                s.precision().max(int(1)),
            ));
        }
        return Value::Series { eta, s };
    }
    let mut parts: Vec<PuiseuxSeries> = groups
        .into_iter()
        .map(|(eta, v)| Value::Series { eta, s: sum(&v) }.materialize())
        .collect();
    if !konst.is_zero() {
        let p = parts
            .iter()
            .map(|s| s.precision())
            .max()
            .unwrap()
            .max(int(1));
        parts.push(PuiseuxSeries::monomial(konst, Rational::zero(), p));
    }
    Value::Series {
        eta: Rational::zero(),
        s: sum(&parts),
    }
}

fn mul_values(a: Value, b: Value) -> Value {
    match (a, b) {
        (Value::Const(x), Value::Const(y)) => Value::Const(x * y),
        (Value::Const(x), Value::Series { eta, s })
        | (Value::Series { eta, s }, Value::Const(x)) => Value::Series {
            eta,
            s: s.scale(&x),
        },
        (Value::Series { eta: e1, s: s1 }, Value::Series { eta: e2, s: s2 }) => Value::Series {
            eta: e1 + e2,
            s: s1.mul(&s2),
        },
    }
}

fn pow_value(v: Value, r: &Rational) -> Result<Value> {
    match v {
        Value::Const(x) => {
            if is_integer(r) {
                let k = r.to_integer().to_i64().unwrap();
                Ok(Value::Const(if k >= 0 {
                    num_traits::pow(x, k as usize)
                } else {
                    num_traits::pow(x.recip(), (-k) as usize)
                }))
            } else if x.is_one() {
                Ok(Value::Const(x))
            } else {
                Err(Error::NonUnitBase)
            }
        }
        Value::Series { eta, s } => {
            let s = if is_integer(r) {
                s.pow_int(r.to_integer().to_i64().unwrap())?
            } else {
                s.pow_rational(r)?
            };
            Ok(Value::Series { eta: eta * r, s })
        }
    }
}

impl Evaluator {
    fn eval(&self, e: &Expr) -> Result<Value> {
        let n = self.order;
        Ok(match e {
            Expr::Form(FormName::Eta) => Value::Series {
                eta: int(1),
                s: PuiseuxSeries::one(n),
            },
            Expr::Form(FormName::Psi1) => Value::Series {
                eta: rat(2, 5),
                s: rr_factor(1, n),
            },
            Expr::Form(FormName::Psi2) => Value::Series {
                eta: rat(2, 5),
                s: rr_factor(2, n),
            },
            Expr::Form(f) => Value::Series {
                eta: Rational::zero(),
                s: form_series(*f, n),
            },
            Expr::Const(r) => Value::Const(r.clone()),
            Expr::Add(v) => add_values(v.iter().map(|x| self.eval(x)).collect::<Result<_>>()?),
            Expr::Mul(v) => {
                let mut acc = Value::Const(Rational::one());
                for x in v {
                    acc = mul_values(acc, self.eval(x)?);
                }
                acc
            }
            Expr::Pow(x, r) => pow_value(self.eval(x)?, r)?,
            Expr::Div(a, b) => {
                let bv = match self.eval(b)? {
                    Value::Const(x) if x.is_zero() => return Err(Error::ZeroLeadingCoefficient),
                    Value::Const(x) => Value::Const(x.recip()),
                    Value::Series { eta, s } => Value::Series {
                        eta: -eta,
                        s: s.invert()?,
                    },
                };
                mul_values(self.eval(a)?, bv)
            }
            Expr::Subst(x, m) => {
                let inner = Evaluator {
                    order: n / *m as usize + 1,
                };
                match inner.eval(x)? {
                    Value::Const(k) => Value::Const(k),
                    v => Value::Series {
                        eta: Rational::zero(),
                        s: v.materialize().substitute_power(*m),
                    },
                }
            }
            Expr::Deriv(x) => match self.eval(x)? {
                Value::Const(_) => Value::Const(Rational::zero()),
                Value::Series { eta, s } => {
                    let mut d = s.euler_derivative();
                    if !eta.is_zero() {
                        let steps = ceil_i64(&s.relative_precision()).max(0) as usize + 1;
                        let e2 = form_series(FormName::E2, steps);
                        d = d.add(&e2.mul(&s).scale(&(&eta / int(24))));
                    }
                    Value::Series { eta, s: d }
                }
            },
            Expr::Integral(x) => match self.eval(x)? {
                Value::Const(k) if k.is_zero() => Value::Const(k),
                Value::Const(_) => return Err(Error::ConstantTermPresent),
                v => Value::Series {
                    eta: Rational::zero(),
                    s: v.materialize().integrate_q()?,
                },
            },
            Expr::Poly(p, args) => self.eval_poly(p, args)?,
            Expr::Misprint(s) => return Err(Error::Unevaluable(s.clone())),
        })
    }

    fn eval_poly(&self, p: &Polynomial, args: &[Expr]) -> Result<Value> {
        let vals: Vec<Value> = args.iter().map(|a| self.eval(a)).collect::<Result<_>>()?;
        let maxe = p.max_exponents();
        // powers[i][k] = vals[i]^k, built by repeated multiplication
        let mut powers: Vec<Vec<Value>> = Vec::with_capacity(vals.len());
        for (v, &m) in vals.iter().zip(&maxe) {
            let mut row = vec![Value::Const(Rational::one())];
            for k in 1..=m as usize {
                let next = mul_values(row[k - 1].clone(), v.clone());
                row.push(next);
            }
            powers.push(row);
        }
        let mut terms = Vec::with_capacity(p.terms.len());
        for (coef, ex) in &p.terms {
            let mut acc = Value::Const(Rational::from_integer(coef.clone()));
            for (i, &k) in ex.iter().enumerate() {
                if k > 0 {
                    acc = mul_values(acc, powers[i][k as usize].clone());
                }
            }
            terms.push(acc);
        }
        Ok(add_values(terms))
    }
}

/// Evaluates with every named form expanded `order` steps past its leading exponent.
pub fn evaluate(e: &Expr, order: usize) -> Result<PuiseuxSeries> {
    match (Evaluator { order }).eval(e)? {
        Value::Const(k) => Ok(PuiseuxSeries::constant(k, order)),
        v => Ok(v.materialize()),
    }
}

/// Evaluates until the result is known strictly below `q^upto`, raising the input order as needed.
pub fn evaluate_to(e: &Expr, upto: &Rational) -> Result<PuiseuxSeries> {
    let mut order = ceil_i64(upto).max(1) as usize + 2;
    for _ in 0..8 {
        let s = evaluate(e, order)?;
        let p = s.precision();
        if p >= *upto {
            return Ok(s.truncate(upto));
        }
        let deficit = ceil_i64(&(upto - &p)).max(1) as usize;
        order += deficit + 2;
    }
    let s = evaluate(e, order)?;
    Err(Error::InsufficientOrder {
        needed: upto.clone(),
        available: s.precision(),
    })
}

/// Evaluates to `order` whole steps past the result's own leading exponent.
pub fn evaluate_relative(e: &Expr, order: usize) -> Result<PuiseuxSeries> {
    // a first pass finds the leading exponent; cancellations can push it up
    let probe = evaluate(e, order.max(8))?;
    let lead = if probe.is_zero() {
        probe.precision()
    } else {
        probe.base_exponent().clone()
    };
    let upto = lead + int(order as i64 + 1);
    evaluate_to(e, &upto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::named_form;

    #[test]
    fn eta_factoring_matches_direct_series() {
        let direct = named_form(FormName::Psi1, 20).series;
        let via = evaluate(&psi1(), 20).unwrap();
        assert!(direct.agrees_with(&via));
        // 24·D(η) = E2·η
        let lhs = evaluate(&(c(24) * eta().d()), 30).unwrap();
        let rhs = evaluate(&(form(FormName::E2) * eta()), 30).unwrap();
        assert!(lhs.agrees_with(&rhs));
        assert!(lhs.precision() >= int(30));
    }

    #[test]
    fn mixed_eta_powers_add() {
        let e = eta_pow(2, 5) + c(1);
        let s = evaluate(&e, 10).unwrap();
        assert_eq!(s.coeff(&int(0)).unwrap(), int(1));
        assert_eq!(s.coeff(&rat(1, 60)).unwrap(), int(1));
    }

    #[test]
    fn e2_decomposition() {
        let f = cq(5, 1) * psi2().d() / eta_pow(12, 5);
        let a = f.e2_part().unwrap().unwrap();
        assert_eq!(a.weight(), Some(int(-1)));
        assert_eq!(f.weight(), Some(int(1)));
        // A = (1/60)·5ψ2/η^{12/5} = ψ2/(12η^{12/5})
        let lhs = evaluate(&a, 20).unwrap();
        let rhs = evaluate(&(cq(1, 12) * psi2() / eta_pow(12, 5)), 20).unwrap();
        assert!(lhs.agrees_with(&rhs));
        assert!((psi1().d() * psi2().d()).e2_part().is_err());
    }

    #[test]
    fn relative_evaluation_handles_cancellation() {
        // (1 + q) − 1 vanishes at q^0
        let e = Expr::Add(vec![form(FormName::Theta), c(-1)]);
        let s = evaluate_relative(&e, 10).unwrap();
        assert_eq!(s.base_exponent(), &int(1));
        assert!(s.precision() >= int(12));
    }
}
