//! Integer polynomial tables (the shared named polynomials and the per-entry local P, Q, R, S).

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// On-disk shape: `{name, degree, variables, terms: [[coeff, [e1, e2, …]], …]}`.
/// Coefficients are decimal strings since several exceed 64 bits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialData {
    pub name: String,
    pub degree: u32,
    pub variables: Vec<String>,
    pub terms: Vec<(String, Vec<u32>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    pub name: String,
    pub variables: Vec<String>,
    pub terms: Vec<(BigInt, Vec<u32>)>,
}

impl Polynomial {
    pub fn from_data(d: &PolynomialData) -> Result<Self> {
        let mut terms = Vec::with_capacity(d.terms.len());
        for (c, e) in &d.terms {
            if e.len() != d.variables.len() {
                return Err(Error::Parse(format!(
                    "{}: exponent vector length mismatch",
                    d.name
                )));
            }
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("{}: bad coefficient {c}", d.name)))?;
            terms.push((c, e.clone()));
        }
        Ok(Polynomial {
            name: d.name.clone(),
            variables: d.variables.clone(),
            terms,
        })
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    /// `Some(d)` when every monomial has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|(_, e)| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn max_exponents(&self) -> Vec<u32> {
        (0..self.arity())
            .map(|i| self.terms.iter().map(|(_, e)| e[i]).max().unwrap_or(0))
            .collect()
    }

    /// Exact value at integer points (used by the transcription self-checks).
    pub fn eval_int(&self, x: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&k, v)| acc * v.pow(k))
            })
            .sum()
    }
}

const DATA: &str = include_str!("../../data/polynomials.json");

#[derive(Deserialize)]
struct DataFile {
    checksum: String,
    polynomials: Vec<PolynomialData>,
}

/// FNV-1a over the canonical serialization of the polynomial list.
pub fn checksum(polys: &[PolynomialData]) -> String {
    let canon = serde_json::to_string(polys).expect("serializable");
    let mut h: u64 = 0xcbf29ce484222325;
    for b in canon.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn table() -> &'static BTreeMap<String, Arc<Polynomial>> {
    static T: OnceLock<BTreeMap<String, Arc<Polynomial>>> = OnceLock::new();
    T.get_or_init(|| {
        let f: DataFile = serde_json::from_str(DATA).expect("polynomial data file parses");
        assert_eq!(
            f.checksum,
            checksum(&f.polynomials),
            "polynomial data checksum mismatch"
        );
        f.polynomials
            .iter()
            .map(|d| {
                (
                    d.name.clone(),
                    Arc::new(Polynomial::from_data(d).expect("valid polynomial")),
                )
            })
            .collect()
    })
}

/// Polynomial by its namespaced name, e.g. `"G1"`, `"F3"`, `"B.m.P"`, `"C.d.Q"`.
pub fn polynomial(name: &str) -> Result<Arc<Polynomial>> {
    table()
        .get(name)
        .cloned()
        .ok_or_else(|| Error::UnknownLabel(name.to_string()))
}

pub fn polynomial_names() -> Vec<String> {
    table().keys().cloned().collect()
}

pub fn raw_data() -> Vec<PolynomialData> {
    let f: DataFile = serde_json::from_str(DATA).expect("polynomial data file parses");
    f.polynomials
}
