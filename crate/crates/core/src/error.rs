use crate::rational::Rational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("rational power of a series whose leading coefficient is not 1")]
    NonUnitBase,
    #[error("insufficient order: need exponent {needed}, have {available}")]
    InsufficientOrder {
        needed: Rational,
        available: Rational,
    },
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("q-integral of a series with a constant term")]
    ConstantTermPresent,
    #[error("resonance at step {n}: P(alpha+{n}) = 0")]
    Resonance { n: usize },
    #[error("{0} is not an indicial root")]
    NotIndicialRoot(Rational),
    #[error("{0} is a simple non-resonant root; no logarithmic solution needed")]
    NoLogNeeded(Rational),
    #[error("logarithmic solution of depth >= 2 required at {0}")]
    LogDepthExceeded(Rational),
    #[error("indicial polynomial has non-rational roots: {0}")]
    NonRationalRoot(String),
    #[error("unknown catalog label `{0}`")]
    UnknownLabel(String),
    #[error("printed prefix mismatch at position {position}: expected {expected}, got {got}")]
    PrefixMismatch {
        position: usize,
        expected: Rational,
        got: Rational,
    },
    #[error("not annihilated: first nonzero residual at exponent {exponent}")]
    NotAnnihilated { exponent: Rational },
    #[error("s = {0} is not in the candidate list")]
    NotInCandidateList(Rational),
    #[error("unknown conformal weight {0}")]
    UnknownWeight(Rational),
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("no lattice construction for {0}")]
    CharacterConstructionUnavailable(String),
    #[error("expression cannot be evaluated: {0}")]
    Unevaluable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
