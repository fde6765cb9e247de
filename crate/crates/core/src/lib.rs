//! Exact q-series workbench for the one-parameter MLDE families (♯_s) and (♭_s).
//!
//! The crate is layered bottom-up:
//!
//! - [`series`]: truncated Puiseux series over ℚ plus a depth-1 logarithmic extension;
//! - [`forms`]: Eisenstein series, η, the named level-N forms, and the
//!   differential identities ([`forms::relations`]);
//! - [`expr`]: expression trees over named forms, evaluated with η-powers kept symbolic;
//! - [`mlde`]: operators, indicial analysis, Frobenius solutions (with logarithms),
//!   Serre derivations and modular Wronskians;
//! - [`classify`]: the Diophantine search for CFT-type parameters;
//! - [`catalog`]: the closed-form solutions and their verification;
//! - [`characters`]: minimal-model and lattice characters, assembled Ramond characters;
//! - [`report`]: the consolidated "reproduce everything" run.

#![allow(clippy::result_large_err)]

pub mod arith;
pub mod catalog;
pub mod characters;
pub mod classify;
pub mod error;
pub mod expr;
pub mod forms;
pub mod mlde;
pub mod rational;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{LogSeries, PuiseuxSeries};
