//! The consolidated run: relations, classification, catalog and characters in one report.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, EntryReport, LogCheck, SystemCheck};
use crate::characters::{verify_characters, CharacterReport};
use crate::classify::{classify_all, modular_list, CandidateReport, DEFAULT_DEPTHS};
use crate::error::Result;
use crate::forms::relations::{self, RelationReport};
use crate::rational::{fmt_rational, Rational};

pub const CHARACTER_CASES: [&str; 7] = ["A2", "G2", "D4", "F4", "E6", "E7", "E8"];

#[derive(Clone, Debug, Serialize)]
pub struct FormsSection {
    pub groups: BTreeMap<String, Vec<RelationReport>>,
    pub quarantined: Vec<String>,
    pub unexpected_failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifySection {
    #[serde(rename = "final")]
    pub final_set: Vec<String>,
    pub modular: Vec<String>,
    pub cases: Vec<CandidateReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogSection {
    pub entries: Vec<EntryReport>,
    /// Entries whose printed recipe fails (all must be on the documented list).
    pub quarantined: Vec<String>,
    pub unexpected_failures: Vec<String>,
    pub s6_log: LogCheck,
    pub systems: Vec<SystemCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub forms: FormsSection,
    pub classify: ClassifySection,
    pub catalog: CatalogSection,
    pub characters: BTreeMap<String, CharacterReport>,
    pub ok: bool,
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

pub fn forms_section(order: Option<usize>) -> Result<FormsSection> {
    let groups: Vec<(char, Vec<RelationReport>)> = ('a'..='g')
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|g| relations::verify_group(g, order).map(|r| (g, r)))
        .collect::<Result<_>>()?;
    let mut quarantined = Vec::new();
    let mut unexpected = Vec::new();
    for (_, reps) in &groups {
        for r in reps {
            if !r.status.is_verified() {
                if relations::QUARANTINED.contains(&r.label.as_str()) {
                    quarantined.push(r.label.clone());
                } else {
                    unexpected.push(r.label.clone());
                }
            }
        }
    }
    Ok(FormsSection {
        groups: groups
            .into_iter()
            .map(|(g, r)| (g.to_string(), r))
            .collect(),
        quarantined,
        unexpected_failures: unexpected,
    })
}

pub fn classify_section() -> Result<ClassifySection> {
    let (all, cases) = classify_all(DEFAULT_DEPTHS)?;
    Ok(ClassifySection {
        final_set: strs(&all),
        modular: strs(&modular_list(&all)),
        cases,
    })
}

pub fn catalog_section(order: Option<usize>) -> Result<CatalogSection> {
    let entries = catalog::verify_all(None, order);
    let mut quarantined = Vec::new();
    let mut unexpected = Vec::new();
    for e in &entries {
        let printed_ok =
            e.status.is_verified() && e.companion.as_ref().is_none_or(|c| c.is_verified());
        if printed_ok {
            continue;
        }
        if catalog::QUARANTINED.contains(&e.label.as_str()) {
            quarantined.push(e.label.clone());
        } else {
            unexpected.push(e.label.clone());
        }
    }
    let mut svals: Vec<Rational> = catalog::all_entries().into_iter().map(|e| e.s).collect();
    svals.sort();
    svals.dedup();
    let systems = svals
        .par_iter()
        .filter_map(|s| catalog::check_fundamental_system(s, 25).ok())
        .collect();
    Ok(CatalogSection {
        entries,
        quarantined,
        unexpected_failures: unexpected,
        s6_log: catalog::verify_s6_log(25)?,
        systems,
    })
}

pub fn characters_section(order: usize) -> Result<BTreeMap<String, CharacterReport>> {
    CHARACTER_CASES
        .iter()
        .map(|n| verify_characters(n, order).map(|r| (n.to_string(), r)))
        .collect()
}

/// Runs everything; `order` overrides the per-module defaults where one applies.
pub fn reproduce(order: Option<usize>) -> Result<Report> {
    let forms = forms_section(order)?;
    let classify = classify_section()?;
    let catalog = catalog_section(order)?;
    let characters = characters_section(25)?;
    let log_ok = catalog.s6_log.log_part_matches_f45
        && catalog.s6_log.plain_prefix_matches
        && catalog.s6_log.annihilated;
    let systems_ok = catalog
        .systems
        .iter()
        .all(|c| c.exponent_sum_is_one && c.wronskian_constant);
    let ok = forms.unexpected_failures.is_empty()
        && classify.final_set.len() == 23
        && catalog.unexpected_failures.is_empty()
        && log_ok
        && systems_ok
        && characters.values().all(|r| r.verified);
    Ok(Report {
        forms,
        classify,
        catalog,
        characters,
        ok,
    })
}
