//! The Diophantine search for parameters with a CFT-type solution.
use mlde_core::classify::{classify_all, DEFAULT_DEPTHS};
use mlde_core::rational::fmt_rational;

fn main() {
    let (all, reports) = classify_all(DEFAULT_DEPTHS).unwrap();
    for r in &reports {
        println!(
            "case {}: {} raw candidates, {} survive",
            r.case_id,
            r.raw.len(),
            r.final_set.len()
        );
    }
    println!(
        "{} values: {}",
        all.len(),
        all.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
    );
}
