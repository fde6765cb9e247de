//! Named forms and one group of differential relations.
use mlde_core::forms::{named_form, relations, FormName};

use mlde_core::rational::fmt_rational;
use mlde_core::Rational;

fn main() {
    let psi1 = named_form(FormName::Psi1, 10);
    println!(
        "ψ1 = q^{} [{}]",
        psi1.series.base_exponent(),
        show(&psi1.series.integer_steps(5).unwrap())
    );
    for r in relations::verify_group('d', None).unwrap() {
        println!("{:<6} verified={}", r.label, r.status.is_verified());
    }
}

fn show(v: &[Rational]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}
