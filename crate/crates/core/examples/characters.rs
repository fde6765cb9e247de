//! Minimal-model and lattice characters, and the A2 Ramond-twisted character check.
use mlde_core::characters::{lattice_theta, minimal_character, verify_characters, IntegralLattice};
use mlde_core::rational::{fmt_rational, int, rat};
use mlde_core::Rational;

fn main() {
    let m = minimal_character(&rat(-1, 20), 8).unwrap();
    println!(
        "χ(-1/20) = q^{} [{}]",
        m.series.base_exponent(),
        show(&m.series.integer_steps(5).unwrap())
    );

    let l = IntegralLattice::new(vec![vec![2]], vec![int(0)]).unwrap();
    println!(
        "θ(√2ℤ) = [{}]",
        show(&lattice_theta(&l, 9).unwrap().integer_steps(9).unwrap())
    );

    let r = verify_characters("A2", 20).unwrap();
    println!(
        "A2: s={} exponents [{}] verified={}",
        r.s,
        show(&r.exponents),
        r.verified
    );
}

fn show(v: &[Rational]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}
