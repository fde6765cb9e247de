//! Indicial roots and Frobenius solutions of (♭_s), including the logarithmic case at s = 6.
use mlde_core::mlde::{build_flat, frobenius_solve, frobenius_solve_log, indicial};
use mlde_core::rational::{fmt_rational, int, rat};
use mlde_core::Rational;

fn main() {
    let s = rat(6, 5);
    let op = build_flat(&s, 12);
    let roots = indicial(&op).unwrap().roots;
    println!("indicial roots at s=6/5: [{}]", show(&roots));
    let f = frobenius_solve(&op, &rat(-1, 10), 10).unwrap();
    println!("f_(-1/10) = [{}]", show(&f.integer_steps(4).unwrap()));

    let op6 = build_flat(&int(6), 12);
    let g = frobenius_solve_log(&op6, &rat(1, 2), 10).unwrap();
    println!(
        "log part starts at q^{}, plain part at q^{}",
        g.log_part.base_exponent(),
        g.plain.base_exponent()
    );
    assert!(op6.apply_log(&g).unwrap().is_zero());
}

fn show(v: &[Rational]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}
