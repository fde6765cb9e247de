//! Closed-form solutions: build one, verify one value of s, inspect a quarantined entry.
use mlde_core::catalog::{build_entry, verify_all, verify_label};
use mlde_core::rational::{fmt_rational, rat};
use mlde_core::Rational;

fn main() {
    let f = build_entry("B.f.f0", 8).unwrap();
    println!(
        "B.f.f0 = q^{} [{}]",
        f.base_exponent(),
        show(&f.integer_steps(4).unwrap())
    );
    for r in verify_all(Some(&rat(2, 5)), None) {
        println!(
            "{:<10} {}",
            r.label,
            serde_json::to_string(&r.status).unwrap()
        );
    }
    let q = verify_label("C.b.f0", Some(25)).unwrap();
    println!(
        "C.b.f0 printed ok={}, amended ok={}",
        q.status.is_verified(),
        q.effective_ok()
    );
}

fn show(v: &[Rational]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}
