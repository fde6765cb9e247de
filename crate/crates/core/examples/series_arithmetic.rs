//! Truncated Puiseux series: products, rational powers, and the JSON interchange shape.
use mlde_core::forms::euler_product;
use mlde_core::rational::rat;
use mlde_core::series::SeriesJson;

fn main() {
    // η(q) = q^{1/24} ∏(1 − qⁿ)
    let eta = euler_product(12).shift(&rat(1, 24));
    let eta_2_5 = eta.pow_rational(&rat(2, 5)).unwrap();
    println!("η^(2/5) starts at q^{}", eta_2_5.base_exponent());
    let back = eta_2_5.pow_rational(&rat(5, 2)).unwrap();
    assert!(back.agrees_with(&eta));

    let json = serde_json::to_string(&SeriesJson::from(&eta)).unwrap();
    println!("{json}");
}
