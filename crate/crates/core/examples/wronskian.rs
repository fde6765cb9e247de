//! A fundamental system and its modular Wronskian.
use mlde_core::catalog::check_fundamental_system;
use mlde_core::rational::rat;

fn main() {
    let c = check_fundamental_system(&rat(-6, 5), 20).unwrap();
    println!("{}", serde_json::to_string_pretty(&c).unwrap());
}
