// Arithmetic in ℚ(ζ₁₂) and a look at Φ₁₀₅.

use std::error::Error;

use series_order::exactfield::{cyclotomic_polynomial, max_abs_coefficient};
use series_order::FieldContext;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let k = FieldContext::cyclotomic(12)?;
    let z = k.zeta();
    println!("{k} has degree {}", k.degree());
    for e in [1u64, 2, 3, 6, 12] {
        let p = z.pow(e);
        println!("zeta^{e:<2} = {p}  order {:?}", p.multiplicative_order()?);
    }

    let x = &(&k.one() + &z) - &z.pow(5);
    let y = x.inv()?;
    println!("(1 + z - z^5)^-1 = {y}");
    assert!((&x * &y).is_one());

    let phi = cyclotomic_polynomial(105);
    println!(
        "Phi_105 has degree {} and largest |coefficient| {}",
        phi.len() - 1,
        max_abs_coefficient(&phi)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
