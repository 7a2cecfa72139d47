// Normal forms for series whose multiplier is a root of unity.

use std::error::Error;

use series_order::construct::normal_form;
use series_order::{FieldContext, GroupJet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let k = FieldContext::cyclotomic(3)?;
    let coeffs = vec![k.zeta(), k.one(), k.from_int(2), k.zero(), k.from_int(-1), k.one(), k.zero()];
    let f = GroupJet::new(&k, coeffs)?;
    let (g, c) = normal_form(&f)?;
    println!("f = {f}");
    println!("g = {g}");
    println!("c = {c}");
    assert_eq!(f.conjugate_by(&c)?, g);

    // An involution normalizes all the way down to -z.
    let q = FieldContext::rational();
    let inv = GroupJet::from_ints(&q, &[-1, -1, -1, -1, -1])?;
    let (g, _) = normal_form(&inv)?;
    println!("normal form of -z/(1-z): {g}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
