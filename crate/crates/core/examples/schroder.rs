// Solving h∘f = λh for a multiplier that is not a root of unity.

use std::error::Error;

use series_order::construct::schroder_linearize;
use series_order::{FieldContext, GroupJet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = FieldContext::rational();
    let f = GroupJet::from_ints(&q, &[2, 1, 0, 0, 0, 0, 0, 0])?;
    let h = schroder_linearize(&f)?;
    println!("f = {f}");
    println!("h = {h}");
    let lin = GroupJet::linear(&q, f.multiplier(), f.order())?;
    assert_eq!(h.compose(&f)?, lin.compose(&h)?);
    println!("h∘f∘h^-1 = {}", f.conjugate_by(&h)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
