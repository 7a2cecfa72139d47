// Composition, inversion and iteration of truncated series.

use std::error::Error;

use series_order::{FieldContext, GroupJet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = FieldContext::rational();
    let f = GroupJet::from_ints(&q, &[2, 1, 0, 0, 0, 0])?;
    let g = GroupJet::from_ints(&q, &[1, 0, -3, 0, 0, 0])?;

    println!("f      = {f}");
    println!("g      = {g}");
    println!("f∘g    = {}", f.compose(&g)?);
    println!("g∘f    = {}", g.compose(&f)?);

    let inv = f.invert();
    println!("f^-1   = {inv}");
    assert!(f.compose(&inv)?.is_identity());

    println!("f^(3)  = {}", f.iterate(3));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
