// Orders of series and linearization of a finite-order one.

use std::error::Error;

use series_order::finiteorder::{compositional_order, linearize_finite};
use series_order::{FieldContext, GroupJet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let k = FieldContext::cyclotomic(3)?;
    let omega = k.zeta();
    let n = 10;

    // A disguised rotation: h^-1 ∘ (ωz) ∘ h.
    let h = GroupJet::from_ints(&k, &[1, 1, -2, 0, 1, 0, 0, 3, 0, 1])?;
    let lin = GroupJet::linear(&k, &omega, n)?;
    let f = h.invert().compose(&lin)?.compose(&h)?;
    println!("f = {f}");
    println!("order of f: {}", compositional_order(&f).order);

    let tweaked = f.as_jet().clone().with_coeff(2, k.one());
    let tweaked = GroupJet::try_from(tweaked)?;
    println!("order after changing a2: {}", compositional_order(&tweaked).order);

    let (s, w) = linearize_finite(&f)?;
    println!("f* = {s}");
    println!("multiplier recovered: {w}");
    assert_eq!(f.conjugate_by(&s)?, lin);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
