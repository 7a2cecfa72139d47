// Series with f(-f(-z)) = z, built from tangent-to-identity series.

use std::error::Error;

use series_order::construct::{stanley_build, stanley_involution_check};
use series_order::finiteorder::compositional_order;
use series_order::{FieldContext, GroupJet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = FieldContext::rational();
    let negate = GroupJet::linear(&q, &q.from_int(-1), 6)?;
    for tail in [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [2, -1, 0, 3, 1]] {
        let mut coeffs = vec![1];
        coeffs.extend(tail);
        let g = GroupJet::from_ints(&q, &coeffs)?;
        let f = stanley_build(&g)?;
        println!("g = {g}");
        println!("f = {f}");
        println!(
            "  check {}  order of f∘(-z): {}",
            stanley_involution_check(&f),
            compositional_order(&f.compose(&negate)?).order
        );
    }
    let plain = GroupJet::from_ints(&q, &[1, 1, 0, 0, 0, 0])?;
    println!("z + z^2 passes: {}", stanley_involution_check(&plain));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
