// How fast forced coefficients grow when the free ones grow fast.

use std::collections::BTreeMap;
use std::error::Error;

use num_bigint::BigInt;
use series_order::construct::{growth_report, FreeCoefficientSpec};
use series_order::{FieldContext, Rational};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = FieldContext::rational();
    let order = 12;
    // a_{2j} = ((2j)!)^j
    let free: BTreeMap<_, _> = (1..=order / 2)
        .map(|j| {
            let fact = (1..=2 * j as u64).fold(BigInt::from(1), |acc, i| acc * i);
            (2 * j, q.from_rational(Rational::from_integer(fact.pow(j as u32))))
        })
        .collect();
    let spec = FreeCoefficientSpec::new(q.from_int(-1), 2, order, free)?;
    let report = growth_report(&spec, 1000.0)?;
    for (i, r) in report.roots.iter().enumerate() {
        println!("k={:<3} |a_k|^(1/k) = {r:.4e}", i + 1);
    }
    match report.first_exceeding {
        Some(k) => println!("first k above {}: {k}", report.bound),
        None => println!("stays below {}", report.bound),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
