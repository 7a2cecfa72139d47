// Building series of order 2 and order 4 from their free coefficients,
// with both construction algorithms.

use std::collections::BTreeMap;
use std::error::Error;

use series_order::construct::{build_existence, build_unique, FreeCoefficientSpec};
use series_order::FieldContext;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = FieldContext::rational();
    let free = BTreeMap::from([(2, q.from_int(-1)), (4, q.from_int(-1))]);
    let spec = FreeCoefficientSpec::from_sparse(q.from_int(-1), 2, 8, &free)?;
    let record = build_unique(&spec)?;
    println!("order 2: {}", record.series);
    for (k, a) in &record.forced {
        println!("  forced a{k} = {a}   P = {}", record.p_values[k]);
    }

    let k4 = FieldContext::cyclotomic(4)?;
    let free = BTreeMap::from([(2, k4.one()), (3, k4.zeta()), (7, k4.from_int(-2))]);
    let spec = FreeCoefficientSpec::from_sparse(k4.zeta(), 4, 9, &free)?;
    let a = build_unique(&spec)?;
    let helper = BTreeMap::from([(5, k4.from_int(7))]);
    let b = build_existence(&spec, &helper)?;
    println!("order 4: {}", a.series);
    println!("helper h: {}", b.helper.as_ref().expect("recorded"));
    assert_eq!(a.series, b.series);
    assert!(a.series.is_identity_iterate(4));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
