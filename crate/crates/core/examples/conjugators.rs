// The family of series conjugating an involution to -z, and picking one
// member by its odd coefficients.

use std::collections::BTreeMap;
use std::error::Error;

use series_order::finiteorder::{complete_conjugator, conjugators};
use series_order::{FieldContext, GroupJet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = FieldContext::rational();
    let f = GroupJet::from_ints(&q, &[-1, -1, -1, -1, -1, -1, -1])?;
    let family = conjugators(&f)?;
    println!("base conjugator: {}", family.base);

    let mut prescribed = BTreeMap::new();
    prescribed.insert(1, q.from_int(2));
    prescribed.insert(3, q.from_int(5));
    prescribed.insert(5, q.zero());
    prescribed.insert(7, q.from_int(-1));
    let g = complete_conjugator(&f, &prescribed)?;
    println!("with g1=2, g3=5, g5=0, g7=-1: {g}");

    assert!(family.contains(&g)?);
    let negate = GroupJet::linear(&q, &q.from_int(-1), 7)?;
    assert_eq!(f.conjugate_by(&g)?, negate);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
