use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::FieldError;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"` or `"p"`. Rejects a zero denominator.
pub fn parse_rational(text: &str) -> Result<Rational, FieldError> {
    let bad = || FieldError::Parse(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders `p/q`; with `always_denominator` false, integers render as `p`.
pub fn format_rational(r: &Rational, always_denominator: bool) -> String {
    if r.denom().is_one() && !always_denominator {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
