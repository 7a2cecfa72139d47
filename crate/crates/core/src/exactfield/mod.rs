//! Exact coefficient fields: ℚ and the cyclotomic fields ℚ(ζₙ).
//!
//! A cyclotomic element is stored densely as its coordinates in the power
//! basis 1, ζ, …, ζ^{φ(n)−1}, i.e. as a polynomial reduced modulo Φₙ.
//! A [`FieldContext`] is shared behind an `Arc`.

mod cyclotomic;
mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, max_abs_coefficient, totient};
pub use rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("cyclotomic index must be at least 1")]
    InvalidIndex,
    #[error("expected {expected} coordinates for {field}, found {found}")]
    WrongDegree {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Cyclotomic,
}

/// Descriptor of a coefficient field.
///
/// For `Rational` the index is 1 and the modulus is x − 1, so the
/// representation degenerates to a single rational coordinate.
#[derive(Debug, Clone)]
pub struct FieldContext {
    kind: FieldKind,
    n: u64,
    phi: Vec<BigInt>,
    phi_q: Vec<Rational>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.n == other.n
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    pub fn rational() -> Arc<Self> {
        Arc::new(Self::build(FieldKind::Rational, 1))
    }

    pub fn cyclotomic(n: u64) -> Result<Arc<Self>, FieldError> {
        if n == 0 {
            return Err(FieldError::InvalidIndex);
        }
        Ok(Arc::new(Self::build(FieldKind::Cyclotomic, n)))
    }

    fn build(kind: FieldKind, n: u64) -> Self {
        let phi = cyclotomic_polynomial(n);
        let phi_q = phi.iter().cloned().map(Rational::from_integer).collect();
        FieldContext { kind, n, phi, phi_q }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Cyclotomic index (1 for ℚ).
    pub fn index(&self) -> u64 {
        self.n
    }

    /// Φₙ, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.phi
    }

    /// Dimension over ℚ, i.e. φ(n).
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Bound on the order of any root of unity in this field.
    ///
    /// The torsion of ℚ(ζₙ)^× is the group of lcm(2, n)-th roots of unity.
    pub fn torsion_bound(&self) -> u64 {
        cyclotomic::lcm(2, self.n)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(self),
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, value: i64) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = BigInt::from(value);
        FieldElement {
            ctx: Arc::clone(self),
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_rational(self: &Arc<Self>, value: Rational) -> FieldElement {
        let (p, q) = value.into();
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = p;
        FieldElement::from_parts(self, num, q)
    }

    /// Builds an element from power-basis coordinates.
    pub fn from_coords(self: &Arc<Self>, coords: Vec<Rational>) -> Result<FieldElement, FieldError> {
        if coords.len() != self.degree() {
            return Err(FieldError::WrongDegree {
                field: self.to_string(),
                expected: self.degree(),
                found: coords.len(),
            });
        }
        Ok(FieldElement::from_rationals(self, &coords))
    }

    /// The class of x modulo Φₙ: a primitive n-th root of unity.
    pub fn zeta(self: &Arc<Self>) -> FieldElement {
        if self.degree() == 1 {
            // Φ₁ = x − 1, Φ₂ = x + 1.
            return self.from_rational(-self.phi_q[0].clone());
        }
        let mut num = vec![BigInt::zero(); self.degree()];
        num[1] = BigInt::one();
        FieldElement {
            ctx: Arc::clone(self),
            num,
            den: BigInt::one(),
        }
    }
}

// Integer arithmetic in ℤ[x]/Φₙ, used by the series kernels to accumulate
// products without reducing fractions at every step.
impl FieldContext {
    /// A zeroed buffer long enough for an unreduced product.
    pub(crate) fn ring_scratch(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); 2 * self.degree() - 1]
    }

    /// Reduces an unreduced product modulo Φₙ.
    pub(crate) fn ring_reduce(&self, mut prod: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        // x^d ≡ −(φ₀ + φ₁x + … + φ_{d−1}x^{d−1}) since Φₙ is monic.
        for top in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[top]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in self.phi[..d].iter().enumerate() {
                if pj.is_zero() {
                    continue;
                }
                let slot = &mut prod[top - d + j];
                if pj.is_one() {
                    *slot -= &c;
                } else if (-pj).is_one() {
                    *slot += &c;
                } else {
                    *slot -= &c * pj;
                }
            }
        }
        prod.truncate(d);
        prod
    }
}

/// acc += a·b as polynomials, without reduction.
pub(crate) fn ring_mul_acc(acc: &mut [BigInt], a: &[BigInt], b: &[BigInt]) {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                acc[i + j] += x * y;
            }
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => write!(f, "rational"),
            FieldKind::Cyclotomic => write!(f, "cyclotomic:{}", self.n),
        }
    }
}

/// Builds a field context from its kind; `n` is ignored for ℚ.
pub fn make_field(kind: FieldKind, n: u64) -> Result<Arc<FieldContext>, FieldError> {
    match kind {
        FieldKind::Rational => Ok(FieldContext::rational()),
        FieldKind::Cyclotomic => FieldContext::cyclotomic(n),
    }
}

/// An exact element of ℚ or ℚ(ζₙ).
///
/// Stored as integer numerators over one positive common denominator,
/// kept in lowest terms so that equality is structural.
///
/// The arithmetic operators panic on a field mismatch; the `checked_*`
/// methods report it instead. Series code validates contexts once up front
/// and then uses the operators.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
            && self.den == other.den
            && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ctx)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.coords();
        match self.ctx.kind {
            FieldKind::Rational => f.write_str(&format_rational(&coords[0], false)),
            FieldKind::Cyclotomic => {
                f.write_str("[")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "\"{}\"", format_rational(c, true))?;
                }
                f.write_str("]")
            }
        }
    }
}

fn reduce(num: &mut [BigInt], den: &mut BigInt) {
    if den.is_one() {
        return;
    }
    let mut g = den.clone();
    for c in num.iter() {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
    }
    for c in num.iter_mut() {
        if !c.is_zero() {
            *c /= &g;
        }
    }
    *den /= &g;
}

impl FieldElement {
    pub(crate) fn from_parts(ctx: &Arc<FieldContext>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        reduce(&mut num, &mut den);
        FieldElement {
            ctx: Arc::clone(ctx),
            num,
            den,
        }
    }

    fn from_rationals(ctx: &Arc<FieldContext>, coords: &[Rational]) -> Self {
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(ctx, num, den)
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Power-basis coordinates.
    pub fn coords(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.accumulate(other, false);
        out
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.accumulate(other, true);
        out
    }

    fn accumulate(&mut self, other: &Self, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.den == other.den {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                if negate {
                    *a -= b;
                } else {
                    *a += b;
                }
            }
        } else {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                *a *= &other.den;
                let t = b * &self.den;
                if negate {
                    *a -= t;
                } else {
                    *a += t;
                }
            }
            self.den *= &other.den;
        }
        reduce(&mut self.num, &mut self.den);
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let den = if self.den.is_one() {
            other.den.clone()
        } else if other.den.is_one() {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        let mut prod = self.ctx.ring_scratch();
        ring_mul_acc(&mut prod, &self.num, &other.num);
        Self::from_parts(&self.ctx, self.ctx.ring_reduce(prod), den)
    }

    /// Numerators and the common denominator.
    pub(crate) fn parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    /// Multiplicative inverse, by extended Euclid against Φₙ.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let d = self.num.len();
        if d == 1 {
            return Ok(Self::from_parts(
                &self.ctx,
                vec![self.den.clone()],
                self.num[0].clone(),
            ));
        }
        let mut inv = cyclotomic::poly_inverse_mod(&self.coords(), &self.ctx.phi_q)
            .expect("Φₙ is irreducible, so every nonzero residue is a unit");
        inv.resize(d, Rational::zero());
        Ok(Self::from_rationals(&self.ctx, &inv))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, s: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * s.numer()).collect();
        Self::from_parts(&self.ctx, num, &self.den * s.denom())
    }

    /// Smallest m ≥ 1 with aᵐ = 1, or `None` if `self` is not a root of unity.
    pub fn multiplicative_order(&self) -> Result<Option<u64>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        let bound = self.ctx.torsion_bound();
        let mut power = self.clone();
        for m in 1..=bound {
            if power.is_one() {
                // The first hit is the order, which necessarily divides the bound.
                debug_assert_eq!(bound % m, 0);
                return Ok(Some(m));
            }
            power = power.mul_unchecked(self);
        }
        Ok(None)
    }

    /// True iff `self` has multiplicative order exactly `n`.
    pub fn is_primitive_root(&self, n: u64) -> bool {
        matches!(self.multiplicative_order(), Ok(Some(m)) if m == n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                if let Err(e) = self.check(rhs) {
                    panic!("{e}");
                }
                self.$inner(rhs)
            }
        }

        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        if let Err(e) = self.check(rhs) {
            panic!("{e}");
        }
        self.accumulate(rhs, false);
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        if let Err(e) = self.check(rhs) {
            panic!("{e}");
        }
        self.accumulate(rhs, true);
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in self.num.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}
