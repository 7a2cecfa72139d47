//! Truncated formal power series with zero constant term ("jets").
//!
//! A [`Jet`] of truncation `N` stores a₁, …, a_N and represents
//! a₁z + … + a_N z^N modulo z^{N+1}. Every operation works modulo z^{N+1}
//! and rejects operands with different `N` or different fields instead of
//! silently truncating. A [`GroupJet`] additionally has a₁ ≠ 0 and is the
//! working representative of an element of the composition group.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactfield::{ring_mul_acc, FieldContext, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("truncation mismatch: N = {left} vs N = {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("truncation order must be at least 1")]
    EmptyJet,
    #[error("cannot truncate a jet of order {have} to {want}")]
    BadTruncation { have: usize, want: usize },
    #[error("linear coefficient a1 is zero, so the series is not in the group")]
    NotInvertible,
    #[error("coefficient a{index} belongs to {found}, expected {expected}")]
    CoefficientField {
        index: usize,
        expected: String,
        found: String,
    },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Jet {
    ctx: Arc<FieldContext>,
    /// coeffs[i] is the coefficient of z^{i+1}.
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet[{}; N={}]({self})", self.ctx, self.order())
    }
}

/// Renders e.g. `-1·z + -1·z^2`; zero coefficients are kept so the
/// truncation order stays visible.
impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{c}·z")?,
                _ => write!(f, "{c}·z^{}", i + 1)?,
            }
        }
        Ok(())
    }
}

impl Jet {
    /// Builds a jet from [a₁, …, a_N].
    pub fn new(ctx: &Arc<FieldContext>, coeffs: Vec<FieldElement>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::EmptyJet);
        }
        for (i, c) in coeffs.iter().enumerate() {
            if c.context().as_ref() != ctx.as_ref() {
                return Err(SeriesError::CoefficientField {
                    index: i + 1,
                    expected: ctx.to_string(),
                    found: c.context().to_string(),
                });
            }
        }
        Ok(Jet {
            ctx: Arc::clone(ctx),
            coeffs,
        })
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_ints(ctx: &Arc<FieldContext>, coeffs: &[i64]) -> Result<Self, SeriesError> {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn zero(ctx: &Arc<FieldContext>, order: usize) -> Result<Self, SeriesError> {
        Self::new(ctx, vec![ctx.zero(); order])
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of z^k for 1 ≤ k ≤ N.
    ///
    /// # Panics
    ///
    /// Panics if `k` is 0 or exceeds N.
    pub fn coeff(&self, k: usize) -> &FieldElement {
        assert!(k >= 1 && k <= self.order(), "index {k} outside 1..={}", self.order());
        &self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Replaces the coefficient of z^k.
    pub fn with_coeff(mut self, k: usize, value: FieldElement) -> Self {
        assert_eq!(value.context().as_ref(), self.ctx.as_ref());
        self.coeffs[k - 1] = value;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    fn check(&self, other: &Jet) -> Result<(), SeriesError> {
        if self.ctx != other.ctx {
            return Err(FieldError::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            }
            .into());
        }
        if self.order() != other.order() {
            return Err(SeriesError::TruncationMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Exact coefficientwise equality; errors if the jets are not comparable.
    pub fn equals(&self, other: &Jet) -> Result<bool, SeriesError> {
        self.check(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    /// Drops coefficients above z^M.
    pub fn truncate(&self, m: usize) -> Result<Jet, SeriesError> {
        if m == 0 || m > self.order() {
            return Err(SeriesError::BadTruncation {
                have: self.order(),
                want: m,
            });
        }
        Ok(Jet {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs[..m].to_vec(),
        })
    }

    pub fn add(&self, other: &Jet) -> Result<Jet, SeriesError> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet, SeriesError> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Jet, op: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Jet {
        Jet {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect(),
        }
    }

    /// Multiplication of every coefficient by a scalar.
    pub fn scale(&self, s: &FieldElement) -> Result<Jet, SeriesError> {
        if s.context().as_ref() != self.ctx.as_ref() {
            return Err(FieldError::ContextMismatch {
                left: self.ctx.to_string(),
                right: s.context().to_string(),
            }
            .into());
        }
        Ok(Jet {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        })
    }

    /// Cauchy product, truncated at z^N.
    pub fn multiply(&self, other: &Jet) -> Result<Jet, SeriesError> {
        self.check(other)?;
        let a = Scaled::new(self);
        let b = Scaled::new(other);
        let prod = a.times(&b, &self.ctx);
        Ok(prod.to_jet(&self.ctx, &(&a.den * &b.den)))
    }

    /// f∘g truncated at z^N, by Horner's scheme in g.
    ///
    /// With f = F/d_f and g = G/d_g over common denominators this evaluates
    /// Σ F_k d_g^{N−k} G^k in integers and divides by d_f d_g^N once at the
    /// end. Total cost is O(N³) ring multiplications.
    pub fn compose(&self, inner: &Jet) -> Result<Jet, SeriesError> {
        self.check(inner)?;
        let n = self.order();
        let f = Scaled::new(self);
        let g = Scaled::new(inner);
        let ctx = &self.ctx;
        // acc[e] is the coefficient of z^e, 0 ≤ e ≤ N.
        let mut acc = vec![vec![BigInt::zero(); ctx.degree()]; n + 1];
        acc[0] = f.num[n - 1].clone();
        let mut dg_pow = BigInt::one();
        for k in (1..n).rev() {
            acc = g.horner_step(&acc, ctx);
            dg_pow *= &g.den;
            for (slot, c) in acc[0].iter_mut().zip(&f.num[k - 1]) {
                *slot += c * &dg_pow;
            }
        }
        acc = g.horner_step(&acc, ctx);
        dg_pow *= &g.den;
        acc.remove(0);
        Ok(Scaled { num: acc, den: BigInt::one() }.to_jet(ctx, &(&f.den * &dg_pow)))
    }

    /// The multiplicative powers g, g², …, g^N, each truncated at z^N.
    pub fn powers(&self) -> Vec<Jet> {
        let g = Scaled::new(self);
        let mut out = Vec::with_capacity(self.order());
        out.push(self.clone());
        let mut current = g.clone();
        let mut den = g.den.clone();
        for _ in 1..self.order() {
            current = current.times(&g, &self.ctx);
            den *= &g.den;
            out.push(current.to_jet(&self.ctx, &den));
        }
        out
    }
}

/// A jet written as integer ring elements over one common denominator.
#[derive(Clone)]
struct Scaled {
    /// num[i] is the numerator of the z^{i+1} coefficient.
    num: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl Scaled {
    fn new(jet: &Jet) -> Self {
        let den = jet
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.parts().1));
        let num = jet
            .coeffs
            .iter()
            .map(|c| {
                let (num, d) = c.parts();
                if *d == den {
                    num.to_vec()
                } else {
                    let m = &den / d;
                    num.iter().map(|x| x * &m).collect()
                }
            })
            .collect();
        Scaled { num, den }
    }

    /// Numerator of the truncated product; the denominator is left to the caller.
    fn times(&self, other: &Scaled, ctx: &Arc<FieldContext>) -> Scaled {
        let n = self.num.len();
        let mut out = vec![ctx.ring_scratch(); n];
        // (z^{i+1})(z^{j+1}) = z^{i+j+2} lands in slot i+j+1.
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in other.num.iter().enumerate().take(n.saturating_sub(i + 1)) {
                ring_mul_acc(&mut out[i + j + 1], a, b);
            }
        }
        Scaled {
            num: out.into_iter().map(|p| ctx.ring_reduce(p)).collect(),
            den: BigInt::one(),
        }
    }

    /// acc·G for a polynomial `acc` with slots z⁰…z^N.
    fn horner_step(&self, acc: &[Vec<BigInt>], ctx: &Arc<FieldContext>) -> Vec<Vec<BigInt>> {
        let n = self.num.len();
        let mut next = vec![ctx.ring_scratch(); n + 1];
        for (i, a) in acc.iter().enumerate().take(n) {
            if a.iter().all(Zero::is_zero) {
                continue;
            }
            for (slot, g) in next[i + 1..].iter_mut().zip(&self.num) {
                ring_mul_acc(slot, a, g);
            }
        }
        next[0].truncate(ctx.degree());
        next.into_iter().map(|p| ctx.ring_reduce(p)).collect()
    }

    fn to_jet(&self, ctx: &Arc<FieldContext>, den: &BigInt) -> Jet {
        Jet {
            ctx: Arc::clone(ctx),
            coeffs: self
                .num
                .iter()
                .map(|c| FieldElement::from_parts(ctx, c.clone(), den.clone()))
                .collect(),
        }
    }
}

/// A jet with a₁ ≠ 0: an element of the composition group modulo z^{N+1}.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupJet(Jet);

impl fmt::Debug for GroupJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for GroupJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl TryFrom<Jet> for GroupJet {
    type Error = SeriesError;

    fn try_from(jet: Jet) -> Result<Self, SeriesError> {
        if jet.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        Ok(GroupJet(jet))
    }
}

impl std::ops::Deref for GroupJet {
    type Target = Jet;

    fn deref(&self) -> &Jet {
        &self.0
    }
}

impl GroupJet {
    pub fn new(ctx: &Arc<FieldContext>, coeffs: Vec<FieldElement>) -> Result<Self, SeriesError> {
        Jet::new(ctx, coeffs)?.try_into()
    }

    pub fn from_ints(ctx: &Arc<FieldContext>, coeffs: &[i64]) -> Result<Self, SeriesError> {
        Jet::from_ints(ctx, coeffs)?.try_into()
    }

    /// ℓ_ω(z) = ωz, truncated at N.
    pub fn linear(ctx: &Arc<FieldContext>, omega: &FieldElement, order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::EmptyJet);
        }
        let mut coeffs = vec![ctx.zero(); order];
        coeffs[0] = omega.clone();
        GroupJet::new(ctx, coeffs)
    }

    pub fn identity(ctx: &Arc<FieldContext>, order: usize) -> Result<Self, SeriesError> {
        Self::linear(ctx, &ctx.one(), order)
    }

    pub fn as_jet(&self) -> &Jet {
        &self.0
    }

    pub fn into_jet(self) -> Jet {
        self.0
    }

    /// The multiplier a₁.
    pub fn multiplier(&self) -> &FieldElement {
        &self.0.coeffs[0]
    }

    /// Group product self∘other.
    pub fn compose(&self, other: &GroupJet) -> Result<GroupJet, SeriesError> {
        // (f∘g)₁ = f₁g₁ ≠ 0.
        Ok(GroupJet(self.0.compose(&other.0)?))
    }

    /// The compositional inverse f̄, by back-substitution.
    ///
    /// Writing f̄ = Σ b_j z^j, the z^k coefficient of f̄∘f = Σ b_j f^j is
    /// b_k a₁^k plus terms in b₁…b_{k−1}; setting it to δ_{k1} determines
    /// each b_k in turn.
    pub fn invert(&self) -> GroupJet {
        let n = self.order();
        let powers = self.0.powers();
        let a1_inv = self.multiplier().inv().expect("a1 is nonzero");
        let mut b: Vec<FieldElement> = Vec::with_capacity(n);
        b.push(a1_inv.clone());
        let mut a1_inv_pow = a1_inv.clone();
        for k in 2..=n {
            a1_inv_pow = &a1_inv_pow * &a1_inv;
            let mut residual = self.ctx.zero();
            for (j, bj) in b.iter().enumerate() {
                let pk = powers[j].coeff(k);
                if !pk.is_zero() && !bj.is_zero() {
                    residual += &(bj * pk);
                }
            }
            b.push(-(&residual * &a1_inv_pow));
        }
        GroupJet(Jet {
            ctx: Arc::clone(&self.ctx),
            coeffs: b,
        })
    }

    /// f⁽ᵐ⁾, with f⁽⁰⁾ = id.
    pub fn iterate(&self, m: u64) -> GroupJet {
        let mut acc = GroupJet::identity(&self.ctx, self.order()).expect("order ≥ 1");
        for _ in 0..m {
            acc = self.compose(&acc).expect("same shape");
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.multiplier().is_one() && self.coeffs[1..].iter().all(FieldElement::is_zero)
    }

    /// True iff f⁽ᵐ⁾ ≡ id modulo z^{N+1}.
    pub fn is_identity_iterate(&self, m: u64) -> bool {
        self.iterate(m).is_identity()
    }

    /// Drops coefficients above z^M.
    pub fn truncate(&self, m: usize) -> Result<GroupJet, SeriesError> {
        Ok(GroupJet(self.0.truncate(m)?))
    }

    /// Conjugate c∘self∘c̄.
    pub fn conjugate_by(&self, c: &GroupJet) -> Result<GroupJet, SeriesError> {
        c.compose(self)?.compose(&c.invert())
    }
}
