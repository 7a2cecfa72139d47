//! Elements of finite compositional order.
//!
//! An element f with multiplier ω of multiplicative order n is linearized by
//! the averaged series f* = (1/n)·Σ_{j=1}^{n} ω^{n−j} f⁽ʲ⁾, which satisfies
//! f*∘f = ℓ_ω∘f*. Every other linearizing conjugator is h∘f* with h in the
//! centralizer of ℓ_ω, and the centralizer consists exactly of the series
//! supported on exponents ≡ 1 (mod n).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactfield::{FieldElement, Rational};
use crate::series::{GroupJet, Jet, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjugacyError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("series does not have finite order at this truncation")]
    NotFiniteOrder,
    #[error("no prescribed value for conjugator coefficient g{index}")]
    MissingPrescription { index: usize },
    #[error("g{index} cannot be prescribed: {index} is not 1 mod {modulus}")]
    UnexpectedPrescription { index: usize, modulus: u64 },
    #[error("prescribed g1 is zero")]
    ZeroLeadingCoefficient,
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// Why a jet was classified as having infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfiniteReason {
    /// a₁ is not a root of unity, so no iterate can have multiplier 1.
    NonTorsionMultiplier,
    /// a₁ has order m but f⁽ᵐ⁾ = z + c·z^k + … with c ≠ 0 and k ≤ N.
    /// Such an iterate has infinite order, hence so does f.
    IterateNotIdentity { multiplier_order: u64, first_nonzero: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// f⁽ⁿ⁾ ≡ id modulo z^{N+1}. This is all a jet can certify: a larger N
    /// might still reveal infinite order.
    Finite(u64),
    Infinite(InfiniteReason),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite(_) => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderResult {
    pub order: Order,
    /// Multiplicative order of a₁, if it is a root of unity.
    pub witness: Option<u64>,
}

impl OrderResult {
    pub fn finite(&self) -> Option<u64> {
        match self.order {
            Order::Finite(n) => Some(n),
            Order::Infinite(_) => None,
        }
    }
}

/// Compositional order of `f` modulo z^{N+1}.
///
/// The order of a finite-order element equals the multiplicative order of
/// its multiplier, so only that one candidate is tested.
pub fn compositional_order(f: &GroupJet) -> OrderResult {
    let witness = f
        .multiplier()
        .multiplicative_order()
        .expect("group jets have a nonzero multiplier");
    let order = match witness {
        None => Order::Infinite(InfiniteReason::NonTorsionMultiplier),
        Some(m) => {
            let it = f.iterate(m);
            match (2..=f.order()).find(|&k| !it.coeff(k).is_zero()) {
                None => Order::Finite(m),
                Some(k) => Order::Infinite(InfiniteReason::IterateNotIdentity {
                    multiplier_order: m,
                    first_nonzero: k,
                }),
            }
        }
    };
    OrderResult { order, witness }
}

fn finite_order(f: &GroupJet) -> Result<u64, ConjugacyError> {
    compositional_order(f)
        .finite()
        .ok_or(ConjugacyError::NotFiniteOrder)
}

/// The averaged conjugator f* = (1/n)·Σ_{j=1}^{n} ω^{n−j} f⁽ʲ⁾.
pub fn star(f: &GroupJet) -> Result<GroupJet, ConjugacyError> {
    let n = finite_order(f)?;
    Ok(star_with_order(f, n))
}

fn star_with_order(f: &GroupJet, n: u64) -> GroupJet {
    let ctx = f.context();
    let omega = f.multiplier();
    let mut sum = Jet::zero(ctx, f.order()).expect("order ≥ 1");
    let mut iterate = GroupJet::identity(ctx, f.order()).expect("order ≥ 1");
    for j in 1..=n {
        iterate = f.compose(&iterate).expect("same shape");
        let weight = omega.pow(n - j);
        sum = sum
            .add(&iterate.scale(&weight).expect("same field"))
            .expect("same shape");
    }
    let inv_n = Rational::new(BigInt::from(1), BigInt::from(n));
    let scaled = sum.scale(&ctx.from_rational(inv_n)).expect("same field");
    // The lead coefficient is (1/n)·Σ ω^{n−j}ω^j = 1.
    GroupJet::try_from(scaled).expect("f* has lead coefficient 1")
}

/// Returns (f*, ω) with f*∘f∘f̄* = ℓ_ω.
///
/// The intertwining identity f*∘f = ℓ_ω∘f* is checked before returning; a
/// failure is reported as [`ConjugacyError::Internal`].
pub fn linearize_finite(f: &GroupJet) -> Result<(GroupJet, FieldElement), ConjugacyError> {
    let conj = star(f)?;
    let omega = f.multiplier().clone();
    let lin = GroupJet::linear(f.context(), &omega, f.order())?;
    if conj.compose(f)? != lin.compose(&conj)? {
        return Err(ConjugacyError::Internal(
            "f*∘f differs from ℓ_ω∘f*".to_string(),
        ));
    }
    Ok((conj, omega))
}

/// Support test for the centralizer of ℓ_ω, ω of order n: every h_k with
/// k ≢ 1 (mod n) must vanish.
pub fn in_centralizer(h: &Jet, n: u64) -> bool {
    assert!(n >= 1, "centralizer period must be positive");
    (1..=h.order()).all(|k| (k as u64 - 1).is_multiple_of(n) || h.coeff(k).is_zero())
}

/// Direct test h∘ℓ_ω = ℓ_ω∘h.
pub fn commutes_with_linear(h: &GroupJet, omega: &FieldElement) -> Result<bool, SeriesError> {
    let lin = GroupJet::linear(h.context(), omega, h.order())?;
    Ok(h.compose(&lin)? == lin.compose(h)?)
}

/// All series conjugating a finite-order f to ℓ_ω: g = h∘f* with h in the
/// centralizer of period `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatorFamily {
    pub base: GroupJet,
    pub modulus: u64,
}

impl ConjugatorFamily {
    /// Whether g∘f∘ḡ = ℓ_ω, decided by g∘f̄* lying in the centralizer.
    pub fn contains(&self, g: &GroupJet) -> Result<bool, ConjugacyError> {
        let h = g.compose(&self.base.invert())?;
        Ok(in_centralizer(&h, self.modulus))
    }

    /// The member h∘f* for a centralizer element h.
    pub fn member(&self, h: &GroupJet) -> Result<GroupJet, ConjugacyError> {
        if !in_centralizer(h, self.modulus) {
            return Err(ConjugacyError::Internal(format!(
                "h is not supported on exponents 1 mod {}",
                self.modulus
            )));
        }
        Ok(h.compose(&self.base)?)
    }
}

pub fn conjugators(f: &GroupJet) -> Result<ConjugatorFamily, ConjugacyError> {
    let n = finite_order(f)?;
    Ok(ConjugatorFamily {
        base: star_with_order(f, n),
        modulus: n,
    })
}

/// The unique conjugator g (g∘f∘ḡ = ℓ_ω) whose coefficients at exponents
/// ≡ 1 (mod n) are the prescribed ones.
///
/// Solves g = h∘f* in one sweep over k. Since f* = z + b₂z² + …, the z^k
/// coefficient of h∘f* is h_k plus terms in h₁…h_{k−1}. At k ≡ 1 (mod n)
/// g_k is given and h_k is solved for; elsewhere h_k = 0 and g_k is read off.
pub fn complete_conjugator(
    f: &GroupJet,
    prescribed: &BTreeMap<usize, FieldElement>,
) -> Result<GroupJet, ConjugacyError> {
    let n = finite_order(f)?;
    let order = f.order();
    let ctx = f.context();
    for &k in prescribed.keys() {
        if k == 0 || !((k - 1) as u64).is_multiple_of(n) {
            return Err(ConjugacyError::UnexpectedPrescription { index: k, modulus: n });
        }
    }
    let base = star_with_order(f, n);
    let powers = base.powers();

    let mut h: Vec<FieldElement> = Vec::with_capacity(order);
    let mut g: Vec<FieldElement> = Vec::with_capacity(order);
    for k in 1..=order {
        // Σ_{j<k} h_j·[(f*)^j]_k
        let mut residual = ctx.zero();
        for (j, hj) in h.iter().enumerate() {
            if !hj.is_zero() {
                residual += &(hj * powers[j].coeff(k));
            }
        }
        if ((k - 1) as u64).is_multiple_of(n) {
            let gk = prescribed
                .get(&k)
                .ok_or(ConjugacyError::MissingPrescription { index: k })?;
            if gk.context().as_ref() != ctx.as_ref() {
                return Err(SeriesError::CoefficientField {
                    index: k,
                    expected: ctx.to_string(),
                    found: gk.context().to_string(),
                }
                .into());
            }
            if k == 1 && gk.is_zero() {
                return Err(ConjugacyError::ZeroLeadingCoefficient);
            }
            h.push(gk - &residual);
            g.push(gk.clone());
        } else {
            h.push(ctx.zero());
            g.push(residual);
        }
    }
    Ok(GroupJet::new(ctx, g)?)
}
