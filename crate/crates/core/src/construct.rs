//! Construction of series of prescribed finite order, and conjugation of
//! series whose multiplier is not enough to linearize them.
//!
//! Given a primitive n-th root ω and arbitrary coefficients a_k at every
//! k ≢ 1 (mod n), there is exactly one choice of the remaining a_{nj+1}
//! making f = ωz + Σ a_k z^k of order n. Two independent algorithms build
//! it: [`build_unique`] solves f⁽ⁿ⁾_k = 0 for a_k directly, and
//! [`build_existence`] constructs a conjugating helper h alongside f so that
//! h∘f = ℓ_ω∘h. Their agreement is the uniqueness statement made executable.
//!
//! Neither algorithm expands the polynomial dependence of f⁽ⁿ⁾_k on the
//! lower coefficients. f⁽ⁿ⁾_k is affine in a_k, so it is evaluated with the
//! unknown set to zero and the unknown is then solved for.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exactfield::{FieldContext, FieldElement, FieldError, FieldKind, Rational};
use crate::series::{GroupJet, Jet, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("omega is not a primitive root of unity of order {n}")]
    NotPrimitive { n: u64 },
    #[error("missing free coefficient a{index}")]
    MissingFree { index: usize },
    #[error("a{index} is not a free index (k = 1 mod {n} or out of range)")]
    UnexpectedFree { index: usize, n: u64 },
    #[error("a{index} is not a forced index for order {n}")]
    NotForcedIndex { index: usize, n: u64 },
    #[error("prefix has {have} coefficients, need at least {need}")]
    PrefixTooShort { have: usize, need: usize },
    #[error("h{index} is not a free helper index for order {n}")]
    UnexpectedHelperIndex { index: usize, n: u64 },
    #[error("multiplier is a root of unity; use the finite-order or normal-form routines")]
    TorsionMultiplier,
    #[error("multiplier is not a root of unity")]
    NonTorsionMultiplier,
    #[error("conjugator must have lead coefficient 1")]
    LeadNotOne,
    #[error("growth report needs a rational field, omega = -1 and n = 2")]
    NotRationalInvolution,
    #[error("internal check failed: {0}")]
    Internal(String),
}

fn is_forced(k: usize, n: u64) -> bool {
    k > 1 && (k as u64 - 1).is_multiple_of(n)
}

/// The free data of an order-n construction: ω and every a_k with
/// 2 ≤ k ≤ N, k ≢ 1 (mod n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeCoefficientSpec {
    n: u64,
    omega: FieldElement,
    order: usize,
    free: BTreeMap<usize, FieldElement>,
}

impl FreeCoefficientSpec {
    /// Validates that ω is primitive of order n and that `free` covers
    /// exactly the free indices up to `order`.
    pub fn new(
        omega: FieldElement,
        n: u64,
        order: usize,
        free: BTreeMap<usize, FieldElement>,
    ) -> Result<Self, ConstructError> {
        if order == 0 {
            return Err(SeriesError::EmptyJet.into());
        }
        if !omega.is_primitive_root(n) {
            return Err(ConstructError::NotPrimitive { n });
        }
        for (&k, v) in &free {
            if k < 2 || k > order || is_forced(k, n) {
                return Err(ConstructError::UnexpectedFree { index: k, n });
            }
            if v.context().as_ref() != omega.context().as_ref() {
                return Err(SeriesError::CoefficientField {
                    index: k,
                    expected: omega.context().to_string(),
                    found: v.context().to_string(),
                }
                .into());
            }
        }
        if let Some(k) = (2..=order).find(|&k| !is_forced(k, n) && !free.contains_key(&k)) {
            return Err(ConstructError::MissingFree { index: k });
        }
        Ok(FreeCoefficientSpec { n, omega, order, free })
    }

    /// Like [`new`](Self::new) but free indices absent from `sparse` are 0.
    pub fn from_sparse(
        omega: FieldElement,
        n: u64,
        order: usize,
        sparse: &BTreeMap<usize, FieldElement>,
    ) -> Result<Self, ConstructError> {
        let ctx = Arc::clone(omega.context());
        let mut free = sparse.clone();
        for k in (2..=order).filter(|&k| !is_forced(k, n)) {
            free.entry(k).or_insert_with(|| ctx.zero());
        }
        Self::new(omega, n, order, free)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn omega(&self) -> &FieldElement {
        &self.omega
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn free(&self) -> &BTreeMap<usize, FieldElement> {
        &self.free
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.omega.context()
    }
}

/// Output of an order-n construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRecord {
    pub series: GroupJet,
    /// a_k at the forced indices k ≡ 1 (mod n), k > 1.
    pub forced: BTreeMap<usize, FieldElement>,
    /// P⁽ⁿ⁾_k: the z^k coefficient of f⁽ⁿ⁾ with a_k set to zero. Always
    /// forced[k] = −(ω/n)·p_values[k].
    pub p_values: BTreeMap<usize, FieldElement>,
    /// The conjugating helper h (h∘f = ℓ_ω∘h) when built by
    /// [`build_existence`].
    pub helper: Option<GroupJet>,
}

/// Solves for the forced coefficient a_k at k ≡ 1 (mod n).
///
/// `prefix` supplies a₁ = ω, a₂, …, a_{k−1}; anything at index ≥ k is
/// ignored. Returns (a_k, P⁽ⁿ⁾_k) where P⁽ⁿ⁾_k is the z^k coefficient of
/// f⁽ⁿ⁾ computed with a_k = 0. At such k the slope of f⁽ⁿ⁾_k in a_k is
/// n·ω^{n−1}, so f⁽ⁿ⁾_k = 0 gives a_k = −(ω/n)·P⁽ⁿ⁾_k.
pub fn forced_coefficient(
    prefix: &GroupJet,
    k: usize,
    n: u64,
) -> Result<(FieldElement, FieldElement), ConstructError> {
    if !is_forced(k, n) {
        return Err(ConstructError::NotForcedIndex { index: k, n });
    }
    let omega = prefix.multiplier();
    if !omega.is_primitive_root(n) {
        return Err(ConstructError::NotPrimitive { n });
    }
    if prefix.order() < k - 1 {
        return Err(ConstructError::PrefixTooShort {
            have: prefix.order(),
            need: k - 1,
        });
    }
    let ctx = prefix.context();
    let mut coeffs = prefix.coeffs()[..k - 1].to_vec();
    coeffs.push(ctx.zero());
    let trial = GroupJet::new(ctx, coeffs)?;
    let p_value = trial.iterate(n).coeff(k).clone();
    let a_k = -(&(omega * &p_value) * &inv_int(ctx, n));
    Ok((a_k, p_value))
}

fn inv_int(ctx: &Arc<FieldContext>, n: u64) -> FieldElement {
    ctx.from_rational(Rational::new(BigInt::from(1), BigInt::from(n)))
}

/// Builds the unique order-n series by solving f⁽ⁿ⁾_k = 0 at each forced k.
pub fn build_unique(spec: &FreeCoefficientSpec) -> Result<ConstructionRecord, ConstructError> {
    let ctx = spec.context();
    let n = spec.n;
    let mut coeffs = vec![spec.omega.clone()];
    let mut forced = BTreeMap::new();
    let mut p_values = BTreeMap::new();
    for k in 2..=spec.order {
        if is_forced(k, n) {
            let prefix = GroupJet::new(ctx, coeffs.clone())?;
            let (a_k, p) = forced_coefficient(&prefix, k, n)?;
            forced.insert(k, a_k.clone());
            p_values.insert(k, p);
            coeffs.push(a_k);
        } else {
            coeffs.push(spec.free[&k].clone());
        }
    }
    let series = GroupJet::new(ctx, coeffs)?;
    if !series.is_identity_iterate(n) {
        return Err(ConstructError::Internal(format!(
            "constructed series does not have order {n}"
        )));
    }
    Ok(ConstructionRecord {
        series,
        forced,
        p_values,
        helper: None,
    })
}

/// z^k coefficient of outer∘inner, using only coefficients up to k.
fn composed_coeff(outer: &[FieldElement], inner: &[FieldElement], k: usize) -> FieldElement {
    let ctx = outer[0].context();
    let o = Jet::new(ctx, outer[..k].to_vec()).expect("valid jet");
    let i = Jet::new(ctx, inner[..k].to_vec()).expect("valid jet");
    o.compose(&i).expect("same shape").coeff(k).clone()
}

/// Builds the order-n series as a conjugate h̄∘ℓ_ω∘h, constructing h and f
/// together so that h∘f = ℓ_ω∘h.
///
/// Comparing z^k coefficients gives a_k + Q_k + ω^k h_k = ω h_k, where Q_k
/// collects every term free of a_k and h_k. At k ≢ 1 (mod n) a_k is given
/// and h_k = (a_k + Q_k)/(ω − ω^k). At k ≡ 1 (mod n) the h_k terms cancel,
/// so a_k = −Q_k is forced while h_k is arbitrary: it is taken from
/// `free_h`, defaulting to 0.
///
/// The recorded `p_values` are (n/ω)·Q_k = −(n/ω)·a_k, which equals the
/// P⁽ⁿ⁾_k of [`build_unique`] because the series is unique.
pub fn build_existence(
    spec: &FreeCoefficientSpec,
    free_h: &BTreeMap<usize, FieldElement>,
) -> Result<ConstructionRecord, ConstructError> {
    let ctx = spec.context();
    let n = spec.n;
    let omega = &spec.omega;
    for (&k, v) in free_h {
        if !is_forced(k, n) || k > spec.order {
            return Err(ConstructError::UnexpectedHelperIndex { index: k, n });
        }
        if v.context().as_ref() != ctx.as_ref() {
            return Err(SeriesError::CoefficientField {
                index: k,
                expected: ctx.to_string(),
                found: v.context().to_string(),
            }
            .into());
        }
    }
    let n_over_omega = &ctx.from_int(n as i64) * &omega.inv()?;

    let mut h = vec![ctx.one()];
    let mut a = vec![omega.clone()];
    let mut forced = BTreeMap::new();
    let mut p_values = BTreeMap::new();
    for k in 2..=spec.order {
        h.push(ctx.zero());
        a.push(ctx.zero());
        let q_k = composed_coeff(&h, &a, k);
        if is_forced(k, n) {
            let a_k = -&q_k;
            p_values.insert(k, &n_over_omega * &q_k);
            forced.insert(k, a_k.clone());
            a[k - 1] = a_k;
            h[k - 1] = free_h.get(&k).cloned().unwrap_or_else(|| ctx.zero());
        } else {
            let a_k = spec.free[&k].clone();
            let denom = omega - &omega.pow(k as u64);
            h[k - 1] = (&a_k + &q_k).checked_div(&denom)?;
            a[k - 1] = a_k;
        }
    }
    let series = GroupJet::new(ctx, a)?;
    let helper = GroupJet::new(ctx, h)?;
    let lin = GroupJet::linear(ctx, omega, spec.order)?;
    if helper.compose(&series)? != lin.compose(&helper)? {
        return Err(ConstructError::Internal("h∘f differs from ℓ_ω∘h".into()));
    }
    if lin.conjugate_by(&helper.invert())? != series {
        return Err(ConstructError::Internal("h̄∘ℓ_ω∘h differs from f".into()));
    }
    Ok(ConstructionRecord {
        series,
        forced,
        p_values,
        helper: Some(helper),
    })
}

/// Solves Schröder's equation h∘f = ℓ_ω∘h for a multiplier ω that is not a
/// root of unity, with h₁ = 1.
///
/// The z^k coefficient reads ω^k h_k + S_k = ω h_k with S_k = Σ_{j<k} h_j
/// [f^j]_k, and ω − ω^k never vanishes, so every h_k is determined.
pub fn schroder_linearize(f: &GroupJet) -> Result<GroupJet, ConstructError> {
    let omega = f.multiplier();
    if omega.multiplicative_order()?.is_some() {
        return Err(ConstructError::TorsionMultiplier);
    }
    let ctx = f.context();
    let powers = f.powers();
    let mut h = vec![ctx.one()];
    let mut omega_k = omega.clone();
    for k in 2..=f.order() {
        omega_k = &omega_k * omega;
        let mut s = ctx.zero();
        for (j, hj) in h.iter().enumerate() {
            if !hj.is_zero() {
                s += &(hj * powers[j].coeff(k));
            }
        }
        h.push(s.checked_div(&(omega - &omega_k))?);
    }
    let h = GroupJet::new(ctx, h)?;
    let lin = GroupJet::linear(ctx, omega, f.order())?;
    if h.compose(f)? != lin.compose(&h)? {
        return Err(ConstructError::Internal("h∘f differs from ℓ_ω∘h".into()));
    }
    Ok(h)
}

/// Conjugates a series with torsion multiplier ω (order n) to a normal form
/// g = c∘f∘c̄ supported on exponents ≡ 1 (mod n).
///
/// Returns (g, c). The sweep equates z^k coefficients of c∘f and g∘c: at
/// k ≢ 1 (mod n) the conjugator coefficient c_k is chosen to kill g_k; at
/// k ≡ 1 (mod n) c_k = 0 and g_k is whatever remains. For f of finite order
/// the result is ℓ_ω.
pub fn normal_form(f: &GroupJet) -> Result<(GroupJet, GroupJet), ConstructError> {
    let omega = f.multiplier();
    let n = omega
        .multiplicative_order()?
        .ok_or(ConstructError::NonTorsionMultiplier)?;
    let ctx = f.context();
    let mut c = vec![ctx.one()];
    let mut g = vec![omega.clone()];
    for k in 2..=f.order() {
        c.push(ctx.zero());
        g.push(ctx.zero());
        let residual = &composed_coeff(&c, f.coeffs(), k) - &composed_coeff(&g, &c, k);
        if (k as u64 - 1).is_multiple_of(n) {
            g[k - 1] = residual;
        } else {
            let denom = omega - &omega.pow(k as u64);
            c[k - 1] = residual.checked_div(&denom)?;
        }
    }
    let g = GroupJet::new(ctx, g)?;
    let c = GroupJet::new(ctx, c)?;
    if f.conjugate_by(&c)? != g {
        return Err(ConstructError::Internal("c∘f∘c̄ differs from g".into()));
    }
    Ok((g, c))
}

/// Whether f(−f(−z)) = z, i.e. f∘ℓ₋₁ is an involution.
pub fn stanley_involution_check(f: &GroupJet) -> bool {
    let ctx = f.context();
    let negate = GroupJet::linear(ctx, &ctx.from_int(-1), f.order()).expect("order ≥ 1");
    let twisted = negate.compose(f).and_then(|x| x.compose(&negate)).expect("same shape");
    f.compose(&twisted).expect("same shape").is_identity()
}

/// f = ḡ(−g(−z)) for g with g₁ = 1; every such f passes
/// [`stanley_involution_check`].
pub fn stanley_build(g: &GroupJet) -> Result<GroupJet, ConstructError> {
    if !g.multiplier().is_one() {
        return Err(ConstructError::LeadNotOne);
    }
    let ctx = g.context();
    let negate = GroupJet::linear(ctx, &ctx.from_int(-1), g.order())?;
    Ok(g.invert().compose(&negate)?.compose(g)?.compose(&negate)?)
}

/// Root magnitudes |a_k|^{1/k} of an order-two construction over ℚ.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub record: ConstructionRecord,
    /// roots[k − 1] = |a_k|^{1/k}; floating point for display only.
    pub roots: Vec<f64>,
    pub bound: f64,
    /// First k with |a_k|^{1/k} > bound.
    pub first_exceeding: Option<usize>,
}

impl GrowthReport {
    pub fn exceeds_bound(&self) -> bool {
        self.first_exceeding.is_some()
    }
}

fn ln_abs_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").abs().ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("fits in f64").abs();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// |r|^{1/k}, evaluated in logarithms so huge coefficients do not overflow.
pub fn root_magnitude(r: &Rational, k: usize) -> f64 {
    if r.numer().sign() == Sign::NoSign || r.is_zero() {
        return 0.0;
    }
    ((ln_abs_int(r.numer()) - ln_abs_int(r.denom())) / k as f64).exp()
}

/// Runs [`build_unique`] on an order-two rational spec and reports how fast
/// the coefficients grow.
pub fn growth_report(spec: &FreeCoefficientSpec, bound: f64) -> Result<GrowthReport, ConstructError> {
    let minus_one = spec.context().from_int(-1);
    if spec.context().kind() != FieldKind::Rational || spec.n != 2 || spec.omega != minus_one {
        return Err(ConstructError::NotRationalInvolution);
    }
    let record = build_unique(spec)?;
    let roots: Vec<f64> = record
        .series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| root_magnitude(&c.as_rational().expect("rational field"), i + 1))
        .collect();
    let first_exceeding = roots.iter().position(|&r| r > bound).map(|i| i + 1);
    Ok(GrowthReport {
        record,
        roots,
        bound,
        first_exceeding,
    })
}
