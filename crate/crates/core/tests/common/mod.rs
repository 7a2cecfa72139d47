#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use series_order::{FieldContext, FieldElement, GroupJet, Jet, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = rng.gen_range(1..=3);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn small_element(rng: &mut ChaCha8Rng, ctx: &Arc<FieldContext>) -> FieldElement {
    let coords = (0..ctx.degree()).map(|_| small_rational(rng)).collect();
    ctx.from_coords(coords).unwrap()
}

pub fn nonzero_element(rng: &mut ChaCha8Rng, ctx: &Arc<FieldContext>) -> FieldElement {
    loop {
        let x = small_element(rng, ctx);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn small_int_element(rng: &mut ChaCha8Rng, ctx: &Arc<FieldContext>) -> FieldElement {
    ctx.from_int(rng.gen_range(-2..=2))
}

pub fn random_jet(rng: &mut ChaCha8Rng, ctx: &Arc<FieldContext>, order: usize) -> Jet {
    Jet::new(ctx, (0..order).map(|_| small_element(rng, ctx)).collect()).unwrap()
}

pub fn random_group_jet(rng: &mut ChaCha8Rng, ctx: &Arc<FieldContext>, order: usize) -> GroupJet {
    let mut coeffs: Vec<_> = (0..order).map(|_| small_element(rng, ctx)).collect();
    coeffs[0] = nonzero_element(rng, ctx);
    GroupJet::new(ctx, coeffs).unwrap()
}

/// A random tangent-to-identity jet with small integer coefficients, so that
/// its inverse stays integral.
pub fn random_unipotent(rng: &mut ChaCha8Rng, ctx: &Arc<FieldContext>, order: usize) -> GroupJet {
    let mut coeffs: Vec<_> = (0..order).map(|_| small_int_element(rng, ctx)).collect();
    coeffs[0] = ctx.one();
    GroupJet::new(ctx, coeffs).unwrap()
}

/// ζₙ^r for a random r coprime to n.
pub fn random_primitive_root(rng: &mut ChaCha8Rng, ctx: &Arc<FieldContext>, n: u64) -> FieldElement {
    let zeta = ctx.zeta();
    loop {
        let r = rng.gen_range(1..=n.max(1));
        if num_integer::gcd(r, n) == 1 {
            let w = zeta.pow(r);
            assert!(w.is_primitive_root(n));
            return w;
        }
    }
}

/// Field used for order-n tests: ℚ for n ≤ 2, ℚ(ζₙ) otherwise.
pub fn field_for_order(n: u64) -> Arc<FieldContext> {
    if n <= 2 {
        FieldContext::rational()
    } else {
        FieldContext::cyclotomic(n).unwrap()
    }
}

pub fn primitive_root_in(ctx: &Arc<FieldContext>, n: u64) -> FieldElement {
    match n {
        1 => ctx.one(),
        2 => ctx.from_int(-1),
        _ => ctx.zeta(),
    }
}

/// h̄∘ℓ_ω∘h: a random element of order n with multiplier ω.
pub fn random_conjugate_of_linear(
    rng: &mut ChaCha8Rng,
    omega: &FieldElement,
    order: usize,
) -> GroupJet {
    let ctx = omega.context();
    let h = random_unipotent(rng, ctx, order);
    let lin = GroupJet::linear(ctx, omega, order).unwrap();
    h.invert().compose(&lin).unwrap().compose(&h).unwrap()
}

/// Independent oracle for completing a conjugator: solves g∘f = ℓ_ω∘g
/// coefficient by coefficient, without going through f*.
///
/// The z^k coefficient of g∘f is g_k ω^k plus terms in g₁…g_{k−1}; that of
/// ℓ_ω∘g is ω g_k. At k ≢ 1 (mod n), ω^k ≠ ω fixes g_k; at k ≡ 1 the
/// prescribed value is used.
pub fn solve_conjugator_directly(
    f: &GroupJet,
    n: u64,
    prescribed: &std::collections::BTreeMap<usize, FieldElement>,
) -> GroupJet {
    let ctx = f.context();
    let omega = f.multiplier();
    let mut g = vec![prescribed[&1].clone()];
    for k in 2..=f.order() {
        if (k as u64 - 1).is_multiple_of(n) {
            g.push(prescribed[&k].clone());
            continue;
        }
        g.push(ctx.zero());
        let gj = Jet::new(ctx, g.clone()).unwrap();
        let fj = f.truncate(k).unwrap();
        let residual = gj.compose(&fj).unwrap().coeff(k).clone();
        // residual + g_k ω^k = ω g_k
        let denom = omega - &omega.pow(k as u64);
        g[k - 1] = residual.checked_div(&denom).unwrap();
    }
    GroupJet::new(ctx, g).unwrap()
}
