//! Acceptance suite: one line per criterion, exact arithmetic throughout.
//!
//! Runs as a plain binary (`harness = false`) so the per-criterion report is
//! always printed; the process exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use series_order::construct::{
    build_existence, build_unique, normal_form, schroder_linearize, stanley_build,
    stanley_involution_check, FreeCoefficientSpec,
};
use series_order::finiteorder::{commutes_with_linear, compositional_order, in_centralizer, star, Order};
use series_order::io::{emit_series, parse_series, Format};
use series_order::{FieldContext, FieldElement, GroupJet};

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

/// 1. Group law at N = 16 over ℚ and ℚ(ζ₄), 200 triples each, < 30 s.
fn group_law() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(1);
    let mut checked = 0;
    for ctx in [FieldContext::rational(), FieldContext::cyclotomic(4).unwrap()] {
        let id = GroupJet::identity(&ctx, 16).unwrap();
        for i in 0..200 {
            let f = random_group_jet(&mut rng, &ctx, 16);
            let g = random_group_jet(&mut rng, &ctx, 16);
            let h = random_group_jet(&mut rng, &ctx, 16);
            let left = f.compose(&g).unwrap().compose(&h).unwrap();
            let right = f.compose(&g.compose(&h).unwrap()).unwrap();
            ensure(left == right, || format!("associativity failed, {ctx} triple {i}"))?;
            ensure(f.compose(&id).unwrap() == f && id.compose(&f).unwrap() == f, || {
                format!("identity law failed, {ctx} triple {i}")
            })?;
            let inv = f.invert();
            ensure(
                f.compose(&inv).unwrap().is_identity() && inv.compose(&f).unwrap().is_identity(),
                || format!("inverse law failed, {ctx} triple {i}"),
            )?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(30), "group-law suite")?;
    Ok(format!("{checked} triples in {:.1?}", start.elapsed()))
}

/// 2. Low-order composition coefficients and the m·a_k law, 100 instances.
fn low_order_coefficients() -> Outcome {
    let mut rng = rng(2);
    let fields = [FieldContext::rational(), FieldContext::cyclotomic(3).unwrap()];
    for i in 0..100 {
        let ctx = &fields[i % 2];
        let f = random_group_jet(&mut rng, ctx, 5);
        let g = random_group_jet(&mut rng, ctx, 5);
        let fg = f.compose(&g).unwrap();
        let (a1, a2, a3) = (f.coeff(1), f.coeff(2), f.coeff(3));
        let (b1, b2, b3) = (g.coeff(1), g.coeff(2), g.coeff(3));
        let two = ctx.from_int(2);
        let c1 = a1 * b1;
        let c2 = &(a1 * b2) + &(a2 * &(b1 * b1));
        let c3 = &(&(a1 * b3) + &(&two * &(a2 * &(b1 * b2)))) + &(a3 * &b1.pow(3));
        ensure(fg.coeff(1) == &c1, || format!("z coefficient, instance {i}"))?;
        ensure(fg.coeff(2) == &c2, || format!("z^2 coefficient, instance {i}"))?;
        ensure(fg.coeff(3) == &c3, || format!("z^3 coefficient, instance {i}"))?;

        // f = z + a_k z^k + higher terms: f⁽ᵐ⁾ = z + m·a_k z^k + …
        let order = 10;
        let k = rng.gen_range(2..=order);
        let mut coeffs = vec![ctx.one()];
        for j in 2..=order {
            coeffs.push(if j < k { ctx.zero() } else { nonzero_element(&mut rng, ctx) });
        }
        let f = GroupJet::new(ctx, coeffs).unwrap();
        let mut it = GroupJet::identity(ctx, order).unwrap();
        for m in 1..=10i64 {
            it = f.compose(&it).unwrap();
            ensure(
                (2..k).all(|j| it.coeff(j).is_zero())
                    && it.coeff(k) == &(&ctx.from_int(m) * f.coeff(k)),
                || format!("m·a_k law failed, instance {i}, k = {k}, m = {m}"),
            )?;
        }
    }
    Ok("100 instances".into())
}

/// 3. Linearization of random conjugates of ℓ_ω at N = 24, < 60 s.
fn linearization() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(3);
    for n in [2u64, 3, 4, 6, 8, 12] {
        let ctx = field_for_order(n);
        for i in 0..20 {
            let omega = if n <= 2 {
                primitive_root_in(&ctx, n)
            } else {
                random_primitive_root(&mut rng, &ctx, n)
            };
            let f = random_conjugate_of_linear(&mut rng, &omega, 24);
            let order = compositional_order(&f);
            ensure(order.order == Order::Finite(n), || {
                format!("n = {n}, instance {i}: order {:?}", order.order)
            })?;
            let s = star(&f).map_err(|e| e.to_string())?;
            let lin = GroupJet::linear(&ctx, &omega, 24).unwrap();
            ensure(s.compose(&f).unwrap() == lin.compose(&s).unwrap(), || {
                format!("n = {n}, instance {i}: f*∘f ≠ ℓ_ω∘f*")
            })?;
            ensure(f.conjugate_by(&s).unwrap() == lin, || {
                format!("n = {n}, instance {i}: f*∘f∘f̄* ≠ ℓ_ω")
            })?;
        }
    }
    within(start, Duration::from_secs(60), "linearization suite")?;
    Ok(format!("120 conjugates in {:.1?}", start.elapsed()))
}

/// 4. Support characterization of the centralizer vs. direct commutation.
fn centralizer() -> Outcome {
    let mut rng = rng(4);
    let mut members = 0;
    for n in [2u64, 3, 5] {
        let ctx = field_for_order(n);
        let omega = primitive_root_in(&ctx, n);
        for i in 0..200 {
            let mut h = random_group_jet(&mut rng, &ctx, 12);
            if i % 2 == 0 {
                // Project onto exponents ≡ 1 (mod n) to exercise members.
                let coeffs = (1..=12)
                    .map(|k| if (k - 1) % n as usize == 0 { h.coeff(k).clone() } else { ctx.zero() })
                    .collect();
                h = GroupJet::new(&ctx, coeffs).unwrap();
            }
            let support = in_centralizer(&h, n);
            let direct = commutes_with_linear(&h, &omega).unwrap();
            ensure(support == direct, || format!("n = {n}, h #{i}: support {support}, direct {direct}"))?;
            members += support as usize;
        }
    }
    ensure((300..600).contains(&members), || format!("degenerate sample: {members} members"))?;
    Ok(format!("600 series, {members} members"))
}

fn random_spec(rng: &mut rand_chacha::ChaCha8Rng, n: u64, order: usize) -> FreeCoefficientSpec {
    let ctx = field_for_order(n);
    let omega = if n <= 2 {
        primitive_root_in(&ctx, n)
    } else {
        random_primitive_root(rng, &ctx, n)
    };
    let free = (2..=order)
        .filter(|k| (k - 1) % n as usize != 0)
        .map(|k| (k, small_element(rng, &ctx)))
        .collect();
    FreeCoefficientSpec::new(omega, n, order, free).unwrap()
}

/// 5. Both order-n constructions agree, have order n, and keep the free data.
fn construction() -> Outcome {
    let mut rng = rng(5);
    for n in [2u64, 3, 4, 6] {
        let ctx = field_for_order(n);
        for i in 0..25 {
            let spec = random_spec(&mut rng, n, 24);
            let u = build_unique(&spec).map_err(|e| e.to_string())?;
            let mut free_h = BTreeMap::new();
            for k in (n as usize + 1..=24).step_by(n as usize) {
                if rng.gen_bool(0.5) {
                    free_h.insert(k, small_element(&mut rng, &ctx));
                }
            }
            let e = build_existence(&spec, &free_h).map_err(|e| e.to_string())?;
            ensure(u.series == e.series, || format!("n = {n}, spec {i}: constructions differ"))?;
            ensure(u.series.is_identity_iterate(n), || format!("n = {n}, spec {i}: order is not n"))?;
            ensure(
                spec.free().iter().all(|(&k, v)| u.series.coeff(k) == v),
                || format!("n = {n}, spec {i}: free coefficients not reproduced"),
            )?;
        }
    }
    let q = FieldContext::rational();
    let sparse = (1..=12).map(|j| (2 * j, q.from_int(-1))).collect();
    let spec = FreeCoefficientSpec::from_sparse(q.from_int(-1), 2, 24, &sparse).unwrap();
    let fixture = GroupJet::from_ints(&q, &[-1; 24]).unwrap();
    for series in [
        build_unique(&spec).unwrap().series,
        build_existence(&spec, &BTreeMap::new()).unwrap().series,
    ] {
        ensure(
            emit_series(&series, Format::Json) == emit_series(&fixture, Format::Json),
            || "involution fixture is not -z/(1-z)".into(),
        )?;
    }
    Ok("100 specs + involution fixture".into())
}

/// 6. f⁽ⁿ⁾_k is affine in a_k with slope n·ω^{n−1} (forced k) or 0 (free k).
fn affinity() -> Outcome {
    let mut rng = rng(6);
    let mut forced_checks = 0;
    for i in 0..50 {
        let n = [2u64, 3, 4, 6][i % 4];
        let ctx = field_for_order(n);
        let omega = primitive_root_in(&ctx, n);
        let k = rng.gen_range(2..=14usize);
        let mut prefix = vec![omega.clone()];
        prefix.extend((2..k).map(|_| small_element(&mut rng, &ctx)));
        let t1 = small_element(&mut rng, &ctx);
        let t2 = loop {
            let t = small_element(&mut rng, &ctx);
            if t != t1 {
                break t;
            }
        };
        let value_at = |t: &FieldElement| {
            let mut c = prefix.clone();
            c.push(t.clone());
            GroupJet::new(&ctx, c).unwrap().iterate(n).coeff(k).clone()
        };
        let slope = (&value_at(&t2) - &value_at(&t1)).checked_div(&(&t2 - &t1)).unwrap();
        let expected = if (k - 1) % n as usize == 0 {
            forced_checks += 1;
            &ctx.from_int(n as i64) * &omega.pow(n - 1)
        } else {
            ctx.zero()
        };
        ensure(slope == expected, || format!("prefix {i} (n = {n}, k = {k}): slope {slope}"))?;
    }
    ensure(forced_checks > 0, || "no forced index sampled".into())?;
    Ok(format!("50 prefixes, {forced_checks} at forced indices"))
}

/// 7. Schröder linearization and normal forms.
fn schroder_and_normal_form() -> Outcome {
    let mut rng = rng(7);
    let q = FieldContext::rational();
    let l2 = GroupJet::linear(&q, &q.from_int(2), 16).unwrap();
    for i in 0..20 {
        let tail = random_jet(&mut rng, &q, 16).with_coeff(1, q.from_int(2));
        let f = GroupJet::try_from(tail).unwrap();
        let h = schroder_linearize(&f).map_err(|e| e.to_string())?;
        ensure(f.conjugate_by(&h).unwrap() == l2, || format!("Schröder instance {i}"))?;
    }
    for i in 0..50 {
        let m = [2u64, 3, 4, 6, 5][i % 5];
        let ctx = FieldContext::cyclotomic(m).unwrap();
        let omega = ctx.zeta().pow(rng.gen_range(0..m));
        let n = omega.multiplicative_order().unwrap().unwrap();
        let f = GroupJet::try_from(random_jet(&mut rng, &ctx, 12).with_coeff(1, omega.clone())).unwrap();
        let (g, c) = normal_form(&f).map_err(|e| e.to_string())?;
        ensure(in_centralizer(&g, n), || format!("normal form {i} not supported on 1 mod {n}"))?;
        ensure(f.conjugate_by(&c).unwrap() == g, || format!("normal form {i}: g ≠ c∘f∘c̄"))?;
    }
    for n in [2u64, 3, 4, 6] {
        let ctx = field_for_order(n);
        let omega = primitive_root_in(&ctx, n);
        let f = random_conjugate_of_linear(&mut rng, &omega, 16);
        let (g, _) = normal_form(&f).map_err(|e| e.to_string())?;
        ensure(g == GroupJet::linear(&ctx, &omega, 16).unwrap(), || {
            format!("finite-order input of order {n} not normalized to ℓ_ω")
        })?;
    }
    Ok("20 Schröder + 50 torsion + 4 finite-order".into())
}

/// 8. f(−f(−z)) = z for every f = ḡ(−g(−z)).
fn stanley() -> Outcome {
    let mut rng = rng(8);
    let q = FieldContext::rational();
    let minus = GroupJet::linear(&q, &q.from_int(-1), 12).unwrap();
    for i in 0..50 {
        let g = GroupJet::try_from(random_jet(&mut rng, &q, 12).with_coeff(1, q.one())).unwrap();
        let f = stanley_build(&g).map_err(|e| e.to_string())?;
        ensure(stanley_involution_check(&f), || format!("instance {i} fails the check"))?;
        let twisted = f.compose(&minus).unwrap();
        ensure(compositional_order(&twisted).order == Order::Finite(2), || {
            format!("instance {i}: f∘ℓ₋₁ is not of order 2")
        })?;
    }
    Ok("50 instances".into())
}

/// 9. CLI golden pipeline and parse/emit round trip.
fn cli_golden() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fps");
    let build = Command::new(bin)
        .args(["build", "--order", "2", "--N", "5", "--free", "2=-1,4=-1"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(build.status.code() == Some(0), || format!("build exited {:?}", build.status))?;
    let stdout = String::from_utf8(build.stdout).unwrap();
    let record: serde_json::Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
    ensure(
        record["forced"] == serde_json::json!({"3": "-1", "5": "-1"}),
        || format!("forced map {}", record["forced"]),
    )?;
    let dir = std::env::temp_dir().join(format!("fps-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("record.json");
    std::fs::write(&path, &stdout).unwrap();
    let verify = Command::new(bin)
        .args(["verify", "--order", "2", "--in"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(verify.status.code() == Some(0), || format!("verify exited {:?}", verify.status))?;
    let _ = std::fs::remove_dir_all(&dir);

    let mut rng = rng(9);
    let fields = [
        FieldContext::rational(),
        FieldContext::cyclotomic(3).unwrap(),
        FieldContext::cyclotomic(4).unwrap(),
        FieldContext::cyclotomic(12).unwrap(),
    ];
    for i in 0..100 {
        let ctx = &fields[i % fields.len()];
        let order = rng.gen_range(1..=10);
        let jet = random_group_jet(&mut rng, ctx, order);
        let text = emit_series(&jet, Format::Json);
        let back = parse_series(&text).map_err(|e| e.to_string())?;
        ensure(back == jet && emit_series(&back, Format::Json) == text, || {
            format!("round trip {i} not exact: {text}")
        })?;
    }
    Ok("build/verify pipeline + 100 round trips".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 group law (N=16, Q and Q(zeta4))", group_law),
        ("2 composition coefficients and iterate law", low_order_coefficients),
        ("3 linearization of finite-order elements", linearization),
        ("4 centralizer support vs commutation", centralizer),
        ("5 order-n construction (two algorithms)", construction),
        ("6 affinity of iterate coefficients", affinity),
        ("7 Schroder and normal forms", schroder_and_normal_form),
        ("8 f(-f(-z)) = z family", stanley),
        ("9 CLI golden and round trip", cli_golden),
    ];
    // Optional positional filters select criteria by number, e.g. `-- 3 5`.
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let results: Vec<(&str, Outcome)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .filter(|(name, _)| filters.is_empty() || filters.iter().any(|f| name.split(' ').next() == Some(f)))
            .map(|&(name, run)| (name, s.spawn(run)))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| (name, h.join().unwrap_or_else(|_| Err("panicked".into()))))
            .collect()
    });
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
