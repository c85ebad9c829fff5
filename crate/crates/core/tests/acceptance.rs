//! Exit criteria for the engine. Every check is exact equality.
//!
//! Run with `cargo test -p rathom-core --test acceptance -- --nocapture` to see
//! one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rathom_core::fourfold::{
    fourfold_model, loop_hilbert, ranks_closed, ranks_lie, ranks_low_degree, ranks_suspension_babenko,
    IntersectionForm,
};
use rathom_core::freelie::{differential, Generator, LieEngine, LieModel};
use rathom_core::gauge::{
    consistency_report, cohomology_presentation, loop_presentation, BundleContext, Parity, SimpleGroup, Space,
};
use rathom_core::series::{witt_decompose, GradedDims, TruncatedSeries};
use rathom_core::Error;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

fn big(n: u128) -> BigUint {
    BigUint::from(n)
}

fn low_degree_agreement() -> Outcome {
    let start = Instant::now();
    for b2 in 2..=4u32 {
        let expected = ranks_low_degree(b2).map_err(|e| e.to_string())?;
        for form in IntersectionForm::splits(b2) {
            let t = ranks_lie(form, 4).map_err(|e| e.to_string())?;
            for (i, k) in (2..=4).enumerate() {
                ensure(t.ranks[&k] == big(expected[i]), || {
                    format!("{form}: rk π_{k} = {} but formula gives {}", t.ranks[&k], expected[i])
                })?;
            }
        }
    }
    within(start, Duration::from_secs(60))
}

fn closed_vs_model() -> Outcome {
    let start = Instant::now();
    for b2 in 2..=3u32 {
        for form in IntersectionForm::splits(b2) {
            let t = ranks_lie(form, 8).map_err(|e| e.to_string())?;
            for n in 1..=7u32 {
                let closed = ranks_closed(b2, n).map_err(|e| e.to_string())?;
                ensure(t.ranks[&(n + 1)] == closed, || {
                    format!("{form}, n = {n}: model {} vs closed {closed}", t.ranks[&(n + 1)])
                })?;
            }
        }
    }
    within(start, Duration::from_secs(120))
}

fn symbolic_range_identity() -> Outcome {
    let start = Instant::now();
    for b2 in 2..=50u32 {
        let b = b2 as u128;
        let polys = [b, b * (b + 1) / 2 - 1, b * (b * b - 4) / 3];
        for n in 1..=3u32 {
            let closed = ranks_closed(b2, n).map_err(|e| e.to_string())?;
            ensure(closed == big(polys[n as usize - 1]), || {
                format!("b2 = {b2}, n = {n}: closed {closed} vs polynomial {}", polys[n as usize - 1])
            })?;
        }
    }
    within(start, Duration::from_secs(1))
}

fn signature_independence() -> Outcome {
    let tables: Vec<_> = IntersectionForm::splits(3)
        .map(|f| ranks_lie(f, 8).map(|t| (f, t.ranks)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(tables.len() == 4, || "expected four splits".into())?;
    let (f0, reference) = &tables[0];
    for (f, t) in &tables[1..] {
        ensure(t == reference, || format!("{f} gives {t:?}, {f0} gives {reference:?}"))?;
    }
    Ok(())
}

fn witt_for(model: &LieModel, max_degree: u32) -> Outcome {
    let mut gens = GradedDims::new(max_degree);
    for g in model.generators() {
        gens.add(g.degree, BigUint::from(1u8)).map_err(|e| e.to_string())?;
    }
    let witt = witt_decompose(&gens, max_degree).map_err(|e| e.to_string())?;
    let mut engine = LieEngine::new(model);
    for n in 1..=max_degree {
        let basis = engine.basis(n).map_err(|e| e.to_string())?;
        ensure(BigUint::from(basis.len()) == witt.get(n), || {
            format!("degree {n}: basis {} vs Witt {}", basis.len(), witt.get(n))
        })?;
    }
    Ok(())
}

fn witt_certification() -> Outcome {
    for b2 in 0..=4u32 {
        let model = fourfold_model(IntersectionForm::new(b2, 0)).map_err(|e| e.to_string())?;
        witt_for(&model, 8).map_err(|e| format!("b2 = {b2}: {e}"))?;
    }
    let w = LieModel::free(vec![Generator::new("w", 3)]).map_err(|e| e.to_string())?;
    witt_for(&w, 8).map_err(|e| format!("𝕃(w): {e}"))?;
    let v = LieModel::free(vec![Generator::new("v", 1)]).map_err(|e| e.to_string())?;
    witt_for(&v, 8).map_err(|e| format!("𝕃(v): {e}"))
}

fn babenko_pinning() -> Outcome {
    for m in 1..=3i64 {
        let p = TruncatedSeries::from_integers(&[1, m], 1);
        let babenko = ranks_suspension_babenko(&p, 12).map_err(|e| e.to_string())?;
        let gens = GradedDims::from_counts(12, &[(1, m as u64)]).map_err(|e| e.to_string())?;
        let witt = witt_decompose(&gens, 12).map_err(|e| e.to_string())?;
        for j in 1..=12u32 {
            ensure(babenko[&j] == witt.get(j), || {
                format!("m = {m}, j = {j}: suspension formula {} vs Witt {}", babenko[&j], witt.get(j))
            })?;
        }
    }
    Ok(())
}

fn elliptic_cases() -> Outcome {
    let s4 = ranks_lie(IntersectionForm::new(0, 0), 8).map_err(|e| e.to_string())?;
    for k in 2..=8u32 {
        let expected = big(u128::from(k == 4 || k == 7));
        ensure(s4.ranks[&k] == expected, || format!("(0,0): rk π_{k} = {}", s4.ranks[&k]))?;
    }
    let cp2 = ranks_lie(IntersectionForm::new(1, 0), 6).map_err(|e| e.to_string())?;
    for k in 2..=6u32 {
        let expected = big(u128::from(k == 2 || k == 5));
        ensure(cp2.ranks[&k] == expected, || format!("(1,0): rk π_{k} = {}", cp2.ranks[&k]))?;
    }
    Ok(())
}

fn example_su3() -> Outcome {
    for b2 in [1u64, 2, 3, 5] {
        let ctx = BundleContext::new(SimpleGroup::SU(3), b2 as u32);
        let bt = loop_presentation(&ctx, Space::LoopBTilde, 64, false).map_err(|e| e.to_string())?;
        let expected_bt = [(1u32, b2 + 1), (3, b2)].into_iter().collect();
        ensure(bt.generators == expected_bt, || format!("b2 = {b2}: Ωℬ̃ = {bt}"))?;
        let bs = loop_presentation(&ctx, Space::LoopBStar, 64, false).map_err(|e| e.to_string())?;
        let expected_bs = [(1u32, b2 + 1), (3, b2 + 1), (5, 1)].into_iter().collect();
        ensure(bs.generators == expected_bs, || format!("b2 = {b2}: Ωℬ* = {bs}"))?;
    }
    Ok(())
}

fn example_su2() -> Outcome {
    for b2 in [1u64, 2, 3, 5] {
        let su2 = BundleContext::new(SimpleGroup::SU(2), b2 as u32);
        let odd = su2.with_form(Parity::Odd);
        let bt = loop_presentation(&odd, Space::LoopBTilde, 64, false).map_err(|e| e.to_string())?;
        ensure(bt.generators == [(1u32, b2)].into_iter().collect(), || format!("odd form: Ωℬ̃ = {bt}"))?;
        let expected_bs = [(1u32, b2), (3, 1)].into_iter().collect();
        let bs = loop_presentation(&odd, Space::LoopBStar, 64, false).map_err(|e| e.to_string())?;
        ensure(bs.generators == expected_bs, || format!("odd form: Ωℬ* = {bs}"))?;
        let even_odd = su2.with_form(Parity::Even).with_c2(Parity::Odd);
        let bs = loop_presentation(&even_odd, Space::LoopBStar, 64, false).map_err(|e| e.to_string())?;
        ensure(bs.generators == expected_bs, || format!("even form, c2 odd: Ωℬ* = {bs}"))?;
        let even_even = su2.with_form(Parity::Even).with_c2(Parity::Even);
        match loop_presentation(&even_even, Space::LoopBStar, 64, false) {
            Err(Error::NotSimplyConnected { diagnosis, .. }) if diagnosis.contains("ℤ₂") => {}
            other => return Err(format!("even form, c2 even: expected refusal with π₁ = ℤ₂, got {other:?}")),
        }
    }
    Ok(())
}

fn generator_totals() -> Outcome {
    let start = Instant::now();
    let groups = SimpleGroup::all_up_to_rank(8);
    ensure(groups.len() > 20, || format!("only {} groups enumerated", groups.len()))?;
    for g in groups {
        let rk = g.rank().map_err(|e| e.to_string())? as u64;
        for b2 in 0..=10u32 {
            let b = b2 as u64;
            let ctx = BundleContext::new(g, b2);
            let n = 64;
            let checks = [
                (cohomology_presentation(&ctx, Space::GaugeGroup, n), (b + 2) * rk - 1),
                (cohomology_presentation(&ctx, Space::BTilde, n), (b + 1) * rk - 1),
                (loop_presentation(&ctx, Space::LoopBTilde, n, true), (b + 1) * rk - 1),
                (loop_presentation(&ctx, Space::LoopBStar, n, true), (b + 2) * rk - 1),
            ];
            for (p, expected) in checks {
                let p = p.map_err(|e| e.to_string())?;
                ensure(p.total() == expected, || format!("{g}, b2 = {b2}, {}: {} ≠ {expected}", p.space, p.total()))?;
            }
        }
    }
    within(start, Duration::from_secs(5))
}

fn d_squared() -> Outcome {
    for b2 in 0..=4u32 {
        // bases do not depend on the differential, only the generators
        let base = fourfold_model(IntersectionForm::new(b2, 0)).map_err(|e| e.to_string())?;
        let mut engine = LieEngine::new(&base);
        let bases: Vec<_> = (1..=8).map(|n| engine.basis(n)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for form in IntersectionForm::splits(b2) {
            let model = fourfold_model(form).map_err(|e| e.to_string())?;
            for x in bases.iter().flatten() {
                let dx = differential(&model, x).map_err(|e| e.to_string())?;
                if dx.degree() == 0 {
                    continue;
                }
                let ddx = differential(&model, &dx).map_err(|e| e.to_string())?;
                ensure(ddx.is_zero(), || format!("{form}: d² ≠ 0 on {}", model.render(x)))?;
            }
        }
    }
    Ok(())
}

fn discrepancy_detection() -> Outcome {
    for b2 in [0u32, 1, 2, 3, 7] {
        let r = consistency_report(&BundleContext::new(SimpleGroup::SU(3), b2), 8).map_err(|e| e.to_string())?;
        ensure(r.btilde.mismatches().is_empty(), || format!("b2 = {b2}: ℬ̃ mismatches {:?}", r.btilde.mismatches()))?;
        ensure(r.bstar.mismatches() == vec![3, 7], || format!("b2 = {b2}: ℬ* mismatches {:?}", r.bstar.mismatches()))?;
    }
    Ok(())
}

fn milnor_moore_series() -> Outcome {
    let cases: [((u32, u32), u32, &[i64]); 3] = [
        ((1, 1), 3, &[1, 2, 3, 4]),
        ((1, 0), 5, &[1, 1, 0, 0, 1, 1]),
        ((0, 0), 6, &[1, 0, 0, 1, 0, 0, 1]),
    ];
    for ((p, m), n, coefficients) in cases {
        let got = loop_hilbert(IntersectionForm::new(p, m), n).map_err(|e| e.to_string())?;
        let expected = TruncatedSeries::from_integers(coefficients, n as usize);
        ensure(got == expected, || format!("({p},{m}): {got} vs {expected}"))?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 13] = [
        ("1 low-degree formulas vs Lie model (b2 = 2..4, all splits)", low_degree_agreement),
        ("2 closed formula vs Lie model (b2 = 2, 3; n <= 7)", closed_vs_model),
        ("3 closed formula vs polynomials (b2 = 2..50; n = 1..3)", symbolic_range_identity),
        ("4 signature independence (b2 = 3, degrees <= 8)", signature_independence),
        ("5 Witt certification of every basis (b2 <= 4, degrees <= 8)", witt_certification),
        ("6 suspension formula vs Witt (m = 1..3, j <= 12)", babenko_pinning),
        ("7 elliptic cases S^4 and CP^2", elliptic_cases),
        ("8 SU(3) loop rings", example_su3),
        ("9 SU(2) loop rings and refusal", example_su2),
        ("10 generator totals (rank <= 8, b2 <= 10)", generator_totals),
        ("11 d^2 = 0 on bases (b2 <= 4, degrees <= 8)", d_squared),
        ("12 B* discrepancy at loop degrees 3 and 7 only", discrepancy_detection),
        ("13 loop-space Hilbert series", milnor_moore_series),
    ];
    let mut failures = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS  {name}  ({:.2?})", start.elapsed()),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
