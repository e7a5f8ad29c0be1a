//! Acceptance harness: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Run with `cargo test --release --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{modular_forms_dim, pascal};
use dzv::exactsys::{nontrivial_equations, spanning_set_dz};
use dzv::numeric::{eval_formal, rational_reconstruct, Evaluator};
use dzv::reduce::{all_epsilons, change_generators, generator_set, reduce_dz_mod_pz, Reducer};
use dzv::relations::{even_product_ratio, exact_relations_of_weight, tornheim_expand};
use dzv::symbols::{frac, Rational, Symbol};
use dzv::FormalSum;
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn even_weights(lo: u32, hi: u32) -> impl Iterator<Item = u32> + Clone {
    (lo..=hi).step_by(2)
}

fn generator_sweep() -> Outcome {
    let start = Instant::now();
    let mut count = 0usize;
    for k in even_weights(4, 60) {
        let n = ((k - 2) / 6) as usize;
        for eps in [vec![0u8; n], vec![1u8; n]] {
            let gens = generator_set(k, &eps).map_err(|e| e.to_string())?;
            check(gens.len() == n, || format!("k={k}: {} generators", gens.len()))?;
            for j in 2..k {
                let res = reduce_dz_mod_pz(j, k - j, &eps).map_err(|e| format!("k={k} j={j}: {e}"))?;
                check(res.generators.len() == n, || format!("k={k} j={j}: wrong generator count"))?;
                check(res.coefficients.symbols().all(|s| gens.contains(s)), || {
                    format!("k={k} j={j}: coefficient outside the generator set")
                })?;
                count += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{count} reductions in {:.1?}", elapsed))
}

fn numerical_certification() -> Outcome {
    let ev = Evaluator::new();
    let jobs: Vec<(u32, Vec<u8>)> = even_weights(4, 24)
        .flat_map(|k| all_epsilons((k - 2) / 6).into_iter().map(move |e| (k, e)))
        .collect();
    let counts: Vec<Result<usize, String>> = jobs
        .par_iter()
        .map(|(k, eps)| {
            let k = *k;
            let mut engine = Reducer::new(k, eps).map_err(|e| e.to_string())?;
            for j in 2..k {
                let rel = engine.reduce(j, k - j).map_err(|e| e.to_string())?.relation();
                let rep = ev.verify(&rel, 50).map_err(|e| e.to_string())?;
                let (res2, thr2) = rep.reverify.unwrap_or((f64::INFINITY, f64::NEG_INFINITY));
                check(rep.pass && rep.residual_log10 < -30.0 && res2 < thr2, || {
                    format!("{} with ε={eps:?}: {rep:?}", rel.label)
                })?;
            }
            Ok((k - 2) as usize)
        })
        .collect();
    let total = counts.into_iter().sum::<Result<usize, String>>()?;
    Ok(format!("{total} reductions at 50 digits, re-verified at 100, zero failures"))
}

fn counting_identities() -> Outcome {
    let start = Instant::now();
    for k in even_weights(4, 200) {
        let d = modular_forms_dim(k);
        check((k + 2) / 4 + (k - 2) / 6 == k / 2 - d, || format!("bound identity fails at k={k}"))?;
        let span = spanning_set_dz(k).map_err(|e| e.to_string())?;
        check(span.len() as u32 == k / 2 - d, || format!("k={k}: spanning set of size {}", span.len()))?;
    }
    let counts = start.elapsed();
    check(counts < Duration::from_secs(1), || format!("counts took {counts:?}"))?;

    let start = Instant::now();
    let built: Vec<Result<usize, String>> = even_weights(4, 100)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| {
            let eqs = nontrivial_equations(k).map_err(|e| format!("k={k}: {e}"))?;
            check(eqs.len() as u32 == modular_forms_dim(k) - 1, || format!("k={k}: {} equations", eqs.len()))?;
            check(eqs.iter().all(|e| e.has_pattern()), || format!("k={k}: pattern violated"))?;
            Ok(eqs.len())
        })
        .collect();
    let total = built.into_iter().sum::<Result<usize, String>>()?;
    let construction = start.elapsed();
    check(construction < Duration::from_secs(600), || format!("construction took {construction:?}"))?;
    Ok(format!(
        "counts to k=200 in {counts:.1?}; {total} equations constructed to k=100 in {construction:.1?}"
    ))
}

fn weight_twelve_equation() -> Outcome {
    let eqs = nontrivial_equations(12).map_err(|e| e.to_string())?;
    check(eqs.len() == 1, || format!("{} equations", eqs.len()))?;
    let e = &eqs[0];
    check(e.i == 5 && e.has_pattern(), || format!("unexpected shape: {e}"))?;
    check(e.coefficient(5) != e.coefficient(7), || "c_5 = c_7".into())?;
    let value = eval_formal(&e.to_formal_sum(), 40).map_err(|e| e.to_string())?;
    check(value.abs_upper_log10() < -35.0, || format!("value bound 1e{:.1}", value.abs_upper_log10()))?;
    Ok(format!("{e}  (|value| < 1e{:.0})", value.abs_upper_log10()))
}

fn exact_relation_suite() -> Outcome {
    let ev = Evaluator::new();
    let mut count = 0;
    let mut worst = f64::NEG_INFINITY;
    for k in 3..=20 {
        for rel in exact_relations_of_weight(k).map_err(|e| e.to_string())? {
            let rep = ev.verify(&rel, 40).map_err(|e| e.to_string())?;
            check(rep.pass && rep.residual_log10 < -30.0, || format!("{rel}: {rep:?}"))?;
            worst = worst.max(rep.residual_log10);
            count += 1;
        }
    }
    Ok(format!("{count} relations, worst residual 1e{worst:.1}"))
}

fn expansion_property() -> Outcome {
    let c = pascal(40);
    let mut count = 0;
    for w in 1..=20u32 {
        for r in 1..=w {
            for q in 0..=w - r {
                let p = w - r - q;
                let Ok(e) = tornheim_expand(r, q, p) else {
                    check(Symbol::T(r, q, p).canonicalize().is_err() || w < 3, || {
                        format!("T({r},{q},{p}) rejected")
                    })?;
                    continue;
                };
                let total: Rational = e.iter().map(|(_, c)| c.clone()).sum();
                let expected = Rational::from_integer(c[(q + p) as usize][p as usize].clone());
                check(total == expected, || format!("T({r},{q},{p}): {total} != {expected}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} expansions"))
}

fn oracle_agreement() -> Outcome {
    let mut symbols = Vec::new();
    for w in 3..=8u32 {
        for q in 2..w {
            symbols.push(Symbol::DZ(q, w - q));
        }
        for r in 1..w {
            for q in 1..w - r {
                let p = w - r - q;
                if p >= 1 && q >= p {
                    symbols.push(Symbol::T(r, q, p));
                }
            }
        }
    }
    let ev = Evaluator::new();
    let worst: Vec<Result<f64, String>> = symbols
        .par_iter()
        .map(|s| {
            let v = ev.symbol(s, 30).map_err(|e| e.to_string())?;
            let reference = match *s {
                Symbol::DZ(q, p) => common::double_zeta(q, p),
                Symbol::T(r, q, p) => common::tornheim(r, q, p),
                _ => unreachable!(),
            };
            let diff = (v.to_f64() - reference.value).abs();
            check(diff <= 1e-8 && diff <= 10f64.powf(v.rad_log10()) + reference.error, || {
                format!("{s}: {} vs {reference:?}", v.to_decimal(20))
            })?;
            Ok(diff)
        })
        .collect();
    let worst = worst.into_iter().collect::<Result<Vec<f64>, String>>()?;
    let max = worst.iter().cloned().fold(0.0, f64::max);
    Ok(format!("{} symbols, N = {}, largest difference {max:.1e}", worst.len(), common::N))
}

fn basis_change_coherence() -> Outcome {
    let results: Vec<Result<usize, String>> = even_weights(4, 30)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| {
            let epsilons = all_epsilons((k - 2) / 6);
            let mut engines = epsilons
                .iter()
                .map(|e| Reducer::new(k, e))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            let mut pairs = 0;
            for j in 2..k {
                let results = engines
                    .iter_mut()
                    .map(|e| e.reduce(j, k - j))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                for res in &results {
                    for (eps, target) in epsilons.iter().zip(&results) {
                        let moved = change_generators(res, eps).map_err(|e| e.to_string())?;
                        check(moved.coefficients == target.coefficients, || {
                            format!("k={k} j={j}: {} -> {eps:?}", res.generators)
                        })?;
                        pairs += 1;
                    }
                }
            }
            Ok(pairs)
        })
        .collect();
    let total = results.into_iter().sum::<Result<usize, String>>()?;
    Ok(format!("{total} (input, ε, ε′) triples"))
}

fn analytic_anchors() -> Outcome {
    let ev = Evaluator::new();
    let bound = BigInt::from(10).pow(13);
    let one = |s: Symbol| FormalSum::single(s, Rational::one());
    let ratio = |x: Symbol, y: Symbol| -> Result<Rational, String> {
        let a = ev.eval(&one(x), 40).map_err(|e| e.to_string())?;
        let b = ev.eval(&one(y), 40).map_err(|e| e.to_string())?;
        let q = a.div(&b).map_err(|e| e.to_string())?;
        rational_reconstruct(&q, &bound)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no rational for {x}/{y}"))
    };
    let mut anchors = vec![
        (Symbol::DZ(2, 1), Symbol::Z(3), frac(1, 1)),
        (Symbol::DZ(3, 1), Symbol::Z(4), frac(1, 4)),
        (Symbol::DZ(2, 2), Symbol::Z(4), frac(3, 4)),
    ];
    for (a, k, expected) in [(2, 4, frac(5, 2)), (2, 6, frac(7, 4)), (4, 8, frac(7, 6))] {
        let closed = even_product_ratio(a, k).map_err(|e| e.to_string())?;
        check(closed == expected, || format!("even_product_ratio({a},{k}) = {closed}"))?;
        anchors.push((Symbol::P(a, k - a), Symbol::Z(k), expected));
    }
    for (x, y, expected) in &anchors {
        let got = ratio(*x, *y)?;
        check(&got == expected, || format!("{x}/{y} = {got}, expected {expected}"))?;
    }
    Ok(format!("{} ratios reconstructed exactly", anchors.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("generator reduction sweep, k <= 60", generator_sweep),
        ("numerical certification, k <= 24", numerical_certification),
        ("counting identities, k <= 200", counting_identities),
        ("weight-12 equation", weight_twelve_equation),
        ("exact relation suite, weight <= 20", exact_relation_suite),
        ("expansion coefficient sums, r+q+p <= 20", expansion_property),
        ("brute-force oracle agreement, weight <= 8", oracle_agreement),
        ("basis-change coherence, k <= 30", basis_change_coherence),
        ("analytic anchors", analytic_anchors),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {}. {name}: {detail} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
