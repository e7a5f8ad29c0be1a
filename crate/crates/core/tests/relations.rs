mod common;

use common::{bernoulli_table, pascal};
use dzv::numeric::Evaluator;
use dzv::relations::{
    bernoulli, binomial, boyadzhiev_mod, cyclic, descent, exact_relations_of_weight, from_label,
    tornheim_expand,
};
use dzv::symbols::{QuotientMode, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[test]
fn exact_relations_vanish_numerically() {
    let ev = Evaluator::new();
    for k in 3..=20 {
        for rel in exact_relations_of_weight(k).unwrap() {
            assert_eq!(rel.mode, QuotientMode::Exact);
            let r = ev.verify(&rel, 40).unwrap();
            assert!(r.pass && r.residual_log10 < -30.0, "{rel}: {r:?}");
        }
    }
}

#[test]
fn expansion_counts_lattice_paths() {
    let c = pascal(40);
    for w in 3..=20u32 {
        for r in 1..w {
            for q in 0..w - r {
                let p = w - r - q;
                if r == 1 && q * p == 0 {
                    assert!(tornheim_expand(r, q, p).is_err());
                    continue;
                }
                let e = tornheim_expand(r, q, p).unwrap();
                let total: Rational = e.iter().map(|(_, c)| c.clone()).sum();
                assert_eq!(total, Rational::from_integer(c[(q + p) as usize][p as usize].clone()));
                assert!(e.iter().all(|(_, c)| c.is_integer() && c.is_positive()));
                assert_eq!(e, tornheim_expand(r, p, q).unwrap());
                assert!(e.weight().is_none_or(|x| x == w));
            }
        }
    }
}

#[test]
fn bernoulli_numbers_match_akiyama_tanigawa() {
    let table = bernoulli_table(120);
    for n in (0..=120).filter(|n| n % 2 == 0) {
        assert_eq!(bernoulli(n), table[n], "B_{n}");
    }
    for n in (3..=41).step_by(2) {
        assert!(bernoulli(n).is_zero());
    }
}

#[test]
fn binomials_match_pascal() {
    let c = pascal(120);
    for n in 0..=120u64 {
        for k in 0..=n {
            assert_eq!(binomial(n, k), c[n as usize][k as usize]);
        }
    }
    assert_eq!(binomial(5, 7), BigInt::zero());
}

#[test]
fn cyclic_relations_are_multiples_of_zeta_k() {
    let ev = Evaluator::new();
    for k in (3..=14u32).filter(|k| k % 2 == 0 || *k == 3) {
        for p in 1..=k / 3 {
            for q in p..=(k - p) / 2 {
                let rel = cyclic(k - p - q, q, p).unwrap();
                let r = ev.verify(&rel, 50).unwrap();
                assert!(r.pass, "{rel}: {r:?}");
                let zk = r.coefficients.unwrap();
                assert!(zk.iter().all(|(s, _)| s.is_product_part() && s.weight() == k));
            }
        }
    }
}

#[test]
fn top_term_and_descent_relations_lie_in_products() {
    let ev = Evaluator::new();
    for k in (4..=16u32).step_by(2) {
        for p in 2..k {
            for r in 1..=k - p {
                let q = k - p - r;
                if q + r < 2 {
                    continue;
                }
                let rel = boyadzhiev_mod(r, q, p).unwrap();
                let rep = ev.verify(&rel, 40).unwrap();
                assert!(rep.pass, "{rel}: {rep:?}");
            }
        }
        for r in (3..=k - 3).step_by(2) {
            let rel = descent(r, k).unwrap();
            assert!(ev.verify(&rel, 40).unwrap().pass, "{rel}");
        }
    }
}

#[test]
fn labels_rebuild_relations() {
    for k in 3..=12 {
        for rel in exact_relations_of_weight(k).unwrap() {
            assert_eq!(from_label(&rel.label).unwrap(), rel);
        }
    }
    assert_eq!(from_label("descent(5,12)").unwrap(), descent(5, 12).unwrap());
    assert!(from_label("descent(5,12").is_err());
    assert!(from_label("unknown(1)").is_err());
}
