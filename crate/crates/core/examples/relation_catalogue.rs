//! Print every relation family of one weight and certify each numerically.
//!
//! ```bash
//! cargo run --release --example relation_catalogue -- 8
//! ```

use dzv::numeric::Evaluator;
use dzv::relations::{boyadzhiev_mod, cyclic, descent, exact_relations_of_weight};

pub fn run() -> dzv::Result<()> {
    let k: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let mut rels = exact_relations_of_weight(k)?;
    rels.push(cyclic(k - 2, 1, 1)?);
    rels.push(boyadzhiev_mod(k - 4, 2, 2)?);
    if k % 2 == 0 {
        rels.push(descent(3, k)?);
    }
    let ev = Evaluator::new();
    for rel in &rels {
        let report = ev.verify(rel, 30)?;
        println!(
            "[{}] {:<24} {:<9} residual 1e{:.0}",
            if report.pass { "ok" } else { "FAIL" },
            rel.label,
            rel.mode.as_str(),
            report.residual_log10
        );
        println!("      {} = 0", rel.lhs);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
