//! Lift quotient relations to exact identities and certify them, reporting
//! the reconstructed product coefficients.
//!
//! ```bash
//! cargo run --release --example verify_weight -- 12 40
//! ```

use dzv::exactsys::lift_mod_relation_to_exact;
use dzv::numeric::Evaluator;
use dzv::reduce::{dim_bounds, Reducer};
use dzv::relations::cyclic;

pub fn run() -> dzv::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().ok());
    let k = args.next().flatten().unwrap_or(12);
    let digits = args.next().flatten().unwrap_or(40);
    let ev = Evaluator::new();

    let lifted = lift_mod_relation_to_exact(&cyclic(1, 1, 1)?, 50)?;
    println!("{}: {} = 0", lifted.label, lifted.lhs);

    let n = dim_bounds(k)?.dm_bound as usize;
    let mut engine = Reducer::new(k, &vec![0; n])?;
    let mut failed = 0;
    for j in 2..k {
        let rel = engine.reduce(j, k - j)?.relation();
        let report = ev.verify(&rel, digits)?;
        failed += usize::from(!report.pass);
        let products = report.coefficients.map(|c| c.to_string()).unwrap_or_default();
        let residual = if report.residual_log10.is_finite() {
            format!("1e{:.0}", report.residual_log10)
        } else {
            "0".to_string()
        };
        println!(
            "{} {:<18} residual {residual}, products {products}",
            if report.pass { "PASS" } else { "FAIL" },
            rel.label
        );
    }
    println!("{failed} failures at {digits} digits");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
