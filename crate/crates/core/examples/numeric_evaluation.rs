//! Certified enclosures of single, double and Tornheim values, rational
//! reconstruction of a known ratio, and a brute-force cross-check.
//!
//! ```bash
//! cargo run --release --example numeric_evaluation
//! ```

use dzv::numeric::{rational_reconstruct, tornheim_direct, Evaluator};
use dzv::relations::even_product_ratio;
use num_bigint::BigInt;

pub fn run() -> dzv::Result<()> {
    let ev = Evaluator::new();
    let z3 = ev.zeta_single(3, 50)?;
    let z21 = ev.zeta_double(2, 1, 50)?;
    println!("ζ(3)   = {}", z3.to_decimal(45));
    println!("ζ(2,1) = {}", z21.to_decimal(45));
    let t = ev.tornheim(1, 2, 3, 50)?;
    println!("T(1,2,3) = {}  (radius 1e{:.0})", t.to_decimal(45), t.rad_log10());

    let z6 = ev.zeta_single(6, 40)?;
    let z2 = ev.zeta_single(2, 40)?;
    let z4 = ev.zeta_single(4, 40)?;
    let ratio = z2.mul(&z4).div(&z6)?;
    let r = rational_reconstruct(&ratio, &BigInt::from(10u32).pow(12))?;
    println!(
        "ζ(2)ζ(4)/ζ(6) reconstructs to {:?}; closed form {}",
        r.map(|x| x.to_string()),
        even_product_ratio(2, 6)?
    );

    let direct = tornheim_direct(1, 2, 3, 2000)?;
    println!(
        "brute force T(1,2,3) ≈ {:.12} ± {:.1e}",
        direct.value, direct.error
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
