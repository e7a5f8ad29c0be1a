//! Linear equations among ζ(odd, odd) forced by the period polynomials, for a
//! range of weights, each checked numerically.
//!
//! ```bash
//! cargo run --release --example oddodd_equations -- 30
//! ```

use dzv::exactsys::nontrivial_equations;
use dzv::numeric::eval_formal;
use dzv::reduce::mf_dim;

pub fn run() -> dzv::Result<()> {
    let max_k: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(30);
    for k in (12..=max_k).step_by(2) {
        let eqs = nontrivial_equations(k)?;
        println!("weight {k}: {} equations (dim M_k - 1 = {})", eqs.len(), mf_dim(k) - 1);
        for e in &eqs {
            let residual = eval_formal(&e.to_formal_sum(), 40)?;
            println!("  i = {:<3} {e}    |value| < 1e{:.0}", e.i, residual.abs_upper_log10());
        }
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
