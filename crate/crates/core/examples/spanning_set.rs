//! The explicit spanning set of the double zeta space at one weight, with the
//! dimension bounds it realises.
//!
//! ```bash
//! cargo run --release --example spanning_set -- 20
//! ```

use dzv::exactsys::{exact_system, spanning_set_dz};
use dzv::reduce::dim_bounds;

pub fn run() -> dzv::Result<()> {
    let k: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20);
    let b = dim_bounds(k)?;
    println!(
        "weight {k}: dim M_k = {}, products ≤ {}, quotient ≤ {}, total ≤ {}",
        b.mf_dim, b.pz_bound, b.dm_bound, b.dz_bound
    );
    for s in spanning_set_dz(k)? {
        println!("  {s}");
    }
    let sys = exact_system(k)?;
    println!(
        "exact system: rank {} over {} columns, free double zetas {:?}",
        sys.rank(),
        sys.columns().len(),
        sys.free_dz().iter().map(|s| s.to_string()).collect::<Vec<_>>()
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
