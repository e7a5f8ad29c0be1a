//! Reduce every double zeta value of one weight onto a generator set of the
//! quotient by products, then move the answers to the opposite parity choice.
//!
//! ```bash
//! cargo run --release --example reduce_to_generators -- 16
//! ```

use dzv::reduce::{change_generators, dim_bounds, Reducer};

fn weight_arg(default: u32) -> u32 {
    std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(default)
}

pub fn run() -> dzv::Result<()> {
    let k = weight_arg(16);
    let n = dim_bounds(k)?.dm_bound as usize;
    let mut engine = Reducer::new(k, &vec![0; n])?;
    let odd = vec![1; n];
    println!("weight {k}: generators {}", engine.generators());
    for j in 2..k {
        let res = engine.reduce(j, k - j)?;
        let moved = change_generators(&res, &odd)?;
        println!("{:<12} = {}   [{} steps]", res.input.to_string(), res.coefficients, res.trace.len());
        println!("{:<12} = {}   (odd parity)", "", moved.coefficients);
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
