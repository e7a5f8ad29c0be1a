//! Write a reduction table to disk, validate it on a second write, and read
//! it back as reductions.
//!
//! ```bash
//! cargo run --release --example persist_table
//! ```

use dzv::io::{read_table, write_table, JsonCodec, TableFile, TableStatus};

pub fn run() -> dzv::Result<()> {
    let dir = tempfile::tempdir()?;
    let table = TableFile::build(14, &[1, 0])?;
    let (path, status) = write_table(dir.path(), &table, false)?;
    println!("{} -> {:?}", path.display(), status);
    let (_, again) = write_table(dir.path(), &table, false)?;
    assert_eq!(again, TableStatus::Validated);
    println!("second write: {again:?}");

    let back = read_table(&path)?;
    for r in back.reductions()? {
        println!("  {} = {}", r.input, r.coefficients);
    }
    let first = &back.reductions()?[0];
    println!("{}", first.to_json()?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
