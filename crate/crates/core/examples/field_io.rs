//! Writing and reading fields: the binary container and CSV, then applying
//! a symbol read back from disk.
//!
//! cargo run --release --example field_io -- [dir]

use burkholder::multiplier::io::{read_csv, read_field, read_symbol, write_csv, write_field, write_symbol};
use burkholder::multiplier::{apply_symbol, symbol_beurling, ComplexField, FrequencyGrid};
use num_complex::Complex64;
use std::path::PathBuf;

fn main() -> burkholder::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let grid = FrequencyGrid::square(64, 2.0)?;
    let f = ComplexField::from_fn(grid, |x| Complex64::new((x[0] * 3.0).sin(), (x[1] * 2.0).cos()));

    let field_path = dir.join("example_field.bfld");
    write_field(&field_path, &f)?;
    let back = read_field(&field_path, grid.box_length)?;
    println!("container round trip: identical = {}", back.data == f.data);

    let mut buf = Vec::new();
    write_csv(&mut buf, &f)?;
    let from_csv = read_csv(buf.as_slice(), grid)?;
    println!("CSV round trip: identical = {}, {} bytes", from_csv.data == f.data, buf.len());

    let symbol_path = dir.join("example_beurling.bfld");
    write_symbol(&symbol_path, &symbol_beurling(grid)?)?;
    let m = read_symbol(&symbol_path, grid.box_length)?;
    let bf = apply_symbol(&f, &m)?;
    let direct = apply_symbol(&f, &symbol_beurling(grid)?)?;
    println!("Beurling via stored symbol: identical = {}", bf.data == direct.data);
    println!("wrote {} and {}", field_path.display(), symbol_path.display());
    Ok(())
}
