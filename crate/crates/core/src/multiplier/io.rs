//! Field files.
//!
//! Binary container: the magic bytes `BFLD`, a little-endian `u16` version
//! (currently 1), a `u16` dimension and one `u32` size per axis, followed by
//! the samples in row-major order as little-endian `f64` pairs (re, im).
//! For planar grids the header is 16 bytes. Small planar grids can also be
//! exchanged as CSV with columns `i, j, re, im`.

use super::{ComplexField, FrequencyGrid, MultiplierSymbolGrid};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

pub const MAGIC: &[u8; 4] = b"BFLD";
pub const VERSION: u16 = 1;

pub fn write_container<W: Write>(mut w: W, grid: &FrequencyGrid, data: &[Complex64]) -> Result<()> {
    if data.len() != grid.len() {
        return Err(Error::Shape("data length does not match grid".into()));
    }
    let dim = u16::try_from(grid.dim).map_err(|_| Error::Format("dimension too large".into()))?;
    let size = u32::try_from(grid.size).map_err(|_| Error::Format("axis too large".into()))?;
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&dim.to_le_bytes())?;
    for _ in 0..grid.dim {
        w.write_all(&size.to_le_bytes())?;
    }
    for z in data {
        w.write_all(&z.re.to_le_bytes())?;
        w.write_all(&z.im.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a container; the box length is not stored and must be supplied.
pub fn read_container<R: Read>(mut r: R, box_length: f64) -> Result<(FrequencyGrid, Vec<Complex64>)> {
    let mut head = [0u8; 8];
    r.read_exact(&mut head).map_err(|_| Error::Format("truncated header".into()))?;
    if &head[..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let version = u16::from_le_bytes([head[4], head[5]]);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let dim = u16::from_le_bytes([head[6], head[7]]) as usize;
    if dim == 0 {
        return Err(Error::Format("zero dimension".into()));
    }
    let mut sizes = Vec::with_capacity(dim);
    for _ in 0..dim {
        let mut b = [0u8; 4];
        r.read_exact(&mut b).map_err(|_| Error::Format("truncated header".into()))?;
        sizes.push(u32::from_le_bytes(b) as usize);
    }
    if sizes.iter().any(|&s| s != sizes[0]) {
        return Err(Error::Format("axes of unequal length are not supported".into()));
    }
    let grid = FrequencyGrid::new(dim, sizes[0], box_length).map_err(|e| Error::Format(e.to_string()))?;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() != grid.len() * 16 {
        return Err(Error::Format(format!("expected {} data bytes, found {}", grid.len() * 16, bytes.len())));
    }
    let data = bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex64::new(re, im)
        })
        .collect();
    Ok((grid, data))
}

pub fn write_field(path: impl AsRef<Path>, f: &ComplexField) -> Result<()> {
    write_container(BufWriter::new(File::create(path)?), &f.grid, &f.data)
}

pub fn read_field(path: impl AsRef<Path>, box_length: f64) -> Result<ComplexField> {
    let (grid, data) = read_container(BufReader::new(File::open(path)?), box_length)?;
    ComplexField::new(grid, data)
}

/// Symbols are stored as their lattice values; the zero mode is `values[0]`.
pub fn write_symbol(path: impl AsRef<Path>, m: &MultiplierSymbolGrid) -> Result<()> {
    write_container(BufWriter::new(File::create(path)?), &m.grid, &m.values)
}

pub fn read_symbol(path: impl AsRef<Path>, box_length: f64) -> Result<MultiplierSymbolGrid> {
    let (grid, values) = read_container(BufReader::new(File::open(path)?), box_length)?;
    let bound = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(MultiplierSymbolGrid { grid, value_at_zero: values[0], values, bound })
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    i: usize,
    j: usize,
    re: f64,
    im: f64,
}

pub fn write_csv<W: Write>(w: W, f: &ComplexField) -> Result<()> {
    if f.grid.dim != 2 {
        return Err(Error::Config("CSV export is for planar grids".into()));
    }
    let mut out = csv::Writer::from_writer(w);
    let n = f.grid.size;
    for (idx, z) in f.data.iter().enumerate() {
        out.serialize(CsvRow { i: idx / n, j: idx % n, re: z.re, im: z.im })?;
    }
    out.flush()?;
    Ok(())
}

/// Reads CSV rows into a planar field; cells not listed are zero.
pub fn read_csv<R: Read>(r: R, grid: FrequencyGrid) -> Result<ComplexField> {
    if grid.dim != 2 {
        return Err(Error::Config("CSV import is for planar grids".into()));
    }
    let n = grid.size;
    let mut f = ComplexField::zeros(grid);
    for row in csv::Reader::from_reader(r).deserialize() {
        let row: CsvRow = row?;
        if row.i >= n || row.j >= n {
            return Err(Error::Format(format!("index ({}, {}) outside a {n}×{n} grid", row.i, row.j)));
        }
        f.data[row.i * n + row.j] = Complex64::new(row.re, row.im);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> ComplexField {
        let grid = FrequencyGrid::square(8, 2.0).unwrap();
        ComplexField::from_fn(grid, |x| Complex64::new(x[0] - 0.5 * x[1], x[0] * x[1]))
    }

    #[test]
    fn header_layout() {
        let f = field();
        let mut buf = Vec::new();
        write_container(&mut buf, &f.grid, &f.data).unwrap();
        assert_eq!(&buf[..4], b"BFLD");
        assert_eq!(&buf[4..8], &[1, 0, 2, 0]);
        assert_eq!(&buf[8..16], &[8, 0, 0, 0, 8, 0, 0, 0]);
        assert_eq!(buf.len(), 16 + 64 * 16);
        let (grid, data) = read_container(&buf[..], 2.0).unwrap();
        assert_eq!(grid, f.grid);
        assert_eq!(data, f.data);
    }

    #[test]
    fn corrupt_containers() {
        let f = field();
        let mut buf = Vec::new();
        write_container(&mut buf, &f.grid, &f.data).unwrap();
        assert!(read_container(&buf[..buf.len() - 1], 2.0).is_err());
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(read_container(&bad[..], 2.0).is_err());
        let mut bad = buf;
        bad[4] = 9;
        assert!(read_container(&bad[..], 2.0).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let f = field();
        let mut buf = Vec::new();
        write_csv(&mut buf, &f).unwrap();
        assert!(String::from_utf8(buf.clone()).unwrap().starts_with("i,j,re,im\n"));
        let g = read_csv(&buf[..], f.grid).unwrap();
        assert_eq!(g, f);
    }
}
