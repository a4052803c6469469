//! CSV serialization of grid functions (`x,y,re,im`) and boundary densities
//! (`xi,re,im`). Numbers are written with 17 significant digits so a
//! write/read cycle reproduces every `f64` exactly.

use crate::error::{Error, Result};
use crate::grid::{BoundaryDensity, GridFunction, HalfPlaneGrid, Repr};
use ndarray::Array2;
use num_complex::Complex64;
use std::io::{Read, Write};

/// C-style `%.17g`.
pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    const P: i32 = 17;
    let sci = format!("{:.*e}", (P - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= P {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_grid_function<W: Write>(f: &GridFunction, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "re", "im"])?;
    let g = f.grid();
    for (ix, &x) in g.x_nodes().iter().enumerate() {
        for (iy, &y) in g.y_nodes().iter().enumerate() {
            let v = f.get(ix, iy);
            w.write_record([fmt_g17(x), fmt_g17(y), fmt_g17(v.re), fmt_g17(v.im)])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a grid function written by [`write_grid_function`]. The file does not
/// record the representation, so the caller supplies it.
pub fn read_grid_function<R: Read>(input: R, repr: Repr) -> Result<GridFunction> {
    let rows = read_rows::<R, 4>(input, ["x", "y", "re", "im"])?;
    if rows.is_empty() {
        return Err(Error::Io("grid function file has no data rows".into()));
    }
    let y0 = rows[0][0];
    let n_y = rows.iter().take_while(|r| r[0] == y0).count();
    if rows.len() % n_y != 0 {
        return Err(Error::Io(format!(
            "{} rows do not form a tensor grid with {n_y} y nodes",
            rows.len()
        )));
    }
    let n_x = rows.len() / n_y;
    let y_nodes: Vec<f64> = rows[..n_y].iter().map(|r| r[1]).collect();
    let x_nodes: Vec<f64> = (0..n_x).map(|i| rows[i * n_y][0]).collect();
    for (k, r) in rows.iter().enumerate() {
        let (i, j) = (k / n_y, k % n_y);
        if r[0] != x_nodes[i] || r[1] != y_nodes[j] {
            return Err(Error::Io(format!(
                "row {} breaks the x-major tensor layout",
                k + 2
            )));
        }
    }
    let grid = HalfPlaneGrid::from_nodes(x_nodes, y_nodes)?;
    let values = Array2::from_shape_fn((n_x, n_y), |(i, j)| {
        let r = &rows[i * n_y + j];
        Complex64::new(r[2], r[3])
    });
    GridFunction::new(grid, values, repr)
}

pub fn write_density<W: Write>(phi: &BoundaryDensity, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["xi", "re", "im"])?;
    for (xi, v) in phi.xi_nodes().iter().zip(phi.values()) {
        w.write_record([fmt_g17(*xi), fmt_g17(v.re), fmt_g17(v.im)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_density<R: Read>(input: R) -> Result<BoundaryDensity> {
    let rows = read_rows::<R, 3>(input, ["xi", "re", "im"])?;
    BoundaryDensity::new(
        rows.iter().map(|r| r[0]).collect(),
        rows.iter().map(|r| Complex64::new(r[1], r[2])).collect(),
    )
}

/// Header of a CSV file, for telling the two formats apart.
pub fn sniff_header<R: Read>(input: R) -> Result<Vec<String>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.headers()?.iter().map(|s| s.trim().to_string()).collect())
}

fn read_rows<R: Read, const N: usize>(input: R, header: [&str; N]) -> Result<Vec<[f64; N]>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let found: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if found != header {
        return Err(Error::Io(format!(
            "expected header '{}', found '{}'",
            header.join(","),
            found.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != N {
            return Err(Error::Io(format!("row {}: expected {N} fields", k + 2)));
        }
        let mut row = [0.0; N];
        for (slot, field) in row.iter_mut().zip(rec.iter()) {
            *slot = field
                .parse()
                .map_err(|_| Error::Io(format!("row {}: '{field}' is not a number", k + 2)))?;
        }
        rows.push(row);
    }
    Ok(rows)
}
