//! CSV export and import of sampled field pairs.
//!
//! One row per grid node in row-major x, y, z, t order (t fastest), every
//! number printed with 17 significant digits so doubles survive the round
//! trip bit for bit. The reader infers the grid from the coordinate columns
//! and rejects files whose rows are out of order.

use crate::error::{Error, Result};
use crate::grid::{GridSpec, SampledField};
use crate::vec3::{ComplexVec3, RealVec3};
use num_complex::Complex64;
use std::io::{BufRead, Write};

pub const FIELD_HEADER: &str =
    "x,y,z,t,Ex_re,Ex_im,Ey_re,Ey_im,Ez_re,Ez_im,Bx_re,Bx_im,By_re,By_im,Bz_re,Bz_im";

/// 17 significant digits: enough for bit-exact f64 round-trips.
pub fn full_precision(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_fields_csv<W: Write>(out: &mut W, e: &SampledField, b: &SampledField) -> Result<()> {
    if e.grid() != b.grid() {
        return Err(Error::Csv("electric and magnetic samples live on different grids".into()));
    }
    writeln!(out, "{FIELD_HEADER}")?;
    let grid = e.grid();
    let mut columns: Vec<String> = Vec::with_capacity(16);
    for node in grid.nodes() {
        let (r, t) = grid.coords(node);
        let ev = e.value(node);
        let bv = b.value(node);
        columns.clear();
        for v in [r.x, r.y, r.z, t] {
            columns.push(full_precision(v));
        }
        for c in [ev.x, ev.y, ev.z, bv.x, bv.y, bv.z] {
            columns.push(full_precision(c.re));
            columns.push(full_precision(c.im));
        }
        writeln!(out, "{}", columns.join(","))?;
    }
    Ok(())
}

fn distinct_sorted(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = values.collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| a == b);
    out
}

fn check_uniform(name: &str, values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Ok(());
    }
    let first_gap = values[1] - values[0];
    for pair in values.windows(2) {
        let gap = pair[1] - pair[0];
        if (gap - first_gap).abs() > 1e-9 * first_gap.abs() {
            return Err(Error::Csv(format!(
                "axis {name} is not uniformly spaced: gaps {first_gap} and {gap}"
            )));
        }
    }
    Ok(())
}

pub fn read_fields_csv<R: BufRead>(input: R) -> Result<(SampledField, SampledField)> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::Csv("empty input".into()))??;
    if header.trim_end() != FIELD_HEADER {
        return Err(Error::Csv(format!("unexpected header: {header:?}")));
    }

    let mut rows: Vec<[f64; 16]> = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 16 {
            return Err(Error::Csv(format!(
                "row {}: expected 16 columns, got {}",
                i + 2,
                fields.len()
            )));
        }
        let mut row = [0.0; 16];
        for (j, field) in fields.iter().enumerate() {
            row[j] = field.trim().parse::<f64>().map_err(|_| {
                Error::Csv(format!("row {}: unparseable number {field:?}", i + 2))
            })?;
            if !row[j].is_finite() {
                return Err(Error::Csv(format!("row {}: non-finite value", i + 2)));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Csv("no data rows".into()));
    }

    let axes: Vec<Vec<f64>> =
        (0..4).map(|c| distinct_sorted(rows.iter().map(|r| r[c]))).collect();
    let counts = [axes[0].len(), axes[1].len(), axes[2].len(), axes[3].len()];
    if counts.iter().product::<usize>() != rows.len() {
        return Err(Error::Csv(format!(
            "{} rows do not fill a {}x{}x{}x{} grid",
            rows.len(),
            counts[0],
            counts[1],
            counts[2],
            counts[3]
        )));
    }
    for (name, values) in ["x", "y", "z", "t"].iter().zip(&axes) {
        check_uniform(name, values)?;
    }

    let span = |v: &[f64]| v[v.len() - 1] - v[0];
    let grid = GridSpec::new(
        RealVec3::new(axes[0][0], axes[1][0], axes[2][0]),
        RealVec3::new(span(&axes[0]), span(&axes[1]), span(&axes[2])),
        [counts[0], counts[1], counts[2]],
        axes[3][0],
        span(&axes[3]),
        counts[3],
    )?;

    let mut e_values = Vec::with_capacity(rows.len());
    let mut b_values = Vec::with_capacity(rows.len());
    for (row, node) in rows.iter().zip(grid.nodes()) {
        let expected = [axes[0][node[0]], axes[1][node[1]], axes[2][node[2]], axes[3][node[3]]];
        if row[..4] != expected {
            return Err(Error::Csv(format!(
                "rows are not in row-major x,y,z,t order (t fastest); \
                 mismatch at node {node:?}"
            )));
        }
        e_values.push(ComplexVec3::new(
            Complex64::new(row[4], row[5]),
            Complex64::new(row[6], row[7]),
            Complex64::new(row[8], row[9]),
        ));
        b_values.push(ComplexVec3::new(
            Complex64::new(row[10], row[11]),
            Complex64::new(row[12], row[13]),
            Complex64::new(row[14], row[15]),
        ));
    }

    Ok((
        SampledField::from_values(grid.clone(), e_values)?,
        SampledField::from_values(grid, b_values)?,
    ))
}
