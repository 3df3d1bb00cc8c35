//! CSV reading and writing.
//!
//! Files are comma separated with a header row. Coordinates are written in
//! Rust's shortest round-trip form, so re-reading a written file reproduces
//! every `f64` bit for bit.

use std::io::{Read, Write};

use crate::bandwidth::TrajectoryRecord;
use crate::error::{Error, Result};
use crate::types::{validate_dataset, Dataset};

/// A parsed points file.
#[derive(Debug, Clone, PartialEq)]
pub struct PointsCsv {
    pub dataset: Dataset,
    /// Contents of a `truth` column, if present.
    pub truth: Option<Vec<i64>>,
    /// Contents of a `label` column, if present.
    pub labels: Option<Vec<i64>>,
}

/// Reads points from CSV. Columns named `truth` or `label` are parsed as
/// integer annotations; every other column is a coordinate.
pub fn read_points<R: Read>(reader: R) -> Result<PointsCsv> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let truth_col = headers.iter().position(|h| h == "truth");
    let label_col = headers.iter().position(|h| h == "label");
    let coord_cols: Vec<usize> = (0..headers.len())
        .filter(|&c| Some(c) != truth_col && Some(c) != label_col)
        .collect();
    if coord_cols.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no coordinate columns in header".into(),
        });
    }

    let mut rows = Vec::new();
    let mut truth = truth_col.map(|_| Vec::new());
    let mut labels = label_col.map(|_| Vec::new());
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |c: usize| record.get(c).unwrap_or("");
        let row = coord_cols
            .iter()
            .map(|&c| {
                let v: f64 = field(c).parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("not a number: {:?}", field(c)),
                })?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Parse {
                        line,
                        message: format!("non-finite value {:?}", field(c)),
                    })
                }
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
        for (col, out) in [(truth_col, &mut truth), (label_col, &mut labels)] {
            if let (Some(c), Some(out)) = (col, out.as_mut()) {
                let v: i64 = field(c).parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("not an integer label: {:?}", field(c)),
                })?;
                out.push(v);
            }
        }
    }
    Ok(PointsCsv {
        dataset: validate_dataset(&rows)?,
        truth,
        labels,
    })
}

pub fn coord_names(dim: usize) -> Vec<String> {
    if dim <= 3 {
        ["x", "y", "z"][..dim]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (0..dim).map(|i| format!("x{i}")).collect()
    }
}

/// Writes the coordinates of `ds` plus one integer column named `column`.
pub fn write_points<W: Write, L: std::fmt::Display>(
    mut w: W,
    ds: &Dataset,
    column: &str,
    values: &[L],
) -> Result<()> {
    assert_eq!(values.len(), ds.len(), "one value per point");
    writeln!(w, "{},{column}", coord_names(ds.dim()).join(","))?;
    for (p, v) in ds.points().zip(values) {
        for c in p {
            write!(w, "{c:?},")?;
        }
        writeln!(w, "{v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trajectory<W: Write>(mut w: W, records: &[TrajectoryRecord]) -> Result<()> {
    writeln!(w, "step,h,sampled_loss")?;
    for r in records {
        writeln!(w, "{},{:?},{:?}", r.step, r.h, r.sampled_loss)?;
    }
    w.flush()?;
    Ok(())
}
