//! Plot-ready samples of the envelopes `X±(r, a)`.

use std::io::Write;
use std::path::Path;

use hdl_core::schwarz::{x_minus, x_plus, x_plus_deriv};

use crate::error::{HdlError, Result};

/// Largest radius in the table.
pub const ENVELOPE_RMAX: f64 = 1.0 - 1e-4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeRow {
    pub r: f64,
    pub x_minus: f64,
    pub x_plus: f64,
    pub x_plus_deriv: f64,
}

/// `rsteps` equally spaced rows on `[0, 1 - 1e-4]`.
pub fn envelope_rows(a: f64, rsteps: usize) -> Result<Vec<EnvelopeRow>> {
    if rsteps < 2 {
        return Err(HdlError::Config(format!("need at least 2 radial steps, got {rsteps}")));
    }
    (0..rsteps)
        .map(|i| {
            let r = if i + 1 == rsteps { ENVELOPE_RMAX } else { ENVELOPE_RMAX * i as f64 / (rsteps - 1) as f64 };
            Ok(EnvelopeRow {
                r,
                x_minus: x_minus(r, a)?,
                x_plus: x_plus(r, a)?,
                x_plus_deriv: x_plus_deriv(r, a)?,
            })
        })
        .collect()
}

/// Writes the table with a header row `r,x_minus,x_plus,x_plus_deriv`.
pub fn write_envelope_csv<W: Write>(writer: W, a: f64, rsteps: usize) -> Result<()> {
    write_rows(writer, &envelope_rows(a, rsteps)?)
}

fn write_rows<W: Write>(writer: W, rows: &[EnvelopeRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(["r", "x_minus", "x_plus", "x_plus_deriv"])?;
    for row in rows.iter() {
        out.write_record([row.r, row.x_minus, row.x_plus, row.x_plus_deriv].map(|v| format!("{v:.16e}")))?;
    }
    out.flush()?;
    Ok(())
}

pub fn emit_envelope_csv(a: f64, rsteps: usize, path: &Path) -> Result<()> {
    let rows = envelope_rows(a, rsteps)?;
    let file = std::fs::File::create(path)?;
    write_rows(std::io::BufWriter::new(file), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hdl_core::schwarz::boundary_bound;
    use std::f64::consts::PI;

    #[test]
    fn first_row_is_the_center_value() {
        for a in [-0.7, 0.0, 0.4] {
            let rows = envelope_rows(a, 11).unwrap();
            assert_eq!(rows[0].r, 0.0);
            assert!((rows[0].x_minus - a).abs() < 1e-15);
            assert!((rows[0].x_plus - a).abs() < 1e-15);
        }
    }

    #[test]
    fn centered_upper_envelope_is_arctan() {
        for row in envelope_rows(0.0, 101).unwrap() {
            assert!((row.x_plus - 4.0 / PI * row.r.atan()).abs() < 1e-12, "r = {}", row.r);
        }
    }

    #[test]
    fn last_derivative_tends_to_boundary_bound() {
        for a in [-0.5, 0.0, 0.3] {
            let rows = envelope_rows(a, 50).unwrap();
            let last = rows.last().unwrap();
            assert_eq!(last.r, ENVELOPE_RMAX);
            assert!((last.x_plus_deriv - boundary_bound(a).unwrap()).abs() < 1e-3);
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(envelope_rows(0.0, 1).is_err());
        assert!(envelope_rows(1.0, 10).is_err());
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_envelope_csv(&mut buf, 0.0, 3).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "r,x_minus,x_plus,x_plus_deriv");
        assert!(lines[1].starts_with("0.0000000000000000e0,"));
    }
}
