//! CSV emission for Monte-Carlo expectation curves and density grids.

use std::path::Path;

use crate::coco::write_text;
use crate::error::DataError;
use crate::fmt::format_float;

/// Closed-form reference columns attached to a Monte-Carlo row: quadrature
/// mean and standard deviation, and the studentized discrepancy
/// `(mc_mean - theory_mean) / std_error`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryColumns {
    pub mean: f64,
    pub std: f64,
    pub z_score: f64,
}

/// One row of an expectation/spread-versus-size curve.
///
/// `criterion` is a free-form label (parameters of criteria that have no
/// dedicated column are embedded there); `gamma`/`kappa` are populated only
/// for the size-adaptive criteria. `theory` adds the closed-form columns
/// when available.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub criterion: String,
    pub omega: f64,
    pub sigma0: f64,
    pub lambda: f64,
    pub gamma: Option<f64>,
    pub kappa: Option<f64>,
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub std_error: f64,
    pub theory: Option<TheoryColumns>,
}

/// One row of a sampled probability-density grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PdfRow {
    pub criterion: String,
    pub omega: f64,
    pub z: f64,
    pub density: f64,
}

/// Fixed base header of the curve CSV.
pub const CURVES_CSV_HEADER: &str = "criterion,omega,sigma0,lambda,gamma,kappa,n,mean,std,std_error";

/// Columns appended to [`CURVES_CSV_HEADER`] when any row carries theory.
pub const CURVES_THEORY_COLUMNS: &str = "theory_mean,theory_std,z_score";

/// Header of the density-grid CSV.
pub const PDF_CSV_HEADER: &str = "criterion,omega,z,density";

/// Quote a CSV cell only when it needs quoting.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt_float(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

/// Write expectation-curve rows in input order. The theory columns are
/// appended exactly when at least one row carries them; rows without theory
/// leave those cells empty.
pub fn write_curves(rows: &[CurveRow], path: impl AsRef<Path>) -> Result<(), DataError> {
    let with_theory = rows.iter().any(|r| r.theory.is_some());
    let mut out = String::new();
    out.push_str(CURVES_CSV_HEADER);
    if with_theory {
        out.push(',');
        out.push_str(CURVES_THEORY_COLUMNS);
    }
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}",
            csv_field(&row.criterion),
            format_float(row.omega),
            format_float(row.sigma0),
            format_float(row.lambda),
            opt_float(row.gamma),
            opt_float(row.kappa),
            row.n,
            format_float(row.mean),
            format_float(row.std),
            format_float(row.std_error),
        ));
        if with_theory {
            match row.theory {
                Some(t) => out.push_str(&format!(
                    ",{},{},{}",
                    format_float(t.mean),
                    format_float(t.std),
                    format_float(t.z_score),
                )),
                None => out.push_str(",,,"),
            }
        }
        out.push('\n');
    }
    write_text(path.as_ref(), &out)
}

/// Write density-grid rows in input order.
pub fn write_pdf_grid(rows: &[PdfRow], path: impl AsRef<Path>) -> Result<(), DataError> {
    let mut out = String::new();
    out.push_str(PDF_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            csv_field(&row.criterion),
            format_float(row.omega),
            format_float(row.z),
            format_float(row.density),
        ));
    }
    write_text(path.as_ref(), &out)
}
