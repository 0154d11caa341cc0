//! Ingestion and emission for the detection-analysis toolchain.
//!
//! Reads COCO-style JSON (ground-truth datasets and detection result
//! arrays) into the in-memory types the evaluation crates consume, and
//! writes every analysis artifact — evaluation reports, expectation
//! curves, density grids, filtered detections — as deterministic JSON or
//! CSV with floats rounded to six significant digits.
//!
//! Guarantees across all writers:
//! - byte-identical output for identical input (stable field and row order),
//! - round-trips within 1e-6 relative error for everything reloadable,
//! - loaders preserve record order and never silently drop records; repairs
//!   (box clamping, score clamping) are reported as warnings.

mod coco;
mod curves;
mod error;
mod fmt;
mod report;

pub use coco::{
    load_detections, load_ground_truth, write_detections, CategoryInfo, Dataset, DetectionsLoad,
    GroundTruthLoad, ImageInfo,
};
pub use curves::{
    write_curves, write_pdf_grid, CurveRow, PdfRow, TheoryColumns, CURVES_CSV_HEADER,
    CURVES_THEORY_COLUMNS, PDF_CSV_HEADER,
};
pub use error::DataError;
pub use fmt::{format_float, round_sig, OUTPUT_SIG_DIGITS};
pub use report::{load_report, write_report, ReportFormat, REPORT_CSV_HEADER};
