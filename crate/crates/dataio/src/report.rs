//! Emission of evaluation reports as JSON (lossless up to six significant
//! digits, reloadable) and as flat CSV for spreadsheet / plotting tools.

use std::path::Path;

use evalkit::EvalReport;
use serde_json::Value;

use crate::coco::{read_json, write_text};
use crate::error::DataError;
use crate::fmt::{format_float, round_sig, OUTPUT_SIG_DIGITS};

/// Output encodings understood by [`write_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Round every fractional number in a JSON tree to the crate-wide precision;
/// integers (counts, ids) pass through untouched.
fn round_numbers(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                let rounded = round_sig(n.as_f64().expect("checked is_f64"), OUTPUT_SIG_DIGITS);
                *n = serde_json::Number::from_f64(rounded).expect("rounding preserves finiteness");
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// Column header of the CSV report layout. One row per (class, threshold)
/// pair, then the threshold-wise mean-AP rows, a grand-mean row, the
/// size-bucket rows, and the average-recall row. Cells that do not apply to
/// a row kind are left empty.
pub const REPORT_CSV_HEADER: &str = "record,label,threshold,value,tp,fp,fn,n_gt";

fn report_csv(report: &EvalReport) -> String {
    let mut out = String::new();
    out.push_str(REPORT_CSV_HEADER);
    out.push('\n');
    if report.classes.is_empty() {
        return out;
    }

    for class in &report.classes {
        for (ti, &t) in report.thresholds.iter().enumerate() {
            let c = class.counts_per_threshold[ti];
            out.push_str(&format!(
                "class,{},{},{},{},{},{},{}\n",
                class.class_id,
                format_float(t),
                format_float(class.ap_per_threshold[ti]),
                c.tp,
                c.fp,
                c.missed,
                class.n_gt,
            ));
        }
    }
    for (ti, &t) in report.thresholds.iter().enumerate() {
        out.push_str(&format!(
            "map,,{},{},,,,\n",
            format_float(t),
            format_float(report.map_per_threshold[ti]),
        ));
    }
    out.push_str(&format!("map,mean,,{},,,,\n", format_float(report.map)));

    let sb = report.size_breakdown;
    let buckets = [
        ("all", Some(sb.all)),
        ("small", sb.small),
        ("medium", sb.medium),
        ("large", sb.large),
    ];
    for (label, value) in buckets {
        let cell = value.map(format_float).unwrap_or_default();
        out.push_str(&format!("size,{label},,{cell},,,,\n"));
    }
    out.push_str(&format!("ar,mean,,{},,,,\n", format_float(report.average_recall)));
    out
}

/// Write an evaluation report. JSON output is reloadable via
/// [`load_report`]; CSV output follows [`REPORT_CSV_HEADER`]. Floats are
/// rounded to six significant digits in both encodings, and field/row order
/// is deterministic, so identical reports produce byte-identical files.
pub fn write_report(
    report: &EvalReport,
    path: impl AsRef<Path>,
    format: ReportFormat,
) -> Result<(), DataError> {
    let path = path.as_ref();
    let text = match format {
        ReportFormat::Json => {
            let mut value = serde_json::to_value(report).expect("report is serializable");
            round_numbers(&mut value);
            serde_json::to_string_pretty(&value).expect("value tree is serializable")
        }
        ReportFormat::Csv => report_csv(report),
    };
    write_text(path, &text)
}

/// Reload a report previously written with [`ReportFormat::Json`].
pub fn load_report(path: impl AsRef<Path>) -> Result<EvalReport, DataError> {
    read_json(path.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use boxcore::{BoundingBox, CriterionSpec};
    use evalkit::{evaluate, ApStyle, Detection, EvalConfig, GroundTruthObject};

    fn toy_report() -> EvalReport {
        let gts = vec![
            GroundTruthObject {
                image_id: 0,
                class_id: 1,
                bbox: BoundingBox::new(0.0, 0.0, 10.0, 10.0).unwrap(),
            },
            GroundTruthObject {
                image_id: 0,
                class_id: 2,
                bbox: BoundingBox::new(50.0, 50.0, 40.0, 40.0).unwrap(),
            },
        ];
        let dets = vec![
            Detection {
                image_id: 0,
                class_id: 1,
                bbox: BoundingBox::new(0.0, 0.0, 10.0, 9.0).unwrap(),
                score: 0.9,
            },
            Detection {
                image_id: 0,
                class_id: 2,
                bbox: BoundingBox::new(120.0, 0.0, 5.0, 5.0).unwrap(),
                score: 0.3,
            },
        ];
        let config =
            EvalConfig::new(CriterionSpec::iou(), vec![0.5, 0.75], ApStyle::ElevenPoint).unwrap();
        evaluate(&dets, &gts, &config).unwrap()
    }

    #[test]
    fn csv_layout_has_the_documented_shape() {
        let report = toy_report();
        let text = report_csv(&report);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], REPORT_CSV_HEADER);
        let classes = report.classes.len();
        let thresholds = report.thresholds.len();
        // class rows + per-threshold map rows + map mean + 4 size rows + ar.
        assert_eq!(lines.len(), 1 + classes * thresholds + thresholds + 1 + 4 + 1);
        assert!(lines[1].starts_with("class,1,0.5,"));
        assert!(lines.iter().any(|l| l.starts_with("map,mean,,")));
        assert!(lines.last().unwrap().starts_with("ar,mean,,"));
        // Every row has exactly the header's column count.
        let cols = REPORT_CSV_HEADER.split(',').count();
        for line in &lines {
            assert_eq!(line.split(',').count(), cols, "row {line}");
        }
    }

    #[test]
    fn report_without_classes_yields_header_only_csv() {
        let config =
            EvalConfig::new(CriterionSpec::iou(), vec![0.5], ApStyle::ElevenPoint).unwrap();
        let report = evaluate(&[], &[], &config).unwrap();
        assert!(report.classes.is_empty());
        assert_eq!(report_csv(&report), format!("{REPORT_CSV_HEADER}\n"));
    }

    #[test]
    fn size_bucket_cells_are_empty_when_absent() {
        let report = toy_report();
        // Toy boxes are all small/medium; the large bucket must be absent.
        assert!(report.size_breakdown.large.is_none());
        let text = report_csv(&report);
        assert!(text.contains("size,large,,,,,,\n"), "{text}");
    }

    #[test]
    fn json_rounding_touches_fractions_but_not_counts() {
        let mut value = serde_json::json!({
            "tp": 123456789_u64,
            "ap": 0.123456789,
            "nested": [{"v": 2.718281828459045}],
        });
        round_numbers(&mut value);
        assert_eq!(value["tp"], serde_json::json!(123456789_u64));
        assert_eq!(value["ap"], serde_json::json!(0.123457));
        assert_eq!(value["nested"][0]["v"], serde_json::json!(2.71828));
    }
}
