use std::collections::BTreeSet;
use std::path::PathBuf;

use dataio::{format_float, load_report};
use evalkit::{rmap, EvalReport};

use crate::shared::{full_label, Failure};

/// Print the relative mAP change of a method against a baseline,
/// per class and overall, from two JSON reports written by `evaluate`.
#[derive(Debug, clap::Args)]
pub struct CompareArgs {
    /// Candidate method's evaluation report (JSON).
    #[arg(long, value_name = "REPORT")]
    pub method: PathBuf,

    /// Baseline evaluation report (JSON).
    #[arg(long, value_name = "REPORT")]
    pub baseline: PathBuf,
}

fn class_ap(report: &EvalReport, class_id: u64) -> Option<f64> {
    report.classes.iter().find(|c| c.class_id == class_id).map(|c| c.ap)
}

/// Relative change in percent, e.g. "-49.36%"; n/a when the baseline is not
/// positive (the ratio is undefined there).
fn percent_cell(method: f64, baseline: f64) -> String {
    match rmap(method, baseline) {
        Ok(r) => format!("{:+.2}%", r * 100.0),
        Err(_) => "n/a".to_string(),
    }
}

pub fn run(args: &CompareArgs) -> Result<(), Failure> {
    let method = load_report(&args.method)?;
    let baseline = load_report(&args.baseline)?;

    if method.criterion != baseline.criterion {
        eprintln!(
            "warning: reports use different criteria ({} vs {})",
            full_label(&method.criterion),
            full_label(&baseline.criterion)
        );
    }
    if method.thresholds != baseline.thresholds {
        eprintln!("warning: reports use different threshold schedules");
    }

    let class_ids: BTreeSet<u64> = method
        .classes
        .iter()
        .chain(&baseline.classes)
        .map(|c| c.class_id)
        .collect();

    println!("{:<10} {:>12} {:>12} {:>10}", "class", "method-AP", "baseline-AP", "RmAP");
    for id in class_ids {
        // A class absent from a report was never detected nor annotated
        // there; its AP is zero for comparison purposes.
        let m = class_ap(&method, id).unwrap_or(0.0);
        let b = class_ap(&baseline, id).unwrap_or(0.0);
        println!(
            "{:<10} {:>12} {:>12} {:>10}",
            id,
            format_float(m),
            format_float(b),
            percent_cell(m, b),
        );
    }

    let overall = rmap(method.map, baseline.map).map_err(|e| Failure::Internal(e.to_string()))?;
    println!(
        "{:<10} {:>12} {:>12} {:>10}",
        "overall",
        format_float(method.map),
        format_float(baseline.map),
        format!("{:+.2}%", overall * 100.0),
    );
    Ok(())
}
