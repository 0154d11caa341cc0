use std::path::PathBuf;

use clap::ValueEnum;
use dataio::{format_float, load_detections, load_ground_truth, write_report, ReportFormat};
use evalkit::{evaluate, ApStyle, EvalConfig, EvalReport};

use crate::shared::{full_label, parse_thresholds, print_warnings, CriterionArgs, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApStyleArg {
    /// Mean interpolated precision over recalls 0.0, 0.1, ..., 1.0.
    #[value(name = "11pt")]
    ElevenPoint,
    /// Exact area under the interpolated precision-recall envelope.
    #[value(name = "auc")]
    Auc,
}

impl From<ApStyleArg> for ApStyle {
    fn from(a: ApStyleArg) -> Self {
        match a {
            ApStyleArg::ElevenPoint => ApStyle::ElevenPoint,
            ApStyleArg::Auc => ApStyle::ContinuousAuc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        }
    }
}

/// Score detections against ground truth and print the mAP summary.
#[derive(Debug, clap::Args)]
pub struct EvaluateArgs {
    /// COCO-style ground-truth JSON (images/annotations/categories).
    #[arg(long, value_name = "PATH")]
    pub gt: PathBuf,

    /// COCO-style detection results JSON (array of scored boxes).
    #[arg(long, value_name = "PATH")]
    pub dets: PathBuf,

    #[command(flatten)]
    pub criterion: CriterionArgs,

    /// Matching thresholds: a single value ("0.5") or an inclusive range
    /// ("0.5:0.95") expanded with step 0.05.
    #[arg(long, value_name = "T|A:B")]
    pub thresholds: String,

    /// Average-precision convention.
    #[arg(long, value_enum, value_name = "STYLE")]
    pub ap_style: ApStyleArg,

    /// Also print per-size-bucket mAP rows (small/medium/large).
    #[arg(long)]
    pub size_breakdown: bool,

    /// Write the full report to this file.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Encoding for --out.
    #[arg(long, value_enum, value_name = "FMT", default_value = "json", requires = "out")]
    pub format: FormatArg,
}

fn print_report(report: &EvalReport, size_breakdown: bool) {
    println!("criterion   : {}", full_label(&report.criterion));
    let style = match report.ap_style {
        ApStyle::ElevenPoint => "11pt",
        ApStyle::ContinuousAuc => "auc",
    };
    println!("ap-style    : {style}");
    let thresholds: Vec<String> = report.thresholds.iter().map(|&t| format_float(t)).collect();
    println!("thresholds  : {}", thresholds.join(" "));
    println!();
    println!("{:<10} {:>8} {:>10}", "class", "n_gt", "AP");
    for class in &report.classes {
        println!(
            "{:<10} {:>8} {:>10}",
            class.class_id,
            class.n_gt,
            format_float(class.ap)
        );
    }
    println!();
    for (ti, &t) in report.thresholds.iter().enumerate() {
        println!(
            "mAP@{:<8}: {}",
            format_float(t),
            format_float(report.map_per_threshold[ti])
        );
    }
    println!("mAP         : {}", format_float(report.map));
    if size_breakdown {
        let cell = |v: Option<f64>| v.map(format_float).unwrap_or_else(|| "n/a".to_string());
        println!("mAP[small]  : {}", cell(report.size_breakdown.small));
        println!("mAP[medium] : {}", cell(report.size_breakdown.medium));
        println!("mAP[large]  : {}", cell(report.size_breakdown.large));
    }
    println!("AR          : {}", format_float(report.average_recall));
}

pub fn run(args: &EvaluateArgs) -> Result<(), Failure> {
    let spec = args.criterion.build()?;
    let thresholds = parse_thresholds(&args.thresholds)?;
    let config = EvalConfig::new(spec, thresholds, args.ap_style.into())
        .map_err(|e| Failure::Usage(e.to_string()))?;

    let gt = load_ground_truth(&args.gt)?;
    print_warnings(&gt.warnings);
    let dets = load_detections(&args.dets)?;
    print_warnings(&dets.warnings);

    let report = evaluate(&dets.detections, &gt.dataset.annotations, &config)
        .map_err(|e| Failure::Internal(e.to_string()))?;
    print_report(&report, args.size_breakdown);

    if let Some(out) = &args.out {
        write_report(&report, out, args.format.into())?;
    }
    Ok(())
}
