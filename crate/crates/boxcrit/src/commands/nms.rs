use std::path::PathBuf;

use dataio::{format_float, load_detections, write_detections};
use evalkit::nms;

use crate::shared::{full_label, print_warnings, CriterionArgs, Failure};

/// Filter detections with greedy non-maximum suppression and write the
/// survivors as a COCO-style results file.
#[derive(Debug, clap::Args)]
pub struct NmsArgs {
    /// COCO-style detection results JSON to filter.
    #[arg(long, value_name = "PATH")]
    pub dets: PathBuf,

    #[command(flatten)]
    pub criterion: CriterionArgs,

    /// Suppression threshold in (0, 1): a detection is dropped when its
    /// similarity to an already-kept higher-scored detection of the same
    /// image and class reaches this value.
    #[arg(long, value_name = "T")]
    pub threshold: f64,

    /// Write surviving detections here.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

pub fn run(args: &NmsArgs) -> Result<(), Failure> {
    let spec = args.criterion.build()?;
    if !(args.threshold > 0.0 && args.threshold < 1.0) {
        return Err(Failure::Usage(format!(
            "--threshold must lie strictly between 0 and 1, got {}",
            args.threshold
        )));
    }

    let load = load_detections(&args.dets)?;
    print_warnings(&load.warnings);
    let kept = nms(&load.detections, &spec, args.threshold);
    write_detections(&kept, &args.out)?;
    println!(
        "kept {} of {} detections  (criterion {}, threshold {})",
        kept.len(),
        load.detections.len(),
        full_label(&spec),
        format_float(args.threshold),
    );
    Ok(())
}
