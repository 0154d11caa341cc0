//! Criterion-pluggable object-detection evaluation.
//!
//! The pipeline takes flat lists of detections and ground-truth objects,
//! matches them greedily per class and image under any similarity criterion
//! from `boxcore`, and aggregates precision-recall curves into AP, mAP
//! (single- and multi-threshold), size-bucketed mAP, and average recall.
//! Non-maximum suppression and relative-mAP comparison live here too.
//!
//! Determinism: score ties always resolve by input order, per-class work is
//! reduced in ascending class id, and floating-point reductions run in a
//! fixed order, so reports are identical across thread counts.

mod curves;
mod evaluate;
mod matching;
mod nms;
mod types;

pub use curves::{average_precision, precision_recall_curve};
pub use evaluate::{average_recall, evaluate, rmap, RmapError};
pub use matching::{match_detections, MatchOutcome};
pub use nms::nms;
pub use types::{
    ApStyle, ClassId, ClassReport, ConfigError, Detection, EvalConfig, EvalReport,
    GroundTruthObject, ImageId, MatchCounts, SizeBreakdown, SizeBuckets, SizeClass,
};
