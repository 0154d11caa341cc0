use boxcore::{BoundingBox, CriterionSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type ImageId = u64;
pub type ClassId = u64;

/// A scored predicted box. Scores are expected in [0, 1]; loaders clamp.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub image_id: ImageId,
    pub class_id: ClassId,
    pub bbox: BoundingBox,
    pub score: f64,
}

/// An annotated box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthObject {
    pub image_id: ImageId,
    pub class_id: ClassId,
    pub bbox: BoundingBox,
}

/// Which area-under-curve convention `average_precision` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApStyle {
    /// Mean of the interpolated precision over recalls {0.0, 0.1, ..., 1.0}.
    ElevenPoint,
    /// Exact area under the step-interpolated max-precision envelope.
    ContinuousAuc,
}

/// Bucket boundaries on sqrt(w*h): Small <= small_max < Medium <= medium_max < Large.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SizeBuckets {
    pub small_max: f64,
    pub medium_max: f64,
}

impl Default for SizeBuckets {
    fn default() -> Self {
        Self { small_max: 32.0, medium_max: 96.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeClass {
    Small,
    Medium,
    Large,
}

impl SizeBuckets {
    pub fn class_of(&self, side: f64) -> SizeClass {
        if side <= self.small_max {
            SizeClass::Small
        } else if side <= self.medium_max {
            SizeClass::Medium
        } else {
            SizeClass::Large
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("thresholds must be a non-empty strictly increasing sequence within (0, 1)")]
    BadThresholds,
    #[error("size buckets must satisfy 0 < small_max < medium_max")]
    BadBuckets,
    #[error("max_detections cap must be >= 1 when given")]
    BadCap,
}

/// Everything `evaluate` needs besides the data itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub criterion: CriterionSpec,
    pub thresholds: Vec<f64>,
    pub ap_style: ApStyle,
    pub size_buckets: SizeBuckets,
    pub max_detections: Option<usize>,
}

impl EvalConfig {
    pub fn new(
        criterion: CriterionSpec,
        thresholds: Vec<f64>,
        ap_style: ApStyle,
    ) -> Result<Self, ConfigError> {
        let cfg = Self {
            criterion,
            thresholds,
            ap_style,
            size_buckets: SizeBuckets::default(),
            max_detections: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_size_buckets(mut self, buckets: SizeBuckets) -> Result<Self, ConfigError> {
        self.size_buckets = buckets;
        self.validate()?;
        Ok(self)
    }

    pub fn with_max_detections(mut self, cap: usize) -> Result<Self, ConfigError> {
        if cap == 0 {
            return Err(ConfigError::BadCap);
        }
        self.max_detections = Some(cap);
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.thresholds.is_empty()
            || !self.thresholds.iter().all(|t| *t > 0.0 && *t < 1.0)
            || !self.thresholds.windows(2).all(|w| w[0] < w[1])
        {
            return Err(ConfigError::BadThresholds);
        }
        if !(self.size_buckets.small_max > 0.0
            && self.size_buckets.small_max < self.size_buckets.medium_max)
        {
            return Err(ConfigError::BadBuckets);
        }
        if self.max_detections == Some(0) {
            return Err(ConfigError::BadCap);
        }
        Ok(())
    }

    /// The conventional 0.50, 0.55, ..., 0.95 grid, built from integer
    /// centi-steps so the values are reproducible to the bit.
    pub fn coco_thresholds() -> Vec<f64> {
        (0..10).map(|i| (50 + 5 * i) as f64 / 100.0).collect()
    }
}

/// Matched / unmatched / missed counts at one threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchCounts {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub missed: usize,
}

/// Per-class results across the threshold schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class_id: ClassId,
    pub n_gt: usize,
    pub ap_per_threshold: Vec<f64>,
    pub counts_per_threshold: Vec<MatchCounts>,
    /// Mean of `ap_per_threshold`.
    pub ap: f64,
}

/// mAP of each size bucket (mean over thresholds); `None` when the bucket
/// contains no classes at all.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SizeBreakdown {
    pub all: f64,
    pub small: Option<f64>,
    pub medium: Option<f64>,
    pub large: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub criterion: CriterionSpec,
    pub ap_style: ApStyle,
    pub thresholds: Vec<f64>,
    /// Sorted by class id; covers every class present in either input.
    pub classes: Vec<ClassReport>,
    pub map_per_threshold: Vec<f64>,
    /// Mean of `map_per_threshold`.
    pub map: f64,
    pub average_recall: f64,
    pub size_breakdown: SizeBreakdown,
}
