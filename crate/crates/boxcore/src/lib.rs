//! Axis-aligned bounding boxes and a family of similarity criteria.
//!
//! The criteria share a common shape: a raw overlap measure (IoU or GIoU)
//! optionally raised to a power. The power is either fixed (`alpha_iou`) or
//! size-adaptive (`siou`, `gsiou`), which lets a criterion favor or penalize
//! small objects. `nwd` replaces overlap with a distance between Gaussians
//! fitted to the boxes, so it stays informative for disjoint boxes.
//!
//! All functions are pure and safe to call from any number of threads.

mod boxes;
mod criteria;
mod loss;
mod sweep;

pub use boxes::{BoundingBox, BoxError};
pub use criteria::{
    alpha_iou, giou, gsiou, iou, nwd, siou, siou_exponent, CriterionSpec, ParamError,
};
pub use loss::{
    criterion_loss, gradient_ratio, loss_ratio, siou_linear_loss_gradient, LossError, LossVariant,
    RatioError,
};
pub use sweep::{shift_sweep, ShiftMode};
