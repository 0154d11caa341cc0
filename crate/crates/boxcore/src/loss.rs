use crate::boxes::BoundingBox;
use crate::criteria::{iou, siou_exponent, CriterionSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LossVariant {
    /// `1 - value`.
    Linear,
    /// `-ln(value)`; requires a positive criterion value.
    Log,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LossError {
    #[error("log loss requires a positive criterion value, got {0}")]
    NonPositiveValue(f64),
}

/// Turns a criterion value into a minimizable loss.
pub fn criterion_loss(
    spec: &CriterionSpec,
    b1: &BoundingBox,
    b2: &BoundingBox,
    variant: LossVariant,
) -> Result<f64, LossError> {
    let value = spec.evaluate(b1, b2);
    match variant {
        LossVariant::Linear => Ok(1.0 - value),
        LossVariant::Log => {
            if value > 0.0 {
                Ok(-value.ln())
            } else {
                Err(LossError::NonPositiveValue(value))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RatioError {
    #[error("loss ratio is indeterminate at iou = 1; it tends to the exponent p there")]
    LimitAtOne,
    #[error("iou value must lie in (0, 1) for the loss ratio, got {0}")]
    OutOfDomain(f64),
}

/// Ratio of the powered linear loss to the plain linear loss,
/// `(1 - iou^p) / (1 - iou)`.
///
/// Tends to `p` as iou approaches 1 (where the expression itself is 0/0,
/// reported as [`RatioError::LimitAtOne`]); monotone in iou, increasing for
/// p >= 1 and decreasing for p < 1.
pub fn loss_ratio(iou_value: f64, p: f64) -> Result<f64, RatioError> {
    assert!(p >= 0.0, "exponent must be non-negative, got {p}");
    if iou_value == 1.0 {
        return Err(RatioError::LimitAtOne);
    }
    if !(iou_value > 0.0 && iou_value < 1.0) {
        return Err(RatioError::OutOfDomain(iou_value));
    }
    Ok((1.0 - iou_value.powf(p)) / (1.0 - iou_value))
}

/// Ratio of the powered loss gradient magnitude to the plain one,
/// `p * iou^(p-1)`, for iou in (0, 1]. Equals `p` at iou = 1.
pub fn gradient_ratio(iou_value: f64, p: f64) -> f64 {
    assert!(p >= 0.0, "exponent must be non-negative, got {p}");
    assert!(
        iou_value > 0.0 && iou_value <= 1.0,
        "iou value must lie in (0, 1], got {iou_value}"
    );
    p * iou_value.powf(p - 1.0)
}

/// Gradient of IoU with respect to the first box's (x, y, w, h).
///
/// Piecewise-linear geometry: each min/max picks a side, so the result is
/// exact away from configurations where edges coincide (kinks).
fn iou_gradient(b1: &BoundingBox, b2: &BoundingBox) -> [f64; 4] {
    let iw = b1.right().min(b2.right()) - b1.x.max(b2.x);
    let ih = b1.bottom().min(b2.bottom()) - b1.y.max(b2.y);
    if iw <= 0.0 || ih <= 0.0 {
        return [0.0; 4];
    }
    let inter = iw * ih;
    let union = b1.area() + b2.area() - inter;

    let right_inside = if b1.right() < b2.right() { 1.0 } else { 0.0 };
    let left_inside = if b1.x > b2.x { 1.0 } else { 0.0 };
    let bottom_inside = if b1.bottom() < b2.bottom() { 1.0 } else { 0.0 };
    let top_inside = if b1.y > b2.y { 1.0 } else { 0.0 };

    let d_inter = [
        (right_inside - left_inside) * ih,
        (bottom_inside - top_inside) * iw,
        right_inside * ih,
        bottom_inside * iw,
    ];
    let d_area = [0.0, 0.0, b1.h, b1.w];

    let mut grad = [0.0; 4];
    for i in 0..4 {
        let d_union = d_area[i] - d_inter[i];
        grad[i] = (d_inter[i] * union - inter * d_union) / (union * union);
    }
    grad
}

/// Analytic gradient of the linear scale-adaptive loss `1 - iou^p` with
/// respect to the first box's (x, y, w, h).
///
/// The exponent is evaluated once for the pair and held constant — it is not
/// differentiated through the box sizes.
pub fn siou_linear_loss_gradient(
    b1: &BoundingBox,
    b2: &BoundingBox,
    gamma: f64,
    kappa: f64,
) -> [f64; 4] {
    let v = iou(b1, b2);
    if v == 0.0 {
        return [0.0; 4];
    }
    let p = siou_exponent(b1, b2, gamma, kappa);
    let scale = -p * v.powf(p - 1.0);
    let g = iou_gradient(b1, b2);
    [scale * g[0], scale * g[1], scale * g[2], scale * g[3]]
}
