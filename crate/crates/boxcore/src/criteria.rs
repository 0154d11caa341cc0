use crate::boxes::BoundingBox;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A similarity criterion together with its parameters.
///
/// Construct through the checked constructors; `evaluate` dispatches to the
/// free functions below.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CriterionSpec {
    Iou,
    Giou,
    AlphaIou { alpha: f64 },
    Nwd { constant: f64 },
    Siou { gamma: f64, kappa: f64 },
    Gsiou { gamma: f64, kappa: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("gamma must be <= 1 and finite (got {0}); larger values allow a negative exponent")]
    GammaOutOfRange(f64),
    #[error("kappa must be > 0 and finite, got {0}")]
    KappaOutOfRange(f64),
    #[error("alpha must be > 0 and finite, got {0}")]
    AlphaOutOfRange(f64),
    #[error("nwd normalization constant must be > 0 and finite, got {0}")]
    NwdConstantOutOfRange(f64),
}

fn check_gamma_kappa(gamma: f64, kappa: f64) -> Result<(), ParamError> {
    if !(gamma <= 1.0) || !gamma.is_finite() {
        return Err(ParamError::GammaOutOfRange(gamma));
    }
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(ParamError::KappaOutOfRange(kappa));
    }
    Ok(())
}

impl CriterionSpec {
    pub fn iou() -> Self {
        Self::Iou
    }

    pub fn giou() -> Self {
        Self::Giou
    }

    pub fn alpha_iou(alpha: f64) -> Result<Self, ParamError> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(ParamError::AlphaOutOfRange(alpha));
        }
        Ok(Self::AlphaIou { alpha })
    }

    /// `constant` sets the distance scale at which similarity decays to 1/e.
    pub fn nwd(constant: f64) -> Result<Self, ParamError> {
        if !(constant > 0.0) || !constant.is_finite() {
            return Err(ParamError::NwdConstantOutOfRange(constant));
        }
        Ok(Self::Nwd { constant })
    }

    pub fn siou(gamma: f64, kappa: f64) -> Result<Self, ParamError> {
        check_gamma_kappa(gamma, kappa)?;
        Ok(Self::Siou { gamma, kappa })
    }

    pub fn gsiou(gamma: f64, kappa: f64) -> Result<Self, ParamError> {
        check_gamma_kappa(gamma, kappa)?;
        Ok(Self::Gsiou { gamma, kappa })
    }

    pub fn evaluate(&self, b1: &BoundingBox, b2: &BoundingBox) -> f64 {
        match *self {
            Self::Iou => iou(b1, b2),
            Self::Giou => giou(b1, b2),
            Self::AlphaIou { alpha } => alpha_iou(b1, b2, alpha),
            Self::Nwd { constant } => nwd(b1, b2, constant),
            Self::Siou { gamma, kappa } => siou(b1, b2, gamma, kappa),
            Self::Gsiou { gamma, kappa } => gsiou(b1, b2, gamma, kappa),
        }
    }

    /// Closed range of possible values for this criterion.
    pub fn range(&self) -> (f64, f64) {
        match self {
            Self::Giou | Self::Gsiou { .. } => (-1.0, 1.0),
            _ => (0.0, 1.0),
        }
    }

    /// Stable lower-case name used in CSV output and CLI flags.
    pub fn name(&self) -> &'static str {
        match self {
            Self::Iou => "iou",
            Self::Giou => "giou",
            Self::AlphaIou { .. } => "alpha-iou",
            Self::Nwd { .. } => "nwd",
            Self::Siou { .. } => "siou",
            Self::Gsiou { .. } => "gsiou",
        }
    }
}

fn overlap_extent(lo1: f64, hi1: f64, lo2: f64, hi2: f64) -> f64 {
    (hi1.min(hi2) - lo1.max(lo2)).max(0.0)
}

fn intersection_and_union(b1: &BoundingBox, b2: &BoundingBox) -> (f64, f64) {
    let iw = overlap_extent(b1.x, b1.right(), b2.x, b2.right());
    let ih = overlap_extent(b1.y, b1.bottom(), b2.y, b2.bottom());
    let inter = iw * ih;
    (inter, b1.area() + b2.area() - inter)
}

/// Intersection over union, in [0, 1].
///
/// The clamp guards against sub-ulp overshoot in the coordinate arithmetic
/// (e.g. identical boxes whose `x + w` rounds up).
pub fn iou(b1: &BoundingBox, b2: &BoundingBox) -> f64 {
    let (inter, union) = intersection_and_union(b1, b2);
    (inter / union).clamp(0.0, 1.0)
}

/// Generalized IoU: IoU minus the fraction of the enclosing box not covered
/// by the union. In (-1, 1]; negative when the boxes are far apart.
pub fn giou(b1: &BoundingBox, b2: &BoundingBox) -> f64 {
    let (inter, union) = intersection_and_union(b1, b2);
    let hull_w = b1.right().max(b2.right()) - b1.x.min(b2.x);
    let hull_h = b1.bottom().max(b2.bottom()) - b1.y.min(b2.y);
    let hull = hull_w * hull_h;
    (inter / union - (hull - union) / hull).clamp(-1.0, 1.0)
}

/// `value^p` with `0^p = 0` for p > 0, and an exact pass-through at p = 1 so
/// that a unit exponent cannot introduce rounding.
fn powered(value: f64, p: f64) -> f64 {
    if p == 1.0 {
        value
    } else if value == 0.0 {
        0.0
    } else {
        value.powf(p)
    }
}

/// Like `powered` but keeps the sign of negative inputs: -|v|^p for v < 0.
fn signed_powered(value: f64, p: f64) -> f64 {
    if value < 0.0 {
        -powered(-value, p)
    } else {
        powered(value, p)
    }
}

/// Size-adaptive exponent `p = 1 - gamma * exp(-sqrt(w1*h1 + w2*h2) / (sqrt(2)*kappa))`.
///
/// For two squares of equal width `omega` this reduces to
/// `1 - gamma * exp(-omega / kappa)`. With `gamma <= 1` and `kappa > 0` the
/// exponent is always positive because the exp factor stays below 1 for
/// non-empty boxes.
pub fn siou_exponent(b1: &BoundingBox, b2: &BoundingBox, gamma: f64, kappa: f64) -> f64 {
    assert!(gamma <= 1.0, "gamma must be <= 1, got {gamma}");
    assert!(kappa > 0.0, "kappa must be > 0, got {kappa}");
    1.0 - gamma * (-(b1.area() + b2.area()).sqrt() / (std::f64::consts::SQRT_2 * kappa)).exp()
}

/// Scale-adaptive IoU: `iou(b1, b2)` raised to `siou_exponent`.
///
/// gamma > 0 boosts the score of small boxes (p < 1), gamma < 0 penalizes
/// them (p > 1); gamma = 0 gives back plain IoU bit-for-bit.
pub fn siou(b1: &BoundingBox, b2: &BoundingBox, gamma: f64, kappa: f64) -> f64 {
    powered(iou(b1, b2), siou_exponent(b1, b2, gamma, kappa))
}

/// Scale-adaptive GIoU: GIoU^p for non-negative GIoU, -|GIoU|^p otherwise,
/// so the sign always matches GIoU's.
pub fn gsiou(b1: &BoundingBox, b2: &BoundingBox, gamma: f64, kappa: f64) -> f64 {
    signed_powered(giou(b1, b2), siou_exponent(b1, b2, gamma, kappa))
}

/// IoU raised to a fixed power `alpha > 0`.
pub fn alpha_iou(b1: &BoundingBox, b2: &BoundingBox, alpha: f64) -> f64 {
    assert!(alpha > 0.0, "alpha must be > 0, got {alpha}");
    powered(iou(b1, b2), alpha)
}

/// Similarity from the Wasserstein-2 distance between axis-aligned Gaussians
/// fitted to the boxes: `exp(-W2 / c)` with
/// `W2 = ||(cx1, cy1, w1/2, h1/2) - (cx2, cy2, w2/2, h2/2)||`.
///
/// For same-size boxes W2 is exactly the center distance, making the value
/// independent of the box size. Always in (0, 1].
pub fn nwd(b1: &BoundingBox, b2: &BoundingBox, c: f64) -> f64 {
    assert!(c > 0.0, "nwd constant must be > 0, got {c}");
    let (cx1, cy1) = b1.center();
    let (cx2, cy2) = b2.center();
    let dx = cx1 - cx2;
    let dy = cy1 - cy2;
    let dw = (b1.w - b2.w) / 2.0;
    let dh = (b1.h - b2.h) / 2.0;
    let w2 = (dx * dx + dy * dy + dw * dw + dh * dh).sqrt();
    (-w2 / c).exp()
}
