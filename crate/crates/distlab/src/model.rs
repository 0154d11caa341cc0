use boxcore::{BoundingBox, ShiftMode};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// How the perturbed box's size relates to the reference box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SizeMode {
    /// Perturbed box keeps the reference side length.
    SameSize,
    /// Perturbed box side is `omega / ratio`; with ratio r ≥ 1 the best
    /// achievable IoU is 1/r² (nested boxes).
    DifferentSize { ratio: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("sigma0 must be finite and non-negative, got {0}")]
    BadSigma0(f64),
    #[error("lambda must be finite and non-negative, got {0}")]
    BadLambda(f64),
    #[error("sigma0 and lambda cannot both be zero (noise scale would vanish)")]
    ZeroNoise,
    #[error("size ratio must be finite and positive, got {0}")]
    BadRatio(f64),
}

/// Gaussian detector-inaccuracy model: the perturbed box center is displaced
/// by X ~ N(0, σ(ω)²) per affected axis, with σ(ω) = sigma0 + lambda·ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationModel {
    pub sigma0: f64,
    pub lambda: f64,
    pub shift_mode: ShiftMode,
    pub size_mode: SizeMode,
}

impl PerturbationModel {
    pub fn new(
        sigma0: f64,
        lambda: f64,
        shift_mode: ShiftMode,
        size_mode: SizeMode,
    ) -> Result<Self, ModelError> {
        if !sigma0.is_finite() || sigma0 < 0.0 {
            return Err(ModelError::BadSigma0(sigma0));
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(ModelError::BadLambda(lambda));
        }
        if sigma0 == 0.0 && lambda == 0.0 {
            return Err(ModelError::ZeroNoise);
        }
        if let SizeMode::DifferentSize { ratio } = size_mode {
            if !ratio.is_finite() || ratio <= 0.0 {
                return Err(ModelError::BadRatio(ratio));
            }
        }
        Ok(Self { sigma0, lambda, shift_mode, size_mode })
    }

    /// Noise scale for a reference box of side `omega`.
    pub fn sigma(&self, omega: f64) -> f64 {
        self.sigma0 + self.lambda * omega
    }

    /// The fixed reference square of side `omega`, centered at the origin.
    pub fn reference_box(&self, omega: f64) -> BoundingBox {
        BoundingBox::new(-omega / 2.0, -omega / 2.0, omega, omega)
            .expect("positive side length")
    }

    /// The perturbed box for one draw `shift` of the Gaussian displacement:
    /// its center moves by (shift, 0) horizontally or by (shift, shift)
    /// diagonally, and its side follows the size mode.
    pub fn perturbed_box(&self, omega: f64, shift: f64) -> BoundingBox {
        let side = match self.size_mode {
            SizeMode::SameSize => omega,
            SizeMode::DifferentSize { ratio } => omega / ratio,
        };
        let (cx, cy) = match self.shift_mode {
            ShiftMode::Horizontal => (shift, 0.0),
            ShiftMode::Diagonal => (shift, shift),
        };
        BoundingBox::new(cx - side / 2.0, cy - side / 2.0, side, side)
            .expect("positive side length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use boxcore::iou;

    fn same_size(shift_mode: ShiftMode) -> PerturbationModel {
        PerturbationModel::new(16.0, 0.0, shift_mode, SizeMode::SameSize).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        let horizontal = ShiftMode::Horizontal;
        assert!(matches!(
            PerturbationModel::new(-1.0, 0.0, horizontal, SizeMode::SameSize),
            Err(ModelError::BadSigma0(_))
        ));
        assert!(matches!(
            PerturbationModel::new(16.0, -0.5, horizontal, SizeMode::SameSize),
            Err(ModelError::BadLambda(_))
        ));
        assert!(matches!(
            PerturbationModel::new(0.0, 0.0, horizontal, SizeMode::SameSize),
            Err(ModelError::ZeroNoise)
        ));
        assert!(matches!(
            PerturbationModel::new(16.0, 0.0, horizontal, SizeMode::DifferentSize { ratio: 0.0 }),
            Err(ModelError::BadRatio(_))
        ));
    }

    #[test]
    fn affine_scale_grows_with_omega() {
        let model =
            PerturbationModel::new(16.0, 0.25, ShiftMode::Horizontal, SizeMode::SameSize)
                .unwrap();
        assert_eq!(model.sigma(64.0), 32.0);
        assert_eq!(same_size(ShiftMode::Horizontal).sigma(64.0), 16.0);
    }

    #[test]
    fn horizontal_shift_reproduces_the_closed_form() {
        let model = same_size(ShiftMode::Horizontal);
        for omega in [4.0, 16.0, 64.0] {
            for shift in [0.0, 1.5, omega / 2.0, omega - 0.25] {
                let a = model.reference_box(omega);
                let b = model.perturbed_box(omega, shift);
                let expected = (omega - shift) / (omega + shift);
                assert!((iou(&a, &b) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn diagonal_shift_intersection_is_the_squared_margin() {
        // Shifting by rho along each axis leaves an overlap of (ω−ρ)².
        let model = same_size(ShiftMode::Diagonal);
        for (omega, rho) in [(4.0, 2.0), (16.0, 5.0), (64.0, 63.0)] {
            let a = model.reference_box(omega);
            let b = model.perturbed_box(omega, rho);
            let inter = (omega - rho) * (omega - rho);
            let expected = inter / (2.0 * omega * omega - inter);
            assert!((iou(&a, &b) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn different_size_peaks_at_inverse_ratio_squared() {
        let model = PerturbationModel::new(
            16.0,
            0.0,
            ShiftMode::Horizontal,
            SizeMode::DifferentSize { ratio: 2.0 },
        )
        .unwrap();
        let omega = 32.0;
        let a = model.reference_box(omega);
        let concentric = model.perturbed_box(omega, 0.0);
        assert!((iou(&a, &concentric) - 0.25).abs() < 1e-12);
        // Any displacement only loses overlap.
        for shift in [0.5, 3.0, 10.0, 40.0] {
            assert!(iou(&a, &model.perturbed_box(omega, shift)) <= 0.25 + 1e-12);
        }
    }
}
