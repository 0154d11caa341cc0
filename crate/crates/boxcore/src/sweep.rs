use crate::boxes::BoundingBox;
use crate::criteria::CriterionSpec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftMode {
    /// Shift along x only: displacement (s, 0).
    Horizontal,
    /// Shift by s along EACH axis: displacement (s, s), so the intersection
    /// of two omega-squares is (omega - s)^2 while they overlap.
    Diagonal,
}

/// Criterion response of a width-`omega` square at the origin against a copy
/// of itself displaced by each entry of `shifts` (all >= 0).
pub fn shift_sweep(
    spec: &CriterionSpec,
    omega: f64,
    shifts: &[f64],
    mode: ShiftMode,
) -> Vec<(f64, f64)> {
    assert!(omega > 0.0 && omega.is_finite(), "omega must be positive");
    let base = BoundingBox::square(0.0, 0.0, omega).unwrap();
    shifts
        .iter()
        .map(|&s| {
            assert!(s >= 0.0 && s.is_finite(), "shifts must be non-negative");
            let (dx, dy) = match mode {
                ShiftMode::Horizontal => (s, 0.0),
                ShiftMode::Diagonal => (s, s),
            };
            (s, spec.evaluate(&base, &base.translated(dx, dy)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_of_the_horizontal_sweep() {
        let pts = shift_sweep(&CriterionSpec::iou(), 4.0, &[0.0, 4.0], ShiftMode::Horizontal);
        assert_eq!(pts, vec![(0.0, 1.0), (4.0, 0.0)]);
    }

    #[test]
    fn diagonal_shift_of_a_4_square_by_2() {
        // Intersection (4-2)^2 = 4, union 2*16 - 4 = 28.
        let pts = shift_sweep(&CriterionSpec::iou(), 4.0, &[2.0], ShiftMode::Diagonal);
        assert_eq!(pts.len(), 1);
        assert!((pts[0].1 - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn horizontal_sweep_matches_the_closed_form() {
        let omega = 16.0;
        let shifts: Vec<f64> = (0..=40).map(|i| i as f64).collect();
        for (s, v) in shift_sweep(&CriterionSpec::iou(), omega, &shifts, ShiftMode::Horizontal) {
            let expect = ((omega - s) / (omega + s)).max(0.0);
            assert!((v - expect).abs() <= 1e-12, "s={s}");
        }
        for (s, v) in shift_sweep(&CriterionSpec::giou(), omega, &shifts, ShiftMode::Horizontal) {
            // For same-size squares the hull equals the union while they
            // overlap and the closed form extends smoothly beyond touching.
            let expect = (omega - s) / (omega + s);
            assert!((v - expect).abs() <= 1e-12, "s={s}");
        }
    }
}
