//! Brute-force oracle: IoU of integer boxes counted pixel by pixel.
//!
//! For integer coordinates the continuous areas coincide with pixel counts,
//! so the closed-form IoU must agree with the counting result exactly (well
//! within the 1/area resolution of the grid).

use boxcore::{iou, shift_sweep, BoundingBox, CriterionSpec, ShiftMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy)]
struct IntBox {
    x: i64,
    y: i64,
    w: i64,
    h: i64,
}

impl IntBox {
    fn to_box(self) -> BoundingBox {
        BoundingBox::new(self.x as f64, self.y as f64, self.w as f64, self.h as f64).unwrap()
    }

    fn covers(&self, px: i64, py: i64) -> bool {
        px >= self.x && px < self.x + self.w && py >= self.y && py < self.y + self.h
    }
}

/// Counts covered pixels over a grid that encloses both boxes.
fn pixel_iou(a: IntBox, b: IntBox) -> f64 {
    let x_lo = a.x.min(b.x);
    let x_hi = (a.x + a.w).max(b.x + b.w);
    let y_lo = a.y.min(b.y);
    let y_hi = (a.y + a.h).max(b.y + b.h);
    let mut inter = 0i64;
    let mut union = 0i64;
    for px in x_lo..x_hi {
        for py in y_lo..y_hi {
            let in_a = a.covers(px, py);
            let in_b = b.covers(px, py);
            if in_a && in_b {
                inter += 1;
            }
            if in_a || in_b {
                union += 1;
            }
        }
    }
    inter as f64 / union as f64
}

#[test]
fn closed_form_iou_matches_pixel_counting() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..2000 {
        let a = IntBox {
            x: rng.random_range(0..64),
            y: rng.random_range(0..64),
            w: rng.random_range(1..=64),
            h: rng.random_range(1..=64),
        };
        let b = IntBox {
            x: rng.random_range(0..64),
            y: rng.random_range(0..64),
            w: rng.random_range(1..=64),
            h: rng.random_range(1..=64),
        };
        let exact = pixel_iou(a, b);
        let fast = iou(&a.to_box(), &b.to_box());
        assert!(
            (fast - exact).abs() <= 1e-12,
            "boxes ({},{},{},{}) / ({},{},{},{}): {fast} vs {exact}",
            a.x, a.y, a.w, a.h, b.x, b.y, b.w, b.h
        );
    }
}

#[test]
fn diagonal_shift_example_agrees_with_pixel_counting() {
    let a = IntBox { x: 0, y: 0, w: 4, h: 4 };
    let b = IntBox { x: 2, y: 2, w: 4, h: 4 };
    let exact = pixel_iou(a, b);
    assert!((exact - 1.0 / 7.0).abs() < 1e-15);
    let swept = shift_sweep(&CriterionSpec::iou(), 4.0, &[2.0], ShiftMode::Diagonal);
    assert!((swept[0].1 - exact).abs() <= 1e-12);
}
