use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Axis-aligned box given by its top-left corner and extent, in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoxError {
    #[error("box extent must be positive and finite, got w={w}, h={h}")]
    EmptyExtent { w: f64, h: f64 },
    #[error("box position must be finite, got x={x}, y={y}")]
    NonFinitePosition { x: f64, y: f64 },
}

impl BoundingBox {
    /// Boxes cannot be empty: `w > 0` and `h > 0`, everything finite.
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Result<Self, BoxError> {
        if !(w > 0.0 && h > 0.0) || !w.is_finite() || !h.is_finite() {
            return Err(BoxError::EmptyExtent { w, h });
        }
        if !x.is_finite() || !y.is_finite() {
            return Err(BoxError::NonFinitePosition { x, y });
        }
        Ok(Self { x, y, w, h })
    }

    /// Square of width `side` with top-left corner at (x, y).
    pub fn square(x: f64, y: f64, side: f64) -> Result<Self, BoxError> {
        Self::new(x, y, side, side)
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    /// Size measure used for bucketing: sqrt(w * h).
    pub fn side(&self) -> f64 {
        self.area().sqrt()
    }

    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }

    pub fn center(&self) -> (f64, f64) {
        (self.x + self.w / 2.0, self.y + self.h / 2.0)
    }

    /// Scales all four coordinates by `k > 0`.
    pub fn scaled(&self, k: f64) -> Self {
        assert!(k > 0.0 && k.is_finite(), "scale factor must be positive");
        Self { x: self.x * k, y: self.y * k, w: self.w * k, h: self.h * k }
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        Self { x: self.x + dx, y: self.y + dy, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite_boxes() {
        assert!(BoundingBox::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(BoundingBox::new(0.0, 0.0, 1.0, -2.0).is_err());
        assert!(BoundingBox::new(0.0, 0.0, f64::NAN, 1.0).is_err());
        assert!(BoundingBox::new(f64::INFINITY, 0.0, 1.0, 1.0).is_err());
        assert!(BoundingBox::new(-5.0, 3.0, 0.5, 2.0).is_ok());
    }

    #[test]
    fn geometry_accessors() {
        let b = BoundingBox::new(10.0, 20.0, 30.0, 40.0).unwrap();
        assert_eq!(b.area(), 1200.0);
        assert_eq!(b.right(), 40.0);
        assert_eq!(b.bottom(), 60.0);
        assert_eq!(b.center(), (25.0, 40.0));
        assert_eq!(b.side(), 1200.0_f64.sqrt());
    }

    #[test]
    fn scaling_and_translation() {
        let b = BoundingBox::new(1.0, 2.0, 3.0, 4.0).unwrap();
        let s = b.scaled(2.0);
        assert_eq!((s.x, s.y, s.w, s.h), (2.0, 4.0, 6.0, 8.0));
        let t = b.translated(-1.0, 1.0);
        assert_eq!((t.x, t.y, t.w, t.h), (0.0, 3.0, 3.0, 4.0));
    }
}
