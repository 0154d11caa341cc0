//! Closed-form densities and quadrature moments for same-size squares of
//! side ω shifted horizontally by X ~ N(0, σ²).
//!
//! With u = |x|/ω the overlap value is (ω−|x|)/(ω+|x|) while the boxes
//! intersect, so each criterion below is a deterministic transform of |X|;
//! densities follow by the change-of-variables formula and moments by
//! integrating the transform against the Gaussian in x-space.

use std::f64::consts::{PI, SQRT_2};

use thiserror::Error;

use boxcore::CriterionSpec;

/// Criterion families with a closed-form distribution under the
/// same-size/horizontal perturbation model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TheoryKind {
    Iou,
    Giou,
    Siou { gamma: f64, kappa: f64 },
    Gsiou { gamma: f64, kappa: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TheoryError {
    #[error("criterion {0} has no closed-form distribution here")]
    Unsupported(&'static str),
}

impl TryFrom<CriterionSpec> for TheoryKind {
    type Error = TheoryError;

    fn try_from(spec: CriterionSpec) -> Result<Self, TheoryError> {
        match spec {
            CriterionSpec::Iou => Ok(TheoryKind::Iou),
            CriterionSpec::Giou => Ok(TheoryKind::Giou),
            CriterionSpec::Siou { gamma, kappa } => Ok(TheoryKind::Siou { gamma, kappa }),
            CriterionSpec::Gsiou { gamma, kappa } => Ok(TheoryKind::Gsiou { gamma, kappa }),
            CriterionSpec::AlphaIou { .. } => Err(TheoryError::Unsupported("alpha-iou")),
            CriterionSpec::Nwd { .. } => Err(TheoryError::Unsupported("nwd")),
        }
    }
}

impl TheoryKind {
    /// Size exponent applied to the base value; 1 for the plain criteria.
    /// For two ω-squares the exponent reduces to 1 − γ·exp(−ω/κ).
    pub fn exponent(&self, omega: f64) -> f64 {
        match *self {
            TheoryKind::Iou | TheoryKind::Giou => 1.0,
            TheoryKind::Siou { gamma, kappa } | TheoryKind::Gsiou { gamma, kappa } => {
                1.0 - gamma * (-omega / kappa).exp()
            }
        }
    }

    /// Open support of the continuous part.
    pub fn support(&self) -> (f64, f64) {
        match self {
            TheoryKind::Iou | TheoryKind::Siou { .. } => (0.0, 1.0),
            TheoryKind::Giou | TheoryKind::Gsiou { .. } => (-1.0, 1.0),
        }
    }

    fn has_atom(&self) -> bool {
        matches!(self, TheoryKind::Iou | TheoryKind::Siou { .. })
    }
}

fn gaussian_pdf(x: f64, sigma: f64) -> f64 {
    (-x * x / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * PI).sqrt())
}

/// Density of the overlap value V = (ω−|X|)/(ω+|X|) at v ∈ (−1, 1): the map
/// x ↦ v is two-to-one with |dx/dv| = 2ω/(1+v)², giving 4ω/(1+v)²·φ_σ(x(v)).
fn base_density(v: f64, omega: f64, sigma: f64) -> f64 {
    let x = omega * (1.0 - v) / (1.0 + v);
    4.0 * omega / ((1.0 + v) * (1.0 + v)) * gaussian_pdf(x, sigma)
}

/// Probability that the two boxes do not overlap at all, i.e. the point mass
/// the bounded-below criteria place at z = 0: P(|X| ≥ ω) = erfc(ω/(σ√2)).
pub fn atom_at_zero(kind: TheoryKind, omega: f64, sigma: f64) -> f64 {
    if kind.has_atom() {
        erfc(omega / (sigma * SQRT_2))
    } else {
        0.0
    }
}

/// Continuous density of the criterion value at `z`; zero outside the open
/// support. The atom at z = 0 for IoU/SIoU is reported separately by
/// [`atom_at_zero`]. Power-law kinds may diverge (integrably) as z
/// approaches 0: callers evaluating on a grid should avoid that exact point.
pub fn theoretical_pdf(kind: TheoryKind, z: f64, omega: f64, sigma: f64) -> f64 {
    let (lo, hi) = kind.support();
    if z <= lo || z >= hi {
        return 0.0;
    }
    match kind {
        TheoryKind::Iou | TheoryKind::Giou => base_density(z, omega, sigma),
        TheoryKind::Siou { .. } => {
            let p = kind.exponent(omega);
            let u = z.powf(1.0 / p);
            base_density(u, omega, sigma) * u / (p * z)
        }
        TheoryKind::Gsiou { .. } => {
            let p = kind.exponent(omega);
            if z == 0.0 {
                return f64::INFINITY; // integrable singularity when p > 1
            }
            let u = z.abs().powf(1.0 / p).copysign(z);
            base_density(u, omega, sigma) * u.abs() / (p * z.abs())
        }
    }
}

/// First two moments plus the standard deviation they imply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub second_moment: f64,
    pub std: f64,
    /// Worst quadrature error estimate across the two integrals.
    pub error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("quadrature failed to reach tolerance {tolerance:e}; achieved {achieved:e}")]
    NotConverged { tolerance: f64, achieved: f64 },
    #[error("omega and sigma must be finite and positive, got omega={omega}, sigma={sigma}")]
    BadDomain { omega: f64, sigma: f64 },
}

const QUAD_TOL: f64 = 1e-9;

/// E[Z] and E[Z²] by adaptive Simpson quadrature in x-space:
/// E[Z^k] = 2·∫₀^∞ c(x)^k φ_σ(x) dx with c the criterion value at shift x.
/// The integral is truncated where the Gaussian factor drops below 10⁻¹⁶
/// and split at x = ω where c(x) is not smooth.
pub fn theoretical_moments(
    kind: TheoryKind,
    omega: f64,
    sigma: f64,
) -> Result<Moments, QuadratureError> {
    if !(omega > 0.0) || !(sigma > 0.0) || !omega.is_finite() || !sigma.is_finite() {
        return Err(QuadratureError::BadDomain { omega, sigma });
    }
    let p = kind.exponent(omega);
    let value_at = |x: f64| -> f64 {
        let v = (omega - x) / (omega + x);
        match kind {
            TheoryKind::Iou => v.max(0.0),
            TheoryKind::Giou => v,
            TheoryKind::Siou { .. } => {
                if v <= 0.0 {
                    0.0
                } else {
                    v.powf(p)
                }
            }
            TheoryKind::Gsiou { .. } => v.abs().powf(p).copysign(v),
        }
    };

    // Beyond x_max the Gaussian density is < 1e-16 and |c| ≤ 1, so the
    // truncated tail contributes less than the tolerance by many orders.
    let x_max = 9.0 * sigma;
    let mut worst_error = 0.0f64;
    let mut moment = |k: u32| -> Result<f64, QuadratureError> {
        let f = |x: f64| value_at(x).powi(k as i32) * gaussian_pdf(x, sigma);
        let mut total = 0.0;
        let mut err = 0.0;
        let cut = omega.min(x_max);
        let (a, e) = adaptive_simpson(&f, 0.0, cut, QUAD_TOL / 2.0)?;
        total += a;
        err += e;
        if x_max > cut {
            // For IoU/SIoU the integrand vanishes past ω; skip the dead span.
            let dead_past_cut =
                matches!(kind, TheoryKind::Iou | TheoryKind::Siou { .. });
            if !dead_past_cut {
                let (b, e2) = adaptive_simpson(&f, cut, x_max, QUAD_TOL / 2.0)?;
                total += b;
                err += e2;
            }
        }
        worst_error = worst_error.max(err);
        Ok(2.0 * total)
    };

    let mean = moment(1)?;
    let second_moment = moment(2)?;
    let variance = (second_moment - mean * mean).max(0.0);
    Ok(Moments { mean, second_moment, std: variance.sqrt(), error_estimate: worst_error })
}

/// Adaptive Simpson with Richardson correction; returns (integral, error
/// estimate) or an error when the recursion depth limit is hit before the
/// local tolerance is met.
fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64), QuadratureError> {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<(f64, f64), QuadratureError> {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
        }
        if depth == 0 {
            return Err(QuadratureError::NotConverged {
                tolerance: tol,
                achieved: delta.abs() / 15.0,
            });
        }
        let (li, le) = recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)?;
        let (ri, re) = recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)?;
        Ok((li + ri, le + re))
    }

    if a == b {
        return Ok((0.0, 0.0));
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// Complementary error function: Taylor series of erf below 2 (where
/// 1 − erf loses no meaningful precision), Legendre's continued fraction
/// above. Absolute error is a few ulps across the atom's argument range.
fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        2.0 - erfc(-x)
    } else if x < 2.0 {
        // erf(x) = 2/√π Σ (−1)ⁿ x^{2n+1}/(n!(2n+1))
        let mut term = x;
        let mut sum = x;
        let x2 = x * x;
        let mut n = 0.0f64;
        while term.abs() > 1e-18 * sum.abs() {
            n += 1.0;
            term *= -x2 / n;
            sum += term / (2.0 * n + 1.0);
        }
        1.0 - sum * 2.0 / PI.sqrt()
    } else {
        // erfc(x) = e^{−x²}/√π · 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + …))))
        let mut cf = 0.0f64;
        for k in (1..=80).rev() {
            cf = 0.5 * k as f64 / (x + cf);
        }
        (-x * x).exp() / ((x + cf) * PI.sqrt())
    }
}
