use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use boxcore::CriterionSpec;

use crate::model::PerturbationModel;

/// Number of evaluation points in a pdf grid (cell midpoints over the
/// criterion's range, so singular interior points like z = 0 are avoided).
pub const PDF_GRID_POINTS: usize = 200;

/// Histogram resolution used to accelerate the kernel density estimate; the
/// bin width is far below any admissible bandwidth, so the binning error is
/// negligible against the smoothing itself.
const KDE_BINS: usize = 2048;

/// Moments and a smoothed density estimate of one criterion's value
/// distribution at one box size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionSummary {
    pub omega: f64,
    pub n_samples: usize,
    /// Logical worker count the sample stream was split across. Results are
    /// reproducible for a fixed (seed, workers) pair regardless of how many
    /// threads actually execute the chunks.
    pub workers: usize,
    pub mean: f64,
    pub std: f64,
    pub std_error: f64,
    /// (z, density) pairs on the midpoint grid across the criterion's range.
    pub pdf_grid: Vec<(f64, f64)>,
}

/// Sum with pairwise splitting: the result is independent of chunk/thread
/// boundaries and far more accurate than a running sum on large inputs.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Draw `n` criterion values for boxes of side `omega` under the model,
/// splitting the stream across `workers` logical chunks. Chunk `w` uses an
/// independent, fixed random stream derived from (`seed`, w), so the sample
/// set depends only on (seed, workers), never on scheduling.
fn draw_samples(
    spec: &CriterionSpec,
    omega: f64,
    model: &PerturbationModel,
    n: usize,
    seed: u64,
    workers: usize,
) -> Vec<f64> {
    let sigma = model.sigma(omega);
    assert!(sigma > 0.0, "noise scale must be positive, got {sigma} at omega={omega}");
    let normal = Normal::new(0.0, sigma).expect("validated scale");
    let reference = model.reference_box(omega);

    let base = n / workers;
    let remainder = n % workers;
    let mut chunks: Vec<Vec<f64>> = Vec::with_capacity(workers);
    (0..workers)
        .into_par_iter()
        .map(|w| {
            let count = base + usize::from(w < remainder);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(w as u64);
            (0..count)
                .map(|_| {
                    let shift = normal.sample(&mut rng);
                    spec.evaluate(&reference, &model.perturbed_box(omega, shift))
                })
                .collect::<Vec<f64>>()
        })
        .collect_into_vec(&mut chunks);
    let mut samples = Vec::with_capacity(n);
    for chunk in chunks {
        samples.extend(chunk);
    }
    samples
}

/// Monte-Carlo summary of `spec`'s value distribution for ω-sized boxes:
/// mean, standard deviation, standard error (= std/√n), and a Gaussian-KDE
/// density with Silverman bandwidth, reflected at the range boundaries.
pub fn sample_criterion(
    spec: &CriterionSpec,
    omega: f64,
    model: &PerturbationModel,
    n: usize,
    seed: u64,
    workers: usize,
) -> DistributionSummary {
    assert!(n >= 1, "need at least one sample");
    assert!(workers >= 1, "need at least one worker");
    let samples = draw_samples(spec, omega, model, n, seed, workers);

    let mean = pairwise_sum(&samples) / n as f64;
    let squared: Vec<f64> = samples.iter().map(|&x| (x - mean) * (x - mean)).collect();
    let std =
        if n > 1 { (pairwise_sum(&squared) / (n as f64 - 1.0)).sqrt() } else { 0.0 };
    let std_error = std / (n as f64).sqrt();
    let pdf_grid = kde_grid(&samples, std, spec.range());

    DistributionSummary { omega, n_samples: n, workers, mean, std, std_error, pdf_grid }
}

/// One summary per ω. All sizes reuse the same random streams (common
/// random numbers), which sharpens cross-ω comparisons such as monotonicity
/// of the mean.
pub fn expectation_curve(
    spec: &CriterionSpec,
    model: &PerturbationModel,
    omegas: &[f64],
    n: usize,
    seed: u64,
    workers: usize,
) -> Vec<DistributionSummary> {
    omegas
        .iter()
        .map(|&omega| sample_criterion(spec, omega, model, n, seed, workers))
        .collect()
}

/// Gaussian kernel density estimate on the midpoint grid over `(lo, hi)`,
/// with boundary reflection so mass pushed past a range edge folds back in.
/// Samples are first histogrammed; the kernel then smooths bin centers.
fn kde_grid(samples: &[f64], std: f64, range: (f64, f64)) -> Vec<(f64, f64)> {
    let (lo, hi) = range;
    let span = hi - lo;
    let grid_step = span / PDF_GRID_POINTS as f64;
    let n = samples.len();

    // Silverman's rule with the robust IQR variant, floored at one grid step
    // so degenerate (near-constant) sample sets still spread over a cell.
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("criterion values are never NaN"));
    let quartile = |q: f64| -> f64 {
        let pos = q * (n - 1) as f64;
        let idx = pos.floor() as usize;
        let frac = pos - idx as f64;
        if idx + 1 < n {
            sorted[idx] * (1.0 - frac) + sorted[idx + 1] * frac
        } else {
            sorted[idx]
        }
    };
    let iqr = quartile(0.75) - quartile(0.25);
    let spread = if iqr > 0.0 { std.min(iqr / 1.34) } else { std };
    let bandwidth =
        (0.9 * spread * (n as f64).powf(-0.2)).max(grid_step);

    let bin_width = span / KDE_BINS as f64;
    let mut counts = vec![0u64; KDE_BINS];
    for &x in samples {
        let idx = (((x - lo) / bin_width) as usize).min(KDE_BINS - 1);
        counts[idx] += 1;
    }

    let inv = 1.0 / (n as f64 * bandwidth * (2.0 * std::f64::consts::PI).sqrt());
    let kernel = |d: f64| {
        let t = d / bandwidth;
        // 8.6 bandwidths out, the kernel is below 1e-16 of its peak.
        if t.abs() > 8.6 {
            0.0
        } else {
            (-0.5 * t * t).exp()
        }
    };
    (0..PDF_GRID_POINTS)
        .map(|i| {
            let z = lo + (i as f64 + 0.5) * grid_step;
            let mut density = 0.0;
            for (b, &count) in counts.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let center = lo + (b as f64 + 0.5) * bin_width;
                let direct = kernel(z - center);
                let reflect_lo = kernel(z - (2.0 * lo - center));
                let reflect_hi = kernel(z - (2.0 * hi - center));
                density += count as f64 * (direct + reflect_lo + reflect_hi);
            }
            (z, density * inv)
        })
        .collect()
}
