use crate::matching::MatchOutcome;
use crate::types::ApStyle;

/// Running (recall, precision) over the score-ranked detection list.
///
/// Empty when `n_gt` is zero: recall is undefined there, and any detections
/// over zero ground truths score an AP of 0 through the empty curve.
pub fn precision_recall_curve(outcomes: &[MatchOutcome], n_gt: usize) -> Vec<(f64, f64)> {
    if n_gt == 0 {
        return Vec::new();
    }
    let mut tp = 0usize;
    let mut fp = 0usize;
    outcomes
        .iter()
        .map(|o| {
            if o.matched_gt.is_some() {
                tp += 1;
            } else {
                fp += 1;
            }
            (tp as f64 / n_gt as f64, tp as f64 / (tp + fp) as f64)
        })
        .collect()
}

/// Highest precision at any recall >= r; 0 when the curve never reaches r.
fn interpolated_precision(curve: &[(f64, f64)], r: f64) -> f64 {
    curve
        .iter()
        .filter(|(recall, _)| *recall >= r)
        .map(|&(_, precision)| precision)
        .fold(0.0, f64::max)
}

/// Area under the interpolated precision-recall curve.
pub fn average_precision(curve: &[(f64, f64)], style: ApStyle) -> f64 {
    if curve.is_empty() {
        return 0.0;
    }
    match style {
        ApStyle::ElevenPoint => {
            let sum: f64 =
                (0..=10).map(|i| interpolated_precision(curve, i as f64 / 10.0)).sum();
            sum / 11.0
        }
        ApStyle::ContinuousAuc => {
            // Suffix max turns the curve into its non-increasing envelope;
            // the area is then a sum of rectangles between recall steps.
            let mut envelope: Vec<f64> = curve.iter().map(|&(_, p)| p).collect();
            for i in (0..envelope.len().saturating_sub(1)).rev() {
                envelope[i] = envelope[i].max(envelope[i + 1]);
            }
            let mut area = 0.0;
            let mut last_recall = 0.0;
            for (i, &(recall, _)) in curve.iter().enumerate() {
                area += (recall - last_recall) * envelope[i];
                last_recall = recall;
            }
            area
        }
    }
}
