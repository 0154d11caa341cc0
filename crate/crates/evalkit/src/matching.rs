use crate::types::{Detection, GroundTruthObject};
use boxcore::CriterionSpec;
use std::collections::BTreeMap;

/// Outcome for one detection. Produced in descending-score order (score ties
/// broken by input order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchOutcome {
    /// Index into the detection slice passed to `match_detections`.
    pub det_index: usize,
    /// Index into the ground-truth slice, when matched.
    pub matched_gt: Option<usize>,
}

/// Indices sorted by descending score, stable under ties.
pub(crate) fn rank_by_score(dets: &[Detection]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dets.len()).collect();
    order.sort_by(|&a, &b| {
        dets[b]
            .score
            .partial_cmp(&dets[a].score)
            .expect("scores must not be NaN")
            .then(a.cmp(&b))
    });
    order
}

/// Greedy matching for a single class: walk detections by descending score
/// and give each one the unmatched ground truth of the same image with the
/// highest criterion value, provided that value reaches `threshold`. Each
/// ground truth is matched at most once.
pub fn match_detections(
    dets: &[Detection],
    gts: &[GroundTruthObject],
    criterion: &CriterionSpec,
    threshold: f64,
) -> Vec<MatchOutcome> {
    #[cfg(debug_assertions)]
    if let Some(class) =
        dets.first().map(|d| d.class_id).or_else(|| gts.first().map(|g| g.class_id))
    {
        debug_assert!(
            dets.iter().all(|d| d.class_id == class)
                && gts.iter().all(|g| g.class_id == class),
            "matching operates on a single class"
        );
    }

    let mut gts_by_image: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (gi, gt) in gts.iter().enumerate() {
        gts_by_image.entry(gt.image_id).or_default().push(gi);
    }

    let mut gt_taken = vec![false; gts.len()];
    rank_by_score(dets)
        .into_iter()
        .map(|di| {
            let det = &dets[di];
            let mut best: Option<(usize, f64)> = None;
            if let Some(candidates) = gts_by_image.get(&det.image_id) {
                for &gi in candidates {
                    if gt_taken[gi] {
                        continue;
                    }
                    let value = criterion.evaluate(&det.bbox, &gts[gi].bbox);
                    if value >= threshold && best.map_or(true, |(_, bv)| value > bv) {
                        best = Some((gi, value));
                    }
                }
            }
            let matched_gt = best.map(|(gi, _)| gi);
            if let Some(gi) = matched_gt {
                gt_taken[gi] = true;
            }
            MatchOutcome { det_index: di, matched_gt }
        })
        .collect()
}
