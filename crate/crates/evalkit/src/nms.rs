use std::collections::BTreeMap;

use boxcore::CriterionSpec;

use crate::matching::rank_by_score;
use crate::types::Detection;

/// Non-maximum suppression, run independently per (image, class) group:
/// walk the group's detections by descending score (ties broken by input
/// order), keep a detection unless its criterion value against an
/// already-kept detection reaches `threshold`. Survivors are returned by
/// descending score, ties again by input order.
pub fn nms(dets: &[Detection], criterion: &CriterionSpec, threshold: f64) -> Vec<Detection> {
    assert!(
        threshold > 0.0 && threshold < 1.0,
        "suppression threshold must lie in (0,1), got {threshold}"
    );
    let mut groups: BTreeMap<(u64, u64), Vec<usize>> = BTreeMap::new();
    for (i, det) in dets.iter().enumerate() {
        groups.entry((det.image_id, det.class_id)).or_default().push(i);
    }

    let mut survivor_indices: Vec<usize> = Vec::new();
    for indices in groups.values() {
        let group: Vec<Detection> = indices.iter().map(|&i| dets[i].clone()).collect();
        let mut kept: Vec<usize> = Vec::new(); // positions within `group`
        for pos in rank_by_score(&group) {
            let suppressed = kept
                .iter()
                .any(|&k| criterion.evaluate(&group[k].bbox, &group[pos].bbox) >= threshold);
            if !suppressed {
                kept.push(pos);
            }
        }
        survivor_indices.extend(kept.into_iter().map(|pos| indices[pos]));
    }

    survivor_indices.sort_by(|&a, &b| {
        dets[b]
            .score
            .partial_cmp(&dets[a].score)
            .expect("scores must not be NaN")
            .then(a.cmp(&b))
    });
    survivor_indices.into_iter().map(|i| dets[i].clone()).collect()
}
