//! Suppression properties over random detection sets and every criterion.

use boxcore::{BoundingBox, CriterionSpec};
use evalkit::{nms, Detection};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn all_criteria() -> Vec<CriterionSpec> {
    vec![
        CriterionSpec::Iou,
        CriterionSpec::Giou,
        CriterionSpec::AlphaIou { alpha: 3.0 },
        CriterionSpec::Nwd { constant: 32.0 },
        CriterionSpec::Siou { gamma: 0.5, kappa: 64.0 },
        CriterionSpec::Gsiou { gamma: -3.0, kappa: 16.0 },
    ]
}

fn random_set(rng: &mut ChaCha8Rng) -> Vec<Detection> {
    let n = rng.random_range(1..=12);
    (0..n)
        .map(|_| Detection {
            image_id: rng.random_range(0..2),
            class_id: rng.random_range(1..=2),
            bbox: BoundingBox::new(
                rng.random_range(0..30) as f64,
                rng.random_range(0..30) as f64,
                rng.random_range(4..=16) as f64,
                rng.random_range(4..=16) as f64,
            )
            .unwrap(),
            score: rng.random_range(0..=20) as f64 / 20.0,
        })
        .collect()
}

#[test]
fn nms_is_idempotent_for_every_criterion() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let criteria = all_criteria();
    for _ in 0..250 {
        let dets = random_set(&mut rng);
        let threshold = [0.3, 0.5, 0.7][rng.random_range(0..3)];
        for criterion in &criteria {
            let once = nms(&dets, criterion, threshold);
            let twice = nms(&once, criterion, threshold);
            assert_eq!(once, twice, "{} at {threshold}", criterion.name());
        }
    }
}

#[test]
fn top_scored_detection_of_every_group_survives() {
    let mut rng = ChaCha8Rng::seed_from_u64(602);
    let criteria = all_criteria();
    for _ in 0..250 {
        let dets = random_set(&mut rng);
        let threshold = [0.3, 0.5, 0.7][rng.random_range(0..3)];
        let mut top_by_group: BTreeMap<(u64, u64), f64> = BTreeMap::new();
        for d in &dets {
            let entry = top_by_group.entry((d.image_id, d.class_id)).or_insert(d.score);
            *entry = entry.max(d.score);
        }
        for criterion in &criteria {
            let kept = nms(&dets, criterion, threshold);
            for (&(image_id, class_id), &top) in &top_by_group {
                assert!(
                    kept.iter().any(|d| d.image_id == image_id
                        && d.class_id == class_id
                        && d.score == top),
                    "top det of group ({image_id},{class_id}) was suppressed"
                );
            }
        }
    }
}

#[test]
fn survivors_keep_descending_score_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(603);
    for _ in 0..100 {
        let dets = random_set(&mut rng);
        let kept = nms(&dets, &CriterionSpec::Iou, 0.5);
        assert!(kept.windows(2).all(|w| w[0].score >= w[1].score));
        assert!(!kept.is_empty());
        assert!(kept.len() <= dets.len());
    }
}

#[test]
fn suppression_set_is_a_subset_of_the_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(604);
    for _ in 0..100 {
        let dets = random_set(&mut rng);
        let kept = nms(&dets, &CriterionSpec::Gsiou { gamma: 0.2, kappa: 32.0 }, 0.4);
        for d in &kept {
            assert!(dets.iter().any(|orig| orig == d));
        }
    }
}
