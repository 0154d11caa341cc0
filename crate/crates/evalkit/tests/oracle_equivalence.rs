//! The greedy matcher and AP aggregation checked against naive
//! re-implementations (explicit nested loops, no shared code paths) on
//! hundreds of small random instances.

use boxcore::{BoundingBox, CriterionSpec};
use evalkit::{
    evaluate, match_detections, precision_recall_curve, ApStyle, Detection, EvalConfig,
    GroundTruthObject,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Greedy matching rewritten with explicit selection loops: repeatedly take
/// the unprocessed detection with the highest score (lowest index on ties),
/// give it the free same-image ground truth with the highest criterion value
/// (first in input order on ties) when that value reaches the threshold.
fn naive_match(
    dets: &[Detection],
    gts: &[GroundTruthObject],
    criterion: &CriterionSpec,
    threshold: f64,
) -> Vec<Option<usize>> {
    let mut processed = vec![false; dets.len()];
    let mut taken = vec![false; gts.len()];
    let mut matched: Vec<Option<usize>> = vec![None; dets.len()];
    for _ in 0..dets.len() {
        let mut pick: Option<usize> = None;
        for i in 0..dets.len() {
            if processed[i] {
                continue;
            }
            pick = match pick {
                Some(p) if dets[i].score <= dets[p].score => Some(p),
                _ => Some(i),
            };
        }
        let di = pick.expect("one unprocessed detection must remain");
        processed[di] = true;

        let mut best: Option<usize> = None;
        let mut best_value = f64::NEG_INFINITY;
        for (gi, gt) in gts.iter().enumerate() {
            if taken[gi] || gt.image_id != dets[di].image_id {
                continue;
            }
            let value = criterion.evaluate(&dets[di].bbox, &gt.bbox);
            if value > best_value {
                best_value = value;
                best = Some(gi);
            }
        }
        if let Some(gi) = best {
            if best_value >= threshold {
                matched[di] = Some(gi);
                taken[gi] = true;
            }
        }
    }
    matched
}

/// Eleven-point AP recomputed from scratch out of per-rank hit flags.
fn naive_ap_11pt(hits_in_rank_order: &[bool], n_gt: usize) -> f64 {
    if n_gt == 0 {
        return 0.0;
    }
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut tp = 0usize;
    for (k, &hit) in hits_in_rank_order.iter().enumerate() {
        if hit {
            tp += 1;
        }
        points.push((tp as f64 / n_gt as f64, tp as f64 / (k + 1) as f64));
    }
    let mut total = 0.0;
    for i in 0..=10 {
        let r = i as f64 / 10.0;
        let mut best = 0.0f64;
        for &(recall, precision) in &points {
            if recall >= r && precision > best {
                best = precision;
            }
        }
        total += best;
    }
    total / 11.0
}

fn random_box(rng: &mut ChaCha8Rng) -> BoundingBox {
    let x = rng.random_range(0..40) as f64;
    let y = rng.random_range(0..40) as f64;
    let w = rng.random_range(1..=20) as f64;
    let h = rng.random_range(1..=20) as f64;
    BoundingBox::new(x, y, w, h).unwrap()
}

/// Small instances with deliberately coarse scores so ties are common.
fn random_instance(rng: &mut ChaCha8Rng) -> (Vec<Detection>, Vec<GroundTruthObject>) {
    let n_dets = rng.random_range(0..=5);
    let n_gts = rng.random_range(0..=5);
    let gts: Vec<GroundTruthObject> = (0..n_gts)
        .map(|_| GroundTruthObject {
            image_id: rng.random_range(0..2),
            class_id: 1,
            bbox: random_box(rng),
        })
        .collect();
    let dets: Vec<Detection> = (0..n_dets)
        .map(|_| Detection {
            image_id: rng.random_range(0..2),
            class_id: 1,
            bbox: random_box(rng),
            score: rng.random_range(0..=10) as f64 / 10.0,
        })
        .collect();
    (dets, gts)
}

#[test]
fn greedy_matcher_agrees_with_nested_loop_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let criteria = [
        CriterionSpec::Iou,
        CriterionSpec::Giou,
        CriterionSpec::Siou { gamma: 0.5, kappa: 64.0 },
    ];
    for round in 0..400 {
        let (dets, gts) = random_instance(&mut rng);
        for criterion in &criteria {
            for threshold in [0.3, 0.5, 0.75] {
                let outcomes = match_detections(&dets, &gts, criterion, threshold);
                let mut from_lib: Vec<Option<usize>> = vec![None; dets.len()];
                for o in &outcomes {
                    from_lib[o.det_index] = o.matched_gt;
                }
                let from_oracle = naive_match(&dets, &gts, criterion, threshold);
                assert_eq!(
                    from_lib, from_oracle,
                    "matching diverged (round {round}, {} at {threshold})",
                    criterion.name()
                );
            }
        }
    }
}

#[test]
fn eleven_point_ap_agrees_with_naive_recomputation() {
    let mut rng = ChaCha8Rng::seed_from_u64(402);
    for _ in 0..400 {
        let (dets, gts) = random_instance(&mut rng);
        let outcomes = match_detections(&dets, &gts, &CriterionSpec::Iou, 0.5);
        let hits: Vec<bool> = outcomes.iter().map(|o| o.matched_gt.is_some()).collect();
        let curve = precision_recall_curve(&outcomes, gts.len());
        let lib = evalkit::average_precision(&curve, ApStyle::ElevenPoint);
        let oracle = naive_ap_11pt(&hits, gts.len());
        assert!((lib - oracle).abs() < 1e-12, "AP diverged: {lib} vs {oracle}");
    }
}

#[test]
fn counts_from_fixed_matching_never_gain_tps_when_rethresholded() {
    let mut rng = ChaCha8Rng::seed_from_u64(403);
    for _ in 0..200 {
        let (dets, gts) = random_instance(&mut rng);
        let outcomes = match_detections(&dets, &gts, &CriterionSpec::Iou, 0.3);
        let matched_values: Vec<f64> = outcomes
            .iter()
            .filter_map(|o| {
                o.matched_gt
                    .map(|gi| CriterionSpec::Iou.evaluate(&dets[o.det_index].bbox, &gts[gi].bbox))
            })
            .collect();
        let mut last_tp = usize::MAX;
        for i in 0..=13 {
            let t = 0.3 + 0.05 * i as f64;
            let tp = matched_values.iter().filter(|&&v| v >= t).count();
            assert!(tp <= last_tp, "re-thresholding a fixed matching gained TPs");
            last_tp = tp;
        }
    }
}

#[test]
fn zero_gamma_size_criterion_reports_bit_identical_to_iou() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut gts: Vec<GroundTruthObject> = Vec::new();
    let mut dets: Vec<Detection> = Vec::new();
    for image_id in 0..40u64 {
        for _ in 0..rng.random_range(0..=5) {
            let class_id = rng.random_range(1..=3);
            let bbox = random_box(&mut rng);
            gts.push(GroundTruthObject { image_id, class_id, bbox });
            // A jittered copy of most ground truths, plus occasional far FPs.
            if rng.random_range(0..10) < 8 {
                let dx = rng.random_range(-3..=3) as f64;
                let dy = rng.random_range(-3..=3) as f64;
                dets.push(Detection {
                    image_id,
                    class_id,
                    bbox: bbox.translated(dx, dy),
                    score: rng.random_range(0..=100) as f64 / 100.0,
                });
            }
            if rng.random_range(0..10) < 3 {
                dets.push(Detection {
                    image_id,
                    class_id,
                    bbox: random_box(&mut rng),
                    score: rng.random_range(0..=100) as f64 / 100.0,
                });
            }
        }
    }

    let iou_config = EvalConfig::new(
        CriterionSpec::Iou,
        EvalConfig::coco_thresholds(),
        ApStyle::ElevenPoint,
    )
    .unwrap();
    let siou_config = EvalConfig::new(
        CriterionSpec::Siou { gamma: 0.0, kappa: 64.0 },
        EvalConfig::coco_thresholds(),
        ApStyle::ElevenPoint,
    )
    .unwrap();

    let report_iou = evaluate(&dets, &gts, &iou_config).unwrap();
    let mut report_siou = evaluate(&dets, &gts, &siou_config).unwrap();
    assert_eq!(report_siou.criterion, CriterionSpec::Siou { gamma: 0.0, kappa: 64.0 });
    report_siou.criterion = CriterionSpec::Iou;
    assert_eq!(report_iou, report_siou, "γ = 0 must collapse to plain IoU bit-for-bit");
}

#[test]
fn evaluation_is_invariant_to_rayon_thread_count() {
    // The library must give identical reports no matter how rayon schedules
    // class work; emulate by running inside differently sized local pools.
    let mut rng = ChaCha8Rng::seed_from_u64(405);
    let mut gts: Vec<GroundTruthObject> = Vec::new();
    let mut dets: Vec<Detection> = Vec::new();
    for image_id in 0..20u64 {
        for class_id in 1..=6u64 {
            for _ in 0..rng.random_range(0..=3) {
                let bbox = random_box(&mut rng);
                gts.push(GroundTruthObject { image_id, class_id, bbox });
                dets.push(Detection {
                    image_id,
                    class_id,
                    bbox: bbox.translated(1.0, -1.0),
                    score: rng.random_range(0..=100) as f64 / 100.0,
                });
            }
        }
    }
    let config = EvalConfig::new(
        CriterionSpec::Giou,
        EvalConfig::coco_thresholds(),
        ApStyle::ContinuousAuc,
    )
    .unwrap();

    let reports: Vec<_> = [1usize, 2, 8]
        .iter()
        .map(|&n| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
            pool.install(|| evaluate(&dets, &gts, &config).unwrap())
        })
        .collect();
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0], reports[2]);
}
