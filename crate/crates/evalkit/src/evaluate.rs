use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::curves::{average_precision, precision_recall_curve};
use crate::matching::match_detections;
use crate::types::{
    ClassId, ClassReport, ConfigError, Detection, EvalConfig, EvalReport, GroundTruthObject,
    MatchCounts, SizeBreakdown, SizeClass,
};

/// Relative mAP error cases.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RmapError {
    /// Relative change against a zero or negative baseline is undefined.
    #[error("baseline mAP must be positive, got {0}")]
    NonPositiveBaseline(f64),
}

/// Relative mAP: (method − baseline) / baseline.
pub fn rmap(map_method: f64, map_baseline: f64) -> Result<f64, RmapError> {
    if !(map_baseline > 0.0) {
        return Err(RmapError::NonPositiveBaseline(map_baseline));
    }
    Ok((map_method - map_baseline) / map_baseline)
}

/// Keep only the `cap` highest-scored detections of each image (ties broken
/// by input order), preserving the original relative order of survivors.
fn capped_per_image(dets: &[Detection], cap: Option<usize>) -> Vec<Detection> {
    let Some(cap) = cap else {
        return dets.to_vec();
    };
    let mut by_image: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, det) in dets.iter().enumerate() {
        by_image.entry(det.image_id).or_default().push(i);
    }
    let mut keep = vec![false; dets.len()];
    for indices in by_image.values() {
        let mut ranked = indices.clone();
        ranked.sort_by(|&a, &b| {
            dets[b]
                .score
                .partial_cmp(&dets[a].score)
                .expect("scores must not be NaN")
                .then(a.cmp(&b))
        });
        for &i in ranked.iter().take(cap) {
            keep[i] = true;
        }
    }
    dets.iter().enumerate().filter(|&(i, _)| keep[i]).map(|(_, d)| d.clone()).collect()
}

/// Sorted union of class identifiers present in either collection.
fn class_union(dets: &[Detection], gts: &[GroundTruthObject]) -> Vec<ClassId> {
    let mut ids: BTreeSet<ClassId> = dets.iter().map(|d| d.class_id).collect();
    ids.extend(gts.iter().map(|g| g.class_id));
    ids.into_iter().collect()
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

fn class_report(
    class_id: ClassId,
    dets: &[Detection],
    gts: &[GroundTruthObject],
    config: &EvalConfig,
) -> ClassReport {
    let n_gt = gts.len();
    let mut ap_per_threshold = Vec::with_capacity(config.thresholds.len());
    let mut counts_per_threshold = Vec::with_capacity(config.thresholds.len());
    for &threshold in &config.thresholds {
        let outcomes = match_detections(dets, gts, &config.criterion, threshold);
        let curve = precision_recall_curve(&outcomes, n_gt);
        ap_per_threshold.push(average_precision(&curve, config.ap_style));
        let tp = outcomes.iter().filter(|o| o.matched_gt.is_some()).count();
        counts_per_threshold.push(MatchCounts { tp, fp: dets.len() - tp, missed: n_gt - tp });
    }
    let ap = mean(&ap_per_threshold);
    ClassReport { class_id, n_gt, ap_per_threshold, counts_per_threshold, ap }
}

/// Split detections and ground truths per class, preserving input order, and
/// produce one report per class in ascending class id. Classes are run in
/// parallel; the indexed collect keeps the output order (and therefore every
/// downstream reduction) independent of thread scheduling.
fn evaluate_classes(
    dets: &[Detection],
    gts: &[GroundTruthObject],
    config: &EvalConfig,
) -> (Vec<ClassReport>, Vec<f64>, f64) {
    let classes = class_union(dets, gts);
    let mut dets_by_class: BTreeMap<ClassId, Vec<Detection>> = BTreeMap::new();
    for det in dets {
        dets_by_class.entry(det.class_id).or_default().push(det.clone());
    }
    let mut gts_by_class: BTreeMap<ClassId, Vec<GroundTruthObject>> = BTreeMap::new();
    for gt in gts {
        gts_by_class.entry(gt.class_id).or_default().push(gt.clone());
    }

    let reports: Vec<ClassReport> = classes
        .par_iter()
        .map(|&class_id| {
            let class_dets = dets_by_class.get(&class_id).map_or(&[][..], Vec::as_slice);
            let class_gts = gts_by_class.get(&class_id).map_or(&[][..], Vec::as_slice);
            class_report(class_id, class_dets, class_gts, config)
        })
        .collect();

    let map_per_threshold: Vec<f64> = (0..config.thresholds.len())
        .map(|t| {
            let per_class: Vec<f64> = reports.iter().map(|r| r.ap_per_threshold[t]).collect();
            mean(&per_class)
        })
        .collect();
    let map = mean(&map_per_threshold);
    (reports, map_per_threshold, map)
}

/// Mean recall over the fixed threshold grid 0.50, 0.55, …, 0.95, pooled over
/// every ground truth object in the dataset. The grid is independent of
/// `config.thresholds`; the criterion and the per-image cap are taken from
/// the config. Returns 0 when there are no ground truths.
pub fn average_recall(
    dets: &[Detection],
    gts: &[GroundTruthObject],
    config: &EvalConfig,
) -> f64 {
    if gts.is_empty() {
        return 0.0;
    }
    let dets = capped_per_image(dets, config.max_detections);

    let mut gts_by_class: BTreeMap<ClassId, Vec<GroundTruthObject>> = BTreeMap::new();
    for gt in gts {
        gts_by_class.entry(gt.class_id).or_default().push(gt.clone());
    }
    let mut dets_by_class: BTreeMap<ClassId, Vec<Detection>> = BTreeMap::new();
    for det in &dets {
        // Detections of classes without any ground truth cannot match.
        if gts_by_class.contains_key(&det.class_id) {
            dets_by_class.entry(det.class_id).or_default().push(det.clone());
        }
    }

    let grid = EvalConfig::coco_thresholds();
    let pairs: Vec<(&[Detection], &[GroundTruthObject])> = gts_by_class
        .iter()
        .map(|(class_id, class_gts)| {
            let class_dets = dets_by_class.get(class_id).map_or(&[][..], Vec::as_slice);
            (class_dets, class_gts.as_slice())
        })
        .collect();

    // Integer TP tallies make the cross-class reduction order-insensitive.
    let tp_per_threshold: Vec<usize> = pairs
        .par_iter()
        .map(|(class_dets, class_gts)| {
            grid.iter()
                .map(|&threshold| {
                    match_detections(class_dets, class_gts, &config.criterion, threshold)
                        .iter()
                        .filter(|o| o.matched_gt.is_some())
                        .count()
                })
                .collect::<Vec<usize>>()
        })
        .reduce(
            || vec![0usize; grid.len()],
            |mut acc, counts| {
                for (a, c) in acc.iter_mut().zip(counts) {
                    *a += c;
                }
                acc
            },
        );

    let n_gt = gts.len() as f64;
    let recalls: Vec<f64> = tp_per_threshold.iter().map(|&tp| tp as f64 / n_gt).collect();
    mean(&recalls)
}

fn bucket_map(
    dets: &[Detection],
    gts: &[GroundTruthObject],
    config: &EvalConfig,
    bucket: SizeClass,
) -> Option<f64> {
    let in_bucket_d: Vec<Detection> = dets
        .iter()
        .filter(|d| config.size_buckets.class_of(d.bbox.side()) == bucket)
        .cloned()
        .collect();
    let in_bucket_g: Vec<GroundTruthObject> = gts
        .iter()
        .filter(|g| config.size_buckets.class_of(g.bbox.side()) == bucket)
        .cloned()
        .collect();
    if in_bucket_d.is_empty() && in_bucket_g.is_empty() {
        return None;
    }
    let (_, _, map) = evaluate_classes(&in_bucket_d, &in_bucket_g, config);
    Some(map)
}

/// Full evaluation: per-class AP at every threshold, mAP per threshold and
/// averaged, pooled average recall, and the size-bucket breakdown (both the
/// predicted and the true boxes are filtered into each bucket by sqrt(w·h)).
/// The per-image detection cap, when set, is applied once up front.
pub fn evaluate(
    dets: &[Detection],
    gts: &[GroundTruthObject],
    config: &EvalConfig,
) -> Result<EvalReport, ConfigError> {
    config.validate()?;
    let dets = capped_per_image(dets, config.max_detections);
    let (classes, map_per_threshold, map) = evaluate_classes(&dets, gts, config);
    let size_breakdown = SizeBreakdown {
        all: map,
        small: bucket_map(&dets, gts, config, SizeClass::Small),
        medium: bucket_map(&dets, gts, config, SizeClass::Medium),
        large: bucket_map(&dets, gts, config, SizeClass::Large),
    };
    let average_recall = average_recall(&dets, gts, config);
    Ok(EvalReport {
        criterion: config.criterion,
        ap_style: config.ap_style,
        thresholds: config.thresholds.clone(),
        classes,
        map_per_threshold,
        map,
        average_recall,
        size_breakdown,
    })
}
