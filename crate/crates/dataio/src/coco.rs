//! COCO-style JSON ingestion: ground-truth datasets (`images` /
//! `annotations` / `categories`) and result arrays of scored detections.
//!
//! Loading is strict about referential integrity (an annotation must point
//! at a declared image and category) and about geometry (boxes must have
//! positive, finite extent), but repairs what can be repaired: ground-truth
//! boxes are clamped to their image rectangle and out-of-range scores are
//! clamped to [0, 1], each with a human-readable warning instead of a
//! failure. Records are never silently dropped or reordered.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use boxcore::BoundingBox;
use evalkit::{ClassId, Detection, GroundTruthObject, ImageId};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::DataError;
use crate::fmt::round_sig;

/// One entry of the dataset's image table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageInfo {
    pub id: ImageId,
    pub width: f64,
    pub height: f64,
}

/// One entry of the dataset's category table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryInfo {
    pub id: ClassId,
    pub name: String,
}

/// A validated ground-truth dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub images: Vec<ImageInfo>,
    pub categories: Vec<CategoryInfo>,
    /// Same order and count as the `annotations` array in the file.
    pub annotations: Vec<GroundTruthObject>,
}

/// A loaded dataset plus the non-fatal repairs performed while loading.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruthLoad {
    pub dataset: Dataset,
    pub warnings: Vec<String>,
}

/// Loaded detections plus the non-fatal repairs performed while loading.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionsLoad {
    /// Same order and count as the array in the file.
    pub detections: Vec<Detection>,
    pub warnings: Vec<String>,
}

// Raw mirror of the file schema. Unknown extra fields (licenses, segmentation,
// iscrowd, ...) are ignored for forward compatibility.
#[derive(Deserialize)]
struct RawDataset {
    images: Vec<RawImage>,
    annotations: Vec<RawAnnotation>,
    categories: Vec<RawCategory>,
}

#[derive(Deserialize)]
struct RawImage {
    id: u64,
    width: f64,
    height: f64,
}

#[derive(Deserialize)]
struct RawAnnotation {
    #[serde(default)]
    id: Option<u64>,
    image_id: u64,
    category_id: u64,
    bbox: [f64; 4],
}

#[derive(Deserialize)]
struct RawCategory {
    id: u64,
    #[serde(default)]
    name: Option<String>,
}

#[derive(Deserialize)]
struct RawDetection {
    image_id: u64,
    category_id: u64,
    bbox: [f64; 4],
    score: f64,
}

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, DataError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| DataError::Read { path: path.to_path_buf(), source })?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| DataError::Json {
        path: path.to_path_buf(),
        pointer: e.path().to_string(),
        source: e.into_inner(),
    })
}

fn annotation_context(index: usize, id: Option<u64>) -> String {
    match id {
        Some(id) => format!("annotation {id}"),
        None => format!("annotation at index {index}"),
    }
}

/// Validate extent and finiteness of a raw `[x, y, w, h]` bbox.
fn check_bbox(path: &Path, context: &str, bbox: [f64; 4]) -> Result<(), DataError> {
    let [x, y, w, h] = bbox;
    if bbox.iter().any(|v| !v.is_finite()) {
        return Err(DataError::BadBbox {
            path: path.to_path_buf(),
            context: context.to_string(),
            bbox,
            reason: "coordinates must be finite".to_string(),
        });
    }
    if !(w > 0.0 && h > 0.0) {
        return Err(DataError::BadBbox {
            path: path.to_path_buf(),
            context: context.to_string(),
            bbox,
            reason: format!("extent must be positive, got w={w}, h={h}"),
        });
    }
    let _ = (x, y);
    Ok(())
}

/// Load and validate a COCO-style ground-truth file.
///
/// Fatal problems (malformed JSON, missing keys, non-positive image
/// dimensions, duplicate ids, dangling references, degenerate boxes) return
/// an error naming the offending record. Boxes that merely stick out of
/// their image are clamped to `[0, width] x [0, height]` and reported in
/// `warnings`; a box entirely outside its image cannot be repaired and is an
/// error. The annotation count and order are always preserved.
pub fn load_ground_truth(path: impl AsRef<Path>) -> Result<GroundTruthLoad, DataError> {
    let path = path.as_ref();
    let raw: RawDataset = read_json(path)?;
    let mut warnings = Vec::new();

    let mut images = Vec::with_capacity(raw.images.len());
    let mut image_dims: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for img in &raw.images {
        if !(img.width > 0.0 && img.height > 0.0)
            || !img.width.is_finite()
            || !img.height.is_finite()
        {
            return Err(DataError::BadImageDims {
                path: path.to_path_buf(),
                image_id: img.id,
                width: img.width,
                height: img.height,
            });
        }
        if image_dims.insert(img.id, (img.width, img.height)).is_some() {
            return Err(DataError::DuplicateImage { path: path.to_path_buf(), image_id: img.id });
        }
        images.push(ImageInfo { id: img.id, width: img.width, height: img.height });
    }

    let mut categories = Vec::with_capacity(raw.categories.len());
    let mut category_ids = BTreeSet::new();
    for cat in &raw.categories {
        if !category_ids.insert(cat.id) {
            return Err(DataError::DuplicateCategory {
                path: path.to_path_buf(),
                class_id: cat.id,
            });
        }
        let name = cat.name.clone().unwrap_or_else(|| format!("class-{}", cat.id));
        categories.push(CategoryInfo { id: cat.id, name });
    }

    let mut annotations = Vec::with_capacity(raw.annotations.len());
    for (index, ann) in raw.annotations.iter().enumerate() {
        let context = annotation_context(index, ann.id);
        let &(img_w, img_h) = image_dims.get(&ann.image_id).ok_or_else(|| {
            DataError::UnknownImage {
                path: path.to_path_buf(),
                context: context.clone(),
                image_id: ann.image_id,
            }
        })?;
        if !category_ids.contains(&ann.category_id) {
            return Err(DataError::UnknownCategory {
                path: path.to_path_buf(),
                context,
                class_id: ann.category_id,
            });
        }
        check_bbox(path, &context, ann.bbox)?;

        let [x, y, w, h] = ann.bbox;
        let x1 = x.clamp(0.0, img_w);
        let y1 = y.clamp(0.0, img_h);
        let x2 = (x + w).clamp(0.0, img_w);
        let y2 = (y + h).clamp(0.0, img_h);
        if !(x2 > x1 && y2 > y1) {
            return Err(DataError::BadBbox {
                path: path.to_path_buf(),
                context,
                bbox: ann.bbox,
                reason: format!("lies entirely outside its {img_w}x{img_h} image"),
            });
        }
        if x1 != x || y1 != y || x2 != x + w || y2 != y + h {
            warnings.push(format!(
                "{context}: bbox [{x}, {y}, {w}, {h}] clamped to its {img_w}x{img_h} image"
            ));
        }
        let bbox = BoundingBox::new(x1, y1, x2 - x1, y2 - y1)
            .expect("clamped box has positive extent by construction");
        annotations.push(GroundTruthObject {
            image_id: ann.image_id,
            class_id: ann.category_id,
            bbox,
        });
    }

    Ok(GroundTruthLoad { dataset: Dataset { images, categories, annotations }, warnings })
}

/// Load a COCO-style results file: a JSON array of
/// `{image_id, category_id, bbox, score}` objects.
///
/// Records come back in file order. Scores outside [0, 1] are clamped with
/// a warning; non-finite scores and degenerate boxes are errors.
pub fn load_detections(path: impl AsRef<Path>) -> Result<DetectionsLoad, DataError> {
    let path = path.as_ref();
    let raw: Vec<RawDetection> = read_json(path)?;
    let mut warnings = Vec::new();

    let mut detections = Vec::with_capacity(raw.len());
    for (index, det) in raw.iter().enumerate() {
        let context = format!("detection at index {index}");
        check_bbox(path, &context, det.bbox)?;
        if !det.score.is_finite() {
            return Err(DataError::BadScore {
                path: path.to_path_buf(),
                context,
                score: det.score,
            });
        }
        let score = det.score.clamp(0.0, 1.0);
        if score != det.score {
            warnings.push(format!("{context}: score {} clamped to {score}", det.score));
        }
        let [x, y, w, h] = det.bbox;
        let bbox = BoundingBox::new(x, y, w, h).expect("extent checked above");
        detections.push(Detection {
            image_id: det.image_id,
            class_id: det.category_id,
            bbox,
            score,
        });
    }

    Ok(DetectionsLoad { detections, warnings })
}

#[derive(Serialize)]
struct DetectionRecord {
    image_id: u64,
    category_id: u64,
    bbox: [f64; 4],
    score: f64,
}

/// Write detections as a COCO-style results array (the format
/// [`load_detections`] reads). Floats are rounded to six significant digits.
pub fn write_detections(detections: &[Detection], path: impl AsRef<Path>) -> Result<(), DataError> {
    let path = path.as_ref();
    let records: Vec<DetectionRecord> = detections
        .iter()
        .map(|d| DetectionRecord {
            image_id: d.image_id,
            category_id: d.class_id,
            bbox: [
                round_sig(d.bbox.x, crate::fmt::OUTPUT_SIG_DIGITS),
                round_sig(d.bbox.y, crate::fmt::OUTPUT_SIG_DIGITS),
                round_sig(d.bbox.w, crate::fmt::OUTPUT_SIG_DIGITS),
                round_sig(d.bbox.h, crate::fmt::OUTPUT_SIG_DIGITS),
            ],
            score: round_sig(d.score, crate::fmt::OUTPUT_SIG_DIGITS),
        })
        .collect();
    let text = serde_json::to_string_pretty(&records).expect("records contain no non-finite floats");
    write_text(path, &text)
}

/// Write `text` plus a trailing newline.
pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), DataError> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    std::fs::write(path, body).map_err(|source| DataError::Write {
        path: PathBuf::from(path),
        source,
    })
}
