use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON in {} at `{pointer}`: {source}", path.display())]
    Json {
        path: PathBuf,
        /// Dotted path into the document (e.g. `annotations[3].bbox`),
        /// or `.` when the failure is at the top level.
        pointer: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{}: image {image_id} has non-positive dimensions {width}x{height}", path.display())]
    BadImageDims { path: PathBuf, image_id: u64, width: f64, height: f64 },
    #[error("{}: duplicate image id {image_id}", path.display())]
    DuplicateImage { path: PathBuf, image_id: u64 },
    #[error("{}: duplicate category id {class_id}", path.display())]
    DuplicateCategory { path: PathBuf, class_id: u64 },
    #[error("{}: {context} references unknown image_id {image_id}", path.display())]
    UnknownImage { path: PathBuf, context: String, image_id: u64 },
    #[error("{}: {context} references unknown category_id {class_id}", path.display())]
    UnknownCategory { path: PathBuf, context: String, class_id: u64 },
    #[error("{}: {context} has invalid bbox {bbox:?}: {reason}", path.display())]
    BadBbox { path: PathBuf, context: String, bbox: [f64; 4], reason: String },
    #[error("{}: {context} has non-finite score {score}", path.display())]
    BadScore { path: PathBuf, context: String, score: f64 },
}

impl DataError {
    /// True when the failure lies in the input data (unreadable, unparsable,
    /// or semantically invalid) rather than in emitting an output file.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, DataError::Write { .. })
    }
}
