pub mod analyze;
pub mod compare;
pub mod evaluate;
pub mod nms;
