//! Text format and pipeline used by the `iotacx` binary.

pub mod format;
pub mod pipeline;

pub use format::{deserialize, serialize, ComplexDocument};
pub use pipeline::{run_yn_pipeline, YnReport};
