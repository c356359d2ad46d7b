//! Instance generators, the bound calculator, bound verification and the
//! end-to-end pipeline.

pub mod bounds;
pub mod generate;
pub mod pipeline;
pub mod report;

pub use bounds::{closed_form_bounds, d_k, root_up, BoundParams, BoundValue, Rounding};
pub use generate::{generate, Family, Instance};
pub use pipeline::{run_pipeline, PipelineSpec};
pub use report::{verify_bounds, BoundReport, VerifyConfig};
