//! Command-line companion to `layermesh-core`: mesh and solution file
//! formats, the convergence study, reference comparison and mesh reports.

pub mod error;
pub mod formats;
pub mod reference;
pub mod report;
pub mod study;

pub use error::{Error, Result};
pub use reference::{compare_reference, load_reference, ComparisonReport, ReferenceCell};
pub use report::{mesh_report, MeshReport};
pub use study::{run_study, run_study_with_workers, CellResult, ConvergenceTable, OutputFormat, SigmaRule, StudyConfig};

/// Transcribed reference errors and rates for the default study.
pub const DEFAULT_REFERENCE: &str = include_str!("../data/table1_reference.csv");
