//! Spec-file input, classification and report output.

pub mod app;
pub mod classify;
pub mod report;
pub mod spec_file;

pub use classify::classify;
pub use report::{
    emit_report, parse_report, IsotopyReport, PairReport, ReportFormat, REPORT_SCHEMA_VERSION,
};
pub use spec_file::{parse_spec, SpecError, SpecFile, ValidationIssue, SPEC_SCHEMA_VERSION};
