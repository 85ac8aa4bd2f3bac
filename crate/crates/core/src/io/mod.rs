//! Input documents, scalar expressions and report rendering.

mod parse;
mod report;

pub use parse::{parse_catalog_spec, parse_document, parse_scalar, DocumentKind, InputDocument};
pub use report::{
    build_report, build_report_for, emit_report, Format, InputEcho, LatticeSummary, ReportDocument, ReportOptions,
    SyzygySummary, SCHEMA_VERSION,
};
