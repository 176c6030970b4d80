//! Polytope files, embedded fixtures, batch scans and reports.

pub mod fixtures;
pub mod parse;
pub mod report;

pub use parse::{parse, PolytopeEntry, PolytopeFile};
pub use report::{analyze, analyze_entry, emit, scan, Analysis, AnalysisReport, Format, ScanOptions};
