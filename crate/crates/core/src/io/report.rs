//! Per-polytope analysis records, the batch scan and report emission.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::parse::{PolytopeEntry, PolytopeFile};
use crate::conjectures::{check_all, ConjectureOptions, ConjectureReport, DEFAULT_EHRHART_MAX_DIM};
use crate::criteria::{ke_test, verdict_from, KEVerdict};
use crate::error::Result;
use crate::exact::{as_string, rat_string, Int, IntVector, Rat};
use crate::measures::{degree, ehrhart, fano_index};
use crate::polyhedra::{DualPair, LatticePolytope, SmoothnessViolation};
use crate::symmetry::{automorphism_group, vertex_sum, SearchOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub conjectures: bool,
    pub ehrhart_max_dim: usize,
    /// Record wall-clock time per entry (makes output run-dependent).
    pub timing: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { jobs: None, conjectures: false, ehrhart_max_dim: DEFAULT_EHRHART_MAX_DIM, timing: false }
    }
}

/// Everything computed for a smooth Fano entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    #[serde(flatten)]
    pub verdict: KEVerdict,
    /// The fixed-space generator when that space is a line.
    #[serde(with = "as_string::opt_int_vec", default)]
    pub fixed_generator: Option<IntVector>,
    #[serde(with = "as_string::int_vec")]
    pub vertex_sum: IntVector,
    #[serde(with = "as_string::rat")]
    pub volume: Rat,
    #[serde(with = "as_string::rat")]
    pub degree: Rat,
    #[serde(with = "as_string::int")]
    pub fano_index: Int,
    /// Ehrhart coefficients `a_0..a_n` of `P`, when computed.
    #[serde(with = "as_string::opt_rat_vec", default)]
    pub ehrhart: Option<Vec<Rat>>,
    #[serde(default)]
    pub conjectures: Option<ConjectureReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub name: String,
    pub dim: usize,
    pub n_vertices: usize,
    pub is_smooth_fano: bool,
    pub is_reflexive: bool,
    /// Why the entry is not a smooth Fano polytope.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smoothness_violation: Option<SmoothnessViolation>,
    /// Input that could not be analysed at all (e.g. not full-dimensional).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(flatten, default)]
    pub analysis: Option<Analysis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl AnalysisReport {
    fn bare(entry: &PolytopeEntry) -> Self {
        AnalysisReport {
            name: entry.name.clone(),
            dim: entry.dim,
            n_vertices: entry.vertices.len(),
            is_smooth_fano: false,
            is_reflexive: false,
            smoothness_violation: None,
            error: None,
            analysis: None,
            timing_ms: None,
        }
    }

    /// Kähler–Einstein but not symmetric.
    pub fn is_nonsymmetric_ke(&self) -> bool {
        self.analysis.as_ref().is_some_and(|a| a.verdict.is_ke && !a.verdict.is_symmetric)
    }
}

/// Full analysis of one smooth Fano polytope `Q`.
pub fn analyze(q: &LatticePolytope, opts: &ScanOptions) -> Result<Analysis> {
    let dp = DualPair::new(q)?;
    let n = dp.dim();
    let groups = automorphism_group(&dp, SearchOptions::default());
    let ke = ke_test(&dp);
    let verdict = verdict_from(&dp, &groups, &ke);
    let fixed_generator = (verdict.fixed_dim == 1).then(|| verdict.fixed_basis[0].clone());
    let poly = (opts.conjectures && n <= opts.ehrhart_max_dim).then(|| ehrhart(&dp.p));
    let conjectures = if opts.conjectures {
        let copts = ConjectureOptions { ehrhart_max_dim: opts.ehrhart_max_dim };
        Some(check_all(&dp, &ke.volume, poly.as_ref(), copts)?)
    } else {
        None
    };
    Ok(Analysis {
        fixed_generator,
        vertex_sum: vertex_sum(&dp.q),
        degree: degree(&ke.volume, n),
        volume: ke.volume,
        fano_index: fano_index(&dp.p),
        ehrhart: poly.map(|e| e.coefficients),
        conjectures,
        verdict,
    })
}

/// Report for one file entry; per-entry failures are recorded, never raised.
pub fn analyze_entry(entry: &PolytopeEntry, opts: &ScanOptions) -> AnalysisReport {
    let start = Instant::now();
    let mut report = AnalysisReport::bare(entry);
    match LatticePolytope::hull(&entry.vertices) {
        Err(e) => report.error = Some(e.to_string()),
        Ok(q) => {
            report.n_vertices = q.vertices().len();
            report.is_reflexive = q.is_reflexive();
            match q.smoothness() {
                Err(v) => report.smoothness_violation = Some(v),
                Ok(()) => {
                    report.is_smooth_fano = true;
                    match analyze(&q, opts) {
                        Ok(a) => report.analysis = Some(a),
                        Err(e) => report.error = Some(e.to_string()),
                    }
                }
            }
        }
    }
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

/// Analyses every entry, in input order regardless of parallelism.
pub fn scan(file: &PolytopeFile, opts: &ScanOptions) -> Vec<AnalysisReport> {
    let run = || file.entries.par_iter().map(|e| analyze_entry(e, opts)).collect();
    match opts.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build().expect("thread pool").install(run),
        None => run(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Columns of the CSV summary.
pub const CSV_COLUMNS: [&str; 14] = [
    "name",
    "dim",
    "n_vertices",
    "is_smooth_fano",
    "is_reflexive",
    "is_ke",
    "is_symmetric",
    "fixed_dim",
    "group_order",
    "alpha",
    "lct",
    "volume",
    "degree",
    "fano_index",
];

pub fn emit(reports: &[AnalysisReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_COLUMNS).expect("in-memory write");
            for r in reports {
                let a = r.analysis.as_ref();
                let opt = |f: &dyn Fn(&Analysis) -> String| a.map(f).unwrap_or_default();
                w.write_record([
                    r.name.clone(),
                    r.dim.to_string(),
                    r.n_vertices.to_string(),
                    r.is_smooth_fano.to_string(),
                    r.is_reflexive.to_string(),
                    opt(&|a| a.verdict.is_ke.to_string()),
                    opt(&|a| a.verdict.is_symmetric.to_string()),
                    opt(&|a| a.verdict.fixed_dim.to_string()),
                    opt(&|a| a.verdict.group_order.to_string()),
                    opt(&|a| rat_string(&a.verdict.alpha)),
                    opt(&|a| rat_string(&a.verdict.lct)),
                    opt(&|a| rat_string(&a.volume)),
                    opt(&|a| rat_string(&a.degree)),
                    opt(&|a| a.fano_index.to_string()),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    }
}
