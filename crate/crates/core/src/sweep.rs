//! Exhaustive verification over all trees in an order range.
//!
//! Work is split per order into [`TreeCursor`] parts processed on a rayon
//! pool. Partial results merge associatively (max count, smallest witness
//! on ties), so the report does not depend on the number of workers.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundReport};
use crate::extremal::best_family_count;
use crate::oracle::{brute_gamma_t, DEFAULT_ORACLE_CAP};
use crate::tdp::dp_gamma_t;
use crate::treegen::{max_order, partition_range, CanonicalTree};

/// Exit status when every bound holds.
pub const EXIT_OK: i32 = 0;
/// Exit status when the conjectured bound fails for some tree.
pub const EXIT_COUNTEREXAMPLE: i32 = 3;
/// Exit status when a proved bound fails, which indicates a bug.
pub const EXIT_THEOREM_VIOLATION: i32 = 4;

/// Spot checks re-run the brute-force oracle on trees whose rooted-stream
/// index is a multiple of this.
pub const SPOT_CHECK_STRIDE: u64 = 100;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid order range {n_lo}..={n_hi}; need 2 <= lo <= hi <= {max}")]
    InvalidRange { n_lo: usize, n_hi: usize, max: usize },
    #[error("unsupported report format {0:?}; expected csv or json")]
    UnsupportedFormat(String),
    #[error("jobs must be at least 1")]
    NoJobs,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub gamma_t: usize,
    #[serde(with = "crate::decimal")]
    pub max_count: BigUint,
    pub witness: CanonicalTree,
    pub b1_bound_repr: String,
    #[serde(with = "crate::decimal::option")]
    pub best_family_count: Option<BigUint>,
    pub attained_by_figure_family: bool,
}

/// A tree whose count exceeds a bound. `b1` entries are conjecture
/// counterexamples; anything else is an implementation fault.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub bound: String,
    pub witness: CanonicalTree,
    pub gamma_t: usize,
    #[serde(with = "crate::decimal")]
    pub count: BigUint,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTotals {
    pub trees: u64,
    pub trees_per_order: BTreeMap<usize, u64>,
    pub spot_checks: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub n_lo: usize,
    pub n_hi: usize,
    pub records: Vec<SweepRecord>,
    pub violations: Vec<Violation>,
    pub spot_check_mismatches: Vec<CanonicalTree>,
    pub totals: SweepTotals,
    /// Wall time of the run; left out of serialized reports.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for SweepReport {
    fn eq(&self, other: &Self) -> bool {
        self.n_lo == other.n_lo
            && self.n_hi == other.n_hi
            && self.records == other.records
            && self.violations == other.violations
            && self.spot_check_mismatches == other.spot_check_mismatches
            && self.totals == other.totals
    }
}

impl SweepReport {
    pub fn theorem_violations(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.bound != "b1")
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.bound == "b1")
    }

    pub fn exit_code(&self) -> i32 {
        if self.theorem_violations().next().is_some() || !self.spot_check_mismatches.is_empty() {
            EXIT_THEOREM_VIOLATION
        } else if self.counterexamples().next().is_some() {
            EXIT_COUNTEREXAMPLE
        } else {
            EXIT_OK
        }
    }

    pub fn record(&self, n: usize, gamma_t: usize) -> Option<&SweepRecord> {
        self.records.iter().find(|r| r.n == n && r.gamma_t == gamma_t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub n_lo: usize,
    pub n_hi: usize,
    pub jobs: usize,
    pub oracle_spot_check: bool,
}

impl SweepOptions {
    pub fn new(n_lo: usize, n_hi: usize) -> SweepOptions {
        SweepOptions { n_lo, n_hi, jobs: 1, oracle_spot_check: false }
    }

    pub fn jobs(mut self, jobs: usize) -> SweepOptions {
        self.jobs = jobs;
        self
    }

    pub fn oracle_spot_check(mut self, on: bool) -> SweepOptions {
        self.oracle_spot_check = on;
        self
    }
}

/// Partial result of one or more work units.
#[derive(Debug, Default)]
struct Partial {
    best: BTreeMap<(usize, usize), (BigUint, CanonicalTree)>,
    violations: Vec<Violation>,
    mismatches: Vec<CanonicalTree>,
    totals: SweepTotals,
}

impl Partial {
    fn offer(&mut self, gamma_t: usize, count: &BigUint, tree: &CanonicalTree) {
        let key = (tree.n, gamma_t);
        match self.best.get_mut(&key) {
            Some((best, witness)) => {
                if *count > *best || (*count == *best && *tree < *witness) {
                    *best = count.clone();
                    *witness = tree.clone();
                }
            }
            None => {
                self.best.insert(key, (count.clone(), tree.clone()));
            }
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        for ((_, gamma_t), (count, tree)) in other.best {
            self.offer(gamma_t, &count, &tree);
        }
        self.violations.extend(other.violations);
        self.mismatches.extend(other.mismatches);
        self.totals.trees += other.totals.trees;
        self.totals.spot_checks += other.totals.spot_checks;
        for (n, c) in other.totals.trees_per_order {
            *self.totals.trees_per_order.entry(n).or_default() += c;
        }
        self
    }
}

fn process(cursor: crate::treegen::TreeCursor, spot_check: bool) -> Partial {
    let mut partial = Partial::default();
    let n = cursor.order();
    let mut cursor = cursor;
    while let Some(tree) = cursor.next() {
        let forest = tree.to_forest();
        let result = dp_gamma_t(&forest).expect("trees of order >= 2 have no isolated vertex");
        let report = BoundReport::new(n, result.gamma_t, result.count.clone())
            .expect("bounds are decidable for every tree");
        let mut failed: Vec<&str> = report.theorem_violations();
        if report.conjecture_violated() {
            failed.push("b1");
        }
        for bound in failed {
            partial.violations.push(Violation {
                bound: bound.to_string(),
                witness: tree.clone(),
                gamma_t: result.gamma_t,
                count: result.count.clone(),
            });
        }
        let index = cursor.last_index().expect("a tree was just returned");
        if spot_check && n <= DEFAULT_ORACLE_CAP && index % SPOT_CHECK_STRIDE == 0 {
            partial.totals.spot_checks += 1;
            let brute = brute_gamma_t(&forest).expect("oracle accepts trees under the cap");
            if brute.gamma_t != result.gamma_t || BigUint::from(brute.count) != result.count {
                partial.mismatches.push(tree.clone());
            }
        }
        partial.offer(result.gamma_t, &result.count, &tree);
        partial.totals.trees += 1;
        *partial.totals.trees_per_order.entry(n).or_default() += 1;
    }
    partial
}

pub fn sweep(options: SweepOptions) -> Result<SweepReport, SweepError> {
    let SweepOptions { n_lo, n_hi, jobs, oracle_spot_check } = options;
    let max = max_order();
    if n_lo < 2 || n_lo > n_hi || n_hi > max {
        return Err(SweepError::InvalidRange { n_lo, n_hi, max });
    }
    if jobs == 0 {
        return Err(SweepError::NoJobs);
    }
    let start = Instant::now();
    // a few units per worker so that uneven cursors balance out
    let parts = if jobs == 1 { 1 } else { jobs * 4 };
    let mut cursors = Vec::new();
    for n in n_lo..=n_hi {
        cursors.extend(partition_range(n, parts).expect("order checked above"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    let merged = pool.install(|| {
        cursors
            .into_par_iter()
            .map(|c| process(c, oracle_spot_check))
            .reduce(Partial::default, Partial::merge)
    });

    let records = merged
        .best
        .into_iter()
        .map(|((n, gamma_t), (max_count, witness))| {
            let best = best_family_count(n, gamma_t);
            SweepRecord {
                n,
                gamma_t,
                attained_by_figure_family: best.as_ref() == Some(&max_count),
                best_family_count: best,
                max_count,
                witness,
                b1_bound_repr: bounds::b1_exact_repr(n, gamma_t),
            }
        })
        .collect();
    let mut violations = merged.violations;
    violations.sort();
    let mut mismatches = merged.mismatches;
    mismatches.sort();
    Ok(SweepReport {
        n_lo,
        n_hi,
        records,
        violations,
        spot_check_mismatches: mismatches,
        totals: merged.totals,
        elapsed: start.elapsed(),
    })
}

/// True maximum against the best caption-feasible family count, per γ_t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyComparison {
    pub gamma_t: usize,
    #[serde(with = "crate::decimal")]
    pub max_count: BigUint,
    #[serde(with = "crate::decimal::option")]
    pub best_family_count: Option<BigUint>,
}

impl FamilyComparison {
    pub fn attained(&self) -> bool {
        self.best_family_count.as_ref() == Some(&self.max_count)
    }
}

/// Comparisons for order `n` read from an existing report.
pub fn family_comparisons(report: &SweepReport, n: usize) -> Vec<FamilyComparison> {
    report
        .records
        .iter()
        .filter(|r| r.n == n)
        .map(|r| FamilyComparison {
            gamma_t: r.gamma_t,
            max_count: r.max_count.clone(),
            best_family_count: r.best_family_count.clone(),
        })
        .collect()
}

pub fn compare_figure_families(n: usize) -> Result<Vec<FamilyComparison>, SweepError> {
    let report = sweep(SweepOptions::new(n, n))?;
    Ok(family_comparisons(&report, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(SweepError::UnsupportedFormat(other.to_string())),
        }
    }
}

pub const CSV_HEADER: [&str; 7] =
    ["n", "gamma_t", "max_count", "b1_bound", "ratio", "witness_levelseq", "family_attains"];

pub fn emit_report(report: &SweepReport, format: ReportFormat) -> Result<String, SweepError> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in &report.records {
                let ln_b1 = bounds::ln_b1(r.n, r.gamma_t);
                let ratio = (bounds::ln_biguint(&r.max_count) - ln_b1).exp();
                w.write_record([
                    r.n.to_string(),
                    r.gamma_t.to_string(),
                    r.max_count.to_string(),
                    bounds::render_ln(ln_b1),
                    format!("{ratio:.6}"),
                    r.witness.to_string(),
                    r.attained_by_figure_family.to_string(),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| SweepError::Pool(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn parse_json_report(text: &str) -> Result<SweepReport, SweepError> {
    Ok(serde_json::from_str(text)?)
}
