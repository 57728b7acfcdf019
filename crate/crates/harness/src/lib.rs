//! Reproducible verification suites over generated and enumerated
//! complexes.
//!
//! Each suite checks one identity or classification claim case by case and
//! reduces the outcomes into a [`SuiteReport`]. Cases are independent and
//! run in parallel; every case derives its randomness from the suite seed
//! and its own index, so reports are identical across runs and thread
//! counts.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

mod enumerate;
pub mod sampler;
mod suites;

pub use enumerate::{enumerate_small, MAX_ENUMERATION_VERTICES};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("enumeration of {requested} vertices exceeds the limit of {limit}")]
    EnumerationLimit { requested: usize, limit: usize },
    #[error(transparent)]
    Core(#[from] nhdual_core::Error),
}

/// A failed case with enough context to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: usize,
    pub fingerprint: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite_id: String,
    pub seed: u64,
    pub cases_run: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub unknowns: usize,
    /// Reasons for the first few unknown cases.
    pub unknown_notes: Vec<String>,
    /// Suite-specific tallies, e.g. how many cases carried a certificate.
    pub tallies: BTreeMap<String, usize>,
    pub elapsed_seconds: f64,
    pub version: String,
}

impl SuiteReport {
    /// No failures and no unknowns.
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.unknowns == 0
    }

    pub fn tally(&self, key: &str) -> usize {
        self.tallies.get(key).copied().unwrap_or(0)
    }
}

/// Result of one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Pass,
    Fail {
        fingerprint: String,
        expected: String,
        observed: String,
    },
    Unknown(String),
    /// The case is outside the suite's scope and is not counted.
    Skip,
}

/// A case outcome plus tallies to add to the report.
#[derive(Clone, Debug)]
pub(crate) struct CaseResult {
    pub outcome: Outcome,
    pub tallies: Vec<&'static str>,
}

impl From<Outcome> for CaseResult {
    fn from(outcome: Outcome) -> Self {
        CaseResult {
            outcome,
            tallies: Vec::new(),
        }
    }
}

impl CaseResult {
    pub fn with(mut self, tally: &'static str) -> Self {
        self.tallies.push(tally);
        self
    }
}

/// Registered suite identifiers.
pub const SUITES: &[&str] = &[
    "formula_a",
    "involution",
    "vertex_count",
    "link_deletion",
    "link_trick",
    "ball_dual",
    "sphere_dual",
    "double_dual_class",
    "d_plus_2",
    "collapse_duality",
    "alexander_homology",
    "suspension_lemma",
    "spine_dims",
    "sphere_deletion",
    "homogeneous_top",
];

/// Runs a registered suite.
///
/// For random suites `count` is the number of cases. Exhaustive suites
/// (`vertex_count`, `d_plus_2`) run every enumerated case when `count` is
/// 0 and the first `count` otherwise.
pub fn run_suite(suite_id: &str, seed: u64, count: usize) -> Result<SuiteReport, HarnessError> {
    let start = Instant::now();
    let results: Vec<CaseResult> = match suite_id {
        "vertex_count" => {
            let corpus = suites::vertex_count_corpus(count)?;
            corpus.par_iter().enumerate().map(|(i, k)| suites::vertex_count(i, k)).collect()
        }
        "d_plus_2" => {
            let corpus = suites::d_plus_2_corpus()?;
            let mut results: Vec<CaseResult> = corpus
                .par_iter()
                .enumerate()
                .map(|(i, k)| suites::d_plus_2(i, k))
                .filter(|r| r.outcome != Outcome::Skip)
                .collect();
            if count > 0 {
                results.truncate(count);
            }
            results
        }
        id => {
            let case = suites::random_case(id).ok_or_else(|| HarnessError::UnknownSuite(id.to_string()))?;
            (0..count).into_par_iter().map(|i| case(seed, i)).collect()
        }
    };
    Ok(reduce(suite_id, seed, results, start))
}

fn reduce(suite_id: &str, seed: u64, results: Vec<CaseResult>, start: Instant) -> SuiteReport {
    let mut report = SuiteReport {
        suite_id: suite_id.to_string(),
        seed,
        cases_run: 0,
        passes: 0,
        failures: Vec::new(),
        unknowns: 0,
        unknown_notes: Vec::new(),
        tallies: BTreeMap::new(),
        elapsed_seconds: 0.0,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    for (case, r) in results.into_iter().enumerate() {
        match r.outcome {
            Outcome::Skip => continue,
            Outcome::Pass => report.passes += 1,
            Outcome::Fail {
                fingerprint,
                expected,
                observed,
            } => report.failures.push(Failure {
                case,
                fingerprint,
                expected,
                observed,
            }),
            Outcome::Unknown(why) => {
                report.unknowns += 1;
                if report.unknown_notes.len() < 10 {
                    report.unknown_notes.push(format!("case {case}: {why}"));
                }
            }
        }
        report.cases_run += 1;
        for t in r.tallies {
            *report.tallies.entry(t.to_string()).or_default() += 1;
        }
    }
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run_suite("nope", 1, 1), Err(HarnessError::UnknownSuite(_))));
    }

    #[test]
    fn report_counts_add_up() {
        let r = run_suite("formula_a", 3, 20).unwrap();
        assert_eq!(r.passes + r.failures.len() + r.unknowns, r.cases_run);
        assert_eq!(r.cases_run, 20);
    }
}
