//! Named, seeded property suites with JSON reports.
//!
//! Every case of a suite gets its own seed derived from the run seed, the
//! suite name and the case id, so a single failing case can be re-run with
//! [`run_case`] from the data in its [`CaseFailure`].

mod random;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use random::{
    generate_random_pair, random_complex, random_invariant_subcomplex, random_self_map, random_simplex,
    RandomComplexConfig,
};

use crate::geometry::GeometryError;
use crate::mc::{child_seed, derive_seed};
use crate::simplicial_map::MapError;
use crate::valuations::ValuationError;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no {what} found after {attempts} attempts")]
    GenerationExhausted { what: &'static str, attempts: usize },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Boundary,
    Chain,
    Additivity,
    SimplexProperty,
    OpenDecomp,
    IntVolOpen,
    Invariance,
    Steiner,
    VertexAngles,
    TraceEquiv,
    HadwigerFit,
    PaperExamples,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Boundary,
        Suite::Chain,
        Suite::Additivity,
        Suite::SimplexProperty,
        Suite::OpenDecomp,
        Suite::IntVolOpen,
        Suite::Invariance,
        Suite::Steiner,
        Suite::VertexAngles,
        Suite::TraceEquiv,
        Suite::HadwigerFit,
        Suite::PaperExamples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Boundary => "boundary",
            Suite::Chain => "chain",
            Suite::Additivity => "additivity",
            Suite::SimplexProperty => "simplex_property",
            Suite::OpenDecomp => "open_decomp",
            Suite::IntVolOpen => "int_vol_open",
            Suite::Invariance => "invariance",
            Suite::Steiner => "steiner",
            Suite::VertexAngles => "vertex_angles",
            Suite::TraceEquiv => "trace_equiv",
            Suite::HadwigerFit => "hadwiger_fit",
            Suite::PaperExamples => "paper_examples",
        }
    }

    /// Number of cases run for `budget`.
    pub fn case_count(self, budget: &Budget) -> usize {
        let scaled = (budget.cases / 10).max(1);
        match self {
            Suite::Boundary
            | Suite::Chain
            | Suite::Additivity
            | Suite::SimplexProperty
            | Suite::OpenDecomp
            | Suite::TraceEquiv => budget.cases,
            Suite::IntVolOpen | Suite::VertexAngles | Suite::Invariance => scaled,
            Suite::Steiner => suites::STEINER_CASES,
            Suite::HadwigerFit => suites::HADWIGER_CASES,
            Suite::PaperExamples => suites::PAPER_CASES,
        }
    }

    /// Seed of case `case_id` in a run seeded with `seed`.
    pub fn case_seed(self, seed: u64, case_id: usize) -> u64 {
        child_seed(derive_seed(seed, self.name().as_bytes()), case_id as u64)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_owned()))
    }
}

/// How much work a run does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Random cases per algebraic suite; geometric suites run a tenth of this.
    pub cases: usize,
    /// Samples per Monte Carlo estimate.
    pub mc_samples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            cases: 200,
            mc_samples: 1_000_000,
        }
    }
}

/// One failed check, with everything needed to re-run its case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseFailure {
    pub case_id: usize,
    pub case_seed: u64,
    pub check: String,
    pub inputs: serde_json::Value,
    pub expected: serde_json::Value,
    pub got: serde_json::Value,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub budget: Budget,
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
    /// Wall time; `None` when the report is meant to be reproducible byte for
    /// byte.
    pub elapsed_ms: Option<u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }
}

/// Runs the named suite. Cases run in parallel; failures are sorted by case
/// id.
pub fn run_suite(name: &str, seed: u64, budget: &Budget) -> Result<SuiteReport, VerifyError> {
    let suite: Suite = name.parse()?;
    Ok(run(suite, seed, budget))
}

pub fn run(suite: Suite, seed: u64, budget: &Budget) -> SuiteReport {
    let start = Instant::now();
    let cases = suite.case_count(budget);
    let failures: Vec<CaseFailure> = (0..cases)
        .into_par_iter()
        .map(|id| run_case(suite, seed, id, budget))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    SuiteReport {
        suite: suite.name().to_owned(),
        seed,
        budget: *budget,
        cases,
        failures,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    }
}

/// Every suite in a fixed order.
pub fn run_all(seed: u64, budget: &Budget) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|s| run(*s, seed, budget)).collect()
}

/// Re-runs a single case.
pub fn run_case(suite: Suite, seed: u64, case_id: usize, budget: &Budget) -> Vec<CaseFailure> {
    let mut case = suites::Case::new(case_id, suite.case_seed(seed, case_id), budget);
    suites::dispatch(suite, &mut case);
    case.into_failures()
}
