//! Exhaustive checking of stated properties over a bounded corpus.

mod claims;
pub mod corpus;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use corpus::{Corpus, CorpusParams};

use crate::error::{Error, Result};

pub const REPORT_VERSION: &str = "1";
const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

/// Result of one instance of a claim.
pub(crate) enum Case {
    /// Hypothesis not met.
    Skip,
    Pass,
    Fail(String),
}

impl Case {
    pub(crate) fn check(hyp: bool, concl: impl FnOnce() -> std::result::Result<(), String>) -> Case {
        if !hyp {
            return Case::Skip;
        }
        match concl() {
            Ok(()) => Case::Pass,
            Err(e) => Case::Fail(e),
        }
    }

    pub(crate) fn expect(ok: bool, detail: impl FnOnce() -> String) -> Case {
        if ok {
            Case::Pass
        } else {
            Case::Fail(detail())
        }
    }
}

#[derive(Default)]
pub(crate) struct Outcome {
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub(crate) fn add(&mut self, case: Case) {
        match case {
            Case::Skip => self.skipped += 1,
            Case::Pass => self.checked += 1,
            Case::Fail(s) => {
                self.checked += 1;
                self.failures += 1;
                if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    self.counterexamples.push(s);
                }
            }
        }
    }
}

impl FromIterator<Case> for Outcome {
    fn from_iter<I: IntoIterator<Item = Case>>(iter: I) -> Self {
        let mut o = Outcome::default();
        for c in iter {
            o.add(c);
        }
        o
    }
}

/// Runs `f` over `items` in parallel, keeping instance order in the tally.
pub(crate) fn tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Vec<Case> + Sync) -> Outcome {
    let cases: Vec<Vec<Case>> = items.par_iter().map(&f).collect();
    cases.into_iter().flatten().collect()
}

pub(crate) struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub run: fn(&Corpus) -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub description: String,
    pub instances_checked: usize,
    pub instances_skipped_by_hypothesis: usize,
    pub holds: bool,
    pub status: Status,
    pub failures: usize,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub params_fingerprint: String,
    pub results: Vec<serde_json::Value>,
    pub claims: Vec<ClaimReport>,
}

impl Report {
    /// Report with the timing fields zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.claims {
            c.elapsed_ms = 0;
        }
        r
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }
}

/// Identifiers of every registered claim, in registry order.
pub fn claim_ids() -> Vec<&'static str> {
    claims::registry().iter().map(|c| c.id).collect()
}

pub fn describe(id: &str) -> Result<&'static str> {
    claims::registry()
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .map(|c| c.statement)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

/// Checks the selected claims (all when `ids` is empty) on `corpus`.
pub fn verify(corpus: &Corpus, ids: &[String]) -> Result<Report> {
    let registry = claims::registry();
    let mut selected = Vec::new();
    for id in ids {
        let c = registry
            .iter()
            .find(|c| c.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::UnknownClaim(id.clone()))?;
        selected.push(c);
    }
    if ids.is_empty() {
        selected = registry.iter().collect();
    }
    let claims = selected.into_iter().map(|c| run_claim(c, corpus)).collect();
    Ok(Report {
        version: REPORT_VERSION.to_string(),
        params_fingerprint: corpus.params.fingerprint(),
        results: Vec::new(),
        claims,
    })
}

fn run_claim(c: &Claim, corpus: &Corpus) -> ClaimReport {
    let start = Instant::now();
    let o = (c.run)(corpus);
    let status = if o.failures > 0 {
        Status::Fail
    } else if o.checked == 0 {
        Status::Vacuous
    } else {
        Status::Pass
    };
    ClaimReport {
        claim_id: c.id.to_string(),
        description: c.statement.to_string(),
        instances_checked: o.checked,
        instances_skipped_by_hypothesis: o.skipped,
        holds: o.failures == 0,
        status,
        failures: o.failures,
        counterexamples: o.counterexamples,
        notes: o.notes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
