//! Ground truth for the test suite: brute-force slice dimensions and the
//! hand computations behind the square lemmas, the kink resolutions and
//! the partial closures.

mod dense;
mod kinks;
mod lemmas;
mod partial;

use serde::Serialize;

pub use dense::dense_slice_dim;
pub use kinks::verify_markov2_oracles;
pub use lemmas::{square_webs, verify_square_lemmas, SquareWebs};
pub use partial::verify_a2_cases;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one named check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    /// Number of individual comparisons made.
    pub checked: usize,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates comparisons, keeping the first failure.
#[derive(Debug)]
pub(crate) struct Tally {
    check: String,
    checked: usize,
    first_failure: Option<String>,
}

impl Tally {
    pub(crate) fn new(check: &str) -> Self {
        Tally { check: check.into(), checked: 0, first_failure: None }
    }

    pub(crate) fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }

    pub(crate) fn fail(&mut self, what: String) {
        self.expect(false, || what);
    }

    pub(crate) fn finish(self) -> Report {
        let status = if self.first_failure.is_none() { Status::Pass } else { Status::Fail };
        Report { check: self.check, status, first_failure: self.first_failure, checked: self.checked }
    }
}
