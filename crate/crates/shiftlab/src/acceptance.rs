//! The acceptance suite: one callable check per criterion, shared by the
//! integration tests and the CLI's `verify` command.

use serde::{Deserialize, Serialize};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed_secs: f64,
    pub budget_secs: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:2} [{}] {} ({:.2}s / budget {:.0}s): {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed_secs,
            self.budget_secs,
            self.detail
        )
    }
}

mod checks;
pub use checks::{run_all, run_criterion, CRITERIA};
