//! Violation reports produced by the exhaustive law checkers.
//!
//! Checkers never sample: they walk every basis instance of every law in
//! range and record what failed and where. To keep reports bounded when a
//! deliberately broken input floods a law, only the first few violations per
//! report are stored verbatim; the total count is always exact.

use std::fmt;

/// How many violations a report keeps verbatim before it only counts.
const STORED_VIOLATIONS: usize = 50;

/// One failed law instance, e.g. `law = "delta_delta"`, `location = "n=3 i=1 j=2"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub location: String,
}

/// Outcome of one checker run: how many law instances were checked and which
/// ones failed.
#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub subject: String,
    pub checked: u64,
    pub failed: u64,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            checked: 0,
            failed: 0,
            violations: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    /// Records one checked instance; `passed = false` also records a violation.
    pub fn tally(&mut self, passed: bool, law: &str, location: impl FnOnce() -> String) {
        self.checked += 1;
        if !passed {
            self.failed += 1;
            if self.violations.len() < STORED_VIOLATIONS {
                self.violations.push(Violation {
                    law: law.to_string(),
                    location: location(),
                });
            }
        }
    }

    /// Merges another report into this one (sub-checker results).
    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failed += other.failed;
        for v in other.violations {
            if self.violations.len() < STORED_VIOLATIONS {
                self.violations.push(v);
            }
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "{}: {} instances checked, all laws hold", self.subject, self.checked)
        } else {
            writeln!(
                f,
                "{}: {} of {} instances FAILED",
                self.subject, self.failed, self.checked
            )?;
            for v in &self.violations {
                writeln!(f, "  violation: {} at {}", v.law, v.location)?;
            }
            if self.failed as usize > self.violations.len() {
                writeln!(
                    f,
                    "  ... and {} more",
                    self.failed as usize - self.violations.len()
                )?;
            }
            Ok(())
        }
    }
}
