//! Machine-readable pass/fail records shared by the verification
//! procedures and the CLI.

use serde::Serialize;

/// One recorded disagreement: index, expected value, observed value.
/// Values are rendered as decimal strings so arbitrary-precision results
/// survive serialization exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: u64,
    pub expected: String,
    pub actual: String,
}

/// Result of one named verification run. `passed` holds exactly when no
/// failure was recorded; the stored failure list is capped at
/// [`CheckReport::MAX_FAILURES`] to bound memory under seeded-corruption
/// self-tests, but the flag reflects every recorded failure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub limit: u64,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub const MAX_FAILURES: usize = 32;

    pub fn new(check: impl Into<String>, limit: u64) -> Self {
        Self {
            check: check.into(),
            limit,
            passed: true,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, n: u64, expected: impl ToString, actual: impl ToString) {
        self.passed = false;
        if self.failures.len() < Self::MAX_FAILURES {
            self.failures.push(Failure {
                n,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Records a failure only when the two values disagree; returns
    /// whether they agreed.
    pub fn expect_eq<T: PartialEq + ToString>(&mut self, n: u64, expected: T, actual: T) -> bool {
        if expected == actual {
            true
        } else {
            self.record(n, expected.to_string(), actual.to_string());
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_iff_no_failures() {
        let mut r = CheckReport::new("demo", 10);
        assert!(r.passed && r.failures.is_empty());
        r.expect_eq(3, 1u64, 1u64);
        assert!(r.passed);
        r.expect_eq(4, 1u64, 0u64);
        assert!(!r.passed);
        assert_eq!(r.failures.len(), 1);
    }

    #[test]
    fn failure_list_is_capped_but_flag_is_not() {
        let mut r = CheckReport::new("cap", 1000);
        for n in 0..100 {
            r.record(n, "1", "0");
        }
        assert!(!r.passed);
        assert_eq!(r.failures.len(), CheckReport::MAX_FAILURES);
    }

    #[test]
    fn json_schema_is_stable() {
        let mut r = CheckReport::new("demo", 8);
        r.record(5, "1", "0");
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"check":"demo","limit":8,"passed":false,"failures":[{"n":5,"expected":"1","actual":"0"}]}"#
        );
    }
}
