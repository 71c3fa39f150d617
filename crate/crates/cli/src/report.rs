//! Machine-readable verification reports.
//!
//! Field order is fixed by the struct definitions and all randomness is
//! seeded, so identical invocations produce byte-identical JSON.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub check: String,
    pub input: String,
    pub expected: String,
    pub got: String,
    pub tolerance: f64,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<Failure>,
    /// Computed values worth recording alongside the pass/fail data.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        SuiteReport {
            suite: name.to_string(),
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    pub fn check_true(&mut self, check: &str, input: &str, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                check: check.to_string(),
                input: input.to_string(),
                expected: "true".to_string(),
                got: "false".to_string(),
                tolerance: 0.0,
            });
        }
    }

    /// Records `|got - expected| <= tol`, keeping the worst case visible.
    pub fn check_close(&mut self, check: &str, input: &str, expected: f64, got: f64, tol: f64) {
        self.checks += 1;
        // negated form so a NaN lands on the failure side
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !((got - expected).abs() <= tol) {
            self.failures.push(Failure {
                check: check.to_string(),
                input: input.to_string(),
                expected: format!("{expected:e}"),
                got: format!("{got:e}"),
                tolerance: tol,
            });
        }
    }

    /// Records a maximum-deviation style check.
    pub fn check_bound(&mut self, check: &str, input: &str, worst: f64, tol: f64) {
        self.checks += 1;
        // negated form so a NaN lands on the failure side
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(worst <= tol) {
            self.failures.push(Failure {
                check: check.to_string(),
                input: input.to_string(),
                expected: format!("<= {tol:e}"),
                got: format!("{worst:e}"),
                tolerance: tol,
            });
        }
    }

    pub fn check_count(&mut self, check: &str, input: &str, expected: usize, got: usize) {
        self.checks += 1;
        if expected != got {
            self.failures.push(Failure {
                check: check.to_string(),
                input: input.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
                tolerance: 0.0,
            });
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: String,
    pub n: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub suites: Vec<SuiteReport>,
    pub total_checks: usize,
    pub total_failures: usize,
}

impl VerifyReport {
    pub fn new(n: usize, seed: u64, tol: Option<f64>) -> Self {
        VerifyReport {
            schema: 1,
            command: "verify".to_string(),
            n,
            seed,
            tol,
            suites: Vec::new(),
            total_checks: 0,
            total_failures: 0,
        }
    }

    pub fn push(&mut self, suite: SuiteReport) {
        self.total_checks += suite.checks;
        self.total_failures += suite.failures.len();
        self.suites.push(suite);
    }

    pub fn passed(&self) -> bool {
        self.total_failures == 0
    }
}
