//! Machine-readable reports for the verification suites.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One failed check: the inputs and the two sides that were expected to agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

/// Result of one verification suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub p: u32,
    pub m: u32,
    pub d: usize,
    pub trials: u64,
    pub seed: u64,
    pub checks: u64,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(suite: &str, p: u32, m: u32, d: usize, trials: u64, seed: u64) -> Self {
        Report {
            schema: 1,
            suite: suite.to_string(),
            p,
            m,
            d,
            trials,
            seed,
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(
            f,
            "p: {}  m: {}  d: {}  trials: {}  seed: {}",
            self.p, self.m, self.d, self.trials, self.seed
        )?;
        writeln!(f, "checks: {}", self.checks)?;
        writeln!(f, "failures: {}", self.failures.len())?;
        for fail in &self.failures {
            writeln!(f, "  inputs:   {}", fail.inputs)?;
            writeln!(f, "  expected: {}", fail.expected)?;
            writeln!(f, "  got:      {}", fail.got)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Checks and failures collected by one trial.
#[derive(Debug, Default, Clone)]
pub struct TrialOutcome {
    pub checks: u64,
    pub failures: Vec<Failure>,
}

impl TrialOutcome {
    pub fn check_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        inputs: impl std::fmt::Display,
        expected: &T,
        got: &T,
    ) {
        self.checks += 1;
        if expected != got {
            self.failures.push(Failure {
                inputs: inputs.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    pub fn check_true(&mut self, inputs: impl std::fmt::Display, what: &str, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                inputs: inputs.to_string(),
                expected: what.to_string(),
                got: "violated".to_string(),
            });
        }
    }
}

/// Deterministic reproducible rng for trial `t` of a suite seeded with `seed`.
pub fn trial_rng(seed: u64, t: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ t.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Run trials in parallel with per-trial derived seeds; outcomes are folded
/// in trial order so reports are byte-stable regardless of scheduling.
pub fn run_trials<F>(report: &mut Report, f: F)
where
    F: Fn(u64, &mut ChaCha8Rng) -> TrialOutcome + Sync,
{
    let seed = report.seed;
    let outcomes: Vec<TrialOutcome> = (0..report.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            f(t, &mut rng)
        })
        .collect();
    for o in outcomes {
        report.checks += o.checks;
        report.failures.extend(o.failures);
    }
}
