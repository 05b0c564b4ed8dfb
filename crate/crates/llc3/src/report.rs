//! Check records and report serialization shared by all verifier suites.

use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Deliberately not attempted (resource bound), never a silent pass.
    Skip,
}

/// One verified identity: what was claimed, what was computed, and whether
/// they agreed exactly.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    /// Stable machine id, e.g. "chars.trtau.f3".
    pub id: String,
    /// Human formula the check certifies.
    pub anchor: String,
    pub f: u32,
    /// Convention knobs and sweep parameters in force.
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    /// Wall time in milliseconds.
    pub ms: u128,
}

/// Incremental builder so verifiers can time and push checks tersely.
pub struct Checks {
    suite: &'static str,
    pub f: u32,
    pub inputs: String,
    items: Vec<Check>,
    clock: Instant,
}

impl Checks {
    pub fn new(suite: &'static str, f: u32, inputs: String) -> Checks {
        Checks {
            suite,
            f,
            inputs,
            items: Vec::new(),
            clock: Instant::now(),
        }
    }

    fn push(&mut self, id: &str, anchor: &str, expected: String, computed: String, verdict: Verdict) {
        let ms = self.clock.elapsed().as_millis();
        self.clock = Instant::now();
        self.items.push(Check {
            id: format!("{}.{}.f{}", self.suite, id, self.f),
            anchor: anchor.to_string(),
            f: self.f,
            inputs: self.inputs.clone(),
            expected,
            computed,
            verdict,
            ms,
        });
    }

    /// Record an exact comparison.
    pub fn eq<T: PartialEq + std::fmt::Display>(&mut self, id: &str, anchor: &str, expected: T, computed: T) {
        let verdict = if expected == computed {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.push(id, anchor, expected.to_string(), computed.to_string(), verdict);
    }

    /// Record a predicate that must hold.
    pub fn holds(&mut self, id: &str, anchor: &str, detail: String, ok: bool) {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self.push(id, anchor, "true".into(), detail, verdict);
    }

    /// Record a deliberate refusal (resource bound exceeded).
    pub fn skip(&mut self, id: &str, anchor: &str, reason: String) {
        self.push(id, anchor, "(skipped)".into(), reason, Verdict::Skip);
    }

    pub fn into_vec(self) -> Vec<Check> {
        self.items
    }
}

/// Test helper: panic with a readable message on the first failing check.
pub fn assert_all_pass(checks: &[Check]) {
    for c in checks {
        assert!(
            c.verdict != Verdict::Fail,
            "check {} failed: {} (expected {}, computed {}) [{}]",
            c.id,
            c.anchor,
            c.expected,
            c.computed,
            c.inputs,
        );
    }
}
