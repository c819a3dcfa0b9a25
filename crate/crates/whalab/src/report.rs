use serde::{Deserialize, Serialize};

use crate::scalar::Tolerance;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub max_deviation: f64,
    pub pass: bool,
    pub instances: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    /// Recorded but not counted toward the overall verdict.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub informational: bool,
}

impl Check {
    pub fn exact(name: impl Into<String>, instances: usize, failures: Vec<String>) -> Self {
        Check {
            name: name.into(),
            max_deviation: if failures.is_empty() { 0.0 } else { 1.0 },
            pass: failures.is_empty(),
            instances,
            failures: failures.len(),
            counterexample: failures.into_iter().next(),
            informational: false,
        }
    }

    pub fn from_samples(name: impl Into<String>, samples: Vec<(f64, String)>, tol: Tolerance) -> Self {
        let instances = samples.len();
        let mut worst: Option<(f64, String)> = None;
        let mut failures = 0;
        for (dev, label) in samples {
            let dev = if dev.is_nan() { f64::INFINITY } else { dev };
            if !tol.accepts(dev) {
                failures += 1;
            }
            if worst.as_ref().is_none_or(|(w, _)| dev > *w) {
                worst = Some((dev, label));
            }
        }
        let max_deviation = worst.as_ref().map_or(0.0, |w| w.0);
        Check {
            name: name.into(),
            max_deviation,
            pass: failures == 0,
            instances,
            failures,
            counterexample: worst.filter(|w| !tol.accepts(w.0)).map(|w| w.1),
            informational: false,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || c.informational)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| !c.informational)
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass && !c.informational)
            .map(|c| c.name.as_str())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_check_tracks_worst() {
        let tol = Tolerance::default();
        let c = Check::from_samples(
            "x",
            vec![(0.0, "a".into()), (1e-3, "b".into()), (1e-12, "c".into())],
            tol,
        );
        assert!(!c.pass);
        assert_eq!(c.failures, 1);
        assert_eq!(c.counterexample.as_deref(), Some("b"));
        let ok = Check::from_samples("y", vec![(1e-12, "c".into())], tol);
        assert!(ok.pass && ok.counterexample.is_none());
    }

    #[test]
    fn informational_checks_do_not_fail_report() {
        let mut r = Report::new();
        r.push(Check::exact("hard", 1, vec![]));
        r.push(Check::exact("soft", 1, vec!["bad".into()]).informational());
        assert!(r.passed());
        r.push(Check::exact("hard2", 1, vec!["bad".into()]));
        assert_eq!(r.failing(), vec!["hard2"]);
    }
}
