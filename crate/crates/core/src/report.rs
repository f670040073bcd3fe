//! Verification reports in text and JSON.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
            details: Vec::new(),
        }
    }

    pub fn with(mut self, detail: impl Into<String>) -> Self {
        self.details.push(detail.into());
        self
    }

    pub fn with_all(mut self, details: impl IntoIterator<Item = String>) -> Self {
        self.details.extend(details);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out += &format!("{tag} {}\n", c.name);
            for d in &c.details {
                out += &format!("    {d}\n");
            }
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        out += &format!("{}: {ok}/{} checks passed\n", self.suite, self.checks.len());
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.push(Check::new("first", true).with("x = 1"));
        r.push(Check::new("second", false).with("x = 2").with("y = 3"));
        r
    }

    #[test]
    fn text_lists_every_check() {
        let t = sample().to_text();
        assert!(t.contains("PASS first\n    x = 1\n"));
        assert!(t.contains("FAIL second\n    x = 2\n    y = 3\n"));
        assert!(t.ends_with("demo: 1/2 checks passed\n"));
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: Report = serde_json::from_value(r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!back.passed());
    }
}
