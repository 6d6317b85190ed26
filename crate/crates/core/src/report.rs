//! Residual tables produced by the verification routines.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// The residual must not exceed the tolerance.
    AtMost,
    /// The residual must reach at least the tolerance (an obstruction witness).
    AtLeast,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        let passed = residual.is_finite() && residual <= tolerance;
        self.checks.push(Check { name: name.into(), residual, tolerance, bound: Bound::AtMost, passed });
    }

    pub fn push_lower_bound(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        let passed = residual.is_finite() && residual >= tolerance;
        self.checks.push(Check { name: name.into(), residual, tolerance, bound: Bound::AtLeast, passed });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Largest residual among upper-bounded checks.
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter(|c| c.bound == Bound::AtMost).map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(4).max(4);
        if !self.title.is_empty() {
            writeln!(f, "{}", self.title)?;
        }
        writeln!(f, "{:<width$}  {:>12}  {:>12}  status", "name", "residual", "tolerance")?;
        for c in &self.checks {
            let op = match c.bound {
                Bound::AtMost => "<=",
                Bound::AtLeast => ">=",
            };
            writeln!(
                f,
                "{:<width$}  {:>12.3e}  {op}{:>10.1e}  {}",
                c.name,
                c.residual,
                c.tolerance,
                if c.passed { "pass" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}
