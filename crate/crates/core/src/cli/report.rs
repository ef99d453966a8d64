use std::fmt::Write as _;

use serde::Serialize;

use super::RunConfig;
use crate::scalars::Scalar;

/// Exact residuals carry the rendered difference; numeric ones a number.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Residual {
    Exact(String),
    Numeric(f64),
}

impl Residual {
    fn render(&self) -> String {
        match self {
            Residual::Exact(s) => s.clone(),
            Residual::Numeric(v) => format!("{v:.3e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub residual: Residual,
    pub pass: bool,
}

impl Check {
    /// Exact comparison of two scalars after expanding derived symbols.
    pub fn scalar(name: impl Into<String>, expected: &Scalar, computed: &Scalar) -> Self {
        let diff = (computed - expected).expand_derived();
        Check {
            name: name.into(),
            expected: expected.render(),
            computed: computed.render(),
            residual: Residual::Exact(diff.render()),
            pass: diff.is_zero(),
        }
    }

    pub fn exact(
        name: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        residual: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
            residual: Residual::Exact(residual.into()),
            pass,
        }
    }

    /// `residual ≤ tolerance`; NaN fails.
    pub fn numeric(
        name: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Check {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
            residual: Residual::Numeric(residual),
            pass: residual <= tolerance,
        }
    }
}

/// One row of a result table, e.g. a Hall kind or a phase. Serialized
/// as an object with `label` first and the columns in order.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub label: String,
    pub values: Vec<(String, String)>,
}

impl Row {
    pub fn new(label: impl Into<String>) -> Self {
        Row {
            label: label.into(),
            values: Vec::new(),
        }
    }

    pub fn with(mut self, column: &str, value: impl Into<String>) -> Self {
        self.values.push((column.to_string(), value.into()));
        self
    }
}

impl Serialize for Row {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = ser.serialize_map(Some(self.values.len() + 1))?;
        m.serialize_entry("label", &self.label)?;
        for (k, v) in &self.values {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub run: RunConfig,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    /// Sorts the checks by name and computes the overall verdict.
    pub fn new(run: RunConfig, rows: Vec<Row>, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = checks.iter().all(|c| c.pass);
        Report {
            run,
            rows,
            checks,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.run.summary());
        if !self.rows.is_empty() {
            let headers: Vec<&str> = self.rows[0].values.iter().map(|(k, _)| k.as_str()).collect();
            let mut widths: Vec<usize> = std::iter::once("label")
                .chain(headers.iter().copied())
                .map(|h| h.chars().count())
                .collect();
            for r in &self.rows {
                widths[0] = widths[0].max(r.label.chars().count());
                for (i, (_, v)) in r.values.iter().enumerate() {
                    widths[i + 1] = widths[i + 1].max(v.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join(" | ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(std::iter::once("label").chain(headers).collect()));
            for r in &self.rows {
                let cells = std::iter::once(r.label.as_str())
                    .chain(r.values.iter().map(|(_, v)| v.as_str()))
                    .collect();
                let _ = writeln!(out, "{}", line(cells));
            }
            out.push('\n');
        }
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{verdict} {}  residual: {}", c.name, c.residual.render());
            if !c.pass {
                let _ = writeln!(out, "    expected: {}", c.expected);
                let _ = writeln!(out, "    computed: {}", c.computed);
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed",
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{mono, Symbol};

    #[test]
    fn scalar_checks_compare_after_expansion() {
        let kappa = Scalar::sym(Symbol::Kappa);
        let expanded = mono(1, 4, &[(Symbol::Charge, 1), (Symbol::B, 1), (Symbol::Theta, 1), (Symbol::C, -1), (Symbol::Hbar, -1)]);
        assert!(Check::scalar("k", &kappa, &expanded).pass);
        let c = Check::scalar("k", &kappa, &Scalar::zero());
        assert!(!c.pass);
        assert_eq!(c.residual, Residual::Exact((-&expanded).render()));
    }

    #[test]
    fn nan_residual_fails() {
        assert!(!Check::numeric("n", "0", "NaN", f64::NAN, 1.0).pass);
        assert!(Check::numeric("n", "0", "0", 0.5, 1.0).pass);
    }

    #[test]
    fn checks_sorted_and_aggregated() {
        let r = Report::new(
            RunConfig::default(),
            Vec::new(),
            vec![
                Check::exact("b", "0", "0", "0", true),
                Check::exact("a", "0", "1", "1", false),
            ],
        );
        assert_eq!(r.checks[0].name, "a");
        assert!(!r.pass);
        assert!(r.to_text().ends_with("FAIL: 2 checks, 1 failed\n"));
    }
}
