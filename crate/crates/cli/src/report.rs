//! Command reports and their text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA: &str = "kedl-report/1";

pub const OK: i32 = 0;
pub const NEGATIVE: i32 = 1;
pub const INPUT_ERROR: i32 = 2;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteLine {
    pub id: String,
    pub sort: String,
    pub concept: String,
    pub passed: bool,
    pub tableau: String,
    pub oracle: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub countermodel: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub verdict: String,
    pub exit: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    /// Model, witness or countermodel in the interpretation text format.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interpretation: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub merged: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<SuiteLine>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(verdict: impl Into<String>, exit: i32) -> Self {
        Report {
            schema: SCHEMA,
            command: std::env::args().skip(1).collect(),
            verdict: verdict.into(),
            exit,
            message: None,
            count: None,
            interpretation: None,
            merged: Vec::new(),
            trace: Vec::new(),
            hierarchy: None,
            items: Vec::new(),
            violations: Vec::new(),
            output: None,
            elapsed_ms: 0.0,
        }
    }

    pub fn error(message: impl Into<String>) -> Self {
        let mut r = Report::new("error", INPUT_ERROR);
        r.message = Some(message.into());
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        if let Some(o) = &self.output {
            return o.clone();
        }
        let mut s = String::new();
        if let Some(n) = self.count {
            writeln!(s, "{n}").unwrap();
        } else if self.items.is_empty() {
            writeln!(s, "{}", self.verdict).unwrap();
        }
        if let (Some(m), true) = (&self.message, self.items.is_empty()) {
            writeln!(s, "{m}").unwrap();
        }
        for line in &self.items {
            let status = if line.passed { "pass" } else { "FAIL" };
            writeln!(
                s,
                "{status} {:<26} tableau: {:<9} oracle: {:<15} {}  [{:.1} ms]",
                line.id, line.tableau, line.oracle, line.concept, line.elapsed_ms
            )
            .unwrap();
            if let Some(m) = &line.countermodel {
                write!(s, "{}", indent(m)).unwrap();
            }
        }
        if !self.items.is_empty() {
            let m = self.message.as_deref().unwrap_or_default();
            writeln!(s, "{}: {m}  [{:.1} ms]", self.verdict, self.elapsed_ms).unwrap();
        }
        for group in &self.merged {
            writeln!(s, "merged: {}", group.join(", ")).unwrap();
        }
        if let Some(i) = &self.interpretation {
            write!(s, "{i}").unwrap();
        }
        if !self.trace.is_empty() {
            writeln!(s, "clash trace:").unwrap();
            for t in &self.trace {
                writeln!(s, "  {t}").unwrap();
            }
        }
        if let Some(h) = &self.hierarchy {
            write!(s, "{h}").unwrap();
        }
        for v in &self.violations {
            writeln!(s, "{v}").unwrap();
        }
        s
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect()
}
