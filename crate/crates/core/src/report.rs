//! Run reports: named results with an optional expectation and a verdict,
//! rendered as a text table, JSON or CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowVerdict {
    Pass,
    Fail,
    /// No expectation exists.
    Recorded,
}

impl RowVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RowVerdict::Pass => "pass",
            RowVerdict::Fail => "fail",
            RowVerdict::Recorded => "recorded",
        }
    }
}

/// One line of a report. `verdict` is `Recorded` exactly when `expected`
/// is absent.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub name: String,
    pub expected: Option<Value>,
    pub observed: Value,
    pub verdict: RowVerdict,
    /// Per-item timing, only for suite runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub results: Vec<ResultRow>,
    pub wall_time_ms: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            params: BTreeMap::new(),
            results: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Adds a row with no expectation.
    pub fn record(&mut self, name: impl Into<String>, observed: impl Into<Value>) -> &mut Self {
        self.results.push(ResultRow {
            name: name.into(),
            expected: None,
            observed: observed.into(),
            verdict: RowVerdict::Recorded,
            elapsed_ms: None,
        });
        self
    }

    /// Adds a row judged by equality of `expected` and `observed`.
    pub fn compare(
        &mut self,
        name: impl Into<String>,
        expected: impl Into<Value>,
        observed: impl Into<Value>,
    ) -> &mut Self {
        let (expected, observed) = (expected.into(), observed.into());
        let verdict = if expected == observed {
            RowVerdict::Pass
        } else {
            RowVerdict::Fail
        };
        self.results.push(ResultRow {
            name: name.into(),
            expected: Some(expected),
            observed,
            verdict,
            elapsed_ms: None,
        });
        self
    }

    /// Adds a row with an externally decided verdict.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        expected: impl Into<Value>,
        observed: impl Into<Value>,
        ok: bool,
    ) -> &mut Self {
        self.results.push(ResultRow {
            name: name.into(),
            expected: Some(expected.into()),
            observed: observed.into(),
            verdict: if ok {
                RowVerdict::Pass
            } else {
                RowVerdict::Fail
            },
            elapsed_ms: None,
        });
        self
    }

    pub fn failures(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.verdict == RowVerdict::Fail)
            .count()
    }

    pub fn exit_code(&self) -> i32 {
        (self.failures() > 0) as i32
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.to_table(),
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,expected,observed,verdict,elapsed_ms\n");
        for r in &self.results {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                csv_field(&r.name),
                csv_field(&r.expected.as_ref().map(cell).unwrap_or_default()),
                csv_field(&cell(&r.observed)),
                r.verdict.as_str(),
                r.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
            );
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = self.command.clone();
        for (k, v) in &self.params {
            let _ = write!(out, " --{} {}", k.replace('_', "-"), cell(v));
        }
        out.push('\n');
        let rows: Vec<[String; 4]> = self
            .results
            .iter()
            .map(|r| {
                let mut verdict = r.verdict.as_str().to_string();
                if let Some(t) = r.elapsed_ms {
                    let _ = write!(verdict, " ({t} ms)");
                }
                [
                    r.name.clone(),
                    r.expected
                        .as_ref()
                        .map(|v| clip(cell(v)))
                        .unwrap_or_else(|| "-".into()),
                    clip(cell(&r.observed)),
                    verdict,
                ]
            })
            .collect();
        let header = ["name", "expected", "observed", "verdict"].map(String::from);
        let mut widths = header.clone().map(|h| h.len());
        for row in &rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        for row in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = row
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        let _ = writeln!(
            out,
            "{} rows, {} failed, {} ms",
            self.results.len(),
            self.failures(),
            self.wall_time_ms
        );
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Longest cell the text table prints in full; JSON and CSV are never clipped.
const TABLE_CELL_MAX: usize = 60;

fn clip(s: String) -> String {
    if s.chars().count() <= TABLE_CELL_MAX {
        s
    } else {
        let head: String = s.chars().take(TABLE_CELL_MAX - 3).collect();
        head + "..."
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
