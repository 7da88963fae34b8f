//! Run reports and their two renderings.
//!
//! Records format, one record per line, fields `key=value` separated by
//! single spaces, values never contain spaces:
//!
//! * `kind=input command=<cmd> ...` echoes the inputs,
//! * `kind=row ...` one per table row, keys are the table columns,
//! * `kind=summary violations=<k> ...` closes the report.

use std::fmt::Write as _;

use crate::input::InputDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Echo {
    Document(InputDocument),
    Flags(Vec<(String, String)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: &'static str,
    pub echo: Echo,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Index into `columns` of a pass/fail column, if the table has one.
    pub verdict: Option<usize>,
    pub summary: Vec<(String, String)>,
    pub violations: usize,
}

impl RunReport {
    pub fn new(command: &'static str, echo: Echo, columns: Vec<&'static str>) -> Self {
        RunReport {
            command,
            echo,
            columns,
            rows: Vec::new(),
            verdict: None,
            summary: Vec::new(),
            violations: 0,
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.summary.push((key.into(), value.to_string()));
    }

    /// Counts the rows whose verdict column reads `false`.
    pub fn failed_rows(&self) -> usize {
        match self.verdict {
            Some(k) => self.rows.iter().filter(|r| r[k] == "false").count(),
            None => 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Records => self.render_records(),
        }
    }

    fn echo_pairs(&self) -> Vec<(String, String)> {
        match &self.echo {
            Echo::Flags(pairs) => pairs.clone(),
            Echo::Document(doc) => {
                let mut pairs = vec![
                    ("ring".to_string(), doc.ambient.names().join(",")),
                    ("field".to_string(), doc.ring.to_string()),
                ];
                if let Some(a) = &doc.degrees {
                    pairs.push(("degrees".into(), a.to_string().replace(' ', "")));
                }
                if doc.ideal.is_some() {
                    pairs.push(("ideal".into(), doc.generator_texts().join(",").replace(' ', "")));
                }
                pairs
            }
        }
    }

    fn render_records(&self) -> String {
        let mut out = format!("kind=input command={}", self.command);
        for (k, v) in self.echo_pairs() {
            let _ = write!(out, " {k}={v}");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str("kind=row");
            for (k, v) in self.columns.iter().zip(row) {
                let _ = write!(out, " {k}={}", v.replace(' ', ""));
            }
            out.push('\n');
        }
        let _ = write!(out, "kind=summary violations={}", self.violations);
        for (k, v) in &self.summary {
            let _ = write!(out, " {k}={}", v.replace(' ', ""));
        }
        out.push('\n');
        out
    }

    /// Header line, the echoed input indented by two spaces (for documents,
    /// exactly the canonical input text), an aligned table and the summary.
    fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        match &self.echo {
            Echo::Document(doc) => {
                for line in doc.to_text().lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
            Echo::Flags(pairs) => {
                for (k, v) in pairs {
                    let _ = writeln!(out, "  {k} {v}");
                }
            }
        }
        if !self.columns.is_empty() {
            out.push('\n');
            let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
            for row in &self.rows {
                for (w, v) in widths.iter_mut().zip(row) {
                    *w = (*w).max(v.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(self.columns.clone()));
            for row in &self.rows {
                let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
            }
        }
        out.push('\n');
        let _ = writeln!(out, "violations: {}", self.violations);
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }
}

/// Splits one records line into `(key, value)` pairs.
pub fn parse_record(line: &str) -> Vec<(&str, &str)> {
    line.split(' ')
        .filter_map(|field| field.split_once('='))
        .collect()
}
