use std::fmt::Write as _;

use cehom_core::{Ring, RingMatrix, Verdict};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::document::matrix_text;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Table {
        Table {
            title: title.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub matrix: String,
}

impl Witness {
    pub fn new(ring: &Ring, name: impl Into<String>, m: &RingMatrix) -> Witness {
        Witness {
            name: name.into(),
            matrix: matrix_text(ring, m),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: Option<String>,
    pub verdict: String,
    pub headline: String,
    pub exit_code: i32,
    pub tables: Vec<Table>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    /// A document produced by the command: a resolution, a minimal complex
    /// or a suite counterexample.
    pub document: Option<String>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

pub const EXIT_INPUT: i32 = 3;

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => 0,
        Verdict::No => 1,
        Verdict::Unknown => 2,
    }
}

pub fn digest(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> RunReport {
        RunReport {
            command: command.to_string(),
            input_digest: None,
            verdict: String::new(),
            headline: String::new(),
            exit_code: EXIT_INPUT,
            tables: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            document: None,
            seed,
            elapsed_ms: 0,
        }
    }

    pub fn set_verdict(&mut self, v: Verdict, headline: String) {
        self.verdict = v.label().to_string();
        self.exit_code = exit_code(v);
        self.headline = headline;
    }

    pub fn input_error(&mut self, message: String) {
        self.verdict = "error".into();
        self.exit_code = EXIT_INPUT;
        self.headline = format!("input error: {message}");
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.headline);
        for t in &self.tables {
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| {
                    t.rows
                        .iter()
                        .map(|r| r.get(i).map_or(0, |c| c.chars().count()))
                        .chain([t.columns[i].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                format!("  {}\n", padded.join("  ").trim_end())
            };
            let _ = write!(out, "\n{}\n{}", t.title, line(&t.columns));
            for r in &t.rows {
                out.push_str(&line(r));
            }
        }
        if !self.witnesses.is_empty() {
            out.push_str("\nwitnesses\n");
            for w in &self.witnesses {
                let _ = writeln!(out, "  {}: {}", w.name, w.matrix);
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        if let Some(doc) = &self.document {
            let _ = write!(out, "\n{doc}");
        }
        out
    }
}
