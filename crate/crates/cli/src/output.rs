use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;

use emr_edge::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// What a subcommand produced: a human table, CSV files and one JSON document.
pub struct Artifacts {
    pub stem: &'static str,
    pub table: String,
    pub csv: Vec<(String, String)>,
    pub json: serde_json::Value,
}

impl Artifacts {
    pub fn new(stem: &'static str, json: &impl Serialize) -> Self {
        Artifacts {
            stem,
            table: String::new(),
            csv: Vec::new(),
            json: serde_json::to_value(json).expect("report serializes"),
        }
    }

    pub fn csv(mut self, name: impl Into<String>, body: String) -> Self {
        self.csv.push((name.into(), body));
        self
    }

    pub fn table(mut self, table: String) -> Self {
        self.table = table;
        self
    }

    /// Output file names, in the order they are written.
    pub fn file_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.csv.iter().map(|(n, _)| format!("{n}.csv")).collect();
        names.push(format!("{}.json", self.stem));
        names
    }

    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>, Error> {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut written = Vec::new();
        for (name, body) in &self.csv {
            written.push(write_file(&dir.join(format!("{name}.csv")), body)?);
        }
        written.push(write_file(
            &dir.join(format!("{}.json", self.stem)),
            &(pretty(&self.json) + "\n"),
        )?);
        Ok(written)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.table.clone(),
            Format::Json => pretty(&self.json) + "\n",
            Format::Csv => self
                .csv
                .iter()
                .map(|(_, body)| body.as_str())
                .collect::<Vec<_>>()
                .join("\n"),
        }
    }
}

fn write_file(path: &Path, body: &str) -> Result<PathBuf, Error> {
    std::fs::write(path, body).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(path.to_path_buf())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

/// Builds a CSV document from a header and pre-formatted rows.
pub fn csv_doc(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Left-aligned text table with a dashed rule under the header.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let _ = write!(s, "{cell:<w$}");
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(rule.iter().map(String::as_str).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn minutes(v: f64) -> String {
    format!("{v:.3}")
}

pub fn pct(v: f64) -> String {
    format!("{v:.2}")
}

pub fn gb(v: f64) -> String {
    format!("{v:.2}")
}
