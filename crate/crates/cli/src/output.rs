use std::io::{self, Write};

use clap::ValueEnum;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// 17 significant digits: round-trips every `f64`.
pub fn machine(v: f64) -> String {
    format!("{v:.16e}")
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

/// 8 significant digits, positional where that stays short.
pub fn human(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let e = v.abs().log10().floor() as i32;
    if (-4..8).contains(&e) {
        let decimals = (7 - e).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}"))
    } else {
        let s = format!("{v:.7e}");
        let (m, exp) = s.split_once('e').unwrap_or((&s, "0"));
        format!("{}e{exp}", trim_zeros(m))
    }
}

/// A number that serializes with [`machine`] digits; non-finite values
/// become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(machine(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub x: Option<Num>,
    pub value: Num,
    pub error: Option<Num>,
    pub method: String,
}

impl Row {
    pub fn new(x: f64, value: f64, error: Option<f64>, method: impl Into<String>) -> Self {
        Row {
            x: Some(Num(x)),
            value: Num(value),
            error: error.map(Num),
            method: method.into(),
        }
    }

    fn sort_key(&self) -> f64 {
        self.x.map_or(f64::NEG_INFINITY, |n| n.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditSummary {
    pub checks: usize,
    pub failures: usize,
    pub max_rel_dev: Num,
    pub failed: Vec<String>,
    pub details: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub params: serde_json::Value,
    pub results: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

/// Columns for the table and csv renderings.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn from_rows(rows: &[Row]) -> Self {
        Table {
            headers: vec!["x", "value", "error", "method"],
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.x.map_or(Cell::Empty, |n| Cell::Num(n.0)),
                        Cell::Num(r.value.0),
                        r.error.map_or(Cell::Empty, |n| Cell::Num(n.0)),
                        Cell::Text(r.method.clone()),
                    ]
                })
                .collect(),
        }
    }
}

/// What a command produced, ready to render.
pub struct Output {
    pub report: Report,
    /// Replaces the default x/value/error/method columns.
    pub table: Option<Table>,
    /// Extra lines under the human table.
    pub footer: Vec<String>,
}

impl Output {
    pub fn rows(command: &str, params: serde_json::Value, mut rows: Vec<Row>) -> Self {
        rows.sort_by(|a, b| a.sort_key().total_cmp(&b.sort_key()));
        Output {
            report: Report {
                command: command.into(),
                params,
                results: rows,
                audit: None,
                details: None,
            },
            table: None,
            footer: Vec::new(),
        }
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.report)?;
                writeln!(out)
            }
            Format::Csv => {
                let table = self.table();
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&table.headers)?;
                for row in &table.rows {
                    w.write_record(row.iter().map(|c| match c {
                        Cell::Num(v) => machine(*v),
                        Cell::Text(s) => s.clone(),
                        Cell::Empty => String::new(),
                    }))?;
                }
                w.flush()
            }
            Format::Table => {
                let table = self.table();
                write_aligned(&table, out)?;
                for line in &self.footer {
                    writeln!(out, "{line}")?;
                }
                Ok(())
            }
        }
    }

    fn table(&self) -> Table {
        self.table.clone().unwrap_or_else(|| Table::from_rows(&self.report.results))
    }
}

fn write_aligned(table: &Table, out: &mut impl Write) -> io::Result<()> {
    let cells: Vec<Vec<(String, bool)>> = table
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| match c {
                    Cell::Num(v) => (human(*v), true),
                    Cell::Text(s) => (s.clone(), false),
                    Cell::Empty => ("-".into(), false),
                })
                .collect()
        })
        .collect();
    let mut widths: Vec<usize> = table.headers.iter().map(|h| h.chars().count()).collect();
    for row in &cells {
        for (w, (s, _)) in widths.iter_mut().zip(row) {
            *w = (*w).max(s.chars().count());
        }
    }
    let line = |parts: Vec<(String, bool)>| -> String {
        let last = parts.len().saturating_sub(1);
        parts
            .into_iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, ((s, right), w))| {
                let pad = w - s.chars().count();
                if right {
                    format!("{}{s}", " ".repeat(pad))
                } else if i == last {
                    s
                } else {
                    format!("{s}{}", " ".repeat(pad))
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(table.headers.iter().map(|h| (h.to_string(), false)).collect()))?;
    for row in cells {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}
