use serde::Serialize;

use crate::Format;

#[derive(Debug)]
pub enum Failure {
    /// Inputs parsed but violate a bound or a precondition; exit code 1.
    Validation { output: String, message: String },
    /// Inputs could not be parsed or read; exit code 2.
    Usage(String),
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Failure::Validation {
            output: String::new(),
            message: message.into(),
        }
    }
}

impl From<ellfib_core::Error> for Failure {
    fn from(e: ellfib_core::Error) -> Self {
        match e {
            ellfib_core::Error::Parse(m) => Failure::Usage(m),
            other => Failure::validation(other.to_string()),
        }
    }
}

pub type CmdResult = Result<String, Failure>;

/// A table rendered as TSV or as aligned text columns.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            format!("{}\n", padded.join("  ").trim_end())
        };
        let mut out = line(&self.header);
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Renders `value` as JSON, otherwise as the table.
pub fn render<T: Serialize>(format: Format, value: &T, table: &Table) -> String {
    match format {
        Format::Json => json(value),
        Format::Tsv => table.tsv(),
        Format::Text => table.text(),
    }
}

/// `key = value` lines for text, two-column TSV, JSON otherwise.
pub fn render_record<T: Serialize>(format: Format, value: &T, fields: &[(&str, String)]) -> String {
    match format {
        Format::Json => json(value),
        Format::Tsv => {
            let mut t = Table::new(&["field", "value"]);
            for (k, v) in fields {
                t.push(vec![k.to_string(), v.clone()]);
            }
            t.tsv()
        }
        Format::Text => {
            let w = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            fields
                .iter()
                .map(|(k, v)| format!("{k:<w$}  {v}\n"))
                .collect()
        }
    }
}

pub fn parse_list(flag: &str, raw: &str) -> Result<Vec<i64>, Failure> {
    raw.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Usage(format!("--{flag}: cannot parse {p:?} as an integer")))
        })
        .collect()
}
