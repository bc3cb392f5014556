//! Table writers shared by `sweep` and `figure`.
//!
//! CSV output starts with `#`-prefixed metadata lines followed by a header
//! row. JSON-lines output puts the metadata object on the first line and one
//! object per row after it. Floats are written in their shortest round-trip
//! form, so identical inputs give identical bytes.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

pub const TOOL: &str = concat!("geophase ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum TableFormat {
    #[default]
    Csv,
    Jsonl,
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Csv => "csv",
            TableFormat::Jsonl => "jsonl",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn opt_text<T: ToString>(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, |t| Cell::Text(t.to_string()))
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => Value::from(*x),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

/// An in-memory table with its metadata.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            meta: vec![("tool".into(), Cell::text(TOOL))],
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: Cell) -> &mut Self {
        self.meta.push((key.into(), value));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write + ?Sized>(&self, w: &mut W, format: TableFormat) -> io::Result<()> {
        match format {
            TableFormat::Csv => self.write_csv(w),
            TableFormat::Jsonl => self.write_jsonl(w),
        }
    }

    fn write_csv<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(w, "# {k}: {}", v.csv())?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn write_jsonl<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        let mut meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        meta.insert(
            "columns".into(),
            Value::from(self.columns.iter().map(|c| Value::from(c.as_str())).collect::<Vec<_>>()),
        );
        let mut head = Map::new();
        head.insert("meta".into(), Value::Object(meta));
        writeln!(w, "{}", Value::Object(head))?;
        for row in &self.rows {
            let obj: Map<String, Value> = self
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| (c.clone(), v.json()))
                .collect();
            writeln!(w, "{}", Value::Object(obj))?;
        }
        Ok(())
    }

    /// Write to `path`, or to `stdout` when `path` is `-`.
    pub fn save(&self, path: &Path, format: TableFormat, stdout: &mut dyn Write) -> CliResult<()> {
        let name = path.display().to_string();
        if name == "-" {
            return self.write(stdout, format).map_err(|e| CliError::io(name, e));
        }
        let file = File::create(path).map_err(|e| CliError::io(&name, e))?;
        let mut w = BufWriter::new(file);
        self.write(&mut w, format)
            .and_then(|_| w.flush())
            .map_err(|e| CliError::io(name, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["x", "label", "n"]);
        t.meta("mu", Cell::Num(0.1));
        t.push(vec![Cell::Num(0.5), Cell::text("ads"), Cell::Int(-1)]);
        t.push(vec![Cell::Num(1e-7), Cell::Empty, Cell::Int(0)]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(&mut buf, TableFormat::Csv).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# tool: geophase "));
        assert_eq!(lines[1], "# mu: 0.1");
        assert_eq!(lines[2], "x,label,n");
        assert_eq!(lines[3], "0.5,ads,-1");
        assert_eq!(lines[4].parse::<f64>().ok(), None);
        assert_eq!(lines[4].split(',').next().unwrap().parse::<f64>().unwrap(), 1e-7);
    }

    #[test]
    fn jsonl_layout() {
        let mut buf = Vec::new();
        sample().write(&mut buf, TableFormat::Jsonl).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<Value> = s.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["meta"]["columns"][1], "label");
        assert_eq!(lines[1]["n"], -1);
        assert!(lines[2]["label"].is_null());
    }
}
