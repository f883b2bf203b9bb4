//! Rendering of command results as JSON, CSV or aligned text.

use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::units::CODATA_RELEASE;

pub const ARTIFACT_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

const JSON_DIGITS: usize = 17;
const TABLE_DIGITS: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n.into())
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub key: String,
    pub value: Cell,
    /// SI unit symbol; empty for dimensionless values.
    pub unit: &'static str,
    /// Short human-readable rendering shown next to the value in tables.
    pub display: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// The result of one command, independent of the output format.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub entries: Vec<Entry>,
    pub table: Option<Table>,
    /// When set, CSV output is the table; otherwise it is the entries.
    pub tabular_csv: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            entries: Vec::new(),
            table: None,
            tabular_csv: false,
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Cell>, unit: &'static str) -> &mut Self {
        self.entries.push(Entry {
            key: key.into(),
            value: value.into(),
            unit,
            display: None,
        });
        self
    }

    /// Like [`push`](Self::push) with a rounded rendering for tables.
    pub fn push_shown(&mut self, key: impl Into<String>, value: f64, unit: &'static str, display: String) -> &mut Self {
        self.entries.push(Entry {
            key: key.into(),
            value: Cell::Num(value),
            unit,
            display: Some(display),
        });
        self
    }
}

#[derive(Debug, Clone)]
pub struct Provenance {
    pub constants_release: &'static str,
    pub artifact_version: &'static str,
    pub command_line: String,
}

impl Provenance {
    /// The program path is reduced to its file name.
    pub fn new(args: &[String]) -> Self {
        let parts: Vec<&str> = args
            .iter()
            .enumerate()
            .map(|(i, a)| match i {
                0 => Path::new(a).file_name().and_then(|s| s.to_str()).unwrap_or(a),
                _ => a.as_str(),
            })
            .collect();
        Provenance {
            constants_release: CODATA_RELEASE,
            artifact_version: ARTIFACT_VERSION,
            command_line: parts.join(" "),
        }
    }
}

/// Formats `x` with `digits` significant digits in scientific notation.
pub fn sci(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), x)
}

/// JSON number carrying 17 significant digits; non-finite values become null.
pub fn json_number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    if x == 0.0 {
        return Value::Number(Number::from_str("0.0").expect("literal"));
    }
    Value::Number(Number::from_str(&sci(x, JSON_DIGITS)).expect("scientific notation is valid JSON"))
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Num(x) => json_number(*x),
        Cell::Int(n) => Value::from(*n),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Text(s) => Value::String(s.clone()),
    }
}

fn cell_text(c: &Cell, digits: usize) -> String {
    match c {
        Cell::Num(x) if *x == 0.0 => "0".to_string(),
        Cell::Num(x) => sci(*x, digits),
        Cell::Int(n) => n.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

pub fn to_json(report: &Report, prov: &Provenance) -> Value {
    let mut root = Map::new();
    let mut p = Map::new();
    p.insert("constants_release".into(), prov.constants_release.into());
    p.insert("artifact_version".into(), prov.artifact_version.into());
    p.insert("command_line".into(), prov.command_line.clone().into());
    root.insert("provenance".into(), Value::Object(p));
    root.insert("command".into(), report.command.into());

    let mut result = Map::new();
    for e in &report.entries {
        result.insert(e.key.clone(), cell_json(&e.value));
    }
    root.insert("result".into(), Value::Object(result));

    let mut units = Map::new();
    for e in report.entries.iter().filter(|e| !e.unit.is_empty()) {
        units.insert(e.key.clone(), e.unit.into());
    }
    root.insert("units".into(), Value::Object(units));

    if let Some(t) = &report.table {
        let rows = t
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    t.columns
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.clone(), cell_json(v)))
                        .collect(),
                )
            })
            .collect();
        root.insert(t.name.into(), Value::Array(rows));
    }
    Value::Object(root)
}

pub fn write_json(w: &mut dyn Write, report: &Report, prov: &Provenance) -> io::Result<()> {
    let v = to_json(report, prov);
    serde_json::to_writer_pretty(&mut *w, &v)?;
    writeln!(w)
}

fn provenance_comments(w: &mut dyn Write, prov: &Provenance) -> io::Result<()> {
    writeln!(w, "# artifact_version: {}", prov.artifact_version)?;
    writeln!(w, "# constants_release: {}", prov.constants_release)?;
    writeln!(w, "# command_line: {}", prov.command_line)
}

pub fn write_csv(w: &mut dyn Write, report: &Report, prov: &Provenance) -> io::Result<()> {
    provenance_comments(w, prov)?;
    let mut out = csv::Writer::from_writer(w);
    match (&report.table, report.tabular_csv) {
        (Some(t), true) => {
            out.write_record(&t.columns)?;
            for row in &t.rows {
                out.write_record(row.iter().map(|c| cell_text(c, JSON_DIGITS)))?;
            }
        }
        _ => {
            out.write_record(["quantity", "value", "unit"])?;
            for e in &report.entries {
                out.write_record([e.key.as_str(), &cell_text(&e.value, JSON_DIGITS), e.unit])?;
            }
        }
    }
    out.flush()
}

pub fn write_table(w: &mut dyn Write, report: &Report, prov: &Provenance) -> io::Result<()> {
    writeln!(
        w,
        "{} | {} | {}",
        prov.artifact_version, prov.constants_release, prov.command_line
    )?;
    let width = report.entries.iter().map(|e| e.key.len()).max().unwrap_or(0);
    for e in &report.entries {
        let mut line = format!("{:<width$}  {}", e.key, cell_text(&e.value, TABLE_DIGITS));
        if !e.unit.is_empty() {
            line.push(' ');
            line.push_str(e.unit);
        }
        if let Some(d) = &e.display {
            line.push_str(&format!("  ({d})"));
        }
        writeln!(w, "{}", line.trim_end())?;
    }
    if let Some(t) = &report.table {
        writeln!(w)?;
        let cells: Vec<Vec<String>> = t
            .rows
            .iter()
            .map(|r| r.iter().map(|c| cell_text(c, TABLE_DIGITS)).collect())
            .collect();
        let widths: Vec<usize> = t
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let line = |items: &[String]| {
            items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(w, "{}", line(&t.columns))?;
        for r in &cells {
            writeln!(w, "{}", line(r))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.push("mass_kg", 1.8592090938e-9, "kg");
        r.push("detectable", false, "");
        r.table = Some(Table {
            name: "rows",
            columns: vec!["t_s".into(), "r_m".into()],
            rows: vec![vec![0.0.into(), 1.0.into()], vec![0.5.into(), 0.25.into()]],
        });
        r
    }

    fn prov() -> Provenance {
        Provenance::new(&["gravlink".into(), "demo".into()])
    }

    #[test]
    fn json_numbers_keep_17_digits() {
        let x = 0.1 + 0.2;
        let text = json_number(x).to_string();
        assert_eq!(text, "3.0000000000000004e-1");
        assert_eq!(text.parse::<f64>().unwrap(), x);
        assert_eq!(json_number(f64::NAN), Value::Null);
    }

    #[test]
    fn json_carries_provenance() {
        let v = to_json(&sample(), &prov());
        assert_eq!(v["provenance"]["constants_release"], "CODATA 2018");
        assert_eq!(v["provenance"]["command_line"], "gravlink demo");
        assert_eq!(v["units"]["mass_kg"], "kg");
        assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn csv_table_has_header_after_comments() {
        let mut r = sample();
        r.tabular_csv = true;
        let mut buf = Vec::new();
        write_csv(&mut buf, &r, &prov()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "t_s,r_m");
        assert_eq!(data.len(), 3);
    }

    #[test]
    fn table_uses_nine_digits() {
        let mut buf = Vec::new();
        write_table(&mut buf, &sample(), &prov()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("1.85920909e-9 kg"), "{text}");
    }
}
