//! CSV output with `#` provenance comments ahead of the header.

use std::fmt;

use crate::config::RunConfig;

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Printed with 12 significant digits; `inf` becomes `unbounded` and `NaN`
    /// becomes `undefined`.
    Num(f64),
    Int(i64),
    Bool(bool),
    Label(String),
    Unbounded,
    Undefined,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Undefined, Cell::Num)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(v) if v.is_nan() => f.write_str("undefined"),
            Cell::Num(v) if v.is_infinite() => f.write_str("unbounded"),
            // `+ 0.0` folds −0 into 0.
            Cell::Num(v) => write!(f, "{:.11e}", v + 0.0),
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Label(s) => f.write_str(s),
            Cell::Unbounded => f.write_str("unbounded"),
            Cell::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Comment lines, without the leading `# `.
    pub provenance: Vec<String>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "ragged row");
        self.rows.push(row);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.provenance.push(line.into());
    }

    /// Version, command, config hash and the canonical config itself.
    pub fn stamp(&mut self, config: &RunConfig) {
        let mut lines = vec![
            format!("worldtube {}", env!("CARGO_PKG_VERSION")),
            format!("command: {}", config.command),
            format!("config_sha256: {}", config.hash()),
            "config:".to_string(),
        ];
        lines.extend(config.canonical().lines().map(|l| format!("  {l}")));
        lines.append(&mut self.provenance);
        self.provenance = lines;
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in &self.provenance {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(ToString::to_string))
                .expect("writing to memory");
        }
        let body = w.into_inner().expect("flushing to memory");
        out.push_str(std::str::from_utf8(&body).expect("CSV of UTF-8 fields"));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(Cell::Num(0.5).to_string(), "5.00000000000e-1");
        assert_eq!(Cell::Num(-0.0).to_string(), "0.00000000000e0");
        assert_eq!(Cell::Num(f64::INFINITY).to_string(), "unbounded");
        assert_eq!(Cell::Num(f64::NAN).to_string(), "undefined");
        assert_eq!(Cell::opt(None).to_string(), "undefined");
    }

    #[test]
    fn comments_precede_header() {
        let mut t = CsvTable::new(&["k", "label"]);
        t.push(vec![Cell::Int(1), Cell::Label("a,b".into())]);
        t.note("hello");
        assert_eq!(t.to_csv(), "# hello\nk,label\n1,\"a,b\"\n");
    }
}
