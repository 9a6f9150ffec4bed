//! Flat CSV documents with `#` metadata lines.
//!
//! Output is plain ASCII-compatible UTF-8 with `\n` line endings. Numbers are
//! rendered with at most 12 significant digits, which makes rendering a
//! fixed point of parse-then-render.

use std::fmt;
use std::str::FromStr;

/// Significant digits kept for floating-point cells.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Num(f64),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or_else(|| Cell::Text("none".into()), Into::into)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Num(v) => f.write_str(&format_number(*v)),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl Cell {
    fn parse(raw: &str) -> Cell {
        if let Ok(v) = raw.parse::<i128>() {
            Cell::Int(v)
        } else if let Some(v) = raw.parse::<f64>().ok().filter(|v| v.is_finite()) {
            Cell::Num(v)
        } else {
            Cell::Text(raw.to_string())
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }
}

/// Plain decimal when the exponent is moderate, `d.ddde-N` otherwise;
/// trailing zeros dropped.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..=14).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_fraction(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa.to_string()))
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvDocument {
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("line {0}: malformed metadata line")]
    Meta(usize),
    #[error("missing header row")]
    MissingHeader,
    #[error("line {line}: {found} cells, header has {expected}")]
    Width {
        line: usize,
        found: usize,
        expected: usize,
    },
}

impl CsvDocument {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Self {
            meta: Vec::new(),
            header: header.iter().map(|h| h.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.push_meta(key, value);
        self
    }

    pub fn push_meta(&mut self, key: &str, value: impl fmt::Display) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Numeric view of one column; `None` cells for text.
    pub fn column_f64(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.column(name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

impl FromStr for CsvDocument {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut doc = CsvDocument::new::<&str>(&[]);
        let mut have_header = false;
        for (i, line) in s.lines().enumerate() {
            if let Some(rest) = line.strip_prefix("# ") {
                let (k, v) = rest.split_once(": ").ok_or(ParseError::Meta(i + 1))?;
                doc.push_meta(k, v);
            } else if !have_header {
                doc.header = line.split(',').map(str::to_string).collect();
                have_header = true;
            } else {
                let row: Vec<Cell> = line.split(',').map(Cell::parse).collect();
                if row.len() != doc.header.len() {
                    return Err(ParseError::Width {
                        line: i + 1,
                        found: row.len(),
                        expected: doc.header.len(),
                    });
                }
                doc.rows.push(row);
            }
        }
        if !have_header {
            return Err(ParseError::MissingHeader);
        }
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(750.0832685853117), "750.083268585");
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(1000.0), "1000");
        assert_eq!(format_number(999.9999999999999), "1000");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(1.2496680816207603e-4), "0.000124966808162");
        assert_eq!(format_number(1.5e-7), "1.5e-7");
        assert_eq!(format_number(-2.5e20), "-2.5e20");
    }

    #[test]
    fn parse_render_roundtrip() {
        let mut doc = CsvDocument::new(&["a", "b", "c"]).with_meta("command", "x");
        doc.push_row(vec![1usize.into(), 0.25.into(), "urn".into()]);
        doc.push_row(vec![2usize.into(), 3.0.into(), None::<usize>.into()]);
        let text = doc.render();
        assert_eq!(text, "# command: x\na,b,c\n1,0.25,urn\n2,3,none\n");
        let back: CsvDocument = text.parse().unwrap();
        assert_eq!(back.render(), text);
        assert_eq!(back.meta_value("command"), Some("x"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!("".parse::<CsvDocument>(), Err(ParseError::MissingHeader));
        assert!(matches!("a,b\n1\n".parse::<CsvDocument>(), Err(ParseError::Width { .. })));
        assert!(matches!("# nocolon\na\n".parse::<CsvDocument>(), Err(ParseError::Meta(1))));
    }

    proptest! {
        #[test]
        fn rendering_is_a_fixed_point(values in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..20), n in any::<u64>()) {
            let mut doc = CsvDocument::new(&["x", "n"]).with_meta("seed", n);
            for v in &values {
                doc.push_row(vec![(*v).into(), n.into()]);
            }
            let once = doc.render();
            let twice = once.parse::<CsvDocument>().unwrap().render();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn twelve_digits_survive(v in -1e6f64..1e6) {
            let s = format_number(v);
            let back: f64 = s.parse().unwrap();
            prop_assert!((back - v).abs() <= 1e-11 * v.abs().max(1e-300) + 1e-12);
        }
    }
}
