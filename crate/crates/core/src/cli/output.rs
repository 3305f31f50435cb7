//! Canonical output: `%.12e` floats, a JSON envelope with a fixed field
//! order, and RFC 4180 CSV tables.

use std::str::FromStr;

use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

/// C-style `%.12e`: `2.287037181379e+00`.
pub fn fmt_e(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent format always has an 'e'");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// A JSON number printed as `%.12e`; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&fmt_e(x)).expect("%.12e output is a valid JSON number"))
    } else {
        Value::Null
    }
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Ordered JSON object builder.
#[derive(Debug, Default, Clone)]
pub struct Obj(Map<String, Value>);

impl Obj {
    pub fn new() -> Self {
        Obj(Map::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn float(self, key: &str, x: f64) -> Self {
        self.with(key, num(x))
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }
}

impl From<Obj> for Value {
    fn from(o: Obj) -> Value {
        o.into_value()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => fmt_e(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Cell {
        Cell::Float(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let records = std::iter::once(self.header.clone()).chain(self.rows.iter().map(|r| r.iter().map(Cell::render).collect()));
        write_records(records)
    }
}

fn write_records(records: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).flexible(true).from_writer(Vec::new());
    for r in records {
        w.write_record(&r).expect("writing to memory cannot fail");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

/// Parse CSV text and emit it again through the canonical writer.
pub fn recanonicalize_csv(text: &str) -> Result<String, csv::Error> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
    let mut records = Vec::new();
    for rec in r.records() {
        records.push(rec?.iter().map(str::to_string).collect());
    }
    Ok(write_records(records.into_iter()))
}

/// The self-describing JSON envelope.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub command: String,
    pub params: Obj,
    pub sign_sigma: i8,
    pub results: Value,
    pub warnings: Vec<String>,
    pub errors: Vec<String>,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        let v = Obj::new()
            .with("schema_version", SCHEMA_VERSION)
            .with("command", self.command.as_str())
            .with("params", self.params.clone())
            .with("sign_sigma", self.sign_sigma as i64)
            .with("results", self.results.clone())
            .with("warnings", self.warnings.clone())
            .with("errors", self.errors.clone())
            .into_value();
        let mut s = serde_json::to_string_pretty(&v).expect("envelope serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_style_exponent() {
        assert_eq!(fmt_e(2.2870371813794), "2.287037181379e+00");
        assert_eq!(fmt_e(0.0), "0.000000000000e+00");
        assert_eq!(fmt_e(-1.5e-7), "-1.500000000000e-07");
        assert_eq!(fmt_e(6.02e123), "6.020000000000e+123");
        assert_eq!(fmt_e(f64::NAN), "nan");
    }

    #[test]
    fn json_numbers_keep_format() {
        let v = Obj::new().float("x", 5.0).float("bad", f64::INFINITY).into_value();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"x":5.000000000000e+00,"bad":null}"#);
    }

    #[test]
    fn csv_quotes_when_needed() {
        let mut t = Table::new(&["name", "value"]);
        t.push(vec!["a,b".into(), 1.0.into()]);
        assert_eq!(t.to_csv(), "name,value\r\n\"a,b\",1.000000000000e+00\r\n");
    }
}
