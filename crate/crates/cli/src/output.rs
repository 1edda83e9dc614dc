//! CSV and JSON rendering. Numbers go out as C-style `%.12e` in CSV so files
//! are byte-identical across runs and platforms.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Missing,
    Text(String),
    Flag(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => c_exp(*v),
            Cell::Missing => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Missing => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

/// `printf("%.12e")`: twelve mantissa digits, signed exponent of at least two digits.
pub fn c_exp(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // Print negative zero as zero.
    let v = if v == 0.0 { 0.0 } else { v };
    let s = format!("{v:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Result of one command: a parameter record plus either rows or a single record.
#[derive(Debug, Clone)]
pub struct Report {
    pub params: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Render JSON as one flat object (with `extra` merged in) instead of a row list.
    pub single: bool,
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn table(params: Value, columns: Vec<&'static str>, rows: Vec<Vec<Cell>>) -> Self {
        Self { params, columns, rows, single: false, extra: Map::new() }
    }

    pub fn record(params: Value, fields: Vec<(&'static str, Cell)>, extra: Map<String, Value>) -> Self {
        let (columns, row): (Vec<_>, Vec<_>) = fields.into_iter().unzip();
        Self { params, columns, rows: vec![row], single: true, extra }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => format!("{:#}\n", self.json()),
        }
    }

    fn csv(&self) -> String {
        let mut out = format!("# {}\n{}\n", self.params, self.columns.join(","));
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out += &line.join(",");
            out.push('\n');
        }
        out
    }

    fn row_object(&self, row: &[Cell]) -> Map<String, Value> {
        self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect()
    }

    fn json(&self) -> Value {
        if self.single {
            let mut obj = self.rows.first().map(|r| self.row_object(r)).unwrap_or_default();
            obj.extend(self.extra.clone());
            obj.insert("params".into(), self.params.clone());
            return Value::Object(obj);
        }
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Object(self.row_object(r))).collect();
        let mut obj = Map::new();
        obj.insert("params".into(), self.params.clone());
        obj.insert("columns".into(), self.columns.clone().into());
        obj.insert("rows".into(), rows.into());
        Value::Object(obj)
    }
}
