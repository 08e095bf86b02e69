//! Flat records written as JSON lines or CSV rows.

use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use serde_json::{Map, Number};

/// How floating-point fields are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// Fixed number of decimals.
    Decimals(usize),
    /// Significant digits.
    Significant(usize),
}

/// Fixed seven decimals, used for tables.
pub const TABLE: Precision = Precision::Decimals(7);
/// Thirteen significant digits, used everywhere else.
pub const FULL: Precision = Precision::Significant(13);

impl Precision {
    pub fn format(self, x: f64) -> String {
        match self {
            Precision::Decimals(d) => format!("{x:.d$}"),
            Precision::Significant(n) => {
                if x == 0.0 {
                    return format!("{:.*}", n - 1, 0.0);
                }
                let exp = x.abs().log10().floor() as i32;
                if (-5..12).contains(&exp) {
                    let d = (n as i32 - 1 - exp).max(1) as usize;
                    format!("{x:.d$}")
                } else {
                    format!("{:.*e}", n - 1, x)
                }
            }
        }
    }

    /// The double nearest to the printed form of `x`.
    pub fn quantize(self, x: f64) -> f64 {
        self.format(x).parse().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

/// Ordered field list; floats are stored already rounded to the record's
/// precision so that formatting and parsing round-trip exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputRecord {
    pub precision: Precision,
    pub fields: Vec<(String, Value)>,
}

impl OutputRecord {
    pub fn new(precision: Precision) -> Self {
        OutputRecord { precision, fields: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: Value) -> &mut Self {
        let value = match value {
            Value::Float(x) if !x.is_finite() => Value::Null,
            Value::Float(x) => Value::Float(self.precision.quantize(x)),
            v => v,
        };
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn int(&mut self, key: &str, x: i64) -> &mut Self {
        self.push(key, Value::Int(x))
    }

    pub fn float(&mut self, key: &str, x: f64) -> &mut Self {
        self.push(key, Value::Float(x))
    }

    pub fn opt_float(&mut self, key: &str, x: Option<f64>) -> &mut Self {
        self.push(key, x.map_or(Value::Null, Value::Float))
    }

    pub fn text(&mut self, key: &str, s: impl ToString) -> &mut Self {
        self.push(key, Value::Text(s.to_string()))
    }

    pub fn flag(&mut self, key: &str, b: bool) -> &mut Self {
        self.push(key, Value::Bool(b))
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> Vec<&str> {
        self.fields.iter().map(|(k, _)| k.as_str()).collect()
    }

    fn cell(&self, v: &Value) -> String {
        match v {
            Value::Null => String::new(),
            Value::Bool(b) => b.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Float(x) => self.precision.format(*x),
            Value::Text(s) => s.clone(),
        }
    }

    /// One JSON object, keys in field order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&serde_json::to_string(k).unwrap());
            out.push(':');
            match v {
                Value::Null => out.push_str("null"),
                Value::Text(s) => out.push_str(&serde_json::to_string(s).unwrap()),
                _ => out.push_str(&self.cell(v)),
            }
        }
        out.push('}');
        out
    }

    pub fn from_json(line: &str, precision: Precision) -> Result<Self> {
        let map: Map<String, serde_json::Value> = serde_json::from_str(line).context("malformed JSON record")?;
        let mut rec = OutputRecord::new(precision);
        for (k, v) in map {
            let value = match v {
                serde_json::Value::Null => Value::Null,
                serde_json::Value::Bool(b) => Value::Bool(b),
                serde_json::Value::Number(n) => number_value(&n)?,
                serde_json::Value::String(s) => Value::Text(s),
                other => bail!("field {k} has unsupported value {other}"),
            };
            rec.fields.push((k, value));
        }
        Ok(rec)
    }

    /// CSV cells in field order.
    pub fn to_csv_row(&self) -> Vec<String> {
        self.fields.iter().map(|(_, v)| self.cell(v)).collect()
    }

    /// Inverse of [`to_csv_row`](Self::to_csv_row): integers have no
    /// decimal point or exponent, floats do.
    pub fn from_csv_row(header: &[String], row: &[String], precision: Precision) -> Result<Self> {
        if header.len() != row.len() {
            bail!("row has {} cells but header has {}", row.len(), header.len());
        }
        let mut rec = OutputRecord::new(precision);
        for (k, cell) in header.iter().zip(row) {
            rec.fields.push((k.clone(), parse_cell(cell)));
        }
        Ok(rec)
    }
}

fn number_value(n: &Number) -> Result<Value> {
    if let Some(i) = n.as_i64() {
        Ok(Value::Int(i))
    } else if let Some(x) = n.as_f64() {
        Ok(Value::Float(x))
    } else {
        bail!("number {n} out of range")
    }
}

fn parse_cell(cell: &str) -> Value {
    if cell.is_empty() {
        return Value::Null;
    }
    match cell {
        "true" => return Value::Bool(true),
        "false" => return Value::Bool(false),
        _ => {}
    }
    if let Ok(i) = cell.parse::<i64>() {
        return Value::Int(i);
    }
    let numeric = cell.bytes().all(|c| c.is_ascii_digit() || b"+-.eE".contains(&c));
    match cell.parse::<f64>() {
        Ok(x) if numeric && x.is_finite() => Value::Float(x),
        _ => Value::Text(cell.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Write records as JSON lines, or as CSV with a header taken from the
/// first record.
pub fn write_records(out: &mut impl Write, records: &[OutputRecord], format: Format) -> Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.keys())?;
            }
            for r in records {
                w.write_record(r.to_csv_row())?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn read_records(input: impl Read, format: Format, precision: Precision) -> Result<Vec<OutputRecord>> {
    match format {
        Format::Json => {
            let mut text = String::new();
            let mut input = input;
            input.read_to_string(&mut text)?;
            text.lines().filter(|l| !l.trim().is_empty()).map(|l| OutputRecord::from_json(l, precision)).collect()
        }
        Format::Csv => {
            let mut r = csv::Reader::from_reader(input);
            let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
            r.records()
                .map(|row| {
                    let row: Vec<String> = row?.iter().map(str::to_string).collect();
                    OutputRecord::from_csv_row(&header, &row, precision)
                })
                .collect()
        }
    }
}
