//! Serialized output: one JSON document for single queries, JSON Lines or
//! CSV rows for sweeps.

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Document(Map<String, Value>),
    Rows { columns: Vec<&'static str>, rows: Vec<Vec<Value>> },
}

/// An integer as an exact JSON number.
pub fn big(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer literal")
}

pub fn bigs<'a>(ns: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(ns.into_iter().map(big).collect())
}

#[macro_export]
macro_rules! doc {
    ($($key:literal => $value:expr),* $(,)?) => {{
        let mut m = serde_json::Map::new();
        $(m.insert($key.to_string(), serde_json::Value::from($value));)*
        $crate::report::Report::Document(m)
    }};
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Report::Document(m), Format::Json) => {
                let mut s = serde_json::to_string_pretty(m).expect("serializable");
                s.push('\n');
                s
            }
            (Report::Document(m), Format::Csv) => {
                let mut s = String::from("field,value\n");
                for (k, v) in m {
                    s.push_str(&csv_cell(&Value::String(k.clone())));
                    s.push(',');
                    s.push_str(&csv_cell(v));
                    s.push('\n');
                }
                s
            }
            (Report::Rows { columns, rows }, Format::Json) => {
                let mut s = String::new();
                for row in rows {
                    let fields: Vec<String> = columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| format!("{}:{}", Value::String(c.to_string()), v))
                        .collect();
                    s.push('{');
                    s.push_str(&fields.join(","));
                    s.push_str("}\n");
                }
                s
            }
            (Report::Rows { columns, rows }, Format::Csv) => {
                let mut s = columns.join(",");
                s.push('\n');
                for row in rows {
                    let cells: Vec<String> = row.iter().map(csv_cell).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(_) | Value::Object(_) => v.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_stay_exact() {
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big(&n).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn rows_keep_column_order() {
        let r = Report::Rows {
            columns: vec!["z", "a"],
            rows: vec![vec![Value::from(1), Value::from("x,y")]],
        };
        assert_eq!(r.render(Format::Json), "{\"z\":1,\"a\":\"x,y\"}\n");
        assert_eq!(r.render(Format::Csv), "z,a\n1,\"x,y\"\n");
    }
}
