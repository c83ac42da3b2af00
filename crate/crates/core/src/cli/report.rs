use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::cantor::CantorMeasureValue;
use crate::error::{Error, Result};
use crate::exact::{Interval, Rational};

pub const SCHEMA_VERSION: &str = "1.0.0";

/// Places after the point in `*_decimal` renderings.
pub const DECIMAL_DIGITS: usize = 12;

/// One CSV cell. Numeric cells render exactly; intervals as `lo..hi`.
#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Rat(Rational),
    Iv(Interval),
}

impl Cell {
    pub fn text(v: impl ToString) -> Self {
        Cell::Text(v.to_string())
    }

    pub fn measure(m: &CantorMeasureValue) -> Self {
        Cell::Iv(Interval::new(m.lo.clone(), m.hi.clone()))
    }

    pub fn opt_iv(v: &Option<Interval>) -> Self {
        v.as_ref().map_or_else(|| Cell::text(""), |i| Cell::Iv(i.clone()))
    }

    fn exact(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Rat(r) => r.to_string(),
            Cell::Iv(i) if i.lo == i.hi => i.lo.to_string(),
            Cell::Iv(i) => format!("{}..{}", i.lo, i.hi),
        }
    }

    fn lossy(&self) -> Option<f64> {
        match self {
            Cell::Text(_) => None,
            Cell::Rat(r) => Some(r.to_f64()),
            Cell::Iv(i) => Some(((&i.lo + &i.hi) / Rational::integer(2)).to_f64()),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// CSV with exact cells; `plot` appends a lossy `*_f64_lossy` column for
    /// every numeric column.
    pub fn to_csv(&self, plot: bool) -> Result<String> {
        let numeric: Vec<usize> = if plot {
            (0..self.columns.len())
                .filter(|&j| !self.rows.is_empty() && self.rows.iter().all(|r| r[j].lossy().is_some()))
                .collect()
        } else {
            Vec::new()
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        header.extend(numeric.iter().map(|&j| format!("{}_f64_lossy", self.columns[j])));
        w.write_record(&header).map_err(csv_err)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.iter().map(Cell::exact).collect();
            rec.extend(numeric.iter().map(|&j| format!("{:e}", row[j].lossy().expect("numeric"))));
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Resource(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Resource(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Resource(format!("csv: {e}"))
}

fn is_rational_str(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let Some((n, d)) = s.split_once('/') else {
        return false;
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
    digits(n) && digits(d)
}

fn decimal_of(s: &str) -> Option<Value> {
    is_rational_str(s).then(|| Value::String(s.parse::<Rational>().expect("checked").to_decimal(DECIMAL_DIGITS)))
}

/// Adds a `k_decimal` sibling next to every `"num/den"` value (or array of
/// them) and rebuilds every object with sorted keys.
pub fn annotate(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut out: BTreeMap<String, Value> = BTreeMap::new();
            for (k, child) in map {
                let decimal = match &child {
                    Value::String(s) => decimal_of(s),
                    Value::Array(items) if !items.is_empty() => items
                        .iter()
                        .map(|i| i.as_str().and_then(decimal_of))
                        .collect::<Option<Vec<_>>>()
                        .map(Value::Array),
                    _ => None,
                };
                if let Some(d) = decimal {
                    out.insert(format!("{k}_decimal"), d);
                }
                out.insert(k, annotate(child));
            }
            Value::Object(out.into_iter().collect::<Map<String, Value>>())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(annotate).collect()),
        other => other,
    }
}

/// `{schema_version, command, config_echo, results, calibration_constants_used, timing_ms}`.
pub fn envelope(
    command: &str,
    echo: &BTreeMap<String, String>,
    results: Value,
    calibration: Value,
    timing_ms: Option<u64>,
) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), Value::String(SCHEMA_VERSION.into()));
    m.insert("command".into(), Value::String(command.into()));
    m.insert("config_echo".into(), serde_json::to_value(echo).expect("string map"));
    m.insert("results".into(), results);
    m.insert("calibration_constants_used".into(), calibration);
    m.insert("timing_ms".into(), timing_ms.map_or(Value::Null, Value::from));
    annotate(Value::Object(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn decimal_siblings_and_order() {
        let v = annotate(json!({"z": "1/3", "a": {"lo": "-1/8", "n": 3, "xs": ["1/2", "3/4"], "p": "12"}}));
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"a":{"lo":"-1/8","lo_decimal":"-0.125000000000","n":3,"p":"12","xs":["1/2","3/4"],"xs_decimal":["0.500000000000","0.750000000000"]},"z":"1/3","z_decimal":"0.333333333333"}"#
        );
    }

    #[test]
    fn csv_cells() {
        let mut t = Table::new(&["n", "rho"]);
        t.push(vec![Cell::text(1), Cell::Iv(Interval::point(Rational::one()))]);
        t.push(vec![Cell::text(2), Cell::Iv(Interval::new(Rational::frac(1, 3), Rational::frac(1, 2)))]);
        assert_eq!(t.to_csv(false).unwrap(), "n,rho\n1,1/1\n2,1/3..1/2\n");
        let plot = t.to_csv(true).unwrap();
        assert!(plot.starts_with("n,rho,rho_f64_lossy\n1,1/1,1e0\n"));
    }
}
