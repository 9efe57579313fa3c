use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::error::CliError;

/// CSV header with a unit note per column.
pub type Columns = &'static [(&'static str, &'static str)];

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Columns,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Columns) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::Compute(format!("CSV encoding failed: {e}"));
        w.write_record(self.columns.iter().map(|c| c.0)).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row).map_err(fail)?;
        }
        w.into_inner()
            .map_err(|e| CliError::Compute(format!("CSV encoding failed: {e}")))
    }

    pub fn units(&self) -> Value {
        self.columns
            .iter()
            .map(|&(name, unit)| (name.to_string(), Value::from(unit)))
            .collect::<serde_json::Map<_, _>>()
            .into()
    }
}

/// Shortest decimal that round-trips.
pub fn num(x: f64) -> String {
    x.to_string()
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn opt_flag(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

/// Writes `<stem>.csv` and `<stem>.json` under `dir`.
pub fn write_pair(dir: &Path, stem: &str, table: &Table, sidecar: &Value) -> Result<(PathBuf, PathBuf), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let csv = dir.join(format!("{stem}.csv"));
    let json = dir.join(format!("{stem}.json"));
    write_file(&csv, &table.to_csv()?)?;
    let mut text = serde_json::to_vec_pretty(sidecar)
        .map_err(|e| CliError::Compute(format!("JSON encoding failed: {e}")))?;
    text.push(b'\n');
    write_file(&json, &text)?;
    Ok((csv, json))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 123456789.125, -0.25] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(f64::INFINITY), "inf");
        assert_eq!(num(0.25), "0.25");
        assert_eq!(opt_num(None), "");
        assert_eq!(opt_flag(Some(false)), "false");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&[("a", "unit a"), ("b", "unit b")]);
        t.rows.push(vec![num(0.5), String::new()]);
        assert_eq!(String::from_utf8(t.to_csv().unwrap()).unwrap(), "a,b\n0.5,\n");
        assert_eq!(t.units()["b"], "unit b");
    }
}
