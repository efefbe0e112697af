use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

pub const SCHEMA: &str = "apolar-report/1";

/// Result of one command: the JSON payload, its human-readable form and,
/// for tabular commands, the CSV rows.
pub struct Outcome {
    pub result: Value,
    pub text: Vec<String>,
    pub table: Option<Table>,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: Option<String>,
    pub vars: Vec<String>,
    pub seed: u64,
    pub bound: u64,
    pub result: Value,
    pub timing_ms: u64,
}

impl Report {
    pub fn render(&self, outcome: &Outcome, format: Format) -> Result<String, String> {
        match format {
            Format::Json => {
                // serde_json's map keeps keys sorted, so equal reports are
                // byte-identical apart from the timing
                let mut s = serde_json::to_string_pretty(self).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => {
                let mut s = format!("{}", self.command);
                if let Some(input) = &self.input {
                    s.push_str(&format!(" {input}"));
                }
                s.push_str(&format!(
                    "  [vars {}; seed {}]\n",
                    self.vars.join(","),
                    self.seed
                ));
                for line in &outcome.text {
                    s.push_str(line);
                    s.push('\n');
                }
                Ok(s)
            }
            Format::Csv => {
                let table = match &outcome.table {
                    Some(t) => Table {
                        header: t.header.clone(),
                        rows: t.rows.clone(),
                    },
                    None => flat_table(&self.result),
                };
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.header).map_err(|e| e.to_string())?;
                for row in &table.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())
            }
        }
    }
}

/// One row whose columns are the top-level fields of the payload; nested
/// values are written as compact JSON.
fn flat_table(result: &Value) -> Table {
    let Value::Object(map) = result else {
        return Table {
            header: vec!["result".into()],
            rows: vec![vec![cell(result)]],
        };
    };
    Table {
        header: map.keys().cloned().collect(),
        rows: vec![map.values().map(cell).collect()],
    }
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flat_rows_follow_key_order() {
        let t = flat_table(&json!({"b": [1, 2], "a": "x", "c": null}));
        assert_eq!(t.header, vec!["a", "b", "c"]);
        assert_eq!(
            t.rows,
            vec![vec!["x".to_string(), "[1,2]".into(), String::new()]]
        );
    }
}
