//! Output encodings. JSON is canonical; CSV and text flatten the document
//! into `path, value` rows.

use clap::ValueEnum;
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Rows `(path, value)` with rationals left as their `"p/q"` strings.
pub fn rows(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten("", v, &mut out);
    out
}

pub fn render(v: &Value, format: Format) -> Result<String, CliError> {
    let io = |e: &dyn std::fmt::Display| CliError::Output(e.to_string());
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).map_err(|e| io(&e))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).map_err(|e| io(&e))?;
            for (k, x) in rows(v) {
                w.write_record([k, x]).map_err(|e| io(&e))?;
            }
            let bytes = w.into_inner().map_err(|e| io(&e))?;
            String::from_utf8(bytes).map_err(|e| io(&e))
        }
        Format::Text => Ok(rows(v).into_iter().map(|(k, x)| format!("{k}: {x}\n")).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattening() {
        let v = json!({"a": {"b": ["1/2", 3]}, "c": true, "d": []});
        let r = rows(&v);
        assert_eq!(
            r,
            vec![
                ("a.b[0]".to_string(), "1/2".to_string()),
                ("a.b[1]".to_string(), "3".to_string()),
                ("c".to_string(), "true".to_string()),
                ("d".to_string(), "[]".to_string()),
            ]
        );
        assert_eq!(render(&json!({"x": "1/3"}), Format::Csv).unwrap(), "key,value\nx,1/3\n");
    }
}
