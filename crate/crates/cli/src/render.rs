//! Plain-text rendering of a JSON report.

use serde_json::Value;

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                let name = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&name, v, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

/// One `key  value` line per leaf, keys padded to a common width.
pub fn table(json: &str) -> serde_json::Result<String> {
    let value: Value = serde_json::from_str(json)?;
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    Ok(rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_keys_keep_their_order() {
        let text = table(r#"{"b":1,"a":{"z":[1,2],"y":"s"}}"#).unwrap();
        assert_eq!(text, "b    1\na.z  [1,2]\na.y  s\n");
    }
}
