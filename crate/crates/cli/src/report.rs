use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
    /// Exit code for `Status::Error` (1 for a broken computation, 2 for bad
    /// input or an exceeded resource bound).
    #[serde(skip)]
    pub error_code: u8,
    /// Replaces the generic rendering of `results` in text mode.
    #[serde(skip)]
    pub text: Option<String>,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => self.error_code,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        write_fields(&mut out, &self.inputs, 0);
        match &self.text {
            Some(t) => out.push_str(t),
            None => write_fields(&mut out, &self.results, 0),
        }
        out.push_str(&format!(
            "status: {}",
            serde_json::to_value(self.status).unwrap().as_str().unwrap()
        ));
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("none".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a)
            if a.iter().all(|x| {
                x.is_number() || x.is_boolean() || x.as_str().is_some_and(|s| !s.contains(' '))
            }) =>
        {
            Some(
                a.iter()
                    .map(|x| scalar_text(x).unwrap())
                    .collect::<Vec<_>>()
                    .join(", "),
            )
        }
        _ => None,
    }
}

fn write_fields(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_fields(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_fields(out, x, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!(
            "{pad}{}\n",
            scalar_text(other).unwrap_or_default()
        )),
    }
}

/// Builds a JSON object from `(key, value)` pairs, keeping their order.
pub fn object<I, K>(pairs: I) -> Value
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}
