//! Parameter ingestion from flags and from a JSON config document.

use std::path::Path;

use para_racah::scalar::{parse_rational, Rational};
use serde_json::Value;

use crate::CliError;

/// Raw parameters before validation; flags override the config file.
#[derive(Clone, Debug, Default)]
pub struct RawParams {
    pub max_degree: Option<usize>,
    pub a: Option<Rational>,
    pub c: Option<Rational>,
    pub alpha: Option<Rational>,
}

fn rational_value(key: &str, v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| CliError::Usage(format!("config key {key}: {e}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        other => Err(CliError::Usage(format!("config key {key}: expected \"p/q\" string or integer, got {other}"))),
    }
}

pub fn parse_config(text: &str) -> Result<RawParams, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
    let obj = doc.as_object().ok_or_else(|| CliError::Usage("config must be a JSON object".into()))?;
    let mut raw = RawParams::default();
    for (key, value) in obj {
        match key.as_str() {
            "N" => {
                let n = value
                    .as_u64()
                    .ok_or_else(|| CliError::Usage(format!("config key N: expected a non-negative integer, got {value}")))?;
                raw.max_degree = Some(n as usize);
            }
            "a" => raw.a = Some(rational_value(key, value)?),
            "c" => raw.c = Some(rational_value(key, value)?),
            "alpha" => raw.alpha = Some(rational_value(key, value)?),
            other => return Err(CliError::Usage(format!("unknown config key {other:?}"))),
        }
    }
    Ok(raw)
}

pub fn load_config(path: &Path) -> Result<RawParams, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// A coefficient table supplied from outside, `{"b": [...], "u": [...]}` with
/// `u` holding `u_1..u_N`.
pub fn load_table(path: &Path) -> Result<para_racah::RecurrenceTable, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("table: {e}")))?;
    let column = |key: &str| -> Result<Vec<Rational>, CliError> {
        doc.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Usage(format!("table: missing array {key:?}")))?
            .iter()
            .map(|v| rational_value(key, v))
            .collect()
    };
    para_racah::RecurrenceTable::from_parts(column("b")?, column("u")?).map_err(|e| CliError::Usage(e.to_string()))
}
