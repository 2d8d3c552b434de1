//! TOML scenario files: strict parsing over per-scenario defaults.
//!
//! A file names its scenario and overrides any subset of the defaults, using
//! the same section and key names as [`ScenarioConfig`]:
//!
//! ```toml
//! scenario = "protective"
//!
//! [coupling]
//! x0 = 0.5
//! epsilon = 0.1
//! ```
//!
//! Unknown keys, missing required keys and out-of-range values are rejected
//! with the dotted key path in the message.

use std::path::Path;

use bohmlab_core::{ScenarioConfig, ScenarioKind};
use sha2::{Digest, Sha256};
use toml::{Table, Value};

use crate::error::CliError;

pub fn parse_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<ScenarioConfig, CliError> {
    let user: Table = text.parse().map_err(|e: toml::de::Error| CliError::Syntax(e.to_string()))?;
    let kind = match user.get("scenario") {
        None => return Err(CliError::MissingKey("scenario".into())),
        Some(v) => v.clone().try_into::<ScenarioKind>().map_err(|_| CliError::InvalidValue {
            key: "scenario".into(),
            message: format!(
                "expected one of {}, got {v}",
                ScenarioKind::ALL.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(", ")
            ),
        })?,
    };
    for key in kind.required_keys() {
        if lookup(&user, key).is_none() {
            return Err(CliError::MissingKey(key.to_string()));
        }
    }
    let mut merged = Table::try_from(ScenarioConfig::defaults_for(kind)).expect("defaults serialize");
    merge(&mut merged, &user, "")?;
    let cfg: ScenarioConfig = serde_path_to_error::deserialize(Value::Table(merged))
        .map_err(|e| CliError::InvalidValue { key: e.path().to_string(), message: e.inner().to_string() })?;
    cfg.validate()?;
    Ok(cfg)
}

/// Complete TOML rendering of `cfg`; `parse_config_str` reads it back unchanged.
pub fn write_config(cfg: &ScenarioConfig) -> String {
    toml::to_string(cfg).expect("configurations always serialize")
}

/// Hex SHA-256 of the canonical rendering.
pub fn config_hash(cfg: &ScenarioConfig) -> String {
    hex(&Sha256::digest(write_config(cfg).as_bytes()))
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn lookup<'a>(table: &'a Table, dotted: &str) -> Option<&'a Value> {
    let mut parts = dotted.split('.');
    let mut cur = table.get(parts.next()?)?;
    for p in parts {
        cur = cur.as_table()?.get(p)?;
    }
    Some(cur)
}

fn merge(base: &mut Table, user: &Table, prefix: &str) -> Result<(), CliError> {
    for (key, value) in user {
        let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
        let Some(slot) = base.get_mut(key) else {
            return Err(CliError::UnknownKey(path));
        };
        match (slot, value) {
            (Value::Table(inner), Value::Table(given)) => merge(inner, given, &path)?,
            (Value::Table(_), _) => {
                return Err(CliError::InvalidValue { key: path, message: "expected a table".into() });
            }
            // integers are accepted wherever a float is expected
            (slot @ Value::Float(_), Value::Integer(i)) => *slot = Value::Float(*i as f64),
            (slot @ Value::Array(_), Value::Array(items)) => {
                *slot = Value::Array(
                    items.iter().map(|v| if let Value::Integer(i) = v { Value::Float(*i as f64) } else { v.clone() }).collect(),
                );
            }
            (slot, v) => *slot = v.clone(),
        }
    }
    Ok(())
}
