use crate::link_model::LinkDescription;
use serde::{Deserialize, Serialize};
use std::fmt;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: u32,
    link: LinkDescription,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JsonError {
    SchemaVersion { found: Option<u32> },
    Structure(String),
}

impl fmt::Display for JsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JsonError::SchemaVersion { found: Some(v) } => {
                write!(f, "unsupported schema version {v} (expected {SCHEMA_VERSION})")
            }
            JsonError::SchemaVersion { found: None } => {
                write!(f, "missing mandatory \"version\" field")
            }
            JsonError::Structure(m) => write!(f, "malformed document: {m}"),
        }
    }
}

impl std::error::Error for JsonError {}

/// Loss-free serialization with a mandatory schema version.
pub fn to_json(desc: &LinkDescription) -> String {
    serde_json::to_string_pretty(&Envelope {
        version: SCHEMA_VERSION,
        link: desc.clone(),
    })
    .expect("link descriptions always serialize")
}

pub fn from_json(text: &str) -> Result<LinkDescription, JsonError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| JsonError::Structure(e.to_string()))?;
    let version = value.get("version").and_then(|v| v.as_u64());
    match version {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        Some(v) => {
            return Err(JsonError::SchemaVersion {
                found: Some(v as u32),
            })
        }
        None => return Err(JsonError::SchemaVersion { found: None }),
    }
    let env: Envelope =
        serde_json::from_value(value).map_err(|e| JsonError::Structure(e.to_string()))?;
    Ok(env.link)
}
