//! Registry of externally established 0-statements, keyed by graph pairs.

use serde::{Deserialize, Serialize};

use super::recognize::canonical_key;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSpec};

const DEFAULT_REGISTRY: &str = include_str!("../../data/registry.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    /// Key pattern for the first graph: a canonical key or `family:*`.
    pub red: String,
    pub blue: String,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionRegistry {
    entries: Vec<RegistryEntry>,
}

impl Default for AssumptionRegistry {
    fn default() -> Self {
        Self::from_json(DEFAULT_REGISTRY).expect("bundled registry parses")
    }
}

impl AssumptionRegistry {
    pub fn empty() -> Self {
        AssumptionRegistry { entries: Vec::new() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<RegistryEntry> =
            serde_json::from_str(text).map_err(|e| Error::Registry(format!("malformed registry JSON: {e}")))?;
        let entries = raw
            .into_iter()
            .map(|e| {
                Ok(RegistryEntry {
                    red: normalize(&e.red)?,
                    blue: normalize(&e.blue)?,
                    citation: e.citation,
                })
            })
            .collect::<Result<_>>()?;
        Ok(AssumptionRegistry { entries })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Registry(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    /// First entry matching the pair `(red, blue)`.
    pub fn lookup(&self, red: &Graph, blue: &Graph) -> Option<&RegistryEntry> {
        let (r, b) = (canonical_key(red), canonical_key(blue));
        self.entries
            .iter()
            .find(|e| matches(&e.red, &r) && matches(&e.blue, &b))
    }
}

fn normalize(pattern: &str) -> Result<String> {
    if let Some(family) = pattern.strip_suffix(":*") {
        return match family {
            "complete" | "cmm" | "g6" => Ok(pattern.to_string()),
            _ => Err(Error::Registry(format!("unknown wildcard family in {pattern:?}"))),
        };
    }
    let spec: GraphSpec = pattern
        .parse()
        .map_err(|e| Error::Registry(format!("bad graph spec {pattern:?}: {e}")))?;
    let g = spec
        .build()
        .map_err(|e| Error::Registry(format!("bad graph spec {pattern:?}: {e}")))?;
    Ok(canonical_key(&g))
}

fn matches(pattern: &str, key: &str) -> bool {
    match pattern.strip_suffix('*') {
        Some(prefix) => key.starts_with(prefix),
        None => pattern == key,
    }
}
