//! The run report emitted by every subcommand. Field order is fixed; params
//! and caps are sorted maps, so identical invocations serialize to identical
//! bytes.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Display;

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub results: serde_json::Value,
    pub complete: bool,
    pub caps: BTreeMap<String, String>,
    pub version: String,
}

impl RunReport {
    pub fn new(version: String) -> Self {
        RunReport {
            command: String::new(),
            params: BTreeMap::new(),
            results: serde_json::Value::Null,
            complete: true,
            caps: BTreeMap::new(),
            version,
        }
    }

    pub fn command(&mut self, name: &str) {
        self.command = name.to_string();
    }

    pub fn param<T: Display>(&mut self, key: &str, value: &T) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn cap<T: Display>(&mut self, key: &str, value: &T) {
        self.caps.insert(key.to_string(), value.to_string());
    }

    /// Stable identity of this invocation for the cache.
    pub fn cache_key_material(&self) -> String {
        let mut s = format!("command={}\n", self.command);
        for (k, v) in &self.params {
            s.push_str(&format!("{k}={v}\n"));
        }
        for (k, v) in &self.caps {
            s.push_str(&format!("cap:{k}={v}\n"));
        }
        s.push_str(&format!("version={}\n", self.version));
        s
    }
}
