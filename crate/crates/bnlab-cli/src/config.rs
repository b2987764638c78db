//! Optional flat key=value configuration (`bnlab.toml` in the working
//! directory). Flags always override configured values.

use std::path::Path;

#[derive(Debug, Default, Clone, Copy)]
pub struct Config {
    pub nef_cap: Option<i64>,
    pub lift_degree_cap: Option<i64>,
    pub jobs: Option<usize>,
}

pub fn load() -> Config {
    read(Path::new("bnlab.toml"))
}

fn read(path: &Path) -> Config {
    let mut cfg = Config::default();
    let Ok(text) = std::fs::read_to_string(path) else {
        return cfg;
    };
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            continue;
        };
        let value = value.trim().trim_matches('"');
        match key.trim() {
            "nef_cap" => cfg.nef_cap = value.parse().ok(),
            "lift_degree_cap" => cfg.lift_degree_cap = value.parse().ok(),
            "jobs" => cfg.jobs = value.parse().ok(),
            _ => {}
        }
    }
    cfg
}
