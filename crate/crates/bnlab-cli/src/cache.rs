//! Content-addressed result cache: one JSON document per file, keyed by the
//! hash of command, parameters, caps, and version.

use crate::report::RunReport;
use crate::Cli;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::PathBuf;

fn cache_dir(cli: &Cli) -> PathBuf {
    if let Some(dir) = &cli.cache_dir {
        return PathBuf::from(dir);
    }
    if let Ok(dir) = std::env::var("BNLAB_CACHE") {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    PathBuf::from(".bnlab-cache")
}

/// Run `compute` through the cache: on a hit, replay the stored results;
/// on a miss, compute and store.
pub fn with_cache(
    cli: &Cli,
    report: &mut RunReport,
    compute: impl FnOnce(&mut RunReport),
) -> Result<(), String> {
    if cli.no_cache {
        compute(report);
        return Ok(());
    }
    let dir = cache_dir(cli);
    let key = hex(&Sha256::digest(report.cache_key_material().as_bytes()));
    let path = dir.join(format!("{key}.json"));
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(cached) = serde_json::from_slice::<serde_json::Value>(&bytes) {
            report.results = cached["results"].clone();
            report.complete = cached["complete"].as_bool().unwrap_or(true);
            return Ok(());
        }
    }
    compute(report);
    fs::create_dir_all(&dir).map_err(|e| format!("cannot create cache dir: {e}"))?;
    let doc = serde_json::to_vec(&report).map_err(|e| e.to_string())?;
    // write via a temporary name so concurrent writers never interleave
    let tmp = dir.join(format!("{key}.json.tmp.{}", std::process::id()));
    fs::write(&tmp, &doc).map_err(|e| format!("cannot write cache file: {e}"))?;
    fs::rename(&tmp, &path).map_err(|e| format!("cannot commit cache file: {e}"))?;
    Ok(())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
