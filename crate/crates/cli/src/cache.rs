//! On-disk spectrum cache, keyed by a fingerprint of the field description
//! plus the canonical function spec. Controlled by WALSH_FORGE_CACHE_DIR;
//! unset means no caching. Stale or corrupt entries are treated as misses
//! (and Parseval is re-verified on every load).

use std::fs;
use std::path::PathBuf;

use crate::formats::{FieldDescription, SpectrumFile};

pub const CACHE_DIR_ENV: &str = "WALSH_FORGE_CACHE_DIR";

fn fnv64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Stable fingerprint of (field description, canonical function spec).
pub fn fingerprint(field: &FieldDescription, canonical_spec: &str) -> u64 {
    let field_json = serde_json::to_string(field).expect("field description serializes");
    let mut data = field_json.into_bytes();
    data.push(0);
    data.extend_from_slice(canonical_spec.as_bytes());
    fnv64(&data)
}

fn cache_path(fp: u64) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_ENV)?;
    if dir.is_empty() {
        return None;
    }
    Some(PathBuf::from(dir).join(format!("{fp:016x}.spectrum.json")))
}

/// A cached spectrum whose stored field and spec match exactly, or None.
pub fn load(field: &FieldDescription, canonical_spec: &str) -> Option<SpectrumFile> {
    let path = cache_path(fingerprint(field, canonical_spec))?;
    let data = fs::read(&path).ok()?;
    let file: SpectrumFile = serde_json::from_slice(&data).ok()?;
    if &file.field == field && file.function == canonical_spec {
        Some(file)
    } else {
        None
    }
}

/// Best-effort store; failures are silent (the cache is an optimization).
pub fn store(file: &SpectrumFile) {
    let Some(path) = cache_path(fingerprint(&file.field, &file.function)) else {
        return;
    };
    if let Some(parent) = path.parent() {
        let _ = fs::create_dir_all(parent);
    }
    if let Ok(json) = serde_json::to_vec(file) {
        let _ = fs::write(path, json);
    }
}
