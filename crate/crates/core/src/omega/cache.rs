//! On-disk JSON cache of Ω tables keyed by (endpoint, φ, length, digits).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{build_table_with, Endpoint, OmegaTable};
use crate::error::{Error, Result};
use crate::numerics::{fmt_float, roundtrip_digits, Angle, BigComplex, PrecisionConfig};
use crate::par::Parallelism;
use crate::words::Word;

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "LAWSON_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub endpoint: String,
    pub phi: String,
    pub digits: u32,
    pub guard_digits: u32,
    pub max_length: usize,
    pub version: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValueJson {
    pub re: String,
    pub im: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    header: CacheHeader,
    values: BTreeMap<String, ValueJson>,
}

/// Directory resolution: explicit flag, then the environment, then the
/// user cache directory.
pub fn cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Ok(p) = std::env::var(CACHE_DIR_ENV) {
        if !p.is_empty() {
            return PathBuf::from(p);
        }
    }
    if let Ok(p) = std::env::var("XDG_CACHE_HOME") {
        if !p.is_empty() {
            return PathBuf::from(p).join("lawson");
        }
    }
    if let Ok(h) = std::env::var("HOME") {
        return PathBuf::from(h).join(".cache").join("lawson");
    }
    PathBuf::from(".lawson-cache")
}

fn header(endpoint: Endpoint, phi: &Angle, max_length: usize, cfg: &PrecisionConfig) -> CacheHeader {
    CacheHeader {
        endpoint: endpoint.to_string(),
        phi: phi.to_string(),
        digits: cfg.target_digits,
        guard_digits: cfg.guard_digits,
        max_length,
        version: CACHE_VERSION,
    }
}

pub fn file_name(endpoint: Endpoint, phi: &Angle, max_length: usize, cfg: &PrecisionConfig) -> String {
    let phi: String = phi
        .to_string()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    format!(
        "omega_z{}_phi{}_L{}_D{}g{}.json",
        endpoint, phi, max_length, cfg.target_digits, cfg.guard_digits
    )
}

pub fn load(dir: &Path, endpoint: Endpoint, phi: &Angle, max_length: usize, cfg: &PrecisionConfig) -> Result<Option<OmegaTable>> {
    let path = dir.join(file_name(endpoint, phi, max_length, cfg));
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path)?;
    let file: CacheFile = serde_json::from_str(&text)?;
    if file.header != header(endpoint, phi, max_length, cfg) {
        return Err(Error::Cache(format!("header mismatch in {}", path.display())));
    }
    let bits = cfg.bits();
    let n = crate::words::layer_offset(max_length + 1);
    let mut values = vec![BigComplex::zero(bits); n];
    let mut seen = vec![false; n];
    for (k, v) in &file.values {
        let w: Word = k.parse()?;
        if w.len() > max_length {
            return Err(Error::Cache(format!("word {} too long in {}", k, path.display())));
        }
        values[w.index()] = BigComplex::parse(bits, &v.re, &v.im)?;
        seen[w.index()] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Cache(format!("missing words in {}", path.display())));
    }
    Ok(Some(OmegaTable::from_values(
        phi.clone(),
        *cfg,
        BigComplex::zero(bits),
        endpoint.value(bits),
        values,
    )))
}

/// Write the table atomically (temporary file in the same directory, then rename).
pub fn store(dir: &Path, table: &OmegaTable) -> Result<PathBuf> {
    let endpoint = table
        .endpoint()
        .ok_or_else(|| Error::Cache("only tables from 0 to 1 or i are cached".into()))?;
    fs::create_dir_all(dir)?;
    let digits = roundtrip_digits(table.bits());
    let values = table
        .iter()
        .map(|(w, v)| (w.to_string(), ValueJson { re: fmt_float(&v.re, digits), im: fmt_float(&v.im, digits) }))
        .collect();
    let file = CacheFile { header: header(endpoint, &table.phi, table.max_length, &table.cfg), values };
    let path = dir.join(file_name(endpoint, &table.phi, table.max_length, &table.cfg));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(serde_json::to_string(&file)?.as_bytes())?;
    tmp.flush()?;
    tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
    Ok(path)
}

/// Returns the table and whether it came from disk.
pub fn load_or_build(
    dir: Option<&Path>,
    endpoint: Endpoint,
    phi: &Angle,
    max_length: usize,
    cfg: &PrecisionConfig,
    mode: Parallelism,
) -> Result<(OmegaTable, bool)> {
    if let Some(d) = dir {
        if let Some(t) = load(d, endpoint, phi, max_length, cfg)? {
            return Ok((t, true));
        }
    }
    let t = build_table_with(endpoint, phi, max_length, cfg, mode)?;
    if let Some(d) = dir {
        store(d, &t)?;
    }
    Ok((t, false))
}

#[derive(Debug, Clone)]
pub struct CacheEntry {
    pub path: PathBuf,
    pub header: CacheHeader,
    pub bytes: u64,
}

pub fn list(dir: &Path) -> Result<Vec<CacheEntry>> {
    let mut out = Vec::new();
    if !dir.exists() {
        return Ok(out);
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if !is_cache_file(&path) {
            continue;
        }
        let text = fs::read_to_string(&path)?;
        if let Ok(file) = serde_json::from_str::<CacheFile>(&text) {
            let bytes = fs::metadata(&path)?.len();
            out.push(CacheEntry { path, header: file.header, bytes });
        }
    }
    out.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(out)
}

/// Remove every cache file in `dir`; returns how many were deleted.
pub fn clear(dir: &Path) -> Result<usize> {
    let mut n = 0;
    if !dir.exists() {
        return Ok(0);
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if is_cache_file(&path) {
            fs::remove_file(&path)?;
            n += 1;
        }
    }
    Ok(n)
}

fn is_cache_file(p: &Path) -> bool {
    p.file_name()
        .and_then(|n| n.to_str())
        .map_or(false, |n| n.starts_with("omega_") && n.ends_with(".json"))
}
