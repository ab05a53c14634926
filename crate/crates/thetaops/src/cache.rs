//! Disk cache for built Macdonald bases.
//!
//! One JSON file per degree, keyed by degree and format version, holding the
//! Schur expansions plus a sha256 checksum over the entry payload. On load
//! the checksum is recomputed: a match skips revalidation, a mismatch forces
//! the full validation gate before the data is trusted (and a validation
//! failure rejects the file).

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinat::{partitions, Partition};
use crate::error::{Error, Result};
use crate::macdonald::{from_schur_expansions, validate, MacdonaldBasis};
use crate::symfun::SymFunc;

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    partition: Vec<u32>,
    schur: SymFunc,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    degree: u32,
    entries: Vec<Entry>,
    checksum: String,
}

fn path_for(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("macdonald_v{}_deg{}.json", FORMAT_VERSION, n))
}

fn checksum_of(entries: &[Entry]) -> Result<String> {
    let payload = serde_json::to_vec(entries)?;
    let mut hasher = Sha256::new();
    hasher.update(&payload);
    Ok(format!("{:x}", hasher.finalize()))
}

pub fn store_degree(dir: &Path, basis: &MacdonaldBasis) -> Result<()> {
    fs::create_dir_all(dir)?;
    let entries: Vec<Entry> = basis
        .parts
        .iter()
        .zip(&basis.schur)
        .map(|(p, f)| Entry {
            partition: p.parts().to_vec(),
            schur: f.clone(),
        })
        .collect();
    let checksum = checksum_of(&entries)?;
    let file = CacheFile {
        version: FORMAT_VERSION,
        degree: basis.degree,
        entries,
        checksum,
    };
    let tmp = path_for(dir, basis.degree).with_extension("tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(&file)?)?;
    fs::rename(&tmp, path_for(dir, basis.degree))?;
    Ok(())
}

/// Load a cached degree; Ok(None) when no file exists.
pub fn load_degree(dir: &Path, n: u32) -> Result<Option<MacdonaldBasis>> {
    let path = path_for(dir, n);
    if !path.exists() {
        return Ok(None);
    }
    let raw = fs::read(&path)?;
    let file: CacheFile = serde_json::from_slice(&raw)?;
    if file.version != FORMAT_VERSION || file.degree != n {
        return Err(Error::Cache(format!(
            "cache file {} has wrong key (version {}, degree {})",
            path.display(),
            file.version,
            file.degree
        )));
    }
    let basis = assemble(n, &file)?;
    if checksum_of(&file.entries)? != file.checksum {
        // Checksum mismatch: only accept after a full revalidation.
        validate(&basis).map_err(|e| {
            Error::Cache(format!(
                "cache file {} failed checksum and revalidation: {}",
                path.display(),
                e
            ))
        })?;
    }
    Ok(Some(basis))
}

/// Re-run the full validation gate on a cached degree, regardless of
/// checksum. Errors if the file is absent or invalid.
pub fn verify_degree(dir: &Path, n: u32) -> Result<()> {
    let path = path_for(dir, n);
    if !path.exists() {
        return Err(Error::Cache(format!("no cache file for degree {n}")));
    }
    let raw = fs::read(&path)?;
    let file: CacheFile = serde_json::from_slice(&raw)?;
    if checksum_of(&file.entries)? != file.checksum {
        return Err(Error::Cache(format!(
            "checksum mismatch in {}",
            path.display()
        )));
    }
    let basis = assemble(n, &file)?;
    validate(&basis)
}

pub fn purge_degree(dir: &Path, n: u32) -> Result<bool> {
    let path = path_for(dir, n);
    if path.exists() {
        fs::remove_file(&path)?;
        Ok(true)
    } else {
        Ok(false)
    }
}

fn assemble(n: u32, file: &CacheFile) -> Result<MacdonaldBasis> {
    let parts = partitions(n);
    if file.entries.len() != parts.len() {
        return Err(Error::Cache(format!(
            "degree {n} cache has {} entries, expected {}",
            file.entries.len(),
            parts.len()
        )));
    }
    let mut schur = Vec::with_capacity(parts.len());
    for (expected, entry) in parts.iter().zip(&file.entries) {
        let got = Partition::new(entry.partition.clone())?;
        if got != *expected {
            return Err(Error::Cache(format!(
                "degree {n} cache entry order mismatch: expected {:?}, got {:?}",
                expected, got
            )));
        }
        schur.push(entry.schur.clone());
    }
    Ok(from_schur_expansions(n, schur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::MacdonaldCtx;

    #[test]
    fn store_load_verify_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let ctx = MacdonaldCtx::with_cache_dir(dir.path());
        ctx.basis(3).unwrap();
        // a fresh context loads from disk
        let ctx2 = MacdonaldCtx::with_cache_dir(dir.path());
        let b = ctx2.basis(3).unwrap();
        assert_eq!(b.parts.len(), 3);
        verify_degree(dir.path(), 3).unwrap();

        // tampered checksum: verify must fail
        let path = dir.path().join("macdonald_v1_deg3.json");
        let text = std::fs::read_to_string(&path).unwrap();
        let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
        file["checksum"] = serde_json::Value::String("0".repeat(64));
        std::fs::write(&path, serde_json::to_vec(&file).unwrap()).unwrap();
        assert!(verify_degree(dir.path(), 3).is_err());

        // tampered data with a recomputed checksum: validation must catch it
        let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
        file["entries"][0]["schur"]["terms"][0]["coef"]["num"][0][2] =
            serde_json::Value::String("7".into());
        let entries: Vec<Entry> =
            serde_json::from_value(file["entries"].clone()).unwrap();
        file["checksum"] = serde_json::Value::String(checksum_of(&entries).unwrap());
        std::fs::write(&path, serde_json::to_vec(&file).unwrap()).unwrap();
        assert!(verify_degree(dir.path(), 3).is_err());

        assert!(purge_degree(dir.path(), 3).unwrap());
        assert!(!purge_degree(dir.path(), 3).unwrap());
    }
}
