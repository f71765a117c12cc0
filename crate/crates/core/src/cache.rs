//! On-disk resolution cache. Files are keyed by (canonical group hash, p,
//! length, strategy) and carry a versioned binary header:
//! magic "COHORES1", then p, order, strategy, length, the rank vector, and
//! the row-major GF(p) generator-image payloads of each differential.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::group::FiniteGroup;
use crate::resolution::{FreeModuleMap, Resolution, ResolutionError, Strategy};

pub const MAGIC: &[u8; 8] = b"COHORES1";
pub const ENV_VAR: &str = "COHOFORGE_CACHE";
pub const DEFAULT_DIR: &str = ".cohoforge-cache";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache file is malformed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Build(#[from] ResolutionError),
}

/// Resolve the cache directory: explicit override, environment variable,
/// default relative directory.
pub fn cache_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Ok(env) = std::env::var(ENV_VAR) {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    PathBuf::from(DEFAULT_DIR)
}

fn group_hash(group: &FiniteGroup) -> String {
    let mut hasher = Sha256::new();
    hasher.update((group.order() as u64).to_le_bytes());
    for &v in group.mul_table() {
        hasher.update(v.to_le_bytes());
    }
    let digest = hasher.finalize();
    digest[..16].iter().map(|b| format!("{:02x}", b)).collect()
}

pub fn cache_file(dir: &Path, group: &FiniteGroup, p: u32, length: usize, strategy: Strategy) -> PathBuf {
    dir.join(format!(
        "{}-p{}-n{}-{}.cohores",
        group_hash(group),
        p,
        length,
        strategy.name()
    ))
}

fn write_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn read_u32(data: &[u8], pos: &mut usize) -> Result<u32, CacheError> {
    let end = *pos + 4;
    if end > data.len() {
        return Err(CacheError::Malformed("truncated header".into()));
    }
    let v = u32::from_le_bytes(data[*pos..end].try_into().unwrap());
    *pos = end;
    Ok(v)
}

pub fn store(dir: &Path, res: &Resolution) -> Result<PathBuf, CacheError> {
    std::fs::create_dir_all(dir)?;
    let path = cache_file(dir, res.group(), res.p() as u32, res.length(), res.strategy());
    let mut payload = Vec::new();
    payload.extend_from_slice(MAGIC);
    write_u32(&mut payload, res.p() as u32);
    write_u32(&mut payload, res.group().order() as u32);
    write_u32(&mut payload, match res.strategy() {
        Strategy::Minimal => 0,
        Strategy::Greedy => 1,
    });
    write_u32(&mut payload, res.length() as u32);
    for &r in res.ranks() {
        write_u32(&mut payload, r as u32);
    }
    for j in 1..=res.length() {
        for image in res.differential(j).images() {
            payload.extend_from_slice(image);
        }
    }
    // atomic-ish: write to a temp name then rename into place
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(&payload)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, &path)?;
    Ok(path)
}

pub fn load(
    dir: &Path,
    group: &Arc<FiniteGroup>,
    p: u32,
    length: usize,
    strategy: Strategy,
) -> Result<Option<Resolution>, CacheError> {
    let path = cache_file(dir, group, p, length, strategy);
    let mut data = Vec::new();
    match std::fs::File::open(&path) {
        Ok(mut f) => {
            f.read_to_end(&mut data)?;
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    }
    if data.len() < 8 || &data[..8] != MAGIC {
        return Err(CacheError::Malformed("bad magic".into()));
    }
    let mut pos = 8usize;
    let fp = read_u32(&data, &mut pos)?;
    let order = read_u32(&data, &mut pos)? as usize;
    let strat = read_u32(&data, &mut pos)?;
    let len = read_u32(&data, &mut pos)? as usize;
    let want_strategy = match strategy {
        Strategy::Minimal => 0,
        Strategy::Greedy => 1,
    };
    if fp != p || order != group.order() || strat != want_strategy || len != length {
        return Err(CacheError::Malformed("header does not match request".into()));
    }
    let mut ranks = Vec::with_capacity(len + 1);
    for _ in 0..=len {
        ranks.push(read_u32(&data, &mut pos)? as usize);
    }
    if ranks.first() != Some(&1) {
        return Err(CacheError::Malformed("rank 0 must be 1".into()));
    }
    let n = group.order();
    let mut diffs = Vec::with_capacity(len);
    for j in 1..=len {
        let source = ranks[j];
        let target = ranks[j - 1];
        let mut images = Vec::with_capacity(source);
        for _ in 0..source {
            let end = pos + target * n;
            if end > data.len() {
                return Err(CacheError::Malformed("truncated payload".into()));
            }
            let image = data[pos..end].to_vec();
            if image.iter().any(|&v| v >= p as u8) {
                return Err(CacheError::Malformed("entry not reduced mod p".into()));
            }
            images.push(image);
            pos = end;
        }
        diffs.push(FreeModuleMap::new(Arc::clone(group), p as u8, target, images));
    }
    if pos != data.len() {
        return Err(CacheError::Malformed("trailing bytes".into()));
    }
    Ok(Some(Resolution::from_parts(Arc::clone(group), p as u8, strategy, ranks, diffs)))
}

/// Load when present, otherwise build and store. Corrupt or unreadable cache
/// entries are rebuilt rather than trusted, and a failed store does not fail
/// the build.
pub fn build_cached(
    dir: &Path,
    group: &Arc<FiniteGroup>,
    p: u32,
    length: usize,
    strategy: Strategy,
) -> Result<Resolution, CacheError> {
    if let Ok(Some(res)) = load(dir, group, p, length, strategy) {
        return Ok(res);
    }
    let res = Resolution::build(group, p, length, strategy)?;
    let _ = store(dir, &res);
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn roundtrip_preserves_the_resolution() {
        let dir = tempfile::tempdir().unwrap();
        let q8 = catalog::quaternion8();
        let res = Resolution::build(&q8, 2, 4, Strategy::Minimal).unwrap();
        store(dir.path(), &res).unwrap();
        let loaded = load(dir.path(), &q8, 2, 4, Strategy::Minimal).unwrap().unwrap();
        assert_eq!(loaded.ranks(), res.ranks());
        for j in 1..=4 {
            assert_eq!(loaded.differential(j).images(), res.differential(j).images());
        }
        assert!(loaded.verify_exactness().pass);
    }

    #[test]
    fn missing_entry_is_none_and_corrupt_entry_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let c4 = catalog::cyclic(4);
        assert!(load(dir.path(), &c4, 2, 3, Strategy::Minimal).unwrap().is_none());
        let res = Resolution::build(&c4, 2, 3, Strategy::Minimal).unwrap();
        let path = store(dir.path(), &res).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[0] = b'X';
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(
            load(dir.path(), &c4, 2, 3, Strategy::Minimal),
            Err(CacheError::Malformed(_))
        ));
        // build_cached falls back to a rebuild
        let rebuilt = build_cached(dir.path(), &c4, 2, 3, Strategy::Minimal).unwrap();
        assert_eq!(rebuilt.ranks(), res.ranks());
    }

    #[test]
    fn cache_key_separates_strategies_and_primes() {
        let dir = tempfile::tempdir().unwrap();
        let c4 = catalog::cyclic(4);
        let a = cache_file(dir.path(), &c4, 2, 3, Strategy::Minimal);
        let b = cache_file(dir.path(), &c4, 2, 3, Strategy::Greedy);
        let c = cache_file(dir.path(), &c4, 3, 3, Strategy::Minimal);
        assert_ne!(a, b);
        assert_ne!(a, c);
    }
}
