//! On-disk cache of enumerated classes: one JSON-lines file per `n` holding
//! canonical closure tables, and a manifest with counts and content hashes.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::canonical_encoding;
use crate::census::classes;
use crate::enumerate::CanonicalSpace;
use crate::error::{Error, Result};
use crate::monoid::classify_space;
use crate::topology::Topology;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "KFG_CACHE_DIR";
pub const CACHE_VERSION: u32 = 1;
const MANIFEST: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub count: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub entries: BTreeMap<usize, ManifestEntry>,
}

/// `explicit`, else `$KFG_CACHE_DIR`, else `.kfg-cache` in the working directory.
pub fn cache_dir(explicit: Option<&Path>) -> PathBuf {
    match explicit {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".kfg-cache")),
    }
}

fn file_name(n: usize) -> String {
    format!("classes-n{n}.jsonl")
}

fn stale(dir: &Path, reason: impl Into<String>) -> Error {
    Error::StaleCache {
        path: dir.display().to_string(),
        reason: reason.into(),
    }
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let p = dir.join(MANIFEST);
    if !p.exists() {
        return Ok(Manifest {
            version: CACHE_VERSION,
            entries: BTreeMap::new(),
        });
    }
    let m: Manifest = serde_json::from_str(&fs::read_to_string(&p)?)?;
    if m.version != CACHE_VERSION {
        return Err(stale(
            dir,
            format!("manifest version {} (expected {CACHE_VERSION})", m.version),
        ));
    }
    Ok(m)
}

fn write_manifest(dir: &Path, m: &Manifest) -> Result<()> {
    fs::write(dir.join(MANIFEST), serde_json::to_string_pretty(m)? + "\n")?;
    Ok(())
}

fn render(cs: &[CanonicalSpace]) -> Result<String> {
    let mut out = String::new();
    for c in cs {
        out.push_str(&serde_json::to_string(&c.topology())?);
        out.push('\n');
    }
    Ok(out)
}

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Write the classes on `n` points and record them in the manifest.
pub fn store(dir: &Path, n: usize, cs: &[CanonicalSpace]) -> Result<ManifestEntry> {
    fs::create_dir_all(dir)?;
    let body = render(cs)?;
    let mut f = fs::File::create(dir.join(file_name(n)))?;
    f.write_all(body.as_bytes())?;
    let entry = ManifestEntry {
        count: cs.len(),
        sha256: digest(&body),
    };
    let mut m = read_manifest(dir)?;
    m.entries.insert(n, entry.clone());
    write_manifest(dir, &m)?;
    Ok(entry)
}

#[derive(Deserialize)]
struct Line {
    n: usize,
    closure: Vec<u32>,
}

/// Classes on `n` points from the cache, `None` if absent. A file whose hash
/// or count disagrees with the manifest is refused.
pub fn load(dir: &Path, n: usize) -> Result<Option<Vec<CanonicalSpace>>> {
    let m = read_manifest(dir)?;
    let path = dir.join(file_name(n));
    let entry = match m.entries.get(&n) {
        Some(e) => e,
        None if path.exists() => {
            return Err(stale(
                dir,
                format!("{} is not in the manifest", file_name(n)),
            ))
        }
        None => return Ok(None),
    };
    let body = fs::read_to_string(&path)
        .map_err(|e| stale(dir, format!("{} unreadable: {e}", file_name(n))))?;
    if digest(&body) != entry.sha256 {
        return Err(stale(dir, format!("hash mismatch for {}", file_name(n))));
    }
    let mut out = Vec::with_capacity(entry.count);
    for line in body.lines() {
        let l: Line = serde_json::from_str(line)?;
        if l.n != n || l.closure.len() != 1 << n {
            return Err(stale(dir, format!("malformed line in {}", file_name(n))));
        }
        let cl1: Vec<u32> = (0..n).map(|p| l.closure[1 << p]).collect();
        let t = Topology::from_point_closures(n, &cl1)?;
        let encoding = canonical_encoding(&cl1);
        if encoding != cl1 {
            return Err(stale(
                dir,
                format!("non-canonical entry in {}", file_name(n)),
            ));
        }
        out.push(CanonicalSpace {
            n,
            encoding,
            space_type: classify_space(&t)?,
        });
    }
    if out.len() != entry.count {
        return Err(stale(
            dir,
            format!(
                "{} holds {} classes, manifest says {}",
                file_name(n),
                out.len(),
                entry.count
            ),
        ));
    }
    Ok(Some(out))
}

/// Classes on `n` points, read from the cache or enumerated and stored.
pub fn cached_classes(dir: &Path, n: usize) -> Result<(Vec<CanonicalSpace>, ManifestEntry)> {
    if let Some(cs) = load(dir, n)? {
        let entry = read_manifest(dir)?.entries[&n].clone();
        return Ok((cs, entry));
    }
    let cs = classes(n).to_vec();
    let entry = store(dir, n, &cs)?;
    Ok((cs, entry))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_stale_detection() {
        let dir = tempfile::tempdir().unwrap();
        let (first, e) = cached_classes(dir.path(), 4).unwrap();
        assert_eq!((first.len(), e.count), (33, 33));
        let again = load(dir.path(), 4).unwrap().unwrap();
        assert_eq!(again, first);
        assert!(load(dir.path(), 5).unwrap().is_none());
        let p = dir.path().join("classes-n4.jsonl");
        let mut body = fs::read_to_string(&p).unwrap();
        body.push('\n');
        fs::write(&p, body).unwrap();
        assert!(matches!(load(dir.path(), 4), Err(Error::StaleCache { .. })));
    }

    #[test]
    fn unlisted_file_is_stale() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("classes-n2.jsonl"), "").unwrap();
        assert!(matches!(load(dir.path(), 2), Err(Error::StaleCache { .. })));
    }
}
