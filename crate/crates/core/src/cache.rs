//! Binary cache of converged rank vectors.
//!
//! Layout, little-endian:
//!
//! ```text
//! "GMRK" | version: u16 | tag: u8 | alpha: f64 | n: u64 | n × f64
//! ```
//!
//! Files are named by a SHA-256 key over the edge-list bytes, the load
//! options, the damping factor, the tolerance and the vector kind.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::LoadOptions;
use crate::output::write_atomic;
use crate::rank::{GoogleParams, RankVector, VectorKind};

pub const MAGIC: &[u8; 4] = b"GMRK";
pub const VERSION: u16 = 1;
const HEADER_LEN: usize = 4 + 2 + 1 + 8 + 8;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("bad magic bytes {0:?}")]
    BadMagic([u8; 4]),
    #[error("unsupported cache version {0}")]
    Version(u16),
    #[error("unknown vector tag {0}")]
    Tag(u8),
    #[error("cache entry truncated")]
    Truncated,
    #[error("cache entry holds {found}, expected {expected}")]
    Mismatch { expected: String, found: String },
    #[error(transparent)]
    Io(io::Error),
}

impl From<io::Error> for CacheError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::UnexpectedEof {
            CacheError::Truncated
        } else {
            CacheError::Io(e)
        }
    }
}

pub fn write_vector<W: Write>(mut out: W, v: &RankVector, alpha: f64) -> io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&[v.kind.tag()])?;
    out.write_all(&alpha.to_le_bytes())?;
    out.write_all(&(v.probabilities.len() as u64).to_le_bytes())?;
    for p in &v.probabilities {
        out.write_all(&p.to_le_bytes())?;
    }
    out.flush()
}

/// A decoded cache entry. Iteration count and residual are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct CachedVector {
    pub alpha: f64,
    pub vector: RankVector,
}

pub fn read_vector<R: Read>(mut input: R) -> Result<CachedVector, CacheError> {
    let mut header = [0u8; HEADER_LEN];
    input.read_exact(&mut header)?;
    let magic: [u8; 4] = header[0..4].try_into().unwrap();
    if &magic != MAGIC {
        return Err(CacheError::BadMagic(magic));
    }
    let version = u16::from_le_bytes(header[4..6].try_into().unwrap());
    if version != VERSION {
        return Err(CacheError::Version(version));
    }
    let kind = VectorKind::from_tag(header[6]).ok_or(CacheError::Tag(header[6]))?;
    let alpha = f64::from_le_bytes(header[7..15].try_into().unwrap());
    let n = u64::from_le_bytes(header[15..23].try_into().unwrap()) as usize;

    let mut probabilities = Vec::with_capacity(n.min(1 << 24));
    let mut buf = [0u8; 8];
    for _ in 0..n {
        input.read_exact(&mut buf)?;
        probabilities.push(f64::from_le_bytes(buf));
    }
    if input.read(&mut buf)? != 0 {
        return Err(CacheError::Mismatch {
            expected: format!("{n} entries"),
            found: "trailing bytes".into(),
        });
    }
    Ok(CachedVector {
        alpha,
        vector: RankVector {
            probabilities,
            kind,
            iterations: 0,
            residual: 0.0,
        },
    })
}

/// Hex SHA-256 identifying one rank computation.
pub fn cache_key(
    edge_list: &[u8],
    options: &LoadOptions,
    params: &GoogleParams,
    kind: VectorKind,
) -> String {
    let mut h = Sha256::new();
    h.update(edge_list);
    h.update([0u8]);
    h.update([options.drop_self_loops as u8, options.label_mode as u8]);
    h.update(params.alpha().to_le_bytes());
    h.update(params.tol().to_le_bytes());
    h.update([kind.tag()]);
    hex::encode(h.finalize())
}

/// Directory of cache entries.
#[derive(Debug, Clone)]
pub struct RankCache {
    dir: PathBuf,
}

impl RankCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        RankCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.gmrk"))
    }

    /// Returns the cached vector, `Ok(None)` when absent, or the decode
    /// error for a corrupt or mismatching entry.
    pub fn load(
        &self,
        key: &str,
        kind: VectorKind,
        alpha: f64,
        node_count: usize,
    ) -> Result<Option<RankVector>, CacheError> {
        let path = self.path_for(key);
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CacheError::Io(e)),
        };
        let entry = read_vector(BufReader::new(file))?;
        if entry.vector.kind != kind {
            return Err(CacheError::Mismatch {
                expected: format!("{kind:?}"),
                found: format!("{:?}", entry.vector.kind),
            });
        }
        if entry.alpha.to_bits() != alpha.to_bits() {
            return Err(CacheError::Mismatch {
                expected: format!("alpha {alpha}"),
                found: format!("alpha {}", entry.alpha),
            });
        }
        if entry.vector.len() != node_count {
            return Err(CacheError::Mismatch {
                expected: format!("{node_count} nodes"),
                found: format!("{} nodes", entry.vector.len()),
            });
        }
        Ok(Some(entry.vector))
    }

    pub fn store(&self, key: &str, v: &RankVector, alpha: f64) -> io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        write_atomic(&self.path_for(key), |w| write_vector(BufWriter::new(w), v, alpha))
    }
}
