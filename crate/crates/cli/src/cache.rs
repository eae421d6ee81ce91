use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use octavian::shortvec_io;

/// Where a cached vector list lives.
pub fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.octav"))
}

/// Loads a vector list, or `None` (with a warning) when the file is missing
/// a valid header, truncated, or rejected by `accept`.
pub fn load(dir: &Path, key: &str, accept: impl Fn(&[Vec<i64>]) -> bool) -> Option<Vec<Vec<i64>>> {
    let p = path(dir, key);
    let file = File::open(&p).ok()?;
    match shortvec_io::read_vectors(BufReader::new(file)) {
        Ok(v) if accept(&v) => Some(v),
        Ok(_) => {
            eprintln!(
                "warning: cache {} does not hold the expected vectors; recomputing",
                p.display()
            );
            None
        }
        Err(e) => {
            eprintln!("warning: ignoring cache {}: {e}; recomputing", p.display());
            None
        }
    }
}

/// Writes through a temporary file so readers never see a partial file.
pub fn store(dir: &Path, key: &str, vectors: &[Vec<i64>]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
    let p = path(dir, key);
    let tmp = p.with_extension(format!("tmp{}", std::process::id()));
    {
        let f = File::create(&tmp).with_context(|| format!("writing {}", tmp.display()))?;
        shortvec_io::write_vectors(BufWriter::new(f), vectors)?;
    }
    fs::rename(&tmp, &p).with_context(|| format!("moving cache into place at {}", p.display()))?;
    Ok(())
}
