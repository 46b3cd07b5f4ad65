//! Content-addressed on-disk cache of exact q-expansions.
//!
//! Entries are keyed by SHA-256 of the form descriptor and bound, stored in
//! the q-expansion text format, and written atomically (temp file + rename).
//! Entries never expire.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use lehmer_core::forms::{parse_qexp, write_qexp};
use lehmer_core::{FormSpec, QSeries};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "LEHMER_CACHE_DIR";

/// `$LEHMER_CACHE_DIR`, else `$XDG_CACHE_HOME/lehmer`, else
/// `$HOME/.cache/lehmer`.
pub fn default_dir() -> Option<PathBuf> {
    let var = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    var(CACHE_ENV)
        .or_else(|| var("XDG_CACHE_HOME").map(|d| d.join("lehmer")))
        .or_else(|| var("HOME").map(|d| d.join(".cache").join("lehmer")))
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn key(spec: &FormSpec, bound: usize) -> String {
        let mut h = Sha256::new();
        h.update(spec.descriptor().as_bytes());
        h.update(format!("|bound={bound}").as_bytes());
        hex::encode(h.finalize())
    }

    pub fn path_for(&self, spec: &FormSpec, bound: usize) -> PathBuf {
        self.dir.join(format!("{}.qexp", Self::key(spec, bound)))
    }

    /// Cached series, if present and readable.
    pub fn get(&self, spec: &FormSpec, bound: usize) -> Option<QSeries> {
        let path = self.path_for(spec, bound);
        let text = std::fs::read_to_string(&path).ok()?;
        match parse_qexp(&text, &path) {
            Ok((_, series)) if series.trunc_bound() == bound => Some(series),
            _ => None,
        }
    }

    pub fn put(&self, spec: &FormSpec, bound: usize, series: &QSeries) -> Result<()> {
        std::fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating cache directory {}", self.dir.display()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(write_qexp(spec, series).as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path_for(spec, bound))
            .map_err(|e| e.error)
            .context("renaming cache entry into place")?;
        Ok(())
    }

    /// Looks up `(spec, bound)`, computing and storing it on a miss. A failed
    /// store is reported on stderr and otherwise ignored.
    pub fn get_or_compute(
        &self,
        spec: &FormSpec,
        bound: usize,
        compute: impl FnOnce() -> Result<QSeries>,
    ) -> Result<QSeries> {
        if let Some(s) = self.get(spec, bound) {
            return Ok(s);
        }
        let series = compute()?;
        if let Err(e) = self.put(spec, bound, &series) {
            eprintln!("warning: could not write cache entry: {e:#}");
        }
        Ok(series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lehmer_core::forms::delta_eta;

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let spec = FormSpec::delta();
        let d = delta_eta(50).unwrap();
        assert!(cache.get(&spec, 50).is_none());
        cache.put(&spec, 50, &d).unwrap();
        assert_eq!(cache.get(&spec, 50).unwrap(), d);
        assert!(cache.get(&spec, 49).is_none());
        let text = std::fs::read_to_string(cache.path_for(&spec, 50)).unwrap();
        assert_eq!(text, write_qexp(&spec, &d));
    }

    #[test]
    fn keys_depend_on_form_and_bound() {
        let spec = FormSpec::delta();
        assert_ne!(Cache::key(&spec, 10), Cache::key(&spec, 11));
        let (e11, _) = lehmer_core::forms::eta_quotient(11, 2).unwrap();
        assert_ne!(Cache::key(&spec, 10), Cache::key(&e11, 10));
        assert_eq!(Cache::key(&spec, 10).len(), 64);
    }

    #[test]
    fn compute_only_on_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested"));
        let spec = FormSpec::delta();
        let mut calls = 0;
        for _ in 0..3 {
            let s = cache
                .get_or_compute(&spec, 20, || {
                    calls += 1;
                    Ok(delta_eta(20)?)
                })
                .unwrap();
            assert_eq!(s, delta_eta(20).unwrap());
        }
        assert_eq!(calls, 1);
    }
}
