//! On-disk memo for series-route height tables, keyed by `(n_max, h_max)`.

use std::fs;
use std::path::{Path, PathBuf};

use super::{
    height_tables_by_series, height_tables_csv, parse_height_tables_csv, CountingError,
    HeightCountTable,
};

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "MULTIEDGE_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: Some(dir.into()),
        }
    }

    /// No persistence; every request recomputes.
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => Self::new(d),
            _ => Self::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, n_max: usize, h_max: usize) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("height-series-{n_max}-{h_max}.csv")))
    }

    pub fn height_tables(
        &self,
        n_max: usize,
        h_max: usize,
    ) -> Result<Vec<HeightCountTable>, CountingError> {
        let Some(path) = self.path(n_max, h_max) else {
            return Ok(height_tables_by_series(n_max, h_max));
        };
        if path.exists() {
            return parse_height_tables_csv(&fs::read_to_string(&path)?);
        }
        let tables = height_tables_by_series(n_max, h_max);
        fs::create_dir_all(path.parent().expect("cache file has a parent"))?;
        let tmp = path.with_extension("csv.tmp");
        fs::write(&tmp, height_tables_csv(&tables))?;
        fs::rename(&tmp, &path)?;
        Ok(tables)
    }
}
