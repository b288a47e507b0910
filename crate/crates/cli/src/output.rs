//! In-memory artifacts, written once at the end of a run.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

/// Outcome of one built-in check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub experiment: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Files produced by a run, keyed by path relative to the output directory.
#[derive(Debug, Default)]
pub struct Artifacts {
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Artifacts {
    pub fn add(&mut self, rel: impl Into<PathBuf>, contents: impl Into<Vec<u8>>) {
        self.files.push((rel.into(), contents.into()));
    }

    pub fn paths(&self) -> Vec<String> {
        self.files.iter().map(|(p, _)| p.display().to_string()).collect()
    }

    pub fn get(&self, rel: &str) -> Option<&[u8]> {
        self.files.iter().find(|(p, _)| p == Path::new(rel)).map(|(_, c)| c.as_slice())
    }

    /// Writes every file through a temporary sibling and a rename.
    pub fn write_all(&self, dir: &Path) -> Result<(), CliError> {
        for (rel, contents) in &self.files {
            write_atomic(&dir.join(rel), contents)?;
        }
        Ok(())
    }
}

pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let parent = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(parent)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = parent.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a, C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    /// Seconds since the Unix epoch; the only field that varies between reruns.
    pub timestamp: u64,
    pub config: &'a C,
    pub checks: &'a [Check],
    pub files: Vec<String>,
}

pub fn unix_timestamp() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let mut a = Artifacts::default();
        a.add("x/t.csv", "a\n");
        a.write_all(dir.path()).unwrap();
        let mut b = Artifacts::default();
        b.add("x/t.csv", "b\n");
        b.write_all(dir.path()).unwrap();
        assert_eq!(fs::read_to_string(dir.path().join("x/t.csv")).unwrap(), "b\n");
        assert_eq!(fs::read_dir(dir.path().join("x")).unwrap().count(), 1);
    }
}
