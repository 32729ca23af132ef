//! Directory layout: one `<id>.case` JSON file per scenario, an
//! `index.json` listing them, and a `.lock` file held while writing.
//! Files are replaced atomically via a temporary file in the same directory.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{CaseBase, CaseBaseError, Scenario};
use crate::id::Id;

const INDEX: &str = "index.json";
const LOCK: &str = ".lock";

#[derive(Debug, Serialize, Deserialize)]
struct Index {
    scenarios: Vec<IndexEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct IndexEntry {
    id: Id,
    file: String,
}

fn storage_err(path: &Path, e: impl ToString) -> CaseBaseError {
    CaseBaseError::Storage {
        path: path.to_path_buf(),
        reason: e.to_string(),
    }
}

fn case_file(id: &Id) -> String {
    format!("{id}.case")
}

/// Removes the lock file when dropped.
struct Lock(PathBuf);

impl Lock {
    fn acquire(dir: &Path) -> Result<Lock, CaseBaseError> {
        let path = dir.join(LOCK);
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(Lock(path)),
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                Err(storage_err(&path, "case base is locked by another writer"))
            }
            Err(e) => Err(storage_err(&path, e)),
        }
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<(), CaseBaseError> {
    let path = dir.join(name);
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| storage_err(dir, e))?;
    tmp.write_all(bytes).map_err(|e| storage_err(&path, e))?;
    tmp.as_file().sync_all().map_err(|e| storage_err(&path, e))?;
    tmp.persist(&path).map_err(|e| storage_err(&path, e.error))?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("case base values always serialize");
    bytes.push(b'\n');
    bytes
}

fn write_index<'a>(dir: &Path, ids: impl Iterator<Item = &'a Id>) -> Result<(), CaseBaseError> {
    let mut ids: Vec<&Id> = ids.collect();
    ids.sort();
    ids.dedup();
    let index = Index {
        scenarios: ids
            .into_iter()
            .map(|id| IndexEntry {
                id: id.clone(),
                file: case_file(id),
            })
            .collect(),
    };
    write_atomic(dir, INDEX, &to_json(&index))
}

pub(super) fn write_scenario<'a>(
    dir: &Path,
    s: &'a Scenario,
    existing: impl Iterator<Item = &'a Id>,
) -> Result<(), CaseBaseError> {
    fs::create_dir_all(dir).map_err(|e| storage_err(dir, e))?;
    let _lock = Lock::acquire(dir)?;
    write_atomic(dir, &case_file(&s.id), &to_json(s))?;
    write_index(dir, existing.chain(std::iter::once(&s.id)))
}

/// Writes every scenario and the index into `dir`, creating it if needed,
/// and binds the case base to it.
pub fn save(cb: &mut CaseBase, dir: &Path) -> Result<(), CaseBaseError> {
    fs::create_dir_all(dir).map_err(|e| storage_err(dir, e))?;
    let _lock = Lock::acquire(dir)?;
    for s in cb.scenarios.values() {
        write_atomic(dir, &case_file(&s.id), &to_json(s))?;
    }
    write_index(dir, cb.scenarios.keys())?;
    cb.location = Some(dir.to_path_buf());
    Ok(())
}

/// Reads a case base from `dir`. A missing directory or index yields an
/// empty case base bound to `dir`.
pub fn load(dir: &Path) -> Result<CaseBase, CaseBaseError> {
    let mut cb = CaseBase {
        location: Some(dir.to_path_buf()),
        ..CaseBase::default()
    };
    let index_path = dir.join(INDEX);
    let text = match fs::read_to_string(&index_path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cb),
        Err(e) => return Err(storage_err(&index_path, e)),
    };
    let index: Index = serde_json::from_str(&text).map_err(|e| storage_err(&index_path, e))?;
    for entry in index.scenarios {
        let path = dir.join(&entry.file);
        let text = fs::read_to_string(&path).map_err(|e| storage_err(&path, e))?;
        let s: Scenario = serde_json::from_str(&text).map_err(|e| storage_err(&path, e))?;
        if s.id != entry.id {
            return Err(storage_err(&path, format!("file holds scenario {}, index says {}", s.id, entry.id)));
        }
        cb.scenarios.insert(s.id.clone(), s);
    }
    Ok(cb)
}
