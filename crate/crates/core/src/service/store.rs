use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::document::{parse_problem, serialize_problem, ProblemDocument};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("problem {0:?} not found")]
    NotFound(String),
    #[error("revision conflict: expected {expected}, current is {current}")]
    Conflict { expected: u64, current: u64 },
    #[error("persisting problem {id:?} failed: {source}")]
    Io { id: String, source: io::Error },
}

/// A stored document and its revision, shared immutably with readers.
#[derive(Debug, Clone)]
pub struct StoredProblem {
    pub document: Arc<ProblemDocument>,
    pub revision: u64,
}

/// In-memory problems keyed by server-generated id, optionally mirrored to
/// `<id>.json` files in a directory.
///
/// A single lock guards the map: reads take a snapshot `Arc`, writes replace
/// the entry whole, so a reader never sees a partially updated document.
#[derive(Debug, Default)]
pub struct ProblemStore {
    problems: RwLock<HashMap<String, StoredProblem>>,
    dir: Option<PathBuf>,
}

impl ProblemStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (creating if needed) a data directory and loads every `*.json`
    /// problem in it. Files that fail to parse are skipped and reported.
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<(Self, Vec<String>)> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        // fail at startup, not on the first write
        let probe = dir.join(".ndmm-write-probe");
        fs::write(&probe, b"")?;
        fs::remove_file(&probe)?;

        let mut problems = HashMap::new();
        let mut skipped = Vec::new();
        let mut paths: Vec<PathBuf> = fs::read_dir(&dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let Some(id) = path.file_stem().and_then(|s| s.to_str()).map(str::to_owned) else {
                continue;
            };
            match fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|text| parse_problem(&text).map_err(|e| e.to_string()))
            {
                Ok(parsed) => {
                    problems.insert(id, StoredProblem { document: Arc::new(parsed.document), revision: 1 });
                }
                Err(e) => skipped.push(format!("{}: {e}", path.display())),
            }
        }
        Ok((ProblemStore { problems: RwLock::new(problems), dir: Some(dir) }, skipped))
    }

    pub fn data_dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn file_for(&self, id: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{id}.json")))
    }

    fn persist(&self, id: &str, doc: &ProblemDocument) -> Result<(), StoreError> {
        let Some(path) = self.file_for(id) else {
            return Ok(());
        };
        let tmp = path.with_extension("json.tmp");
        let io = |source| StoreError::Io { id: id.to_owned(), source };
        fs::write(&tmp, serialize_problem(doc)).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)
    }

    pub fn create(&self, doc: ProblemDocument) -> Result<(String, u64), StoreError> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let mut map = self.problems.write().expect("store lock poisoned");
        self.persist(&id, &doc)?;
        map.insert(id.clone(), StoredProblem { document: Arc::new(doc), revision: 1 });
        Ok((id, 1))
    }

    pub fn get(&self, id: &str) -> Option<StoredProblem> {
        self.problems.read().expect("store lock poisoned").get(id).cloned()
    }

    /// All problems ordered by id.
    pub fn list(&self) -> Vec<(String, StoredProblem)> {
        let map = self.problems.read().expect("store lock poisoned");
        let mut all: Vec<_> = map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        all.sort_by(|a, b| a.0.cmp(&b.0));
        all
    }

    /// Replaces a document. With `expected_revision`, fails unless it matches.
    pub fn update(
        &self,
        id: &str,
        doc: ProblemDocument,
        expected_revision: Option<u64>,
    ) -> Result<u64, StoreError> {
        let mut map = self.problems.write().expect("store lock poisoned");
        let current = map.get(id).ok_or_else(|| StoreError::NotFound(id.to_owned()))?.revision;
        if let Some(expected) = expected_revision {
            if expected != current {
                return Err(StoreError::Conflict { expected, current });
            }
        }
        self.persist(id, &doc)?;
        let revision = current + 1;
        map.insert(id.to_owned(), StoredProblem { document: Arc::new(doc), revision });
        Ok(revision)
    }

    pub fn delete(&self, id: &str) -> Result<(), StoreError> {
        let mut map = self.problems.write().expect("store lock poisoned");
        if !map.contains_key(id) {
            return Err(StoreError::NotFound(id.to_owned()));
        }
        if let Some(path) = self.file_for(id) {
            match fs::remove_file(&path) {
                Ok(()) => {}
                Err(e) if e.kind() == io::ErrorKind::NotFound => {}
                Err(source) => return Err(StoreError::Io { id: id.to_owned(), source }),
            }
        }
        map.remove(id);
        Ok(())
    }
}
