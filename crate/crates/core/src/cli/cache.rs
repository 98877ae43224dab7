use std::io::Write;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::Module;
use crate::engine::{CellRecord, CellStore, Convention};
use crate::error::Result;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Content-addressed on-disk store of computed cells.
#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
    fingerprint: String,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: String,
    key: String,
    spec: String,
    module: Module,
    record: CellRecord,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(DiskCache {
            dir,
            fingerprint: Convention::default().fingerprint(),
        })
    }

    pub fn key(&self, spec: &str, module: Module, degree: usize, grade: i64) -> String {
        let mut h = Sha256::new();
        for part in [VERSION, spec, &module.to_string(), &self.fingerprint] {
            h.update(part.as_bytes());
            h.update([0]);
        }
        h.update(format!("{degree}:{grade}").as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }
}

impl CellStore for DiskCache {
    fn load(&self, spec: &str, module: Module, degree: usize, grade: i64) -> Option<CellRecord> {
        let key = self.key(spec, module, degree, grade);
        let text = std::fs::read_to_string(self.path(&key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        let fits = entry.version == VERSION
            && entry.key == key
            && entry.spec == spec
            && entry.module == module
            && entry.record.degree == degree
            && entry.record.grade == grade;
        fits.then_some(entry.record)
    }

    fn store(&self, spec: &str, module: Module, record: &CellRecord) -> Result<()> {
        let key = self.key(spec, module, record.degree, record.grade);
        let entry = CacheEntry {
            version: VERSION.into(),
            key: key.clone(),
            spec: spec.into(),
            module,
            record: record.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.persist(self.path(&key)).map_err(|e| e.error)?;
        Ok(())
    }
}
