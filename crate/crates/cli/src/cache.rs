//! On-disk cache of verify records, one file per key holding the exact line.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use gf2dav_core::Poly;
use sha2::{Digest, Sha256};

use crate::report::VerifyRecord;

pub const CACHE_ENV: &str = "DAVENPORT_CACHE";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

pub enum Lookup {
    Hit(VerifyRecord),
    Miss,
    /// The entry exists but does not hold a valid record for this key.
    Corrupt(String),
}

impl Cache {
    /// The explicit directory, else `$DAVENPORT_CACHE`, else no cache.
    pub fn locate(explicit: Option<&Path>) -> Option<Cache> {
        explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .map(|dir| Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(f: &Poly, budget: u64, cyclic_fast_path: bool) -> String {
        let mut h = Sha256::new();
        h.update(b"gf2dav-verify\0");
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update([0]);
        h.update(f.to_hex().as_bytes());
        h.update([0]);
        h.update(budget.to_le_bytes());
        h.update([u8::from(cyclic_fast_path)]);
        format!("{:x}", h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str, f: &Poly) -> Lookup {
        let text = match fs::read_to_string(self.path(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        let line = text.trim_end_matches('\n');
        match serde_json::from_str::<VerifyRecord>(line) {
            Ok(r) if r.f == f.to_string() && r.to_line() == line => Lookup::Hit(r),
            Ok(_) => Lookup::Corrupt("entry does not match its key".into()),
            Err(e) => Lookup::Corrupt(e.to_string()),
        }
    }

    /// Writes through a temporary file so concurrent readers never see a torn entry.
    pub fn put(&self, key: &str, record: &VerifyRecord) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, format!("{}\n", record.to_line()))?;
        fs::rename(tmp, self.path(key))
    }
}
