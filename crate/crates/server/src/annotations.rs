//! Append-only analyst verdict log, one JSON record per line.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use log::warn;
use serde::{Deserialize, Serialize};
use triscope_core::{Error, Result, TriclusterKey};

pub const LOG_FILE: &str = "annotations.jsonl";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Meaningful,
    NotMeaningful,
    Unsure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub tricluster_key: TriclusterKey,
    pub verdict: Verdict,
    #[serde(default)]
    pub note: String,
    /// RFC 3339, UTC.
    pub timestamp: String,
}

pub struct AnnotationLog {
    path: PathBuf,
    inner: Mutex<(File, Vec<Annotation>)>,
}

impl AnnotationLog {
    /// Opens (creating if needed) `dir/annotations.jsonl` and replays it.
    /// Unparseable lines are skipped with a warning; a torn final line from
    /// an interrupted write is the expected case.
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(LOG_FILE);
        let mut records = Vec::new();
        if path.exists() {
            let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
            for (n, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| Error::io(&path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<Annotation>(&line) {
                    Ok(a) => records.push(a),
                    Err(e) => warn!("{}:{}: skipping annotation: {e}", path.display(), n + 1),
                }
            }
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        let existing = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        if existing.last().is_some_and(|&b| b != b'\n') {
            file.write_all(b"\n").map_err(|e| Error::io(&path, e))?;
        }
        Ok(AnnotationLog {
            path,
            inner: Mutex::new((file, records)),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Durable once this returns.
    pub fn append(&self, annotation: Annotation) -> Result<()> {
        let mut line = serde_json::to_vec(&annotation)?;
        line.push(b'\n');
        let mut guard = self.inner.lock().expect("annotation log poisoned");
        let (file, records) = &mut *guard;
        file.write_all(&line)
            .and_then(|_| file.sync_data())
            .map_err(|e| Error::io(&self.path, e))?;
        records.push(annotation);
        Ok(())
    }

    pub fn list(&self) -> Vec<Annotation> {
        self.inner
            .lock()
            .expect("annotation log poisoned")
            .1
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(verdict: Verdict) -> Annotation {
        Annotation {
            tricluster_key: "00".repeat(32).parse().unwrap(),
            verdict,
            note: "same fans".into(),
            timestamp: "2026-01-01T00:00:00Z".into(),
        }
    }

    #[test]
    fn replays_after_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let log = AnnotationLog::open(dir.path()).unwrap();
        assert!(log.list().is_empty());
        log.append(sample(Verdict::Meaningful)).unwrap();
        log.append(sample(Verdict::Unsure)).unwrap();
        drop(log);
        let log = AnnotationLog::open(dir.path()).unwrap();
        assert_eq!(
            log.list(),
            [sample(Verdict::Meaningful), sample(Verdict::Unsure)]
        );
    }

    #[test]
    fn torn_tail_is_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let log = AnnotationLog::open(dir.path()).unwrap();
        log.append(sample(Verdict::NotMeaningful)).unwrap();
        drop(log);
        let mut f = OpenOptions::new()
            .append(true)
            .open(dir.path().join(LOG_FILE))
            .unwrap();
        f.write_all(b"{\"tricluster_key\": \"00").unwrap();
        let log = AnnotationLog::open(dir.path()).unwrap();
        assert_eq!(log.list().len(), 1);
        log.append(sample(Verdict::Meaningful)).unwrap();
        drop(log);
        assert_eq!(AnnotationLog::open(dir.path()).unwrap().list().len(), 2);
    }

    #[test]
    fn verdict_wire_names() {
        assert_eq!(
            serde_json::to_string(&Verdict::NotMeaningful).unwrap(),
            "\"not_meaningful\""
        );
    }
}
