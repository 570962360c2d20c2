use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Writes `bytes` to `path` through a temp file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let fail = |e: io::Error| CliError::Data(format!("{}: {e}", path.display()));
    fs::create_dir_all(dir).map_err(fail)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

/// Collects named reports, then writes them into the output directory or,
/// without one, prints the first to stdout.
#[derive(Default)]
pub struct Outputs {
    files: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    pub fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }

    pub fn add_json<T: Serialize>(&mut self, name: impl Into<String>, value: &T) {
        self.add(name, json_bytes(value));
    }

    pub fn write(self, out: Option<&Path>) -> Result<Vec<PathBuf>, CliError> {
        match out {
            Some(dir) => {
                let mut written = Vec::new();
                for (name, bytes) in &self.files {
                    let path = dir.join(name);
                    write_atomic(&path, bytes)?;
                    written.push(path);
                }
                Ok(written)
            }
            None => {
                if let Some((_, bytes)) = self.files.first() {
                    let mut stdout = io::stdout().lock();
                    stdout
                        .write_all(bytes)
                        .and_then(|_| stdout.flush())
                        .map_err(|e| CliError::Data(format!("stdout: {e}")))?;
                }
                Ok(Vec::new())
            }
        }
    }
}

pub fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("reports serialize");
    bytes.push(b'\n');
    bytes
}

pub fn csv_bytes<R, I>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory write")
}
