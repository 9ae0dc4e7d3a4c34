use std::io::Write;
use std::path::Path;

use jonesq_core::zne::DatasetRow;
use serde::Serialize;

use crate::CliError;

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| CliError::Io(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn rows_to_csv(rows: &[DatasetRow]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

pub fn rows_from_csv(bytes: &[u8]) -> Result<Vec<DatasetRow>, CliError> {
    let mut r = csv::Reader::from_reader(bytes);
    r.deserialize()
        .map(|row| row.map_err(CliError::from))
        .collect()
}

pub fn read_rows(path: &Path) -> Result<Vec<DatasetRow>, CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    rows_from_csv(&bytes)
}
