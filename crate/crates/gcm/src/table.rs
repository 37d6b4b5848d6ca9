//! Group input: either a spec string (`C4`, `S3xC2`, …) or `table:<path>`
//! pointing at a headerless CSV Cayley table of 0-based indices.

use std::path::Path;

use gcm_core::group::{parse_group_spec, GroupTable};

use crate::error::{CliError, CliResult};

pub fn load_table(path: &Path, cap: usize) -> CliResult<GroupTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::io(path, io),
            other => CliError::Table(format!("{other:?}")),
        })?;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<usize>().map_err(|_| {
                    CliError::Table(format!("row {}: `{cell}` is not an index", i + 1))
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() > cap {
        return Err(gcm_core::Error::TooLarge {
            what: "group order",
            size: rows.len(),
            cap,
        }
        .into());
    }
    let label = path
        .file_stem()
        .map_or("table".into(), |s| s.to_string_lossy().into_owned());
    Ok(GroupTable::from_table(&label, &rows, None)?)
}

/// Resolve a `--group` argument.
pub fn resolve_group(spec: &str, cap: usize) -> CliResult<GroupTable> {
    match spec.strip_prefix("table:") {
        Some(path) => load_table(Path::new(path), cap),
        None => Ok(parse_group_spec(spec, cap)?),
    }
}
