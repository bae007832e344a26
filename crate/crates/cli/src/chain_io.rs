//! Chain files: either a JSON record `{"x", "y", "entries"}` or plain text
//! with one entry per line (dashes between entries also accepted).

use std::fs;
use std::io;
use std::path::Path;

use divchain::chain::parse_lines;
use divchain::{Chain, ChainRecord, Context};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

/// Entries of a chain file and, for JSON records, its context. Entries are
/// returned unchecked so that `verify` can report the defect.
pub fn read_chain(path: &Path) -> Result<(Vec<u64>, Option<Context>), FileError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: name.clone(),
        source,
    })?;
    let parse = |message: String| FileError::Parse {
        path: name.clone(),
        message,
    };
    if text.trim_start().starts_with('{') {
        let record: ChainRecord = serde_json::from_str(&text).map_err(|e| parse(e.to_string()))?;
        let ctx = record.context();
        return Ok((record.entries, Some(ctx)));
    }
    if text.contains('-') {
        let entries = text
            .split(|c: char| c == '-' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| parse(format!("not an entry: {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        return Ok((entries, None));
    }
    Ok((parse_lines(&text).map_err(|e| parse(e.to_string()))?, None))
}

/// Writes a JSON record when asked and a context is known, text otherwise.
pub fn write_chain(path: &Path, chain: &Chain, json: bool) -> Result<(), FileError> {
    let body = match chain.to_record().filter(|_| json) {
        Some(record) => serde_json::to_string_pretty(&record).expect("records serialize") + "\n",
        None => chain.to_text(),
    };
    fs::write(path, body).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}
