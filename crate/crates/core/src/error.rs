use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unknown phoneme symbol '{symbol}'")]
    UnknownSymbolAt { line: usize, symbol: char },

    #[error("unknown phoneme symbol '{0}'")]
    UnknownSymbol(char),

    #[error("lexicon structure: {0}")]
    Structure(String),

    #[error("invalid inventory: {0}")]
    Inventory(String),

    #[error("data consistency: {0}")]
    DataConsistency(String),

    #[error("encoding: {0}")]
    Encoding(String),

    #[error("decoding: {0}")]
    Decoding(String),

    #[error(
        "codebook search exhausted its budget: best minimum distance {best_distance} \
         (wanted {wanted} over {symbols} symbols at {code_length} bits)"
    )]
    CodebookSearch {
        best_distance: usize,
        wanted: usize,
        symbols: usize,
        code_length: usize,
    },

    #[error("training: {0}")]
    Training(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(String),

    #[error("domain: {0}")]
    Domain(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_file(path: &std::path::Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
