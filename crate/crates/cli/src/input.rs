use std::fmt;
use std::path::Path;

use dgforge::dgcat::DgCategory;
use dgforge::io::{bundled, load, parse, serialize, Document};
use dgforge::linalg::Field;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] dgforge::error::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 3,
            CliError::Core(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Turns a library error caused by the command line (wrong kind, unknown name) into a usage error.
pub fn usage<T>(r: dgforge::error::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

pub fn sha256(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// A document named on the command line, with the digest of its canonical text.
pub struct Input {
    pub label: String,
    pub doc: Document,
    pub digest: String,
}

impl fmt::Display for Input {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, sha256 {})", self.label, self.doc.kind(), self.digest)
    }
}

/// A path to a document file, or the name of a bundled example. `examples/NAME` and
/// `NAME.dg` resolve to the bundled `NAME` when no such file exists.
pub fn resolve(arg: &str, field: Field, validate: bool) -> CliResult<Input> {
    let path = Path::new(arg);
    let doc = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?;
        if validate {
            load(&text, arg)?
        } else {
            parse(&text, arg)?
        }
    } else {
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        bundled(name, field).ok_or_else(|| CliError::Usage(format!("`{arg}` is neither a file nor a bundled example")))?
    };
    let digest = sha256(&serialize(&doc));
    Ok(Input { label: arg.to_string(), doc, digest })
}

pub fn object(c: &DgCategory, name: &str) -> CliResult<usize> {
    usage(c.object_index(name))
}

pub fn field(s: &str) -> CliResult<Field> {
    match s {
        "Q" => Ok(Field::Rationals),
        _ => {
            let p = s
                .strip_prefix("GF(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| CliError::Usage(format!("unknown field `{s}`; expected Q or GF(p)")))?;
            usage(Field::prime(p))
        }
    }
}
