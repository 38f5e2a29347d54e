use std::fmt::{self, Display, Write as _};
use std::path::PathBuf;

use dgforge::derived::TruncationReport;
use dgforge::io::{serialize, Document};

use crate::input::{sha256, CliError, CliResult, Input};

/// Line-oriented `key: value` output; byte-identical for identical inputs and seed.
pub struct Report {
    lines: Vec<String>,
    document: Option<Document>,
}

impl Report {
    pub fn new(echo: &str) -> Report {
        Report { lines: vec![format!("command: dgforge {echo}")], document: None }
    }

    pub fn line(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    pub fn input(&mut self, input: &Input) {
        self.line("input", input);
    }

    pub fn document(&mut self, doc: Document) {
        self.document = Some(doc);
    }

    /// The report text; the output document, if any, goes to `out` or follows the report.
    pub fn finish(self, out: Option<&PathBuf>) -> CliResult<String> {
        let mut text = self.lines.join("\n");
        text.push('\n');
        if let Some(doc) = &self.document {
            let body = serialize(doc);
            let _ = writeln!(text, "output: {} (sha256 {})", doc.kind(), sha256(&body));
            match out {
                Some(path) => {
                    std::fs::write(path, &body).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    let _ = writeln!(text, "written: {}", path.display());
                }
                None => {
                    text.push('\n');
                    text.push_str(&body);
                }
            }
        }
        Ok(text)
    }
}

/// `n=d` pairs, `n=?` outside the exact window.
pub struct Dims<'a> {
    pub lo: i32,
    pub hi: i32,
    pub dim: &'a dyn Fn(i32) -> usize,
    pub report: Option<&'a TruncationReport>,
}

impl Display for Dims<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.lo..=self.hi {
            if n > self.lo {
                f.write_str(" ")?;
            }
            if self.report.is_some_and(|r| !r.contains(n)) {
                write!(f, "H^{n}=?")?;
            } else {
                write!(f, "H^{n}={}", (self.dim)(n))?;
            }
        }
        Ok(())
    }
}
