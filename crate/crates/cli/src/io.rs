use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use multiport::{Complex64, ModeUnitary, Occupation, PureState};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Exit status classes.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable files, malformed JSON. Exit 1.
    Usage(String),
    /// Well-formed input rejected by the library or a failed numeric check. Exit 2.
    Invalid(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Invalid(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) => f.write_str(m),
        }
    }
}

impl From<multiport::Error> for Failure {
    fn from(e: multiport::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;

/// Parses a JSON file, naming the offending field on failure.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        if field == "." {
            Failure::Usage(format!("{}: malformed JSON: {inner}", path.display()))
        } else {
            Failure::Usage(format!("{}: malformed JSON at `{field}`: {inner}", path.display()))
        }
    })
}

pub fn emit<T: Serialize>(value: &T, output: Option<&PathBuf>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Invalid(e.to_string()))?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    occ: Vec<u32>,
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    modes: usize,
    terms: Vec<TermFile>,
}

impl StateFile {
    pub fn into_state(self) -> CliResult<PureState> {
        for (i, t) in self.terms.iter().enumerate() {
            if t.occ.len() != self.modes {
                return Err(Failure::Invalid(format!(
                    "terms[{i}].occ has {} modes, expected {}",
                    t.occ.len(),
                    self.modes
                )));
            }
        }
        let terms = self.terms.into_iter().map(|t| (Occupation::new(t.occ), Complex64::new(t.re, t.im)));
        Ok(PureState::from_terms(self.modes, terms)?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    dim: usize,
    rows: Vec<Vec<EntryFile>>,
}

impl MatrixFile {
    pub fn into_unitary(self) -> CliResult<ModeUnitary> {
        if self.rows.len() != self.dim || self.rows.iter().any(|r| r.len() != self.dim) {
            return Err(Failure::Invalid(format!("matrix rows do not form a {0}x{0} square", self.dim)));
        }
        let rows: Vec<Vec<Complex64>> =
            self.rows.into_iter().map(|r| r.into_iter().map(|e| Complex64::new(e.re, e.im)).collect()).collect();
        Ok(ModeUnitary::from_rows(&rows)?)
    }
}

pub fn read_state(path: &Path) -> CliResult<PureState> {
    read_json::<StateFile>(path)?.into_state()
}

pub fn read_unitary(path: &Path) -> CliResult<ModeUnitary> {
    read_json::<MatrixFile>(path)?.into_unitary()
}

/// `re+imj`, shortest round-trip digits.
pub fn format_complex(z: Complex64) -> String {
    let im = if z.im.is_sign_negative() { format!("-{}", -z.im) } else { format!("+{}", z.im) };
    format!("{}{im}j", z.re)
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim().parse::<Complex64>().map_err(|_| format!("`{s}` is not a complex number (expected re+imj)"))
}
