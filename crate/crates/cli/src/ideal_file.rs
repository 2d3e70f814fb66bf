//! The `.ideal` text format: a `vars:` header, an optional `field:` line,
//! then one polynomial per line. `#` starts a comment; blank lines are
//! skipped.

use cmlab_core::{CoefficientField, Error, IdealPresentation, Polynomial, VariableSet, Vars};

/// A parsed ideal file before field resolution.
pub struct IdealFile {
    pub vars: Vars,
    pub declared_field: Option<CoefficientField>,
    /// Generators as (1-based line number, source text).
    pub gens_src: Vec<(usize, String)>,
}

/// Parse failure with file position.
#[derive(Debug)]
pub struct FileError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
    .trim()
}

pub fn parse_field_flag(text: &str) -> Result<CoefficientField, String> {
    if text == "q" {
        return Ok(CoefficientField::Rationals);
    }
    if let Some(p) = text.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| format!("invalid prime in field descriptor `{text}`"))?;
        return CoefficientField::prime(p).map_err(|e| e.to_string());
    }
    Err(format!("unknown field descriptor `{text}` (use q or fp:<p>)"))
}

pub fn parse_ideal_file(text: &str) -> Result<IdealFile, FileError> {
    let mut vars: Option<Vars> = None;
    let mut declared_field = None;
    let mut gens_src = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if vars.is_none() {
            let Some(rest) = line.strip_prefix("vars:") else {
                return Err(FileError {
                    line: lineno,
                    col: 1,
                    msg: "expected a `vars:` header line".into(),
                });
            };
            let names: Vec<&str> = rest.split_whitespace().collect();
            if names.is_empty() {
                return Err(FileError {
                    line: lineno,
                    col: 1,
                    msg: "empty variable list".into(),
                });
            }
            vars = Some(VariableSet::new(names).map_err(|e| FileError {
                line: lineno,
                col: 1,
                msg: e.to_string(),
            })?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("field:") {
            if declared_field.is_some() || !gens_src.is_empty() {
                return Err(FileError {
                    line: lineno,
                    col: 1,
                    msg: "field line must appear once, before the generators".into(),
                });
            }
            declared_field = Some(parse_field_flag(rest.trim()).map_err(|msg| FileError {
                line: lineno,
                col: 1,
                msg,
            })?);
            continue;
        }
        gens_src.push((lineno, line.to_string()));
    }
    let Some(vars) = vars else {
        return Err(FileError {
            line: 1,
            col: 1,
            msg: "empty ideal file: missing `vars:` header".into(),
        });
    };
    Ok(IdealFile {
        vars,
        declared_field,
        gens_src,
    })
}

/// Materializes the file over `field`, reporting polynomial syntax errors
/// with file positions.
pub fn materialize(
    file: &IdealFile,
    field: CoefficientField,
    label: &str,
) -> Result<IdealPresentation, FileError> {
    let mut gens = Vec::with_capacity(file.gens_src.len());
    for (lineno, src) in &file.gens_src {
        match Polynomial::parse(src, &file.vars, field) {
            Ok(p) => gens.push(p),
            Err(Error::Parse { col, msg, .. }) => {
                return Err(FileError {
                    line: *lineno,
                    col,
                    msg,
                })
            }
            Err(other) => {
                return Err(FileError {
                    line: *lineno,
                    col: 1,
                    msg: other.to_string(),
                })
            }
        }
    }
    IdealPresentation::new(file.vars.clone(), field, gens, label).map_err(|e| FileError {
        line: 1,
        col: 1,
        msg: e.to_string(),
    })
}
