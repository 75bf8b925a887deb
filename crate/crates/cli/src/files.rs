//! On-disk formats: the permutation file and the operation script.
//!
//! A permutation file is an `n=<count>` line followed by the one-line
//! notation, whitespace-separated and free to span lines. `#` starts a
//! comment anywhere a line would start; blank lines are ignored.
//!
//! ```text
//! # the 11-element example
//! n=11
//! 1 3 6 4 2 8 11 5 10 7 9
//! ```
//!
//! A script file is one command per line (see the core harness grammar),
//! with the same comment and blank-line rules.

use cyclefst::harness::{parse_command_lines, Command, ScriptParseError};
use cyclefst::{PermError, Permutation};

#[derive(Debug, thiserror::Error)]
pub enum PermFileError {
    #[error("missing `n=<count>` header line")]
    MissingHeader,
    #[error("line {line}: bad header `{text}`, want `n=<count>`")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: bad integer `{token}`")]
    BadInteger { line: usize, token: String },
    #[error("header says n={want} but {got} values follow")]
    WrongCount { want: u32, got: usize },
    #[error(transparent)]
    Invalid(#[from] PermError),
}

pub fn parse_perm_file(text: &str) -> Result<Permutation, PermFileError> {
    let mut n: Option<u32> = None;
    let mut images: Vec<u32> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        match n {
            None => {
                let count = body
                    .strip_prefix("n=")
                    .and_then(|v| v.trim().parse().ok())
                    .ok_or_else(|| PermFileError::BadHeader { line, text: body.to_string() })?;
                n = Some(count);
            }
            Some(_) => {
                for token in body.split_whitespace() {
                    let value = token.parse().map_err(|_| PermFileError::BadInteger {
                        line,
                        token: token.to_string(),
                    })?;
                    images.push(value);
                }
            }
        }
    }
    let want = n.ok_or(PermFileError::MissingHeader)?;
    if images.len() != want as usize {
        return Err(PermFileError::WrongCount { want, got: images.len() });
    }
    Ok(Permutation::from_one_line(images)?)
}

/// Renders a permutation in the on-disk format.
pub fn perm_file_text(perm: &Permutation) -> String {
    if perm.is_empty() {
        format!("n={}\n", perm.len())
    } else {
        format!("n={}\n{}\n", perm.len(), perm)
    }
}

/// Parses a script and statically validates every command against the
/// domain size: ranges and transpose-argument distinctness.
pub fn parse_script_file(
    text: &str,
    n: u32,
) -> Result<Vec<(usize, Command)>, (Option<usize>, String)> {
    let commands = parse_command_lines(text).map_err(|e| match e {
        ScriptParseError::Command { line, source } => (Some(line), source.to_string()),
        other => (None, other.to_string()),
    })?;
    for &(line, cmd) in &commands {
        if let Err(e) = cmd.validate(n) {
            return Err((Some(line), e.to_string()));
        }
    }
    Ok(commands)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_file_roundtrip() {
        let text = "# the 11-element example\nn=11\n1 3 6 4 2\n8 11 5 10 7 9 # tail\n";
        let perm = parse_perm_file(text).unwrap();
        assert_eq!(perm.to_string(), "1 3 6 4 2 8 11 5 10 7 9");
        assert_eq!(parse_perm_file(&perm_file_text(&perm)).unwrap(), perm);
        let empty = parse_perm_file("n=0\n").unwrap();
        assert!(empty.is_empty());
        assert_eq!(parse_perm_file(&perm_file_text(&empty)).unwrap(), empty);
    }

    #[test]
    fn perm_file_diagnostics() {
        assert!(matches!(parse_perm_file(""), Err(PermFileError::MissingHeader)));
        assert!(matches!(
            parse_perm_file("count=3\n1 2 3\n"),
            Err(PermFileError::BadHeader { line: 1, .. })
        ));
        assert!(matches!(
            parse_perm_file("n=3\n1 x 3\n"),
            Err(PermFileError::BadInteger { line: 2, .. })
        ));
        assert!(matches!(
            parse_perm_file("n=4\n1 2 3\n"),
            Err(PermFileError::WrongCount { want: 4, got: 3 })
        ));
        assert!(matches!(
            parse_perm_file("n=3\n1 1 3\n"),
            Err(PermFileError::Invalid(_))
        ));
    }

    #[test]
    fn script_file_static_validation() {
        let cmds = parse_script_file("apply 3\n# note\nflip 1 2\n", 5).unwrap();
        assert_eq!(cmds.len(), 2);
        assert_eq!(cmds[1].0, 3);
        let (line, msg) = parse_script_file("apply 3\napply 9\n", 5).unwrap_err();
        assert_eq!(line, Some(2));
        assert!(msg.contains("out of range"));
        let (line, msg) = parse_script_file("transpose-at 2 2\n", 5).unwrap_err();
        assert_eq!(line, Some(1));
        assert!(msg.contains("must differ"));
        let (line, _) = parse_script_file("apply 1\nnonsense\n", 5).unwrap_err();
        assert_eq!(line, Some(2));
    }
}
