//! Plain-text phrase syntax.
//!
//! Compact: `ABAC|B|C`, one character per letter.
//! List: `A13.A14|A23|-`, dot-separated tokens.
//! In both, `|` separates components and `-` (or nothing) is an empty component.

use std::fmt;

use crate::error::{Error, Result};
use crate::phrase::{is_token, GaussPhrase, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Compact,
    List,
}

/// Parses a phrase, choosing list format when the text contains `.`, a
/// digit or `_`, and compact format otherwise.
pub fn parse_phrase(text: &str) -> Result<GaussPhrase> {
    let text = text.trim();
    let list = text
        .chars()
        .any(|c| c == '.' || c == '_' || c.is_ascii_digit());
    parse_phrase_as(text, if list { Format::List } else { Format::Compact })
}

pub fn parse_phrase_as(text: &str, format: Format) -> Result<GaussPhrase> {
    let mut words = Vec::new();
    let mut start = 0;
    for comp in text.split('|') {
        words.push(parse_component(comp, start, format)?);
        start += comp.len() + 1;
    }
    GaussPhrase::new(words)
}

fn parse_component(comp: &str, at: usize, format: Format) -> Result<Word> {
    if comp.is_empty() || comp == "-" {
        return Ok(Word::empty());
    }
    match format {
        Format::Compact => Word::from_compact(comp).map_err(|e| shift_error(e, at)),
        Format::List => {
            let mut letters = Vec::new();
            let mut offset = at;
            for token in comp.split('.') {
                if !is_token(token) {
                    return Err(Error::Syntax {
                        at: offset,
                        msg: format!("invalid letter token {token:?}"),
                    });
                }
                letters.push(Letter::new(token)?);
                offset += token.len() + 1;
            }
            Ok(Word::new(letters))
        }
    }
}

fn shift_error(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { at, msg } => Error::Syntax { at: at + by, msg },
        other => other,
    }
}

/// Renders a phrase; empty components render as `-`.
pub fn format_phrase(p: &GaussPhrase, format: Format) -> Result<String> {
    if format == Format::Compact {
        if let Some(l) = p.alphabet().iter().find(|l| !l.is_compact()) {
            return Err(Error::UnrepresentableInCompact(l.to_string()));
        }
    }
    let sep = match format {
        Format::Compact => "",
        Format::List => ".",
    };
    let comps: Vec<String> = p
        .words()
        .iter()
        .map(|w| {
            if w.is_empty() {
                "-".to_string()
            } else {
                w.iter().map(Letter::as_str).collect::<Vec<_>>().join(sep)
            }
        })
        .collect();
    Ok(comps.join("|"))
}

/// Compact when every letter is a single character, list format otherwise.
impl fmt::Display for GaussPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let format = if self.alphabet().iter().all(Letter::is_compact) {
            Format::Compact
        } else {
            Format::List
        };
        f.write_str(&format_phrase(self, format).map_err(|_| fmt::Error)?)
    }
}

impl std::str::FromStr for GaussPhrase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_phrase(s)
    }
}
