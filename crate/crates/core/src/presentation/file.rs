//! `.pres` file grammar.
//!
//! ```text
//! # comment
//! gens: a b c t
//! rel: b c a b c b c
//! rel r2: t a t' = ( a b c )^8
//! word: a b a'
//! hnn: t
//! ascending: a b
//! free: c
//! ```
//!
//! `lhs = rhs` stands for the relator `lhs · rhs⁻¹`. `word` lines carry
//! loose words (subgroup generators, test inputs). The `hnn`, `ascending`
//! and `free` lines form the optional HNN header; when it is present and
//! `gens` is absent, the alphabet is `ascending`, `free`, then the stable
//! letter.

use super::Presentation;
use crate::error::{Error, Result};
use crate::words::syntax::parse_word_at;
use crate::words::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: Option<String>,
    pub word: Word,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnHeader {
    pub stable: String,
    pub ascending: Vec<String>,
    pub free: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub alphabet: Alphabet,
    pub relators: Vec<Entry>,
    pub words: Vec<Entry>,
    pub hnn: Option<HnnHeader>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct RawLine<'a> {
    number: usize,
    key: &'a str,
    label: Option<&'a str>,
    /// Text after the colon and its 1-based column.
    body: &'a str,
    body_column: usize,
}

fn split_lines(text: &str) -> Result<Vec<RawLine<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(syntax(number, col, "expected `key: value`"));
        };
        let head = &content[..colon];
        let mut parts = head.split_whitespace();
        let key = parts.next().unwrap_or("");
        let label = parts.next();
        if parts.next().is_some() {
            return Err(syntax(number, 1, "too many words before `:`"));
        }
        out.push(RawLine {
            number,
            key,
            label,
            body: &content[colon + 1..],
            body_column: content[..colon + 1].chars().count() + 1,
        });
    }
    Ok(out)
}

fn names(line: &RawLine<'_>) -> Vec<String> {
    line.body.split_whitespace().map(str::to_string).collect()
}

/// Parses a relator body, expanding `lhs = rhs` to `lhs · rhs⁻¹`.
fn parse_relator(line: &RawLine<'_>, alphabet: &Alphabet) -> Result<Word> {
    match line.body.find('=') {
        None => parse_word_at(line.body, alphabet, line.number, line.body_column),
        Some(eq) => {
            let lhs = parse_word_at(&line.body[..eq], alphabet, line.number, line.body_column)?;
            let rhs_col = line.body_column + line.body[..eq + 1].chars().count();
            let rhs = parse_word_at(&line.body[eq + 1..], alphabet, line.number, rhs_col)?;
            Ok(lhs.concat(&rhs.inverse()))
        }
    }
}

pub fn parse_file(text: &str) -> Result<PresentationFile> {
    let lines = split_lines(text)?;
    let mut gens: Option<(usize, Vec<String>)> = None;
    let mut stable: Option<(usize, String)> = None;
    let mut ascending: Option<Vec<String>> = None;
    let mut free: Option<Vec<String>> = None;

    for line in &lines {
        let single = |what: &str| -> Result<()> {
            if line.label.is_some() {
                return Err(syntax(line.number, 1, format!("`{what}` takes no label")));
            }
            Ok(())
        };
        match line.key {
            "gens" => {
                single("gens")?;
                if gens.is_some() {
                    return Err(syntax(line.number, 1, "duplicate `gens` line"));
                }
                gens = Some((line.number, names(line)));
            }
            "hnn" => {
                single("hnn")?;
                let n = names(line);
                if n.len() != 1 {
                    return Err(syntax(
                        line.number,
                        line.body_column,
                        "`hnn` takes one stable letter",
                    ));
                }
                stable = Some((line.number, n[0].clone()));
            }
            "ascending" => {
                single("ascending")?;
                ascending = Some(names(line));
            }
            "free" => {
                single("free")?;
                free = Some(names(line));
            }
            "rel" | "word" => {}
            other => {
                return Err(syntax(line.number, 1, format!("unknown key `{other}`")));
            }
        }
    }

    let hnn = match stable {
        Some((line, stable)) => {
            let ascending = ascending.unwrap_or_default();
            let free = free.unwrap_or_default();
            if ascending.contains(&stable) || free.contains(&stable) {
                return Err(syntax(
                    line,
                    1,
                    format!("stable letter `{stable}` collides with a generator"),
                ));
            }
            Some(HnnHeader {
                stable,
                ascending,
                free,
                line,
            })
        }
        None => {
            if ascending.is_some() || free.is_some() {
                return Err(syntax(1, 1, "`ascending`/`free` need an `hnn` line"));
            }
            None
        }
    };

    let alphabet = match (&gens, &hnn) {
        (Some((line, names)), _) => {
            Alphabet::new(names.clone()).map_err(|e| syntax(*line, 1, e.to_string()))?
        }
        (None, Some(h)) => {
            let names = h
                .ascending
                .iter()
                .chain(&h.free)
                .cloned()
                .chain(std::iter::once(h.stable.clone()));
            Alphabet::new(names).map_err(|e| syntax(h.line, 1, e.to_string()))?
        }
        (None, None) => return Err(syntax(1, 1, "missing `gens` line")),
    };

    let mut relators = Vec::new();
    let mut words = Vec::new();
    for line in &lines {
        let entry = |word| Entry {
            label: line.label.map(str::to_string),
            word,
            line: line.number,
        };
        match line.key {
            "rel" => relators.push(entry(parse_relator(line, &alphabet)?)),
            "word" => words.push(entry(parse_word_at(
                line.body,
                &alphabet,
                line.number,
                line.body_column,
            )?)),
            _ => {}
        }
    }

    Ok(PresentationFile {
        alphabet,
        relators,
        words,
        hnn,
    })
}

impl PresentationFile {
    /// Builds the presentation, reporting the offending line for relators
    /// that are empty or not cyclically reduced.
    pub fn to_presentation(&self) -> Result<Presentation> {
        for e in &self.relators {
            if e.word.is_empty() {
                return Err(syntax(e.line, 1, "empty relator"));
            }
            if !e.word.is_cyclically_reduced() {
                return Err(syntax(e.line, 1, "relator is not cyclically reduced"));
            }
        }
        Presentation::with_labels(
            self.alphabet.clone(),
            self.relators.iter().map(|e| e.word.clone()).collect(),
            self.relators.iter().map(|e| e.label.clone()).collect(),
        )
    }

    pub fn word_list(&self) -> Vec<Word> {
        self.words.iter().map(|e| e.word.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_relators_and_labels() {
        let f = parse_file("# X1\ngens: a b c\nrel r: b c a b c b c\n").unwrap();
        assert_eq!(f.alphabet.names(), ["a", "b", "c"]);
        assert_eq!(f.relators.len(), 1);
        assert_eq!(f.relators[0].label.as_deref(), Some("r"));
        assert_eq!(f.relators[0].word.len(), 7);
        assert!(f.hnn.is_none());
        assert_eq!(f.to_presentation().unwrap().len(), 1);
    }

    #[test]
    fn equation_relators() {
        let f = parse_file("gens: a b c t\nrel: t a t' = ( a b c )^8\n").unwrap();
        let w = &f.relators[0].word;
        assert_eq!(w.len(), 3 + 24);
        assert_eq!(
            w.display(&f.alphabet).to_string().split(' ').nth(3),
            Some("c'")
        );
    }

    #[test]
    fn hnn_header_defines_alphabet() {
        let f = parse_file("hnn: t\nascending: a b\nfree: c\nrel: t a t' = a b\n").unwrap();
        assert_eq!(f.alphabet.names(), ["a", "b", "c", "t"]);
        let h = f.hnn.unwrap();
        assert_eq!(h.stable, "t");
        assert_eq!(h.ascending, ["a", "b"]);
        assert_eq!(h.free, ["c"]);
    }

    #[test]
    fn stable_letter_collision_rejected() {
        assert!(parse_file("hnn: a\nascending: a\n").is_err());
    }

    #[test]
    fn errors_carry_line_and_column() {
        let err = parse_file("gens: a b\nrel: a b\nrel: a q\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 3,
                column: 8,
                message: "unknown generator `q`".into()
            }
        );
        assert!(matches!(
            parse_file("gens: a\nbogus\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(parse_file("rel: a\n"), Err(Error::Syntax { .. })));
        let f = parse_file("gens: a b\nrel: a b a'\n").unwrap();
        assert!(matches!(
            f.to_presentation(),
            Err(Error::Syntax { line: 2, .. })
        ));
    }
}
