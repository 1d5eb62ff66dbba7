//! Text syntax for words.
//!
//! Tokens are whitespace separated generator names, each optionally followed
//! by `'` for the inverse. A parenthesised group may carry `^k` (k ≥ 1) and
//! expands literally; a group may also be inverted with a trailing `'`.
//! `( a b c )^8` is `abc` repeated eight times. Nothing is reduced.

use std::fmt;

use super::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// Parses `text` as a word over `alphabet`. Errors carry line 1 and a
/// 1-based column.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    parse_word_at(text, alphabet, 1, 1)
}

/// Like [`parse_word`], but reports positions relative to a line and a
/// starting column inside a larger file.
pub(crate) fn parse_word_at(
    text: &str,
    alphabet: &Alphabet,
    line: usize,
    first_column: usize,
) -> Result<Word> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
        line,
        first_column,
    };
    let letters = parser.sequence()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected `)`"));
    }
    Ok(Word::new(letters))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
    line: usize,
    first_column: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.first_column + self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sequence(&mut self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                // the caller decides whether the end or a `)` is expected
                None | Some(')') => return Ok(out),
                Some('(') => {
                    let open = self.pos;
                    self.pos += 1;
                    let mut inner = self.sequence()?;
                    if self.peek() != Some(')') {
                        self.pos = open;
                        return Err(self.error("unclosed `(`"));
                    }
                    self.pos += 1;
                    if self.peek() == Some('\'') {
                        self.pos += 1;
                        inner = inner.iter().rev().map(|l| l.inverse()).collect();
                    }
                    let k = self.power()?;
                    for _ in 0..k {
                        out.extend_from_slice(&inner);
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self
                        .peek()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                    {
                        self.pos += 1;
                    }
                    let name: String = self.chars[start..self.pos].iter().collect();
                    let Some(g) = self.alphabet.index_of(&name) else {
                        self.pos = start;
                        return Err(self.error(format!("unknown generator `{name}`")));
                    };
                    let mut inverse = false;
                    if self.peek() == Some('\'') {
                        inverse = true;
                        self.pos += 1;
                        if self.peek() == Some('\'') {
                            return Err(self.error("repeated `'`"));
                        }
                    }
                    let k = self.power()?;
                    out.extend(std::iter::repeat_n(Letter::new(g, inverse), k));
                }
                Some(c) => return Err(self.error(format!("unexpected character `{c}`"))),
            }
        }
    }

    /// Optional `^k` suffix; returns 1 when absent.
    fn power(&mut self) -> Result<usize> {
        let save = self.pos;
        self.skip_ws();
        if self.peek() != Some('^') {
            self.pos = save;
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        match digits.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => {
                self.pos = start;
                Err(self.error("expected a positive integer after `^`"))
            }
        }
    }
}

pub fn format_letter(letter: Letter, alphabet: &Alphabet) -> String {
    let mut s = alphabet.name(letter.generator()).to_string();
    if letter.is_inverse() {
        s.push('\'');
    }
    s
}

/// Space separated rendering accepted back by [`parse_word`].
pub fn format_word(word: &Word, alphabet: &Alphabet) -> String {
    word.display(alphabet).to_string()
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl<'a> WordDisplay<'a> {
    pub(super) fn new(word: &'a Word, alphabet: &'a Alphabet) -> Self {
        Self { word, alphabet }
    }
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &l) in self.word.letters().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(l.generator()))?;
            if l.is_inverse() {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet() -> Alphabet {
        Alphabet::new(["a", "b", "c", "c1"]).unwrap()
    }

    #[test]
    fn groups_expand_literally() {
        let al = alphabet();
        let w = parse_word("( a b c )^8", &al).unwrap();
        assert_eq!(w.len(), 24);
        assert_eq!(w, parse_word("a b c", &al).unwrap().pow(8));
        let w = parse_word("(a c)^9 b", &al).unwrap();
        assert_eq!(w.len(), 19);
        assert_eq!(parse_word("a a'", &al).unwrap().len(), 2);
    }

    #[test]
    fn group_inverse_and_nesting() {
        let al = alphabet();
        assert_eq!(
            parse_word("( a b )'", &al).unwrap(),
            parse_word("b' a'", &al).unwrap()
        );
        assert_eq!(
            parse_word("( ( a )^2 b )^2", &al).unwrap(),
            parse_word("a a b a a b", &al).unwrap()
        );
        assert_eq!(parse_word("c1^3", &al).unwrap().len(), 3);
    }

    #[test]
    fn errors_report_columns() {
        let al = alphabet();
        match parse_word("a b d", &al) {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_word("( a b", &al),
            Err(Error::Syntax { column: 1, .. })
        ));
        assert!(parse_word("a )", &al).is_err());
        assert!(parse_word("( a )^0", &al).is_err());
        assert!(parse_word("a''", &al).is_err());
    }

    #[test]
    fn display_round_trips() {
        let al = alphabet();
        let w = parse_word("a b' c1 c1'", &al).unwrap();
        assert_eq!(format_word(&w, &al), "a b' c1 c1'");
        assert_eq!(parse_word(&format_word(&w, &al), &al).unwrap(), w);
        assert_eq!(format_word(&Word::empty(), &al), "");
    }
}
