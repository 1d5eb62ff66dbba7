//! Free-group words over a named alphabet.
//!
//! A [`Word`] is a literal sequence of signed letters. Nothing reduces a word
//! implicitly: parsing, concatenation and projection keep backtracks, and the
//! caller decides when to call [`Word::free_reduce`] or
//! [`Word::cyclic_reduce`].

use std::fmt;

use crate::error::{Error, Result};

mod digram;
pub(crate) mod syntax;

pub use digram::{
    contains_all_reduced_digrams, eulerian_digram_word, reduced_digrams, reopen_closed_walk,
    DigramCoverage,
};
pub use syntax::{format_letter, format_word, parse_word, WordDisplay};

/// Ordered list of distinct generator names.
///
/// The order induces the total order on signed letters used for every
/// deterministic choice downstream: generator index first, then `x` before
/// `x'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(Error::InvalidAlphabet(format!(
                    "`{name}` is not a valid generator name"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate generator `{name}`"
                )));
            }
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// All of `S^±` in the alphabet's total order.
    pub fn signed_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }

    /// Every letter of `word` indexes into this alphabet.
    pub fn covers(&self, word: &Word) -> bool {
        word.letters().iter().all(|l| l.generator() < self.len())
    }
}

/// A generator together with an exponent sign.
///
/// Ordering is by generator index, then positive before inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u32,
    inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Self {
            generator: generator as u32,
            inverse,
        }
    }

    pub const fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub const fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub const fn generator(self) -> usize {
        self.generator as usize
    }

    pub const fn is_inverse(self) -> bool {
        self.inverse
    }

    pub const fn inverse(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Dense index into `S^±`: `2·generator + sign`.
    pub const fn index(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }

    pub const fn from_index(index: usize) -> Self {
        Self::new(index / 2, index % 2 == 1)
    }
}

/// A finite sequence of signed letters, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letter(letter: Letter) -> Self {
        Self(vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> Word {
        self.0.iter().rev().map(|l| l.inverse()).collect()
    }

    /// Literal concatenation, no cancellation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn subword(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    /// Letter at cyclic position `i`.
    pub fn cyclic_at(&self, i: usize) -> Letter {
        self.0[i % self.0.len()]
    }

    /// `len` letters read cyclically from `start`.
    pub fn cyclic_subword(&self, start: usize, len: usize) -> Word {
        (0..len).map(|i| self.cyclic_at(start + i)).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.first(), self.last()) {
                (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
                _ => true,
            }
    }

    /// The unique reduced word equal to `self` in the free group.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Splits `self` as `conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let reduced = self.free_reduce().0;
        let mut lo = 0;
        let mut hi = reduced.len();
        while hi - lo >= 2 && reduced[lo] == reduced[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        (Word(reduced[lo..hi].to_vec()), Word(reduced[..lo].to_vec()))
    }

    /// Smallest `p` dividing `len` with `self = u^(len/p)` for `|u| = p`.
    pub fn primitive_period(&self) -> usize {
        let n = self.len();
        if n == 0 {
            return 0;
        }
        // KMP failure function; the shortest period is n - border.
        let mut fail = vec![0usize; n];
        let mut k = 0;
        for i in 1..n {
            while k > 0 && self.0[i] != self.0[k] {
                k = fail[k - 1];
            }
            if self.0[i] == self.0[k] {
                k += 1;
            }
            fail[i] = k;
        }
        let p = n - fail[n - 1];
        if n.is_multiple_of(p) {
            p
        } else {
            n
        }
    }

    /// Largest `n` with `self = uⁿ` as a literal letter sequence.
    pub fn exponent(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(self.len() / self.primitive_period())
    }

    /// Rotation starting at offset `k` (mod length).
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    /// All `|w|` rotations in order of start offset; `[ε]` for the empty word.
    pub fn rotations(&self) -> Vec<Word> {
        if self.is_empty() {
            return vec![Word::empty()];
        }
        (0..self.len()).map(|k| self.rotate(k)).collect()
    }

    /// Offset `k` with `self.rotate(k) == other`, if any.
    pub fn rotation_offset_to(&self, other: &Word) -> Option<usize> {
        if self.len() != other.len() {
            return None;
        }
        if self.is_empty() {
            return Some(0);
        }
        (0..self.len()).find(|&k| (0..self.len()).all(|i| self.cyclic_at(k + i) == other.0[i]))
    }

    /// Equal as cyclic words (up to rotation, not inversion).
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        self.rotation_offset_to(other).is_some()
    }

    /// Deletes every letter whose generator satisfies `kill`. Backtracks that
    /// appear are kept.
    pub fn delete_generators(&self, mut kill: impl FnMut(usize) -> bool) -> Word {
        self.0
            .iter()
            .copied()
            .filter(|l| !kill(l.generator()))
            .collect()
    }

    /// Re-indexes every generator through `map`; letters mapped to `None`
    /// are deleted.
    pub fn map_generators(&self, mut map: impl FnMut(usize) -> Option<usize>) -> Word {
        self.0
            .iter()
            .filter_map(|l| map(l.generator()).map(|g| Letter::new(g, l.is_inverse())))
            .collect()
    }

    pub fn uses_generator(&self, generator: usize) -> bool {
        self.0.iter().any(|l| l.generator() == generator)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay::new(self, alphabet)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g{}{}",
            self.generator,
            if self.inverse { "'" } else { "" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    fn w(s: &str) -> Word {
        parse_word(s, &abc()).unwrap()
    }

    /// Stack replay written independently of `free_reduce`.
    fn reduce_oracle(word: &Word) -> Word {
        let mut letters = word.letters().to_vec();
        loop {
            let pos = letters.windows(2).position(|p| p[0] == p[1].inverse());
            match pos {
                Some(i) => {
                    letters.drain(i..i + 2);
                }
                None => return Word::new(letters),
            }
        }
    }

    fn exponent_oracle(word: &Word) -> usize {
        let n = word.len();
        (1..=n)
            .rev()
            .find(|&k| n.is_multiple_of(k) && *word == word.subword(0, n / k).pow(k))
            .unwrap()
    }

    #[test]
    fn alphabet_rejects_bad_names() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["1a"]).is_err());
        assert!(Alphabet::new(["a'"]).is_err());
        assert!(Alphabet::new(["c_1", "x9"]).is_ok());
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w("a a'").free_reduce(), Word::empty());
        assert_eq!(Word::empty().free_reduce(), Word::empty());
        assert_eq!(w("a b b' a").free_reduce(), w("a a"));
        assert_eq!(reduce_oracle(&w("a b b' a")), w("a a"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w("a b a'").cyclic_reduce(), (w("b"), w("a")));
        assert_eq!(
            w("b c a b c b c").cyclic_reduce(),
            (w("b c a b c b c"), Word::empty())
        );
        assert_eq!(w("a' b a").cyclic_reduce(), (w("b"), w("a'")));
        // a single letter is its own cyclic core
        assert_eq!(w("b a b'").cyclic_reduce(), (w("a"), w("b")));
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(w("b c b c b c").exponent(), Ok(3));
        assert_eq!(w("b a b b").exponent(), Ok(1));
        assert_eq!(w("a b a b").exponent(), Ok(2));
        assert_eq!(exponent_oracle(&w("a b a b")), 2);
        assert_eq!(Word::empty().exponent(), Err(Error::EmptyWord));
        // literal: backtracks are not reduced away
        assert_eq!(w("a a' a a'").exponent(), Ok(2));
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(
            w("a b c").rotations(),
            vec![w("a b c"), w("b c a"), w("c a b")]
        );
        assert_eq!(w("a a").rotations(), vec![w("a a"), w("a a")]);
        assert_eq!(Word::empty().rotations(), vec![Word::empty()]);
    }

    #[test]
    fn cyclic_reducedness() {
        assert!(w("a").is_cyclically_reduced());
        assert!(!w("a b a'").is_cyclically_reduced());
        assert!(!w("a a' b").is_cyclically_reduced());
        assert!(Word::empty().is_cyclically_reduced());
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..=max_len)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
    }

    proptest! {
        #[test]
        fn free_reduce_matches_oracle_and_is_idempotent(word in arb_word(16)) {
            let r = word.free_reduce();
            prop_assert_eq!(&r, &reduce_oracle(&word));
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert!(r.len() <= word.len());
            prop_assert!(word.concat(&word.inverse()).free_reduce().is_empty());
        }

        #[test]
        fn cyclic_reduce_conjugates_back(word in arb_word(16)) {
            let (core, conj) = word.cyclic_reduce();
            prop_assert!(core.is_cyclically_reduced());
            let back = conj.concat(&core).concat(&conj.inverse()).free_reduce();
            prop_assert_eq!(back, word.free_reduce());
        }

        #[test]
        fn exponent_of_powers(base in arb_word(6).prop_filter("nonempty", |u| !u.is_empty()), n in 1usize..=6) {
            let base = base.cyclic_reduce().0;
            prop_assume!(!base.is_empty() && base.exponent().unwrap() == 1);
            let word = base.pow(n);
            prop_assert_eq!(word.exponent().unwrap(), n);
            prop_assert_eq!(exponent_oracle(&word), n);
        }

        #[test]
        fn exponent_is_rotation_invariant(word in arb_word(12).prop_filter("nonempty", |u| !u.is_empty())) {
            let e = word.exponent().unwrap();
            prop_assert_eq!(e, exponent_oracle(&word));
            for r in word.rotations() {
                prop_assert_eq!(r.exponent().unwrap(), e);
            }
        }
    }
}
