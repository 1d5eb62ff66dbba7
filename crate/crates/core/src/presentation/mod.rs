//! Group presentations `⟨S | R⟩` and their small-cancellation verdicts.

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

mod file;
mod pieces;

pub use file::{parse_file, Entry, HnnHeader, PresentationFile};
pub use pieces::{
    check_cp, check_cprime, compute_pieces, CpVerdict, CpWitness, CprimeVerdict, PieceOccurrences,
    PieceReport, RelatorPieces, Symmetrization, WorstPiece,
};

/// Alphabet plus a list of relators; the combinatorial stand-in for a
/// presentation complex with one 2-cell per relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    labels: Vec<Option<String>>,
}

impl Presentation {
    /// Every relator must be nonempty, cyclically reduced, and over
    /// `alphabet`.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let labels = vec![None; relators.len()];
        Self::with_labels(alphabet, relators, labels)
    }

    pub fn with_labels(
        alphabet: Alphabet,
        relators: Vec<Word>,
        labels: Vec<Option<String>>,
    ) -> Result<Self> {
        for (i, r) in relators.iter().enumerate() {
            if !r.is_cyclically_reduced() {
                return Err(Error::InvalidPresentation(format!(
                    "relator {i} (`{}`) is not cyclically reduced",
                    r.display(&alphabet)
                )));
            }
        }
        Self::literal_with_labels(alphabet, relators, labels)
    }

    /// Accepts relators with backtracks, as produced by projecting to a
    /// quotient. Relators must still be nonempty.
    pub fn literal(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let labels = vec![None; relators.len()];
        Self::literal_with_labels(alphabet, relators, labels)
    }

    fn literal_with_labels(
        alphabet: Alphabet,
        relators: Vec<Word>,
        labels: Vec<Option<String>>,
    ) -> Result<Self> {
        if labels.len() != relators.len() {
            return Err(Error::InvalidPresentation(
                "label count differs from relator count".into(),
            ));
        }
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::InvalidPresentation(format!("relator {i} is empty")));
            }
            if !alphabet.covers(r) {
                return Err(Error::InvalidPresentation(format!(
                    "relator {i} uses a generator outside the alphabet"
                )));
            }
        }
        Ok(Self {
            alphabet,
            relators,
            labels,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator(&self, i: usize) -> &Word {
        &self.relators[i]
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.relators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relators.is_empty()
    }

    /// All rotations of every relator and of its inverse.
    pub fn symmetrize(&self) -> Vec<SymmetrizedRelator> {
        let mut out = Vec::with_capacity(2 * self.relators.iter().map(Word::len).sum::<usize>());
        for (i, r) in self.relators.iter().enumerate() {
            let period = r.primitive_period();
            for orientation in [Orientation::Forward, Orientation::Inverse] {
                let base = match orientation {
                    Orientation::Forward => r.clone(),
                    Orientation::Inverse => r.inverse(),
                };
                for offset in 0..r.len() {
                    out.push(SymmetrizedRelator {
                        relator: i,
                        orientation,
                        offset,
                        appearance: offset % period,
                        word: base.rotate(offset),
                    });
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Inverse,
}

/// One rotation of `r` or `r⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizedRelator {
    pub relator: usize,
    pub orientation: Orientation,
    /// Rotation offset into `r` (forward) or `r⁻¹` (inverse).
    pub offset: usize,
    /// `offset` modulo the relator's primitive period: rotations sharing
    /// relator, orientation and appearance are the same appearance.
    pub appearance: usize,
    pub word: Word,
}

/// `exponent(w) ≥ 2`, on the literal letter sequence.
pub fn is_proper_power(w: &Word) -> bool {
    w.exponent().is_ok_and(|e| e >= 2)
}
