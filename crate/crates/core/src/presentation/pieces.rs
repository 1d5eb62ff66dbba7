//! Pieces and the C(p) / C'(λ) conditions.
//!
//! A piece is a word read in two different appearances in the relator set.
//! Two readings are the same appearance when they come from the same
//! relator and orientation at offsets that agree modulo the relator's
//! primitive period: for `r = qⁿ` the `ℤₙ` rotation symmetry does not
//! produce new appearances.
//!
//! For every relator and every start offset we compute the longest piece
//! starting there. Pieces are closed under subwords, so that table
//! determines the whole piece set.

use std::cmp::Ordering;

use super::Presentation;
use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::words::{Letter, Word};

/// Which relator set pieces are read from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Symmetrization {
    /// Rotations of every relator and of its inverse.
    #[default]
    Symmetrized,
    /// Rotations of the relators as written.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceOccurrences {
    pub word: Word,
    /// Start offsets in the relator where this maximal piece begins.
    pub offsets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorPieces {
    pub relator: usize,
    pub length: usize,
    /// `longest[s]` is the longest piece starting at offset `s`.
    pub longest: Vec<usize>,
    pub max_piece: usize,
    /// Fewest pieces whose concatenation is a rotation of the relator;
    /// `None` when no such decomposition exists.
    pub min_decomposition: Option<usize>,
    /// Start offset and part lengths of one minimal decomposition.
    pub decomposition: Option<(usize, Vec<usize>)>,
    /// Maximal pieces: those not contained in the piece starting one
    /// position earlier.
    pub pieces: Vec<PieceOccurrences>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceReport {
    pub mode: Symmetrization,
    pub relators: Vec<RelatorPieces>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpWitness {
    pub relator: usize,
    pub pieces: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpVerdict {
    pub holds: bool,
    pub bound: usize,
    pub witnesses: Vec<CpWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorstPiece {
    pub relator: usize,
    pub offset: usize,
    pub piece: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CprimeVerdict {
    pub holds: bool,
    pub lambda: Ratio,
    /// Largest `|u| / |r|` over pieces `u` of relators `r`.
    pub worst_ratio: Ratio,
    pub worst: Option<WorstPiece>,
}

pub fn compute_pieces(p: &Presentation, mode: Symmetrization) -> PieceReport {
    let table = longest_pieces(p.relators(), mode);
    let relators = p
        .relators()
        .iter()
        .zip(table)
        .enumerate()
        .map(|(i, (r, longest))| relator_pieces(i, r, longest))
        .collect();
    PieceReport { mode, relators }
}

/// C(p): no relator is a product of fewer than `pbound` pieces.
pub fn check_cp(p: &Presentation, pbound: usize, mode: Symmetrization) -> Result<CpVerdict> {
    compute_pieces(p, mode).cp_verdict(p, pbound)
}

/// C'(num/den): every piece `u` of a relator `r` has `|u| < (num/den)·|r|`.
pub fn check_cprime(
    p: &Presentation,
    num: u64,
    den: u64,
    mode: Symmetrization,
) -> Result<CprimeVerdict> {
    compute_pieces(p, mode).cprime_verdict(p, num, den)
}

impl PieceReport {
    pub fn cp_verdict(&self, p: &Presentation, pbound: usize) -> Result<CpVerdict> {
        if pbound < 2 {
            return Err(Error::InvalidPresentation(format!(
                "C(p) needs p >= 2, got {pbound}"
            )));
        }
        let witnesses: Vec<CpWitness> = self
            .relators
            .iter()
            .filter(|rp| rp.min_decomposition.is_some_and(|k| k < pbound))
            .map(|rp| {
                let (start, parts) = rp.decomposition.clone().expect("decomposition recorded");
                let r = p.relator(rp.relator);
                let mut at = start;
                let pieces = parts
                    .iter()
                    .map(|&len| {
                        let piece = r.cyclic_subword(at, len);
                        at += len;
                        piece
                    })
                    .collect();
                CpWitness {
                    relator: rp.relator,
                    pieces,
                }
            })
            .collect();
        Ok(CpVerdict {
            holds: witnesses.is_empty(),
            bound: pbound,
            witnesses,
        })
    }

    pub fn cprime_verdict(&self, p: &Presentation, num: u64, den: u64) -> Result<CprimeVerdict> {
        if num == 0 || num >= den {
            return Err(Error::InvalidPresentation(format!(
                "C'(λ) needs 0 < λ < 1, got {num}/{den}"
            )));
        }
        let mut holds = true;
        let mut worst_ratio = Ratio::ZERO;
        let mut worst = None;
        for rp in &self.relators {
            let len = rp.length as u64;
            for (offset, &piece) in rp.longest.iter().enumerate() {
                if piece == 0 {
                    continue;
                }
                if piece as u64 * den >= num * len {
                    holds = false;
                }
                let ratio = Ratio::new(piece as u64, len);
                if ratio > worst_ratio {
                    worst_ratio = ratio;
                    worst = Some(WorstPiece {
                        relator: rp.relator,
                        offset,
                        piece: p.relator(rp.relator).cyclic_subword(offset, piece),
                    });
                }
            }
        }
        Ok(CprimeVerdict {
            holds,
            lambda: Ratio::new(num, den),
            worst_ratio,
            worst,
        })
    }
}

fn relator_pieces(relator: usize, r: &Word, longest: Vec<usize>) -> RelatorPieces {
    let n = r.len();
    let max_piece = longest.iter().copied().max().unwrap_or(0);
    let decomposition = min_decomposition(&longest);

    let mut pieces: Vec<PieceOccurrences> = Vec::new();
    for s in 0..n {
        let len = longest[s];
        if len == 0 || longest[(s + n - 1) % n] == len + 1 {
            continue;
        }
        let word = r.cyclic_subword(s, len);
        match pieces.iter_mut().find(|p| p.word == word) {
            Some(p) => p.offsets.push(s),
            None => pieces.push(PieceOccurrences {
                word,
                offsets: vec![s],
            }),
        }
    }

    RelatorPieces {
        relator,
        length: n,
        longest,
        max_piece,
        min_decomposition: decomposition.as_ref().map(|(_, parts)| parts.len()),
        decomposition,
        pieces,
    }
}

/// Greedy longest-piece-first from every start offset.
///
/// `longest[s + 1] ≥ longest[s] − 1` (subword closure), so the reach
/// `s + longest[s]` never decreases and greedy is optimal for each start.
pub(crate) fn min_decomposition(longest: &[usize]) -> Option<(usize, Vec<usize>)> {
    let n = longest.len();
    if n == 0 || longest.iter().all(|&l| l == 0) {
        return None;
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for start in 0..n {
        let mut pos = 0;
        let mut parts = Vec::new();
        let mut ok = true;
        while pos < n {
            let l = longest[(start + pos) % n];
            if l == 0 {
                ok = false;
                break;
            }
            if best
                .as_ref()
                .is_some_and(|(_, b)| parts.len() + 1 >= b.len())
            {
                ok = false;
                break;
            }
            let take = l.min(n - pos);
            parts.push(take);
            pos += take;
        }
        if ok && best.as_ref().is_none_or(|(_, b)| parts.len() < b.len()) {
            best = Some((start, parts));
        }
    }
    best
}

#[derive(Clone, Copy)]
struct Location {
    /// Index into the oriented word list: `2·relator + inverse`.
    word: usize,
    offset: usize,
}

/// Longest piece starting at each forward offset of each relator.
///
/// All readings are sorted by their periodic expansion; the longest common
/// prefix with any other reading is then found by scanning outward from a
/// reading's sorted position, skipping readings of the same appearance.
pub(crate) fn longest_pieces(relators: &[Word], mode: Symmetrization) -> Vec<Vec<usize>> {
    let oriented: Vec<Vec<Letter>> = relators
        .iter()
        .flat_map(|r| [r.letters().to_vec(), r.inverse().into_letters()])
        .collect();
    let periods: Vec<usize> = relators.iter().map(Word::primitive_period).collect();
    let horizon = relators.iter().map(Word::len).max().unwrap_or(0);

    let mut locations = Vec::new();
    for (i, r) in relators.iter().enumerate() {
        let orientations: &[usize] = match mode {
            Symmetrization::Symmetrized => &[0, 1],
            Symmetrization::Literal => &[0],
        };
        for &o in orientations {
            locations.extend((0..r.len()).map(|offset| Location {
                word: 2 * i + o,
                offset,
            }));
        }
    }

    let at = |l: &Location, k: usize| {
        let w = &oriented[l.word];
        w[(l.offset + k) % w.len()]
    };
    let lcp = |a: &Location, b: &Location| {
        let mut k = 0;
        while k < horizon && at(a, k) == at(b, k) {
            k += 1;
        }
        k
    };
    locations.sort_by(|a, b| {
        let k = lcp(a, b);
        if k == horizon {
            Ordering::Equal
        } else {
            at(a, k).cmp(&at(b, k))
        }
    });
    let adjacent: Vec<usize> = locations.windows(2).map(|p| lcp(&p[0], &p[1])).collect();
    let len_of = |l: &Location| oriented[l.word].len();
    let same_appearance = |a: &Location, b: &Location| {
        a.word == b.word && {
            let period = periods[a.word / 2];
            a.offset % period == b.offset % period
        }
    };

    let mut table: Vec<Vec<usize>> = relators.iter().map(|r| vec![0; r.len()]).collect();
    for (i, a) in locations.iter().enumerate() {
        if a.word % 2 == 1 {
            continue;
        }
        let cap = len_of(a);
        let mut best = 0;
        let mut running = usize::MAX;
        for j in (0..i).rev() {
            running = running.min(adjacent[j]);
            if running <= best {
                break;
            }
            let b = &locations[j];
            if !same_appearance(a, b) {
                best = best.max(running.min(cap).min(len_of(b)));
            }
        }
        running = usize::MAX;
        for j in i + 1..locations.len() {
            running = running.min(adjacent[j - 1]);
            if running <= best {
                break;
            }
            let b = &locations[j];
            if !same_appearance(a, b) {
                best = best.max(running.min(cap).min(len_of(b)));
            }
        }
        table[a.word / 2][a.offset] = best;
    }
    table
}
