//! Reduced two-letter subwords and an Eulerian word covering all of them.

use super::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// Outcome of a digram coverage scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigramCoverage {
    pub covered: bool,
    /// Absent reduced digrams, in alphabet order.
    pub missing: Vec<Word>,
}

/// All reduced `pq` with `p, q ∈ S^±`, ordered by `(p, q)`. There are
/// `2n(2n−1)` of them.
pub fn reduced_digrams(alphabet: &Alphabet) -> Vec<Word> {
    let letters: Vec<Letter> = alphabet.signed_letters().collect();
    letters
        .iter()
        .flat_map(|&p| {
            letters
                .iter()
                .filter(move |&&q| q != p.inverse())
                .map(move |&q| Word::new(vec![p, q]))
        })
        .collect()
}

/// Checks that every reduced digram occurs as a subword of `word`.
///
/// Occurrences are read along the word itself, without wrapping from the
/// last letter back to the first; a word passing this check contains every
/// digram literally.
pub fn contains_all_reduced_digrams(word: &Word, alphabet: &Alphabet) -> Result<DigramCoverage> {
    if alphabet.len() < 2 {
        return Err(Error::RankTooSmall);
    }
    if !word.is_cyclically_reduced() {
        return Err(Error::NotCyclicallyReduced);
    }
    let size = 2 * alphabet.len();
    let mut seen = vec![false; size * size];
    for pair in word.letters().windows(2) {
        if pair[0].generator() < alphabet.len() && pair[1].generator() < alphabet.len() {
            seen[pair[0].index() * size + pair[1].index()] = true;
        }
    }
    let missing: Vec<Word> = reduced_digrams(alphabet)
        .into_iter()
        .filter(|d| {
            let l = d.letters();
            !seen[l[0].index() * size + l[1].index()]
        })
        .collect();
    Ok(DigramCoverage {
        covered: missing.is_empty(),
        missing,
    })
}

/// An Eulerian circuit of the digram graph (vertices `S^±`, one edge `p → q`
/// per reduced `pq`), written as the closed vertex sequence.
///
/// The result has length `2n(2n−1) + 1`, starts and ends with the first
/// generator, and contains every reduced digram. Edges are taken lowest
/// index first, so the output depends only on the alphabet order.
pub fn eulerian_digram_word(alphabet: &Alphabet) -> Result<Word> {
    let n = alphabet.len();
    if n < 2 {
        return Err(Error::RankTooSmall);
    }
    let vertices = 2 * n;
    let adjacency: Vec<Vec<usize>> = (0..vertices)
        .map(|p| (0..vertices).filter(|&q| q != (p ^ 1)).collect())
        .collect();
    let mut next = vec![0usize; vertices];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(vertices * (vertices - 1) + 1);
    while let Some(&v) = stack.last() {
        if next[v] < adjacency[v].len() {
            let u = adjacency[v][next[v]];
            next[v] += 1;
            stack.push(u);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    Ok(circuit.into_iter().map(Letter::from_index).collect())
}

/// Re-linearises a closed walk (first letter equal to last) so that it
/// starts at the vertex visited at step `offset`. The edge multiset, and
/// hence the set of digrams, is unchanged.
pub fn reopen_closed_walk(walk: &Word, offset: usize) -> Word {
    debug_assert!(walk.len() >= 2 && walk.first() == walk.last());
    let cycle = walk.subword(0, walk.len() - 1);
    let rotated = cycle.rotate(offset);
    let first = rotated.first().expect("nonempty walk");
    rotated.concat(&Word::letter(first))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// Scans every reduced digram against every window, independently of the
    /// bitmap used above.
    fn missing_oracle(word: &Word, alphabet: &Alphabet) -> Vec<Word> {
        let letters: Vec<Letter> = alphabet.signed_letters().collect();
        let mut out = Vec::new();
        for &p in &letters {
            for &q in &letters {
                if q == p.inverse() {
                    continue;
                }
                if !word.letters().windows(2).any(|win| win == [p, q]) {
                    out.push(Word::new(vec![p, q]));
                }
            }
        }
        out
    }

    #[test]
    fn digram_count() {
        assert_eq!(reduced_digrams(&ab()).len(), 12);
        let abc = Alphabet::new(["a", "b", "c"]).unwrap();
        assert_eq!(reduced_digrams(&abc).len(), 30);
    }

    #[test]
    fn short_words_miss_digrams() {
        let al = ab();
        let cov = contains_all_reduced_digrams(&parse_word("a b", &al).unwrap(), &al).unwrap();
        assert!(!cov.covered);
        assert_eq!(cov.missing.len(), 11);

        let w = parse_word("a a b b", &al).unwrap();
        let cov = contains_all_reduced_digrams(&w, &al).unwrap();
        assert!(!cov.covered);
        assert!(cov.missing.contains(&parse_word("b a", &al).unwrap()));
        assert_eq!(cov.missing, missing_oracle(&w, &al));
    }

    #[test]
    fn coverage_rejects_non_cyclically_reduced() {
        let al = ab();
        let w = parse_word("a b a'", &al).unwrap();
        assert_eq!(
            contains_all_reduced_digrams(&w, &al),
            Err(Error::NotCyclicallyReduced)
        );
    }

    #[test]
    fn eulerian_word_lengths_and_coverage() {
        for (names, len) in [
            (vec!["a", "b"], 13),
            (vec!["a", "b", "c"], 31),
            (vec!["a", "b", "c", "d", "e"], 91),
        ] {
            let al = Alphabet::new(names).unwrap();
            let w = eulerian_digram_word(&al).unwrap();
            assert_eq!(w.len(), len);
            assert!(w.is_cyclically_reduced());
            assert!(missing_oracle(&w, &al).is_empty());
            assert!(contains_all_reduced_digrams(&w, &al).unwrap().covered);
            assert_eq!(w, eulerian_digram_word(&al).unwrap());
        }
    }

    #[test]
    fn eulerian_word_needs_rank_two() {
        let al = Alphabet::new(["a"]).unwrap();
        assert_eq!(eulerian_digram_word(&al), Err(Error::RankTooSmall));
    }

    #[test]
    fn reopened_walk_keeps_coverage() {
        let al = Alphabet::new(["a", "b", "c"]).unwrap();
        let w = eulerian_digram_word(&al).unwrap();
        for offset in [1, 7, 29] {
            let r = reopen_closed_walk(&w, offset);
            assert_eq!(r.len(), w.len());
            assert_eq!(r.first(), r.last());
            assert!(missing_oracle(&r, &al).is_empty());
        }
    }
}
