//! Word families `W` over `{c₁, c₂}` whose presentation is C'(1/7).
//!
//! Candidates are seeded pseudo-random positive words; the gate below is
//! exact, so a family is accepted only after verification. On rejection
//! the length doubles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::presentation::{check_cprime, Presentation, Symmetrization};
use crate::words::{Alphabet, Letter, Word};

/// Doublings tried before giving up.
pub const MAX_ESCALATIONS: usize = 16;

const START_LENGTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WFamily {
    pub words: Vec<Word>,
    /// Length of each word in the accepted round.
    pub length: usize,
    pub escalations: usize,
}

pub(crate) fn positive_word(rng: &mut ChaCha8Rng, gens: [usize; 2], len: usize) -> Word {
    (0..len)
        .map(|_| Letter::pos(gens[rng.gen_range(0..2)]))
        .collect()
}

/// Runs `attempt` at lengths `start, 2·start, …` until it yields.
pub(crate) fn escalate<T>(
    start: usize,
    seed: u64,
    mut attempt: impl FnMut(usize, &mut ChaCha8Rng) -> Option<T>,
) -> Result<(T, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for escalation in 0..=MAX_ESCALATIONS {
        let len = start << escalation;
        if let Some(found) = attempt(len, &mut rng) {
            return Ok((found, len, escalation));
        }
    }
    Err(Error::GeneratorExhausted(MAX_ESCALATIONS))
}

/// Pairwise distinct up to rotation and inversion.
pub(crate) fn pairwise_distinct(words: &[Word]) -> bool {
    words.iter().enumerate().all(|(i, u)| {
        words[i + 1..]
            .iter()
            .all(|v| !u.is_rotation_of(v) && !u.is_rotation_of(&v.inverse()))
    })
}

/// The acceptance gate: every word nonempty, cyclically reduced and not a
/// proper power, words pairwise distinct, and the presentation C'(1/7).
pub fn is_w_family(words: &[Word], alphabet: &Alphabet) -> bool {
    if words.is_empty()
        || !words
            .iter()
            .all(|w| !w.is_empty() && w.is_cyclically_reduced() && w.exponent() == Ok(1))
        || !pairwise_distinct(words)
    {
        return false;
    }
    Presentation::new(alphabet.clone(), words.to_vec())
        .and_then(|p| check_cprime(&p, 1, 7, Symmetrization::Symmetrized))
        .is_ok_and(|v| v.holds)
}

/// `count` positive words over generators 0 and 1 of `alphabet`, each
/// using both, passing [`is_w_family`].
pub fn generate_w_family(count: usize, alphabet: &Alphabet, seed: u64) -> Result<WFamily> {
    assert!(alphabet.len() >= 2, "W lives over two generators");
    let (words, length, escalations) = escalate(START_LENGTH, seed, |len, rng| {
        let words: Vec<Word> = (0..count)
            .map(|_| positive_word(rng, [0, 1], len))
            .collect();
        let both = words
            .iter()
            .all(|w| w.uses_generator(0) && w.uses_generator(1));
        (both && is_w_family(&words, alphabet)).then_some(words)
    })?;
    Ok(WFamily {
        words,
        length,
        escalations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{check_cp, compute_pieces};

    fn cs() -> Alphabet {
        Alphabet::new(["c1", "c2"]).unwrap()
    }

    #[test]
    fn families_pass_the_gate() {
        for count in [1, 3, 5] {
            let fam = generate_w_family(count, &cs(), 0).unwrap();
            assert_eq!(fam.words.len(), count);
            let p = Presentation::new(cs(), fam.words.clone()).unwrap();
            let cprime = check_cprime(&p, 1, 7, Symmetrization::Symmetrized).unwrap();
            assert!(cprime.holds);
            assert!(cprime.worst_ratio < crate::ratio::Ratio::new(1, 7));
            assert!(check_cp(&p, 7, Symmetrization::Symmetrized).unwrap().holds);
            assert!(fam.words.iter().all(|w| w.exponent() == Ok(1)));
        }
    }

    #[test]
    fn single_word_pieces_are_short() {
        let fam = generate_w_family(1, &cs(), 0).unwrap();
        let w = &fam.words[0];
        let p = Presentation::new(cs(), vec![w.clone()]).unwrap();
        let report = compute_pieces(&p, Symmetrization::Symmetrized);
        assert!(7 * report.relators[0].max_piece < w.len());
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            generate_w_family(3, &cs(), 5),
            generate_w_family(3, &cs(), 5)
        );
    }

    #[test]
    fn gate_rejects_bad_families() {
        let al = cs();
        let w = positive_word(&mut ChaCha8Rng::seed_from_u64(1), [0, 1], 300);
        assert!(!is_w_family(&[w.clone(), w.rotate(3)], &al));
        assert!(!is_w_family(&[w.clone(), w.inverse()], &al));
        assert!(!is_w_family(&[w.pow(2)], &al));
        assert!(!is_w_family(&[], &al));
    }

    #[test]
    fn escalation_gives_up() {
        let r: Result<((), usize, usize)> = escalate(1, 0, |_, _| None);
        assert_eq!(r, Err(Error::GeneratorExhausted(MAX_ESCALATIONS)));
    }
}
