//! Inputs shared by the benchmarks in `benches/`.

use hnnkit::hnn::generate_w_family;
use hnnkit::words::eulerian_digram_word;
use hnnkit::{Alphabet, PartialAscHnn, Presentation, Word};

pub const H1: &str = "\
hnn: t
ascending: a b
free: c
rel: t a t' = ( a b c )^8
rel: t b t' = ( a c )^9 b
";

pub fn h1() -> PartialAscHnn {
    PartialAscHnn::parse(H1).expect("fixture parses")
}

/// The seed-0 C'(1/7) family of `count` words over `c1, c2`.
pub fn w_presentation(count: usize) -> Presentation {
    let al = Alphabet::new(["c1", "c2"]).expect("two names");
    let fam = generate_w_family(count, &al, 0).expect("family exists");
    Presentation::new(al, fam.words).expect("cyclically reduced")
}

/// The digram-covering walk over `a, b, c` cut into reduced words of
/// length at most 5.
pub fn subgroup_words() -> Vec<Word> {
    let al = Alphabet::new(["a", "b", "c"]).expect("three names");
    eulerian_digram_word(&al)
        .expect("rank 3")
        .letters()
        .chunks(5)
        .map(|ch| Word::new(ch.to_vec()).free_reduce())
        .filter(|w| !w.is_empty())
        .collect()
}
