//! The two embedding constructions. Both extend `H`'s alphabet by `c₁, c₂`,
//! choose images for every `b_j` and `c_k`, and keep a candidate only once
//! its certificate holds.

use super::certificate::{
    certify, covering_word, free_labels, w_word, EmbeddingCertificate, Layout,
};
use super::family::{escalate, is_w_family, positive_word};
use super::PartialAscHnn;
use crate::error::{Error, Result};
use crate::stallings::{is_monomorphism, wedge_extension_check, CoreGraph};
use crate::words::{Alphabet, Letter, Word};

const START_LENGTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Images of `b_j`, `c_k` are read off a C'(1/7) family directly.
    Basic,
    /// Images are padded with digram-covering words so that the new loops
    /// attach to the core of the `A_i` without folding.
    Irreducible,
}

#[derive(Clone, Debug)]
pub struct AscHnnResult {
    pub g: PartialAscHnn,
    pub construction: Construction,
    /// Indices of `c₁, c₂` in `G`'s alphabet.
    pub new_generators: [usize; 2],
    /// `x_1 … x_{2|J|}`; empty for [`Construction::Basic`].
    pub x_labels: Vec<Letter>,
    /// Length of the random blocks in the accepted round.
    pub block_length: usize,
    pub escalations: usize,
    pub certificate: EmbeddingCertificate,
}

/// `H`'s names minus the stable letter, then `c1`, `c2` (suffixed with `_`
/// until fresh), then the stable letter.
fn extended_alphabet(h: &PartialAscHnn) -> Alphabet {
    let al = h.alphabet();
    let mut names: Vec<String> = h
        .base_generators()
        .into_iter()
        .map(|g| al.name(g).to_string())
        .collect();
    for base in ["c1", "c2"] {
        let mut name = base.to_string();
        while al.contains(&name) || names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    names.push(al.name(h.stable()).to_string());
    Alphabet::new(names).expect("fresh names")
}

struct Skeleton {
    alphabet: Alphabet,
    stable: usize,
    layout: Layout,
    /// `H`'s images re-indexed into `G`.
    h_images: Vec<(usize, Word)>,
}

fn skeleton(h: &PartialAscHnn) -> Result<Skeleton> {
    let diagnostics = h.validate();
    if !diagnostics.is_empty() {
        return Err(Error::InvalidHnn(diagnostics));
    }
    let alphabet = extended_alphabet(h);
    let stable = alphabet.len() - 1;
    let layout = Layout::new(h, &alphabet, stable)?;
    let to_g = |x: usize| alphabet.index_of(h.alphabet().name(x));
    let h_images = h
        .images()
        .iter()
        .map(|(a, w)| (to_g(*a).expect("kept"), w.map_generators(to_g)))
        .collect();
    Ok(Skeleton {
        alphabet,
        stable,
        layout,
        h_images,
    })
}

/// `G`'s images: `H`'s first, then the `b_j`, then `c₁, c₂`.
fn assemble(h: &PartialAscHnn, sk: &Skeleton, new_images: &[Word]) -> PartialAscHnn {
    let mut images = sk.h_images.clone();
    let targets = sk.layout.free.iter().chain(&sk.layout.news);
    images.extend(targets.copied().zip(new_images.iter().cloned()));
    let ascending = (0..sk.alphabet.len()).filter(|&x| x != sk.stable).collect();
    let mut g = PartialAscHnn::new(
        sk.alphabet.clone(),
        sk.stable,
        ascending,
        Vec::new(),
        images,
    );
    let mut labels: Vec<Option<String>> = h.labels().to_vec();
    labels.resize(g.images().len(), None);
    g.set_labels(labels);
    g
}

fn finish(
    h: &PartialAscHnn,
    sk: Skeleton,
    g: PartialAscHnn,
    construction: Construction,
    x_labels: Vec<Letter>,
    block_length: usize,
    escalations: usize,
) -> Result<AscHnnResult> {
    let certificate = certify(h, &g, construction)?;
    let failures = certificate.failures();
    if !failures.is_empty() {
        return Err(Error::CertificateFailure(failures.join(", ")));
    }
    Ok(AscHnnResult {
        g,
        construction,
        new_generators: sk.layout.news,
        x_labels,
        block_length,
        escalations,
        certificate,
    })
}

fn family_gate(images: &[Word], w_inputs: &[Word], sk: &Skeleton) -> bool {
    let cs = Alphabet::new(["c1", "c2"]).expect("two names");
    let w: Vec<Word> = w_inputs.iter().map(|x| w_word(x, sk.layout.news)).collect();
    if !is_w_family(&w, &cs) {
        return false;
    }
    let all: Vec<Word> = sk
        .layout
        .base
        .iter()
        .map(|&x| {
            sk.h_images
                .iter()
                .find(|(a, _)| *a == x)
                .map(|(_, w)| w.clone())
                .unwrap_or_else(|| {
                    let k = sk
                        .layout
                        .free
                        .iter()
                        .chain(&sk.layout.news)
                        .position(|&y| y == x);
                    images[k.expect("every base generator has an image")].clone()
                })
        })
        .collect();
    is_monomorphism(&all)
}

/// `W`-input of each new image: `B_j` itself, and `c_k⁻¹·C_k`.
fn w_inputs(images: &[Word], sk: &Skeleton) -> Vec<Word> {
    let j = sk.layout.free.len();
    images
        .iter()
        .enumerate()
        .map(|(i, img)| match i.checked_sub(j) {
            None => img.clone(),
            Some(k) => Word::letter(Letter::neg(sk.layout.news[k])).concat(img),
        })
        .collect()
}

/// Extends `h` to an ascending extension whose relative quotient is the
/// C'(1/7) family `W`.
pub fn construct_embedding(h: &PartialAscHnn, seed: u64) -> Result<AscHnnResult> {
    let sk = skeleton(h)?;
    let news = sk.layout.news;
    let j = sk.layout.free.len();
    let (images, len, escalations) = escalate(START_LENGTH, seed, |len, rng| {
        let words: Vec<Word> = (0..j + 2).map(|_| positive_word(rng, news, len)).collect();
        if !words
            .iter()
            .all(|w| w.uses_generator(news[0]) && w.uses_generator(news[1]))
        {
            return None;
        }
        let mut images = words[..j].to_vec();
        for (k, &c) in news.iter().enumerate() {
            // Rotate w to c_k·v; then c_k⁻¹·C_k with C_k = v⁻¹ is w⁻¹ up to
            // rotation.
            let w = &words[j + k];
            let at = w.letters().iter().position(|&l| l == Letter::pos(c))?;
            let v = w.rotate(at).subword(1, w.len() - 1);
            images.push(v.inverse());
        }
        family_gate(&images, &w_inputs(&images, &sk), &sk).then_some(images)
    })?;
    let g = assemble(h, &sk, &images);
    finish(h, sk, g, Construction::Basic, Vec::new(), len, escalations)
}

/// As [`construct_embedding`], with images shaped so that `G` stays
/// irreducible: `B_j = x_{j+|J|}·U_j·β_j·x_j⁻¹` and `C_k = c_k·V_k·γ_k·c_k`.
pub fn construct_irreducible_embedding(h: &PartialAscHnn, seed: u64) -> Result<AscHnnResult> {
    let sk = skeleton(h)?;
    let j = sk.layout.free.len();
    if j == 0 {
        return Err(Error::NoFreePart);
    }
    let news = sk.layout.news;
    let a_images: Vec<Word> = sk.h_images.iter().map(|(_, w)| w.clone()).collect();
    let core = CoreGraph::bouquet(&a_images).fold().trim_to_core();
    let x = free_labels(&core, &sk.alphabet, &sk.layout, 2 * j)?;

    // (head, covering word, tail) per new image.
    let mut frames = Vec::new();
    for k in 0..j {
        let u = covering_word(&sk.alphabet, &sk.layout, x[k + j].inverse())?;
        frames.push((x[k + j], u, x[k].inverse()));
    }
    for c in news {
        let v = covering_word(&sk.alphabet, &sk.layout, Letter::neg(c))?;
        frames.push((Letter::pos(c), v, Letter::pos(c)));
    }
    let rho_max = frames
        .iter()
        .map(|(_, u, _)| w_word(u, news).len())
        .max()
        .unwrap_or(0);
    let start = START_LENGTH.max((8 * rho_max).next_power_of_two());

    let (images, len, escalations) = escalate(start, seed, |len, rng| {
        let images: Vec<Word> = frames
            .iter()
            .map(|(head, u, tail)| {
                let block = positive_word(rng, news, len);
                Word::letter(*head)
                    .concat(u)
                    .concat(&block)
                    .concat(&Word::letter(*tail))
            })
            .collect();
        let ok = images.iter().all(Word::is_cyclically_reduced)
            && wedge_extension_check(&core, &images)
            && family_gate(&images, &w_inputs(&images, &sk), &sk);
        ok.then_some(images)
    })?;
    let g = assemble(h, &sk, &images);
    finish(h, sk, g, Construction::Irreducible, x, len, escalations)
}
