//! Partial ascending HNN extensions of free groups and their embeddings
//! into ascending ones.
//!
//! `H = ⟨a_i, b_j, t | t a_i t⁻¹ = A_i⟩` is conjugation by `t` defined on
//! the `a_i` only. The constructions add `c₁, c₂` and extend the map to
//! every generator, producing an ascending extension `G ⊇ H` whose
//! relative quotient is small cancellation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::presentation::{parse_file, Presentation, PresentationFile};
use crate::stallings::is_monomorphism;
use crate::subquotient::SubcomplexSpec;
use crate::words::{format_word, Alphabet, Letter, Word};

mod certificate;
mod construct;
mod family;

pub use certificate::{certify, EmbeddingCertificate, IrreducibleEvidence, LoopEvidence};
pub use construct::{
    construct_embedding, construct_irreducible_embedding, AscHnnResult, Construction,
};
pub use family::{generate_w_family, is_w_family, WFamily, MAX_ESCALATIONS};

/// `⟨a_i, b_j, t | t a_i t⁻¹ = A_i⟩` as read from a file, before
/// validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAscHnn {
    alphabet: Alphabet,
    stable: usize,
    ascending: Vec<usize>,
    free: Vec<usize>,
    /// `(a, A)` per relator `t a t⁻¹ A⁻¹`, in relator order.
    images: Vec<(usize, Word)>,
    labels: Vec<Option<String>>,
}

impl PartialAscHnn {
    pub fn new(
        alphabet: Alphabet,
        stable: usize,
        ascending: Vec<usize>,
        free: Vec<usize>,
        images: Vec<(usize, Word)>,
    ) -> Self {
        let labels = vec![None; images.len()];
        Self {
            alphabet,
            stable,
            ascending,
            free,
            images,
            labels,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_file(&parse_file(text)?)
    }

    /// Reads the `hnn` header and one relator `t a t' = A` per ascending
    /// generator.
    pub fn from_file(file: &PresentationFile) -> Result<Self> {
        let header = file
            .hnn
            .as_ref()
            .ok_or_else(|| Error::InvalidHnn(vec!["missing `hnn:` header".into()]))?;
        let alphabet = file.alphabet.clone();
        let lookup = |name: &str| {
            alphabet.index_of(name).ok_or_else(|| Error::Syntax {
                line: header.line,
                column: 1,
                message: format!("unknown generator `{name}` in the hnn header"),
            })
        };
        let stable = lookup(&header.stable)?;
        let ascending = header
            .ascending
            .iter()
            .map(|n| lookup(n))
            .collect::<Result<_>>()?;
        let free = header
            .free
            .iter()
            .map(|n| lookup(n))
            .collect::<Result<_>>()?;
        let t = Letter::pos(stable);
        let mut images = Vec::new();
        let mut labels = Vec::new();
        for e in &file.relators {
            let l = e.word.letters();
            let shaped = l.len() >= 3
                && l[0] == t
                && l[1].generator() != stable
                && !l[1].is_inverse()
                && l[2] == t.inverse();
            if !shaped {
                return Err(Error::Syntax {
                    line: e.line,
                    column: 1,
                    message: format!(
                        "relator is not of the form `{0} g {0}' = image`",
                        alphabet.name(stable)
                    ),
                });
            }
            images.push((l[1].generator(), Word::new(l[3..].to_vec()).inverse()));
            labels.push(e.label.clone());
        }
        Ok(Self {
            alphabet,
            stable,
            ascending,
            free,
            images,
            labels,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn stable(&self) -> usize {
        self.stable
    }

    pub fn ascending(&self) -> &[usize] {
        &self.ascending
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<Option<String>>) {
        assert_eq!(labels.len(), self.images.len());
        self.labels = labels;
    }

    pub fn images(&self) -> &[(usize, Word)] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> Option<&Word> {
        self.images
            .iter()
            .find(|(g, _)| *g == generator)
            .map(|(_, w)| w)
    }

    /// Generators of the free group `F`, in alphabet order.
    pub fn base_generators(&self) -> Vec<usize> {
        (0..self.alphabet.len())
            .filter(|&g| g != self.stable)
            .collect()
    }

    /// The relator `t g t⁻¹ A⁻¹`.
    pub fn relator_for(&self, generator: usize, image: &Word) -> Word {
        let t = Letter::pos(self.stable);
        Word::new(vec![t, Letter::pos(generator), t.inverse()]).concat(&image.inverse())
    }

    pub fn relators(&self) -> Vec<Word> {
        self.images
            .iter()
            .map(|(g, a)| self.relator_for(*g, a))
            .collect()
    }

    pub fn presentation(&self) -> Result<Presentation> {
        Presentation::with_labels(self.alphabet.clone(), self.relators(), self.labels.clone())
    }

    /// Empty when the input is a well-formed partial ascending HNN
    /// extension; otherwise one line per problem.
    pub fn validate(&self) -> Vec<String> {
        let name = |g: usize| self.alphabet.name(g).to_string();
        let mut out = Vec::new();
        if self.ascending.is_empty() && self.free.is_empty() {
            out.push("no ascending and no free generators".to_string());
        }
        for &g in &self.ascending {
            if self.free.contains(&g) {
                out.push(format!(
                    "`{}` is listed as both ascending and free",
                    name(g)
                ));
            }
        }
        for (i, &g) in self.ascending.iter().chain(&self.free).enumerate() {
            if g == self.stable {
                out.push(format!(
                    "stable letter `{}` listed as a base generator",
                    name(g)
                ));
            }
            if self
                .ascending
                .iter()
                .chain(&self.free)
                .take(i)
                .any(|&h| h == g)
            {
                out.push(format!("`{}` is listed twice", name(g)));
            }
        }
        for g in self.base_generators() {
            if !self.ascending.contains(&g) && !self.free.contains(&g) {
                out.push(format!(
                    "generator `{}` is neither ascending nor free",
                    name(g)
                ));
            }
        }
        for &a in &self.ascending {
            match self.images.iter().filter(|(g, _)| *g == a).count() {
                0 => out.push(format!("missing image for `{}`", name(a))),
                1 => {}
                _ => out.push(format!("duplicate image for `{}`", name(a))),
            }
        }
        let base: Vec<usize> = self.ascending.iter().chain(&self.free).copied().collect();
        for (g, image) in &self.images {
            if !self.ascending.contains(g) {
                out.push(format!(
                    "image given for non-ascending generator `{}`",
                    name(*g)
                ));
            }
            if image.uses_generator(self.stable) {
                out.push(format!("image of `{}` uses the stable letter", name(*g)));
            } else if let Some(l) = image
                .letters()
                .iter()
                .find(|l| !base.contains(&l.generator()))
            {
                out.push(format!(
                    "image of `{}` uses foreign letter `{}`",
                    name(*g),
                    name(l.generator())
                ));
            }
            if !image.is_reduced() {
                out.push(format!("unreduced image of `{}`", name(*g)));
            }
        }
        if out.is_empty() && !self.ascending.is_empty() {
            let images: Vec<Word> = self
                .ascending
                .iter()
                .map(|&a| self.image(a).expect("checked above").clone())
                .collect();
            if !is_monomorphism(&images) {
                out.push("the images of the ascending generators are not a free basis".into());
            }
        }
        out
    }

    /// `.pres` text that parses back to `self`.
    pub fn to_pres_text(&self) -> String {
        let al = &self.alphabet;
        let names = |gs: &[usize]| gs.iter().map(|&g| al.name(g)).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        let _ = writeln!(s, "gens: {}", al.names().join(" "));
        let _ = writeln!(s, "hnn: {}", al.name(self.stable));
        if !self.ascending.is_empty() {
            let _ = writeln!(s, "ascending: {}", names(&self.ascending));
        }
        if !self.free.is_empty() {
            let _ = writeln!(s, "free: {}", names(&self.free));
        }
        let t = al.name(self.stable);
        for ((g, image), label) in self.images.iter().zip(&self.labels) {
            let key = match label {
                Some(l) => format!("rel {l}"),
                None => "rel".to_string(),
            };
            let _ = writeln!(
                s,
                "{key}: {t} {} {t}' = {}",
                al.name(*g),
                format_word(image, al)
            );
        }
        s
    }
}

/// `X` is the presentation complex of `g`, `Y` the copy of `h` inside it:
/// `h`'s generators, the stable letter, and `h`'s relators (which come
/// first among `g`'s).
pub fn build_x_and_y(h: &PartialAscHnn, g: &PartialAscHnn) -> Result<SubcomplexSpec> {
    let x = g.presentation()?;
    let mut sub_generators = Vec::new();
    for name in h.alphabet().names() {
        let idx = g.alphabet().index_of(name).ok_or_else(|| {
            Error::CertificateFailure(format!("generator `{name}` of H is missing from G"))
        })?;
        sub_generators.push(idx);
    }
    let sub_relators = (0..h.images().len()).collect();
    SubcomplexSpec::new(x, sub_generators, sub_relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(super) const H1: &str = "\
hnn: t
ascending: a b
free: c
rel: t a t' = ( a b c )^8
rel: t b t' = ( a c )^9 b
";

    #[test]
    fn h1_example_is_valid() {
        let h = PartialAscHnn::parse(H1).unwrap();
        assert_eq!(h.alphabet().names(), ["a", "b", "c", "t"]);
        assert_eq!(h.validate(), Vec::<String>::new());
        assert_eq!(h.image(0).unwrap().len(), 24);
        assert_eq!(h.image(1).unwrap().len(), 19);
        assert_eq!(h.presentation().unwrap().relators()[0].len(), 27);
    }

    #[test]
    fn text_round_trip() {
        let h = PartialAscHnn::parse(H1).unwrap();
        let again = PartialAscHnn::parse(&h.to_pres_text()).unwrap();
        assert_eq!(again, h);
    }

    #[test]
    fn diagnostics() {
        let h =
            PartialAscHnn::parse("hnn: t\nascending: a b\nrel: t a t' = a a' b\nrel: t b t' = b\n")
                .unwrap();
        assert!(h.validate().iter().any(|d| d.contains("unreduced image")));
        let h = PartialAscHnn::parse("hnn: t\nascending: a\nfree: b\nrel: t a t' = t b\n").unwrap();
        assert!(h.validate().iter().any(|d| d.contains("stable letter")));
        let h =
            PartialAscHnn::parse("gens: a b d t\nhnn: t\nascending: a\nfree: b\nrel: t a t' = d\n")
                .unwrap();
        let d = h.validate();
        assert!(d.iter().any(|d| d.contains("foreign letter")));
        assert!(d.iter().any(|d| d.contains("neither ascending nor free")));
        let h = PartialAscHnn::parse("hnn: t\nascending: a b\nrel: t a t' = a\n").unwrap();
        assert!(h
            .validate()
            .iter()
            .any(|d| d.contains("missing image for `b`")));
        let h = PartialAscHnn::parse(
            "hnn: t\nascending: a b\nrel: t a t' = a b\nrel: t b t' = b' a'\n",
        )
        .unwrap();
        assert!(h.validate().iter().any(|d| d.contains("not a free basis")));
        let h = PartialAscHnn::parse("hnn: t\n").unwrap();
        assert!(!h.validate().is_empty());
    }

    #[test]
    fn malformed_relators_rejected() {
        assert!(matches!(
            PartialAscHnn::parse("hnn: t\nascending: a\nrel: a t a' = a\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
        assert!(PartialAscHnn::parse("gens: a t\nrel: t a t' = a\n").is_err());
    }
}
