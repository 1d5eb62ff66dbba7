//! Embedding certificates, recomputed from `H` and `G` alone.

use super::construct::Construction;
use super::family::pairwise_distinct;
use super::{build_x_and_y, PartialAscHnn};
use crate::error::{Error, Result};
use crate::presentation::{
    compute_pieces, CpVerdict, CprimeVerdict, PieceReport, Presentation, Symmetrization,
};
use crate::stallings::{is_monomorphism, wedge_extension_check, CoreGraph};
use crate::subquotient::{
    check_no_duplicates, check_no_extra_powers, quotient, DuplicatesVerdict, ExtraPowersVerdict,
    QuotientPresentation,
};
use crate::words::{contains_all_reduced_digrams, eulerian_digram_word, reopen_closed_walk};
use crate::words::{Alphabet, DigramCoverage, Letter, Word};

/// Where `H`'s generators and the two new ones sit in `G`'s alphabet.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub ascending: Vec<usize>,
    pub free: Vec<usize>,
    pub news: [usize; 2],
    /// Every generator of `G` except the stable letter, in `G`'s order.
    pub base: Vec<usize>,
}

impl Layout {
    pub fn new(h: &PartialAscHnn, g_alphabet: &Alphabet, g_stable: usize) -> Result<Self> {
        let fail = |m: String| Error::CertificateFailure(m);
        let map = |hg: usize| {
            let name = h.alphabet().name(hg);
            g_alphabet
                .index_of(name)
                .ok_or_else(|| fail(format!("generator `{name}` of H is missing from G")))
        };
        if map(h.stable())? != g_stable {
            return Err(fail("G and H have different stable letters".into()));
        }
        let ascending = h
            .ascending()
            .iter()
            .map(|&a| map(a))
            .collect::<Result<Vec<_>>>()?;
        let free = h
            .free()
            .iter()
            .map(|&b| map(b))
            .collect::<Result<Vec<_>>>()?;
        let base: Vec<usize> = (0..g_alphabet.len()).filter(|&x| x != g_stable).collect();
        let news: Vec<usize> = base
            .iter()
            .copied()
            .filter(|x| !ascending.contains(x) && !free.contains(x))
            .collect();
        let news: [usize; 2] = news
            .try_into()
            .map_err(|v: Vec<usize>| fail(format!("G adds {} generators, expected 2", v.len())))?;
        Ok(Self {
            ascending,
            free,
            news,
            base,
        })
    }

    /// `H`'s base generators (ascending then free) in `G` indices.
    fn h_base(&self) -> Vec<usize> {
        self.ascending.iter().chain(&self.free).copied().collect()
    }

    /// Alphabet of `F(a_i, b_j, c₁, c₂)` with local index `i` standing for
    /// `base[i]`.
    fn full_alphabet(&self, g_alphabet: &Alphabet) -> Alphabet {
        Alphabet::new(self.base.iter().map(|&x| g_alphabet.name(x).to_string()))
            .expect("subset of a valid alphabet")
    }
}

/// `ρ(x)` over `{c₁, c₂}` (indices 0, 1), freely and cyclically reduced.
pub(crate) fn w_word(x: &Word, news: [usize; 2]) -> Word {
    x.map_generators(|g| news.iter().position(|&c| c == g))
        .cyclic_reduce()
        .0
}

/// The first `count` signed letters over `H`'s base generators not read
/// leaving the basepoint of `core`, in `G`'s letter order.
pub(crate) fn free_labels(
    core: &CoreGraph,
    g_alphabet: &Alphabet,
    layout: &Layout,
    count: usize,
) -> Result<Vec<Letter>> {
    let h_base = layout.h_base();
    let unused: Vec<Letter> = core
        .unused_basepoint_labels(g_alphabet)
        .into_iter()
        .filter(|l| h_base.contains(&l.generator()))
        .collect();
    if unused.len() < count {
        return Err(Error::DegreeBoundViolated {
            requested: count,
            available: unused.len(),
        });
    }
    Ok(unused[..count].to_vec())
}

/// An Eulerian digram word over `F(a_i, b_j, c₁, c₂)`, reopened to start
/// and end at the least positive letter other than `avoid`. Returned in
/// `G` indices.
pub(crate) fn covering_word(g_alphabet: &Alphabet, layout: &Layout, avoid: Letter) -> Result<Word> {
    let full = layout.full_alphabet(g_alphabet);
    let walk = eulerian_digram_word(&full)?;
    let local_avoid = layout
        .base
        .iter()
        .position(|&x| x == avoid.generator())
        .map(|i| Letter::new(i, avoid.is_inverse()));
    let start = (0..full.len())
        .map(Letter::pos)
        .find(|&p| Some(p) != local_avoid)
        .expect("at least two generators");
    let offset = walk
        .letters()
        .iter()
        .position(|&l| l == start)
        .expect("an Eulerian walk visits every letter");
    Ok(reopen_closed_walk(&walk, offset).map_generators(|i| Some(layout.base[i])))
}

fn coverage_in_full(word: &Word, g_alphabet: &Alphabet, layout: &Layout) -> Result<DigramCoverage> {
    let full = layout.full_alphabet(g_alphabet);
    let local = word.map_generators(|x| layout.base.iter().position(|&b| b == x));
    let mut coverage = contains_all_reduced_digrams(&local, &full)?;
    for w in &mut coverage.missing {
        *w = w.map_generators(|i| Some(layout.base[i]));
    }
    Ok(coverage)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopEvidence {
    /// The `b_j` or `c_k` whose image this is.
    pub generator: usize,
    /// `U_j` or `V_k`.
    pub covering: Word,
    /// The image is `x_{j+|J|}·U_j·β·x_j⁻¹` (resp. `c_k·V_k·γ·c_k`) with
    /// `β` (resp. `γ`) a nonempty positive word in `c₁, c₂`.
    pub shape: bool,
    /// Missing digrams are over `G`'s alphabet.
    pub coverage: DigramCoverage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleEvidence {
    pub core_vertices: usize,
    pub core_edges: usize,
    pub basepoint_degree: usize,
    /// `2|I|`.
    pub degree_bound: usize,
    pub x_labels: Vec<Letter>,
    pub loops: Vec<LoopEvidence>,
    /// No fold at the basepoint when the new loops are attached.
    pub wedge_check: bool,
    /// The core of the full image equals the wedge of the core of the
    /// `A_i` with the new loops.
    pub wedge_core: bool,
}

impl IrreducibleEvidence {
    fn holds(&self) -> bool {
        self.basepoint_degree <= self.degree_bound
            && self.loops.iter().all(|l| l.shape && l.coverage.covered)
            && self.wedge_check
            && self.wedge_core
    }
}

/// Everything the injectivity argument consumes, recomputed from `H` and
/// `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub construction: Construction,
    /// `G`'s alphabet; every `Word` below except the `W` family and the
    /// quotient is over it.
    pub alphabet: Alphabet,
    pub new_generators: Vec<usize>,
    pub new_relators: usize,
    /// `H`'s relators lead `G`'s, letter for letter.
    pub h_relators_preserved: bool,
    /// `{c₁, c₂}`.
    pub w_alphabet: Alphabet,
    /// `ρ(B_j)` then `ρ(c_k⁻¹C_k)`, cyclically reduced.
    pub w_family: Vec<Word>,
    /// `X/Y` with boundaries projected literally.
    pub quotient: QuotientPresentation,
    /// Each projected boundary reduces to its `W` word up to rotation and
    /// inversion.
    pub quotient_matches_w: bool,
    pub pieces: PieceReport,
    pub c7: CpVerdict,
    pub cprime: CprimeVerdict,
    pub exponents: Vec<usize>,
    pub no_proper_powers: bool,
    pub distinct: bool,
    pub no_extra_powers: ExtraPowersVerdict,
    pub no_duplicates: DuplicatesVerdict,
    pub monomorphism: bool,
    pub irreducible: Option<IrreducibleEvidence>,
}

impl EmbeddingCertificate {
    /// Names of the verdicts that do not hold.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut check = |ok: bool, name: &'static str| {
            if !ok {
                out.push(name);
            }
        };
        check(self.h_relators_preserved, "hRelatorsPreserved");
        check(self.quotient_matches_w, "quotientMatchesW");
        check(self.c7.holds, "c7");
        check(self.cprime.holds, "cprime17");
        check(self.no_proper_powers, "noProperPowers");
        check(self.distinct, "distinct");
        check(self.no_extra_powers.holds, "noExtraPowers");
        check(self.no_duplicates.holds, "noDuplicates");
        check(self.monomorphism, "monomorphism");
        if let Some(ev) = &self.irreducible {
            check(ev.holds(), "irreducible");
        }
        out
    }

    pub fn all_hold(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Recomputes the certificate for the embedding `H → G`.
pub fn certify(
    h: &PartialAscHnn,
    g: &PartialAscHnn,
    construction: Construction,
) -> Result<EmbeddingCertificate> {
    let diagnostics = h.validate();
    if !diagnostics.is_empty() {
        return Err(Error::InvalidHnn(diagnostics));
    }
    let diagnostics = g.validate();
    if !diagnostics.is_empty() {
        return Err(Error::InvalidHnn(diagnostics));
    }
    if !g.free().is_empty() {
        return Err(Error::CertificateFailure("G is not ascending".into()));
    }
    let layout = Layout::new(h, g.alphabet(), g.stable())?;
    let ga = g.alphabet();

    let h_count = h.images().len();
    let to_g = |w: &Word| w.map_generators(|x| ga.index_of(h.alphabet().name(x)));
    let g_relators = g.relators();
    let h_relators_preserved = g_relators.len() >= h_count
        && h.relators()
            .iter()
            .zip(&g_relators)
            .all(|(hr, gr)| to_g(hr) == *gr);
    if !h_relators_preserved {
        return Err(Error::CertificateFailure(
            "H's relators are not the leading relators of G".into(),
        ));
    }

    let image = |x: usize| g.image(x).expect("G is ascending and valid").clone();
    let [c1, c2] = layout.news;
    let mut w_family = Vec::new();
    let mut w_source = Vec::new();
    for &b in &layout.free {
        w_family.push(w_word(&image(b), layout.news));
        w_source.push(b);
    }
    for c in [c1, c2] {
        let x = Word::letter(Letter::neg(c)).concat(&image(c));
        w_family.push(w_word(&x, layout.news));
        w_source.push(c);
    }
    let w_alphabet = Alphabet::new([ga.name(c1), ga.name(c2)]).expect("distinct names");

    let spec = build_x_and_y(h, g)?;
    let q = quotient(&spec);
    let quotient_matches_w = q.relators.len() == w_family.len()
        && q.relators.iter().all(|r| {
            let gen = g.images()[r.source].0;
            let Some(i) = w_source.iter().position(|&s| s == gen) else {
                return false;
            };
            let reduced = r.word.cyclic_reduce().0;
            let w = &w_family[i];
            reduced.is_rotation_of(w) || reduced.is_rotation_of(&w.inverse())
        });

    let exponents: Vec<usize> = w_family.iter().map(|w| w.exponent().unwrap_or(0)).collect();
    let no_proper_powers = exponents.iter().all(|&e| e == 1);
    let distinct = pairwise_distinct(&w_family);
    let w_pres = Presentation::new(w_alphabet.clone(), w_family.clone())
        .map_err(|e| Error::CertificateFailure(format!("W is not a presentation: {e}")))?;
    let pieces = compute_pieces(&w_pres, Symmetrization::Symmetrized);
    let c7 = pieces.cp_verdict(&w_pres, 7)?;
    let cprime = pieces.cprime_verdict(&w_pres, 1, 7)?;

    let all_images: Vec<Word> = layout.base.iter().map(|&x| image(x)).collect();
    let monomorphism = is_monomorphism(&all_images);

    let irreducible = match construction {
        Construction::Basic => None,
        Construction::Irreducible => Some(irreducible_evidence(h, g, &layout)?),
    };

    Ok(EmbeddingCertificate {
        construction,
        alphabet: ga.clone(),
        new_generators: layout.news.to_vec(),
        new_relators: g_relators.len() - h_count,
        h_relators_preserved,
        w_alphabet,
        w_family,
        quotient: q,
        quotient_matches_w,
        pieces,
        c7,
        cprime,
        exponents,
        no_proper_powers,
        distinct,
        no_extra_powers: check_no_extra_powers(&spec),
        no_duplicates: check_no_duplicates(&spec),
        monomorphism,
        irreducible,
    })
}

/// Splits `image` as `head·covering·middle·tail` and checks that `middle`
/// is a nonempty positive word in the new generators.
fn has_shape(image: &Word, head: Letter, covering: &Word, tail: Letter, news: [usize; 2]) -> bool {
    let l = image.letters();
    let n = covering.len();
    l.len() > n + 2
        && l[0] == head
        && l[1..=n] == *covering.letters()
        && l[l.len() - 1] == tail
        && l[n + 1..l.len() - 1]
            .iter()
            .all(|x| !x.is_inverse() && news.contains(&x.generator()))
}

fn irreducible_evidence(
    h: &PartialAscHnn,
    g: &PartialAscHnn,
    layout: &Layout,
) -> Result<IrreducibleEvidence> {
    let ga = g.alphabet();
    let j = layout.free.len();
    if j == 0 {
        return Err(Error::NoFreePart);
    }
    let image = |x: usize| g.image(x).expect("G is ascending and valid").clone();
    let a_images: Vec<Word> = layout.ascending.iter().map(|&a| image(a)).collect();
    let core = CoreGraph::bouquet(&a_images).fold().trim_to_core();
    let x_labels = free_labels(&core, ga, layout, 2 * j)?;

    let mut loops = Vec::new();
    let mut loop_words = Vec::new();
    for (k, &b) in layout.free.iter().enumerate() {
        let (enter, leave) = (x_labels[k + j], x_labels[k]);
        let covering = covering_word(ga, layout, enter.inverse())?;
        let img = image(b);
        loops.push(LoopEvidence {
            generator: b,
            shape: has_shape(&img, enter, &covering, leave.inverse(), layout.news),
            coverage: coverage_in_full(&covering, ga, layout)?,
            covering,
        });
        loop_words.push(img);
    }
    for c in layout.news {
        let covering = covering_word(ga, layout, Letter::neg(c))?;
        let img = image(c);
        loops.push(LoopEvidence {
            generator: c,
            shape: has_shape(&img, Letter::pos(c), &covering, Letter::pos(c), layout.news),
            coverage: coverage_in_full(&covering, ga, layout)?,
            covering,
        });
        loop_words.push(img);
    }

    let wedge_check = wedge_extension_check(&core, &loop_words);
    let all_images: Vec<Word> = a_images.iter().chain(&loop_words).cloned().collect();
    let full_core = CoreGraph::bouquet(&all_images).fold().trim_to_core();
    let (full, wedge) = (
        full_core.canonical(),
        CoreGraph::wedge(&core, &loop_words).canonical(),
    );
    // Same based labelled graph; `wedge` is never flagged as folded.
    let wedge_core = full.vertex_count() == wedge.vertex_count() && full.edges() == wedge.edges();

    Ok(IrreducibleEvidence {
        core_vertices: core.vertex_count(),
        core_edges: core.edges().len(),
        basepoint_degree: core.basepoint_degree(),
        degree_bound: 2 * h.ascending().len(),
        x_labels,
        loops,
        wedge_check,
        wedge_core,
    })
}
