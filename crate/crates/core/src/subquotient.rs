//! A subcomplex `Y ⊆ X` of a presentation complex, the quotient `X/Y`, and
//! the relative conditions that make `π₁Y → π₁X` injective.
//!
//! Projection deletes every `Y`-letter from a relator and keeps whatever
//! backtracks appear; exponents of projected boundaries are read from the
//! literal letter sequence.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{Alphabet, Letter, Word};

/// Generators and relators of `X` spanning `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexSpec {
    parent: Presentation,
    sub_generators: Vec<usize>,
    sub_relators: Vec<usize>,
}

impl SubcomplexSpec {
    /// Fails unless every listed relator is supported on the listed
    /// generators.
    pub fn new(
        parent: Presentation,
        mut sub_generators: Vec<usize>,
        mut sub_relators: Vec<usize>,
    ) -> Result<Self> {
        sub_generators.sort_unstable();
        sub_generators.dedup();
        sub_relators.sort_unstable();
        sub_relators.dedup();
        if let Some(&g) = sub_generators
            .iter()
            .find(|&&g| g >= parent.alphabet().len())
        {
            return Err(Error::InvalidSubcomplex(format!(
                "generator index {g} out of range"
            )));
        }
        for &i in &sub_relators {
            let Some(r) = parent.relators().get(i) else {
                return Err(Error::InvalidSubcomplex(format!(
                    "relator index {i} out of range"
                )));
            };
            if let Some(l) = r
                .letters()
                .iter()
                .find(|l| sub_generators.binary_search(&l.generator()).is_err())
            {
                return Err(Error::InvalidSubcomplex(format!(
                    "relator {i} uses `{}`, which is not in the subcomplex",
                    parent.alphabet().name(l.generator())
                )));
            }
        }
        Ok(Self {
            parent,
            sub_generators,
            sub_relators,
        })
    }

    /// `Y` spanned by the named generators together with every relator
    /// written entirely in them.
    pub fn killing(parent: Presentation, names: &[&str]) -> Result<Self> {
        let mut gens = Vec::with_capacity(names.len());
        for name in names {
            match parent.alphabet().index_of(name) {
                Some(g) => gens.push(g),
                None => {
                    return Err(Error::InvalidSubcomplex(format!(
                        "unknown generator `{name}`"
                    )))
                }
            }
        }
        let rels = parent
            .relators()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.letters().iter().all(|l| gens.contains(&l.generator())))
            .map(|(i, _)| i)
            .collect();
        Self::new(parent, gens, rels)
    }

    pub fn parent(&self) -> &Presentation {
        &self.parent
    }

    pub fn sub_generators(&self) -> &[usize] {
        &self.sub_generators
    }

    pub fn sub_relators(&self) -> &[usize] {
        &self.sub_relators
    }

    pub fn is_sub_generator(&self, g: usize) -> bool {
        self.sub_generators.binary_search(&g).is_ok()
    }

    pub fn is_sub_relator(&self, i: usize) -> bool {
        self.sub_relators.binary_search(&i).is_ok()
    }

    /// `∂R̄`: the relator with its `Y`-letters deleted, still over the
    /// parent alphabet.
    pub fn project(&self, w: &Word) -> Word {
        w.delete_generators(|g| self.is_sub_generator(g))
    }

    /// Positions in `w` of the letters that survive projection.
    fn surviving_positions(&self, w: &Word) -> Vec<usize> {
        w.letters()
            .iter()
            .enumerate()
            .filter(|(_, l)| !self.is_sub_generator(l.generator()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Relators of `X` outside `Y`, by index.
    fn outside(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.parent.len()).filter(|&i| !self.is_sub_relator(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRelator {
    /// Index of the relator of `X` this cell comes from.
    pub source: usize,
    /// Projected boundary over the quotient alphabet, backtracks kept.
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub alphabet: Alphabet,
    pub relators: Vec<QuotientRelator>,
    /// Relators of `X` that lie in `Y`.
    pub dropped: Vec<usize>,
}

impl QuotientPresentation {
    /// Sources of the cells whose boundary projects to a point.
    pub fn degenerate(&self) -> Vec<usize> {
        self.relators
            .iter()
            .filter(|r| r.word.is_empty())
            .map(|r| r.source)
            .collect()
    }

    /// The nonempty projected relators as a (possibly non-reduced)
    /// presentation.
    pub fn to_presentation(&self) -> Result<Presentation> {
        let words = self
            .relators
            .iter()
            .filter(|r| !r.word.is_empty())
            .map(|r| r.word.clone())
            .collect();
        Presentation::literal(self.alphabet.clone(), words)
    }
}

pub fn quotient(spec: &SubcomplexSpec) -> QuotientPresentation {
    let parent = spec.parent();
    let mut new_index = vec![None; parent.alphabet().len()];
    let mut names = Vec::new();
    for (g, name) in parent.alphabet().names().iter().enumerate() {
        if !spec.is_sub_generator(g) {
            new_index[g] = Some(names.len());
            names.push(name.clone());
        }
    }
    let alphabet = Alphabet::new(names).expect("subset of a valid alphabet");
    let relators = spec
        .outside()
        .map(|i| QuotientRelator {
            source: i,
            word: parent.relator(i).map_generators(|g| new_index[g]),
        })
        .collect();
    QuotientPresentation {
        alphabet,
        relators,
        dropped: spec.sub_relators().to_vec(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerViolation {
    pub relator: usize,
    pub before: usize,
    /// `None` when the boundary projects to a point.
    pub after: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraPowersVerdict {
    pub holds: bool,
    pub violations: Vec<PowerViolation>,
}

/// No extra powers: every relator outside `Y` has the same exponent before
/// and after projection. A relator projecting to a point is a violation.
pub fn check_no_extra_powers(spec: &SubcomplexSpec) -> ExtraPowersVerdict {
    let violations: Vec<PowerViolation> = spec
        .outside()
        .filter_map(|i| {
            let r = spec.parent().relator(i);
            let before = r.exponent().expect("relators are nonempty");
            let after = spec.project(r).exponent().ok();
            (after != Some(before)).then_some(PowerViolation {
                relator: i,
                before,
                after,
            })
        })
        .collect();
    ExtraPowersVerdict {
        holds: violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicatesVerdict {
    pub holds: bool,
    /// Pairs `(i, j)` with `∂R̄ᵢ = ∂R̄ⱼ` up to rotation but `∂Rᵢ ≠ ∂Rⱼ`.
    pub collisions: Vec<(usize, usize)>,
    /// The same test with `∂R̄ⱼ` read backwards. Reported, not fatal.
    pub inverse_collisions: Vec<(usize, usize)>,
}

/// No duplicates: relators outside `Y` with equal projected boundaries (as
/// cyclic words) have equal boundaries.
pub fn check_no_duplicates(spec: &SubcomplexSpec) -> DuplicatesVerdict {
    let cells: Vec<(usize, &Word, Word)> = spec
        .outside()
        .map(|i| {
            let r = spec.parent().relator(i);
            (i, r, spec.project(r))
        })
        .collect();
    let mut collisions = Vec::new();
    let mut inverse_collisions = Vec::new();
    for (a, (i, r1, p1)) in cells.iter().enumerate() {
        for (j, r2, p2) in &cells[a + 1..] {
            if p1.is_rotation_of(p2) && !r1.is_rotation_of(r2) {
                collisions.push((*i, *j));
            }
            let p2_inv = p2.inverse();
            if p1.is_rotation_of(&p2_inv) && !r1.is_rotation_of(&r2.inverse()) {
                inverse_collisions.push((*i, *j));
            }
        }
    }
    DuplicatesVerdict {
        holds: collisions.is_empty(),
        collisions,
        inverse_collisions,
    }
}

/// Two 2-cells glued along an edge labelled `shared_edge`, each boundary
/// read from that edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoCellDiagram {
    pub r1: usize,
    pub r2: usize,
    pub shared_edge: Letter,
    pub rot1: usize,
    pub rot2: usize,
}

/// Whether the two boundary paths, read from the shared edge, are the same
/// closed path.
pub fn cancellable_alignment(p: &Presentation, d: &TwoCellDiagram) -> Result<bool> {
    let side = |r: usize, rot: usize| -> Result<Word> {
        let w = p
            .relators()
            .get(r)
            .ok_or_else(|| Error::MalformedDiagram(format!("relator {r} out of range")))?;
        if rot >= w.len() {
            return Err(Error::MalformedDiagram(format!(
                "rotation {rot} out of range for relator {r} of length {}",
                w.len()
            )));
        }
        if w.letters()[rot] != d.shared_edge {
            return Err(Error::MalformedDiagram(format!(
                "relator {r} rotated by {rot} does not start with the shared edge"
            )));
        }
        Ok(w.rotate(rot))
    };
    Ok(side(d.r1, d.rot1)? == side(d.r2, d.rot2)?)
}

/// A cancellable pair in `X/Y` whose preimage in `X` is not cancellable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCounterexample {
    /// Over the quotient presentation; `r1`, `r2` index its relator list.
    pub quotient: TwoCellDiagram,
    /// The preimage over the parent presentation.
    pub lift: TwoCellDiagram,
}

/// Exhaustive search over pairs of cells outside `Y` (a cell may be paired
/// with itself) and over alignments of their projected boundaries.
///
/// Each quotient edge has exactly one preimage edge, so each cancellable
/// quotient alignment has exactly one candidate lift.
pub fn liftability_counterexample_search(spec: &SubcomplexSpec) -> Option<LiftCounterexample> {
    let q = quotient(spec);
    let qp = &q.relators;
    let parent = spec.parent();
    let positions: Vec<Vec<usize>> = qp
        .iter()
        .map(|r| spec.surviving_positions(parent.relator(r.source)))
        .collect();
    for a in 0..qp.len() {
        for b in a..qp.len() {
            let (w1, w2) = (&qp[a].word, &qp[b].word);
            if w1.is_empty() || w1.len() != w2.len() {
                continue;
            }
            let rot1 = w1.rotations();
            let rot2 = w2.rotations();
            let (r1, r2) = (parent.relator(qp[a].source), parent.relator(qp[b].source));
            for (q1, u1) in rot1.iter().enumerate() {
                for (q2, u2) in rot2.iter().enumerate() {
                    if u1 != u2 {
                        continue;
                    }
                    let (o1, o2) = (positions[a][q1], positions[b][q2]);
                    if r1.rotate(o1) != r2.rotate(o2) {
                        let shared = w1.letters()[q1];
                        return Some(LiftCounterexample {
                            quotient: TwoCellDiagram {
                                r1: a,
                                r2: b,
                                shared_edge: shared,
                                rot1: q1,
                                rot2: q2,
                            },
                            lift: TwoCellDiagram {
                                r1: qp[a].source,
                                r2: qp[b].source,
                                shared_edge: r1.letters()[o1],
                                rot1: o1,
                                rot2: o2,
                            },
                        });
                    }
                }
            }
        }
    }
    None
}
