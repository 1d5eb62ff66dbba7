//! JSON views of the library's results. Only integers, strings, booleans,
//! arrays and objects appear; ratios are `{num, den}`.

use hnnkit::dehn::{AreaReport, DehnOutcome, DehnStep};
use hnnkit::hnn::{EmbeddingCertificate, IrreducibleEvidence};
use hnnkit::presentation::{
    CpVerdict, CprimeVerdict, Orientation, PieceReport, Presentation, Symmetrization,
};
use hnnkit::stallings::CoreGraph;
use hnnkit::subquotient::{
    DuplicatesVerdict, ExtraPowersVerdict, QuotientPresentation, SubcomplexSpec,
};
use hnnkit::words::{format_letter, format_word, DigramCoverage};
use hnnkit::{Alphabet, Construction, Ratio, Word};
use serde_json::{json, Map, Value};

/// Rebuilds every object with its keys inserted in sorted order, so output
/// is canonical whatever map type `serde_json` was built with.
pub fn canonical(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), canonical(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(canonical).collect()),
        other => other.clone(),
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonical(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn word(w: &Word, al: &Alphabet) -> Value {
    Value::String(format_word(w, al))
}

pub fn words(ws: &[Word], al: &Alphabet) -> Value {
    ws.iter().map(|w| word(w, al)).collect()
}

pub fn ratio(r: Ratio) -> Value {
    json!({ "num": r.num(), "den": r.den() })
}

fn names(al: &Alphabet, gens: &[usize]) -> Value {
    gens.iter()
        .map(|&g| Value::String(al.name(g).to_string()))
        .collect()
}

fn all_names(al: &Alphabet) -> Value {
    al.names().iter().cloned().map(Value::String).collect()
}

pub fn mode(m: Symmetrization) -> &'static str {
    match m {
        Symmetrization::Symmetrized => "symmetrized",
        Symmetrization::Literal => "literal",
    }
}

pub fn construction(c: Construction) -> &'static str {
    match c {
        Construction::Basic => "basic",
        Construction::Irreducible => "irreducible",
    }
}

pub fn parse_construction(s: &str) -> Option<Construction> {
    match s {
        "basic" => Some(Construction::Basic),
        "irreducible" => Some(Construction::Irreducible),
        _ => None,
    }
}

fn label(p: &Presentation, i: usize) -> Value {
    p.labels()
        .get(i)
        .cloned()
        .flatten()
        .map_or(Value::Null, Value::String)
}

pub fn presentation(p: &Presentation) -> Value {
    let al = p.alphabet();
    let relators: Vec<Value> = p
        .relators()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "index": i,
                "label": label(p, i),
                "word": word(r, al),
                "length": r.len(),
                "exponent": r.exponent().ok(),
            })
        })
        .collect();
    json!({ "generators": all_names(al), "relators": relators })
}

pub fn pieces(report: &PieceReport, p: &Presentation) -> Value {
    let al = p.alphabet();
    let relators: Vec<Value> = report
        .relators
        .iter()
        .map(|rp| {
            let r = p.relator(rp.relator);
            let decomposition = rp.decomposition.as_ref().map(|(start, parts)| {
                let mut at = *start;
                let parts: Vec<Value> = parts
                    .iter()
                    .map(|&len| {
                        let part = r.cyclic_subword(at, len);
                        at += len;
                        word(&part, al)
                    })
                    .collect();
                json!({ "offset": start, "parts": parts })
            });
            let occurrences: Vec<Value> = rp
                .pieces
                .iter()
                .map(|o| json!({ "word": word(&o.word, al), "occurrences": o.offsets }))
                .collect();
            json!({
                "relator": rp.relator,
                "label": label(p, rp.relator),
                "word": word(r, al),
                "length": rp.length,
                "maxPiece": rp.max_piece,
                "minDecomposition": rp.min_decomposition,
                "decomposition": decomposition,
                "pieces": occurrences,
            })
        })
        .collect();
    json!({ "mode": mode(report.mode), "relators": relators })
}

pub fn cp(v: &CpVerdict, al: &Alphabet) -> Value {
    let witnesses: Vec<Value> = v
        .witnesses
        .iter()
        .map(|w| json!({ "relator": w.relator, "pieces": words(&w.pieces, al) }))
        .collect();
    json!({ "holds": v.holds, "bound": v.bound, "witnesses": witnesses })
}

pub fn cprime(v: &CprimeVerdict, al: &Alphabet) -> Value {
    let worst = v
        .worst
        .as_ref()
        .map(|w| json!({ "relator": w.relator, "offset": w.offset, "piece": word(&w.piece, al) }));
    json!({
        "holds": v.holds,
        "lambda": ratio(v.lambda),
        "worstRatio": ratio(v.worst_ratio),
        "worst": worst,
    })
}

pub fn quotient(q: &QuotientPresentation) -> Value {
    let relators: Vec<Value> = q
        .relators
        .iter()
        .map(|r| {
            json!({
                "source": r.source,
                "word": word(&r.word, &q.alphabet),
                "length": r.word.len(),
                "exponent": r.word.exponent().ok(),
            })
        })
        .collect();
    json!({
        "generators": all_names(&q.alphabet),
        "relators": relators,
        "dropped": q.dropped,
        "degenerate": q.degenerate(),
    })
}

pub fn extra_powers(v: &ExtraPowersVerdict, spec: &SubcomplexSpec) -> Value {
    let al = spec.parent().alphabet();
    let violations: Vec<Value> = v
        .violations
        .iter()
        .map(|x| {
            let r = spec.parent().relator(x.relator);
            json!({
                "relator": x.relator,
                "word": word(r, al),
                "before": x.before,
                "after": x.after,
            })
        })
        .collect();
    json!({ "holds": v.holds, "violations": violations })
}

fn pairs(ps: &[(usize, usize)]) -> Value {
    ps.iter().map(|&(i, j)| json!([i, j])).collect()
}

pub fn duplicates(v: &DuplicatesVerdict) -> Value {
    json!({
        "holds": v.holds,
        "collisions": pairs(&v.collisions),
        "inverseCollisions": pairs(&v.inverse_collisions),
    })
}

pub fn graph(g: &CoreGraph, al: &Alphabet) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({ "from": e.from, "to": e.to, "label": al.name(e.generator) }))
        .collect();
    json!({ "vertices": g.vertex_count(), "basepoint": g.basepoint(), "edges": edges })
}

fn orientation(o: Orientation) -> &'static str {
    match o {
        Orientation::Forward => "forward",
        Orientation::Inverse => "inverse",
    }
}

fn step(s: &DehnStep, al: &Alphabet) -> Value {
    json!({
        "conjugator": word(&s.conjugator, al),
        "relator": s.relator,
        "orientation": orientation(s.orientation),
        "offset": s.offset,
        "position": s.position,
        "matched": s.matched,
        "relatorLength": s.relator_length,
        "lengthBefore": s.length_before,
        "lengthAfter": s.length_after,
    })
}

pub fn dehn(out: &DehnOutcome, al: &Alphabet) -> Value {
    let steps: Vec<Value> = out.steps.iter().map(|s| step(s, al)).collect();
    json!({
        "trivial": out.trivial,
        "residue": word(&out.residue, al),
        "area": out.steps.len(),
        "steps": steps,
    })
}

pub fn area(report: &AreaReport, al: &Alphabet) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "word": word(&r.word, al),
                "length": r.length,
                "area": r.area,
                "ratio": ratio(r.ratio),
                "segments": r.segments,
                "withinBound": r.within_bound,
            })
        })
        .collect();
    json!({
        "maxRatio": ratio(report.max_ratio),
        "allWithinBound": report.rows.iter().all(|r| r.within_bound),
        "rows": rows,
    })
}

fn coverage(c: &DigramCoverage, al: &Alphabet) -> Value {
    json!({ "covered": c.covered, "missing": words(&c.missing, al) })
}

fn irreducible(ev: &IrreducibleEvidence, al: &Alphabet) -> Value {
    let loops: Vec<Value> = ev
        .loops
        .iter()
        .map(|l| {
            json!({
                "generator": al.name(l.generator),
                "covering": word(&l.covering, al),
                "shape": l.shape,
                "coverage": coverage(&l.coverage, al),
            })
        })
        .collect();
    let labels: Vec<Value> = ev
        .x_labels
        .iter()
        .map(|&l| Value::String(format_letter(l, al)))
        .collect();
    json!({
        "coreVertices": ev.core_vertices,
        "coreEdges": ev.core_edges,
        "basepointDegree": ev.basepoint_degree,
        "degreeBound": ev.degree_bound,
        "xLabels": labels,
        "loops": loops,
        "wedgeCheck": ev.wedge_check,
        "wedgeCore": ev.wedge_core,
    })
}

/// `cert.json`: one key per certificate field, plus `allHold` and
/// `failures`.
pub fn certificate(c: &EmbeddingCertificate) -> Value {
    let al = &c.alphabet;
    let wal = &c.w_alphabet;
    let w_pres =
        Presentation::literal(wal.clone(), c.w_family.clone()).expect("W words are relators");
    json!({
        "construction": construction(c.construction),
        "alphabet": all_names(al),
        "newGenerators": names(al, &c.new_generators),
        "newRelators": c.new_relators,
        "hRelatorsPreserved": c.h_relators_preserved,
        "wAlphabet": all_names(wal),
        "wFamily": words(&c.w_family, wal),
        "quotient": quotient(&c.quotient),
        "quotientMatchesW": c.quotient_matches_w,
        "pieces": pieces(&c.pieces, &w_pres),
        "c7": cp(&c.c7, wal),
        "cprime": cprime(&c.cprime, wal),
        "exponents": c.exponents,
        "noProperPowers": c.no_proper_powers,
        "distinct": c.distinct,
        "noExtraPowers": json!({
            "holds": c.no_extra_powers.holds,
            "violations": c.no_extra_powers.violations.iter().map(|v| json!({
                "relator": v.relator, "before": v.before, "after": v.after,
            })).collect::<Vec<_>>(),
        }),
        "noDuplicates": duplicates(&c.no_duplicates),
        "monomorphism": c.monomorphism,
        "irreducible": c.irreducible.as_ref().map(|ev| irreducible(ev, al)),
        "allHold": c.all_hold(),
        "failures": c.failures(),
    })
}
