//! Library-level runs across modules: text in, verdicts out.

use hnnkit::dehn::{dehn_solve, replay};
use hnnkit::hnn::{certify, construct_embedding, construct_irreducible_embedding};
use hnnkit::presentation::{check_cp, check_cprime, compute_pieces, parse_file};
use hnnkit::subquotient::{check_no_duplicates, check_no_extra_powers, quotient, SubcomplexSpec};
use hnnkit::words::{format_word, parse_word};
use hnnkit::{Construction, PartialAscHnn, Symmetrization};

const H1: &str = "\
hnn: t
ascending: a b
free: c
rel: t a t' = ( a b c )^8
rel: t b t' = ( a c )^9 b
";

#[test]
fn file_to_relative_checks() {
    let f = parse_file("# one cell\ngens: a b c\nrel x: b c a b c b c\n").unwrap();
    let p = f.to_presentation().unwrap();
    assert_eq!(p.labels()[0].as_deref(), Some("x"));
    let spec = SubcomplexSpec::killing(p, &["a"]).unwrap();
    let q = quotient(&spec);
    assert_eq!(format_word(&q.relators[0].word, &q.alphabet), "b c b c b c");
    assert!(!check_no_extra_powers(&spec).holds);
    assert!(check_no_duplicates(&spec).holds);
}

#[test]
fn unknown_generator_is_a_positioned_error() {
    let err = parse_file("gens: a b\nrel: a b c\n").unwrap_err();
    assert_eq!(err.to_string(), "2:10: unknown generator `c`");
}

#[test]
fn literal_and_symmetrized_pieces_differ_on_inverse_overlap() {
    // The inverse of the second relator contains `a b c`.
    let p = parse_file("gens: a b c\nrel: a b c\nrel: c' b' a' b\n")
        .unwrap()
        .to_presentation()
        .unwrap();
    let sym = compute_pieces(&p, Symmetrization::Symmetrized);
    let lit = compute_pieces(&p, Symmetrization::Literal);
    assert_eq!(sym.relators[0].max_piece, 3);
    assert!(lit.relators[0].max_piece < 3);
}

#[test]
fn embedding_round_trips_through_text() {
    let h = PartialAscHnn::parse(H1).unwrap();
    for construction in [Construction::Basic, Construction::Irreducible] {
        let r = match construction {
            Construction::Basic => construct_embedding(&h, 11),
            Construction::Irreducible => construct_irreducible_embedding(&h, 11),
        }
        .unwrap();
        let g = PartialAscHnn::parse(&r.g.to_pres_text()).unwrap();
        assert_eq!(g, r.g);
        let cert = certify(&h, &g, construction).unwrap();
        assert_eq!(cert, r.certificate);
        assert!(cert.all_hold());
    }
}

#[test]
fn quotient_of_an_embedding_solves_by_dehn() {
    let h = PartialAscHnn::parse(H1).unwrap();
    let cert = construct_embedding(&h, 0).unwrap().certificate;
    let p = cert.quotient.to_presentation().unwrap();
    // The literal quotient cells are rotations of W, so they inherit C'(1/7).
    assert!(
        check_cprime(&p, 1, 7, Symmetrization::Symmetrized)
            .unwrap()
            .holds
    );
    assert!(check_cp(&p, 7, Symmetrization::Symmetrized).unwrap().holds);
    let r = p.relator(1);
    let w = parse_word("c1 c2", p.alphabet()).unwrap();
    let word = w.concat(r).concat(&w.inverse()).concat(p.relator(0));
    let out = dehn_solve(&p, &word).unwrap();
    assert!(out.trivial);
    assert!(replay(&p, &word, &out));
}
