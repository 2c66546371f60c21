//! Parser round-trip and fuzz drivers shared by the parser tests and the
//! acceptance run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use alc_abduct::model::{Axiom, ConceptAssertion};
use alc_abduct::parser::{parse_axiom, parse_concept, parse_ontology, render_axiom, render_concept, SourceDocument};

use super::{random_axiom, random_fixpoint_concept, Vocab};

pub const ROUND_TRIP_CASES: usize = 10_000;
pub const FUZZ_CASES: usize = 10_000;

/// Canonical form of an axiom as the renderer sees it.
fn normalized(ax: &Axiom) -> Axiom {
    match ax {
        Axiom::Gci { sub, sup } => Axiom::gci(sub.normalize(), sup.normalize()),
        Axiom::ConceptAssertion(a) => Axiom::assertion(a.concept.normalize(), a.individual),
        Axiom::DisjunctiveAssertion(parts) => Axiom::DisjunctiveAssertion(
            parts.iter().map(|p| ConceptAssertion::new(p.concept.normalize(), p.individual)).collect(),
        ),
        Axiom::RoleAssertion { .. } => ax.clone(),
    }
}

/// Returns the number of failures.
pub fn round_trip(cases: usize, seed: u64) -> usize {
    let mut v = Vocab::new(4, 2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..cases {
        let c = random_fixpoint_concept(&mut rng, &v, 4, &mut Vec::new(), true);
        assert!(c.is_well_formed());
        let text = render_concept(&c, &v.table);
        match parse_concept(&text, &mut v.table) {
            Ok(back) if back == c.normalize() => {}
            other => {
                failures += 1;
                eprintln!("concept round trip: {text} -> {other:?}");
            }
        }
        let ax = if rng.random_bool(0.1) {
            let a = random_axiom(&mut rng, &v, 2);
            let b = random_axiom(&mut rng, &v, 2);
            match (a, b) {
                (Axiom::ConceptAssertion(x), Axiom::ConceptAssertion(y)) => Axiom::DisjunctiveAssertion(vec![x, y]),
                (a, _) => a,
            }
        } else {
            random_axiom(&mut rng, &v, 3)
        };
        let text = render_axiom(&ax, &v.table);
        match parse_axiom(&text, &mut v.table) {
            Ok(back) if back == normalized(&ax) => {}
            other => {
                failures += 1;
                eprintln!("axiom round trip: {text} -> {other:?}");
            }
        }
    }
    failures
}

/// Feeds random byte strings, half of them built from grammar tokens, to
/// the parser. Returns the number of panics.
pub fn fuzz(cases: usize, seed: u64) -> usize {
    const TOKENS: [&str; 22] = [
        "A",
        "B",
        "r",
        "a",
        "(",
        ")",
        ".",
        ",",
        " ",
        "\n",
        "not",
        "and",
        "or",
        "exists",
        "forall",
        "lfp",
        "gfp",
        "X",
        "SubClassOf",
        "Top",
        "Bot",
        "#",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut panics = 0;
    for _ in 0..cases {
        let len = rng.random_range(0..64);
        let bytes: Vec<u8> = if rng.random_bool(0.5) {
            (0..len).map(|_| rng.random()).collect()
        } else {
            (0..len).flat_map(|_| TOKENS[rng.random_range(0..TOKENS.len())].bytes().chain(*b" ")).collect()
        };
        let ok = std::panic::catch_unwind(|| {
            if let Ok(doc) = SourceDocument::from_bytes("fuzz", &bytes) {
                let _ = parse_ontology(&doc);
            }
            let text = String::from_utf8_lossy(&bytes);
            let mut table = Vocab::new(1, 1, 1).table;
            let _ = parse_concept(&text, &mut table);
            let _ = parse_axiom(&text, &mut table);
        });
        if ok.is_err() {
            panics += 1;
        }
    }
    panics
}
