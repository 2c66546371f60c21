use std::collections::BTreeSet;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abduction::{check_preconditions, AbductionError};
use crate::model::{Axiom, Concept, ConceptAssertion, ConceptName, Individual, Ontology, SymbolSet};
use crate::tableau::Reasoner;

use super::BenchError;

/// Rejected candidates allowed per requested observation.
pub const REJECTIONS_PER_OBSERVATION: usize = 200;

/// Deepest observation concept produced by [`generate_observations`].
pub const MAX_OBSERVATION_DEPTH: usize = 3;

/// Mixes `parts` into `base`; used to give every sampling step its own seed.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut x = base;
    for &p in parts {
        x ^= p.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(x << 6).wrapping_add(x >> 2);
        x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x ^= x >> 31;
    }
    x
}

fn collect_subconcepts(c: &Concept, out: &mut BTreeSet<Concept>) {
    if c.contains_fixpoint() || !c.signature().concepts.iter().all(|n| n.is_user()) {
        return;
    }
    match c {
        Concept::Top | Concept::Bot | Concept::Var(_) => return,
        Concept::Not(x) | Concept::Exists(_, x) | Concept::Forall(_, x) => collect_subconcepts(x, out),
        Concept::And(a, b) | Concept::Or(a, b) => {
            collect_subconcepts(a, out);
            collect_subconcepts(b, out);
        }
        Concept::Name(_) | Concept::Gfp(_) | Concept::Lfp(_) => {}
    }
    out.insert(c.clone());
}

/// Every fixpoint-free subconcept of `onto` over user names, in a fixed order.
pub fn subconcepts(onto: &Ontology) -> Vec<Concept> {
    let mut out = BTreeSet::new();
    for ax in &onto.axioms {
        for c in ax.concepts() {
            collect_subconcepts(c, &mut out);
        }
    }
    out.into_iter().collect()
}

fn combine(rng: &mut ChaCha8Rng, pool: &[Concept], onto: &Ontology, budget: usize) -> Concept {
    let base = pool.choose(rng).unwrap().clone();
    if base.depth() >= budget || rng.random_bool(0.4) {
        return base;
    }
    let roles: Vec<_> = onto.signature().roles.into_iter().collect();
    let op = rng.random_range(0..if roles.is_empty() { 3 } else { 5 });
    let c = match op {
        0 => Concept::not(base),
        1 | 2 => {
            let other = combine(rng, pool, onto, budget - 1);
            if op == 1 {
                Concept::and(base, other)
            } else {
                Concept::or(base, other)
            }
        }
        3 => Concept::exists(*roles.choose(rng).unwrap(), base),
        _ => Concept::forall(*roles.choose(rng).unwrap(), base),
    };
    if c.depth() > budget {
        pool.choose(rng).unwrap().clone()
    } else {
        c
    }
}

fn individuals(onto: &Ontology) -> Vec<Individual> {
    let set: BTreeSet<Individual> = onto.axioms.iter().flat_map(Axiom::individuals).filter(|a| !a.is_fresh()).collect();
    set.into_iter().collect()
}

/// Samples `n` single-assertion observations that are consistent with and
/// not entailed by `onto`. Concepts combine subconcepts of `onto` up to depth
/// [`MAX_OBSERVATION_DEPTH`]. Ontologies without individuals get an
/// individual named `obs`.
pub fn generate_observations(
    onto: &mut Ontology,
    n: usize,
    seed: u64,
    reasoner: &Reasoner,
) -> Result<Vec<ConceptAssertion>, BenchError> {
    let pool: Vec<Concept> = subconcepts(onto).into_iter().filter(|c| c.depth() <= MAX_OBSERVATION_DEPTH).collect();
    if pool.is_empty() {
        return Err(BenchError::SamplingExhausted { wanted: n, found: 0, attempts: 0 });
    }
    let mut inds = individuals(onto);
    if inds.is_empty() {
        inds.push(onto.symbols.intern_individual("obs"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let limit = n.max(1) * REJECTIONS_PER_OBSERVATION;
    let mut attempts = 0;
    while out.len() < n {
        if attempts == limit {
            return Err(BenchError::SamplingExhausted { wanted: n, found: out.len(), attempts });
        }
        attempts += 1;
        let c = combine(&mut rng, &pool, onto, MAX_OBSERVATION_DEPTH);
        let a = *inds.choose(&mut rng).unwrap();
        let obs = ConceptAssertion::new(c, a);
        match check_preconditions(onto, std::slice::from_ref(&obs), reasoner) {
            Ok(()) => out.push(obs),
            Err(AbductionError::Tableau(e)) => return Err(BenchError::Reasoner(e)),
            Err(_) => {}
        }
    }
    Ok(out)
}

/// `size` concept names: one from `sig(ψ)`, the rest uniform over the
/// remaining names of `sig(O) ∪ sig(ψ)`.
pub fn pick_signature(
    onto: &Ontology,
    observation: &[ConceptAssertion],
    size: usize,
    seed: u64,
) -> Result<SymbolSet, BenchError> {
    let mut obs_sig = SymbolSet::new();
    for o in observation {
        o.concept.collect_signature(&mut obs_sig);
    }
    let obs_names: Vec<ConceptName> = obs_sig.user_only().concepts.into_iter().collect();
    if size == 0 || obs_names.is_empty() {
        return Err(BenchError::NoObservationSymbols);
    }
    let mut all = onto.signature().user_only().concepts;
    all.extend(obs_names.iter().copied());
    if size > all.len() {
        return Err(BenchError::SignatureTooLarge { requested: size, available: all.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = *obs_names.choose(&mut rng).unwrap();
    let mut rest: Vec<ConceptName> = all.into_iter().filter(|&c| c != first).collect();
    rest.shuffle(&mut rng);
    Ok(SymbolSet::from_concepts(std::iter::once(first).chain(rest.into_iter().take(size - 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_ontology, SourceDocument};

    fn onto(text: &str) -> Ontology {
        parse_ontology(&SourceDocument::inline(text)).unwrap()
    }

    #[test]
    fn observations_pass_preconditions_and_repeat() {
        let text = "A SubClassOf exists r.B\nB SubClassOf C or D\nE SubClassOf not A\nA(x)\nr(x,y)";
        let mut o = onto(text);
        let reasoner = Reasoner::default();
        let first = generate_observations(&mut o, 10, 3, &reasoner).unwrap();
        let again = generate_observations(&mut o, 10, 3, &reasoner).unwrap();
        assert_eq!(first, again);
        for obs in &first {
            assert!(obs.concept.depth() <= MAX_OBSERVATION_DEPTH);
            assert!(check_preconditions(&o, std::slice::from_ref(obs), &reasoner).is_ok());
        }
    }

    #[test]
    fn everything_entailed_exhausts() {
        let mut o = onto("Top SubClassOf A\nA(x)");
        let err = generate_observations(&mut o, 1, 0, &Reasoner::default()).unwrap_err();
        assert!(matches!(err, BenchError::SamplingExhausted { found: 0, .. }));
    }

    #[test]
    fn signature_contract() {
        let mut o = onto("A SubClassOf B\nC SubClassOf D\nE(x)");
        let b = o.symbols.concept("B").unwrap();
        let x = o.symbols.intern_individual("x");
        let psi = [ConceptAssertion::new(Concept::Name(b), x)];
        let one = pick_signature(&o, &psi, 1, 9).unwrap();
        assert_eq!(one.concepts.into_iter().collect::<Vec<_>>(), vec![b]);
        let three = pick_signature(&o, &psi, 3, 9).unwrap();
        assert_eq!(three.len(), 3);
        assert!(three.contains_concept(b));
        assert!(three.roles.is_empty());
        assert!(matches!(
            pick_signature(&o, &psi, 6, 9),
            Err(BenchError::SignatureTooLarge { requested: 6, available: 5 })
        ));
    }
}
