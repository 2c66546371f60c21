//! Shared oracles and generators for the integration tests.
#![allow(dead_code)]

pub mod parser_checks;

use std::collections::HashMap;

use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use alc_abduct::abduction::check_preconditions;
use alc_abduct::model::{
    Axiom, Concept, ConceptAssertion, ConceptName, Hypothesis, Individual, Ontology, RoleName, SymbolSet, SymbolTable,
};
use alc_abduct::parser::{parse_observation, parse_ontology, SourceDocument};
use alc_abduct::tableau::{Reasoner, TableauError};

pub const CONCEPT_NAMES: [&str; 6] = ["A", "B", "C", "D", "E", "G"];
pub const ROLE_NAMES: [&str; 2] = ["r", "s"];
pub const INDIVIDUAL_NAMES: [&str; 3] = ["a", "b", "c"];

/// A symbol table with a fixed prefix of the names above interned.
#[derive(Clone, Debug)]
pub struct Vocab {
    pub table: SymbolTable,
    pub concepts: Vec<ConceptName>,
    pub roles: Vec<RoleName>,
    pub individuals: Vec<Individual>,
}

impl Vocab {
    pub fn new(concepts: usize, roles: usize, individuals: usize) -> Self {
        let mut table = SymbolTable::new();
        let concepts = CONCEPT_NAMES[..concepts].iter().map(|n| table.intern_concept(n)).collect();
        let roles = ROLE_NAMES[..roles].iter().map(|n| table.intern_role(n)).collect();
        let individuals = INDIVIDUAL_NAMES[..individuals].iter().map(|n| table.intern_individual(n)).collect();
        Vocab { table, concepts, roles, individuals }
    }
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// A fixture ontology and its observation.
pub fn load_fixture(stem: &str) -> (Ontology, Vec<ConceptAssertion>) {
    let mut onto = parse_ontology(&SourceDocument::inline(fixture(&format!("{stem}.dl")))).unwrap();
    let obs = parse_observation(&SourceDocument::inline(fixture(&format!("{stem}.obs"))), &mut onto.symbols).unwrap();
    (onto, obs)
}

// ---------------------------------------------------------------------------
// Finite-model oracle

/// An interpretation over `0..n` with sets as bit masks.
struct Interp<'a> {
    n: usize,
    names: &'a HashMap<ConceptName, u32>,
    /// `succ[r][x]`: mask of `r`-successors of `x`.
    succ: &'a HashMap<RoleName, Vec<u32>>,
    inds: &'a HashMap<Individual, usize>,
}

impl Interp<'_> {
    fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    fn eval(&self, c: &Concept, env: &mut Vec<u32>) -> u32 {
        match c {
            Concept::Top => self.full(),
            Concept::Bot => 0,
            Concept::Name(n) => self.names.get(n).copied().unwrap_or(0),
            Concept::Var(i) => env[env.len() - 1 - *i as usize],
            Concept::Not(x) => !self.eval(x, env) & self.full(),
            Concept::And(a, b) => self.eval(a, env) & self.eval(b, env),
            Concept::Or(a, b) => self.eval(a, env) | self.eval(b, env),
            Concept::Exists(r, x) | Concept::Forall(r, x) => {
                let inner = self.eval(x, env);
                let exists = matches!(c, Concept::Exists(..));
                let empty = vec![0; self.n];
                let succ = self.succ.get(r).unwrap_or(&empty);
                (0..self.n)
                    .filter(|&e| if exists { succ[e] & inner != 0 } else { succ[e] & !inner == 0 })
                    .fold(0, |m, e| m | 1 << e)
            }
            Concept::Lfp(body) | Concept::Gfp(body) => {
                let mut x = if matches!(c, Concept::Lfp(_)) { 0 } else { self.full() };
                loop {
                    env.push(x);
                    let next = self.eval(body, env);
                    env.pop();
                    if next == x {
                        return x;
                    }
                    x = next;
                }
            }
        }
    }

    fn holds(&self, c: &Concept, a: Individual) -> bool {
        self.eval(c, &mut Vec::new()) >> self.inds[&a] & 1 == 1
    }

    fn satisfies(&self, ax: &Axiom) -> bool {
        match ax {
            Axiom::Gci { sub, sup } => {
                let mut env = Vec::new();
                self.eval(sub, &mut env) & !self.eval(sup, &mut env) == 0
            }
            Axiom::ConceptAssertion(ca) => self.holds(&ca.concept, ca.individual),
            Axiom::DisjunctiveAssertion(parts) => parts.iter().any(|p| self.holds(&p.concept, p.individual)),
            Axiom::RoleAssertion { role, subject, object } => {
                self.succ.get(role).is_some_and(|s| s[self.inds[subject]] >> self.inds[object] & 1 == 1)
            }
        }
    }
}

/// Searches every interpretation with at most `max_domain` elements for a
/// model of `axioms`.
pub fn has_finite_model(axioms: &[Axiom], max_domain: usize) -> bool {
    let mut sig = SymbolSet::new();
    let mut inds: Vec<Individual> = Vec::new();
    for ax in axioms {
        ax.collect_signature(&mut sig);
        for a in ax.individuals() {
            if !inds.contains(&a) {
                inds.push(a);
            }
        }
    }
    let names: Vec<ConceptName> = sig.concepts.iter().copied().collect();
    let roles: Vec<RoleName> = sig.roles.iter().copied().collect();
    for n in 1..=max_domain {
        let name_bits = n * names.len();
        let role_bits = n * n * roles.len();
        let ind_choices = n.pow(inds.len() as u32);
        assert!(name_bits + role_bits <= 24, "interpretation space too large");
        for ind_code in 0..ind_choices {
            let mut code = ind_code;
            let ind_map: HashMap<Individual, usize> = inds
                .iter()
                .map(|&a| {
                    let e = code % n;
                    code /= n;
                    (a, e)
                })
                .collect();
            for role_code in 0u64..1 << role_bits {
                let succ: HashMap<RoleName, Vec<u32>> = roles
                    .iter()
                    .enumerate()
                    .map(|(k, &r)| {
                        let rows = (0..n).map(|x| ((role_code >> ((k * n + x) * n)) & ((1 << n) - 1)) as u32).collect();
                        (r, rows)
                    })
                    .collect();
                for name_code in 0u64..1 << name_bits {
                    let name_map: HashMap<ConceptName, u32> = names
                        .iter()
                        .enumerate()
                        .map(|(k, &c)| (c, ((name_code >> (k * n)) & ((1 << n) - 1)) as u32))
                        .collect();
                    let i = Interp { n, names: &name_map, succ: &succ, inds: &ind_map };
                    if axioms.iter().all(|ax| i.satisfies(ax)) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Hypothesis comparison

/// `O ∪ {h} ⊨ g`, with `g` negated disjunct by disjunct.
pub fn hyp_entails(onto: &Ontology, h: &Hypothesis, g: &Hypothesis, reasoner: &Reasoner) -> Result<bool, TableauError> {
    let mut extra = h.to_axioms();
    for d in &g.disjuncts {
        let negs: Vec<ConceptAssertion> = d.parts.iter().map(ConceptAssertion::negated).collect();
        extra.push(if negs.len() == 1 {
            Axiom::ConceptAssertion(negs.into_iter().next().unwrap())
        } else {
            Axiom::DisjunctiveAssertion(negs)
        });
    }
    let mut axioms: Vec<&Axiom> = onto.axioms.iter().collect();
    axioms.extend(extra.iter());
    Ok(!reasoner.satisfiable(&axioms)?)
}

pub fn hyp_equivalent(onto: &Ontology, h: &Hypothesis, g: &Hypothesis) -> Result<bool, TableauError> {
    let r = Reasoner::default();
    Ok(hyp_entails(onto, h, g, &r)? && hyp_entails(onto, g, h, &r)?)
}

// ---------------------------------------------------------------------------
// Seeded generators

/// A fixpoint-free concept of depth at most `depth`.
pub fn random_concept(rng: &mut ChaCha8Rng, v: &Vocab, depth: usize) -> Concept {
    if depth == 0 || rng.random_bool(0.35) {
        return match rng.random_range(0..20) {
            0 => Concept::Top,
            1 => Concept::Bot,
            2..=5 => Concept::not(Concept::Name(*v.concepts.choose(rng).unwrap())),
            _ => Concept::Name(*v.concepts.choose(rng).unwrap()),
        };
    }
    let ops = if v.roles.is_empty() { 3 } else { 5 };
    match rng.random_range(0..ops) {
        0 => Concept::not(random_concept(rng, v, depth - 1)),
        1 => Concept::and(random_concept(rng, v, depth - 1), random_concept(rng, v, depth - 1)),
        2 => Concept::or(random_concept(rng, v, depth - 1), random_concept(rng, v, depth - 1)),
        3 => Concept::exists(*v.roles.choose(rng).unwrap(), random_concept(rng, v, depth - 1)),
        _ => Concept::forall(*v.roles.choose(rng).unwrap(), random_concept(rng, v, depth - 1)),
    }
}

/// A closed, well-formed concept that may contain fixpoints. `binders`
/// holds the polarity each enclosing binder was introduced at.
pub fn random_fixpoint_concept(
    rng: &mut ChaCha8Rng,
    v: &Vocab,
    depth: usize,
    binders: &mut Vec<bool>,
    positive: bool,
) -> Concept {
    let vars: Vec<u32> =
        (0..binders.len()).filter(|&i| binders[binders.len() - 1 - i] == positive).map(|i| i as u32).collect();
    if depth == 0 || rng.random_bool(0.25) {
        if !vars.is_empty() && rng.random_bool(0.5) {
            return Concept::Var(*vars.choose(rng).unwrap());
        }
        return match rng.random_range(0..10) {
            0 => Concept::Top,
            1 => Concept::Bot,
            _ => Concept::Name(*v.concepts.choose(rng).unwrap()),
        };
    }
    match rng.random_range(0..7) {
        0 => Concept::not(random_fixpoint_concept(rng, v, depth - 1, binders, !positive)),
        1 => Concept::and(
            random_fixpoint_concept(rng, v, depth - 1, binders, positive),
            random_fixpoint_concept(rng, v, depth - 1, binders, positive),
        ),
        2 => Concept::or(
            random_fixpoint_concept(rng, v, depth - 1, binders, positive),
            random_fixpoint_concept(rng, v, depth - 1, binders, positive),
        ),
        3 => Concept::exists(
            *v.roles.choose(rng).unwrap(),
            random_fixpoint_concept(rng, v, depth - 1, binders, positive),
        ),
        4 => Concept::forall(
            *v.roles.choose(rng).unwrap(),
            random_fixpoint_concept(rng, v, depth - 1, binders, positive),
        ),
        k => {
            binders.push(positive);
            let body = random_fixpoint_concept(rng, v, depth - 1, binders, positive);
            binders.pop();
            if k == 5 {
                Concept::gfp(body)
            } else {
                Concept::lfp(body)
            }
        }
    }
}

pub fn random_axiom(rng: &mut ChaCha8Rng, v: &Vocab, depth: usize) -> Axiom {
    match rng.random_range(0..10) {
        0..=5 => Axiom::gci(random_concept(rng, v, depth), random_concept(rng, v, depth)),
        6..=8 => Axiom::assertion(random_concept(rng, v, depth), *v.individuals.choose(rng).unwrap()),
        _ => {
            let r = *v.roles.choose(rng).unwrap();
            Axiom::role(r, *v.individuals.choose(rng).unwrap(), *v.individuals.choose(rng).unwrap())
        }
    }
}

/// A valid abduction problem: consistent ontology, consistent and
/// non-entailed observation, forgetting signature meeting the observation.
#[derive(Clone, Debug)]
pub struct Instance {
    pub seed: u64,
    pub ontology: Ontology,
    pub observation: Vec<ConceptAssertion>,
    pub forget: SymbolSet,
}

/// Draws instances until one passes the preconditions.
pub fn random_instance(seed: u64, max_axioms: usize, concepts: usize, roles: usize, depth: usize) -> Instance {
    let reasoner = Reasoner::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = Vocab::new(concepts, roles, 2);
    loop {
        let n = rng.random_range(2..=max_axioms);
        let axioms: Vec<Axiom> = (0..n).map(|_| random_axiom(&mut rng, &v, depth)).collect();
        let ontology = Ontology::with_axioms(v.table.clone(), axioms);
        let mut c = random_concept(&mut rng, &v, depth);
        if c.signature().concepts.is_empty() {
            c = Concept::Name(*v.concepts.choose(&mut rng).unwrap());
        }
        let obs = vec![ConceptAssertion::new(c, v.individuals[0])];
        if check_preconditions(&ontology, &obs, &reasoner).is_err() {
            continue;
        }
        let obs_names: Vec<ConceptName> = obs[0].concept.signature().concepts.into_iter().collect();
        let mut all = ontology.signature().concepts;
        all.extend(obs_names.iter().copied());
        let first = *obs_names.choose(&mut rng).unwrap();
        let mut names = vec![first];
        for c in all {
            if c != first && rng.random_bool(0.3) {
                names.push(c);
            }
        }
        return Instance { seed, ontology, observation: obs, forget: SymbolSet::from_concepts(names) };
    }
}

// ---------------------------------------------------------------------------
// Proptest strategies

/// Fixpoint-free concepts over the first `names` concept names and `roles`
/// roles.
pub fn concept_strategy(names: usize, roles: usize, depth: u32) -> impl Strategy<Value = Concept> {
    let v = Vocab::new(names, roles.max(1), 0);
    let cs = v.concepts.clone();
    let rs = if roles == 0 { Vec::new() } else { v.roles.clone() };
    let leaf = prop_oneof![
        1 => Just(Concept::Top),
        1 => Just(Concept::Bot),
        8 => proptest::sample::select(cs).prop_map(Concept::Name),
    ];
    leaf.prop_recursive(depth, 32, 2, move |inner| {
        let mut options: Vec<BoxedStrategy<Concept>> = vec![
            inner.clone().prop_map(Concept::not).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::and(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::or(a, b)).boxed(),
        ];
        if !rs.is_empty() {
            let r1 = proptest::sample::select(rs.clone());
            let r2 = proptest::sample::select(rs.clone());
            options.push((r1, inner.clone()).prop_map(|(r, c)| Concept::exists(r, c)).boxed());
            options.push((r2, inner).prop_map(|(r, c)| Concept::forall(r, c)).boxed());
        }
        proptest::strategy::Union::new(options)
    })
}

/// Small axiom sets over `names` concept names, one role and individuals
/// `a`, `b`.
pub fn axioms_strategy(names: usize, max_axioms: usize, depth: u32) -> impl Strategy<Value = Vec<Axiom>> {
    let v = Vocab::new(names, 1, 2);
    let r = v.roles[0];
    let (a, b) = (v.individuals[0], v.individuals[1]);
    let c = || concept_strategy(names, 1, depth);
    let axiom = prop_oneof![
        5 => (c(), c()).prop_map(|(x, y)| Axiom::gci(x, y)),
        4 => (c(), proptest::bool::ANY).prop_map(move |(x, first)| Axiom::assertion(x, if first { a } else { b })),
        1 => Just(Axiom::role(r, a, b)),
    ];
    proptest::collection::vec(axiom, 1..=max_axioms)
}

/// The table matching [`concept_strategy`] and [`axioms_strategy`].
pub fn strategy_table(names: usize) -> SymbolTable {
    Vocab::new(names, 1, 2).table
}
