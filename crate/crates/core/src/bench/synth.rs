//! Seeded synthetic ontologies.
//!
//! Every generated axiom holds in a fixed one-element interpretation (all
//! roles reflexive on the single element, concept names drawn at random), so
//! the output is consistent by construction.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::{Axiom, Concept, ConceptName, Individual, Ontology, RoleName, SymbolTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Conjunction and existential restriction only.
    El,
    /// Adds negation, disjunction and value restriction.
    Alc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SynthConfig {
    pub profile: Profile,
    pub tbox_axioms: usize,
    pub abox_axioms: usize,
    pub concepts: usize,
    pub roles: usize,
    pub individuals: usize,
    /// Maximum depth of a right-hand side.
    pub max_depth: usize,
    pub seed: u64,
}

impl SynthConfig {
    pub fn new(profile: Profile, tbox_axioms: usize, seed: u64) -> Self {
        let concepts = (tbox_axioms / 2).max(4);
        SynthConfig {
            profile,
            tbox_axioms,
            abox_axioms: (tbox_axioms / 10).max(2),
            concepts,
            roles: (concepts / 25).clamp(1, 8),
            individuals: (tbox_axioms / 20).max(2),
            max_depth: 2,
            seed,
        }
    }

    /// The 1000-axiom ALC ontology used for budget checks.
    pub fn thousand(seed: u64) -> Self {
        let mut cfg = SynthConfig::new(Profile::Alc, 900, seed);
        cfg.abox_axioms = 100;
        cfg
    }
}

struct Gen {
    rng: ChaCha8Rng,
    profile: Profile,
    concepts: Vec<ConceptName>,
    roles: Vec<RoleName>,
    truth: Vec<bool>,
}

impl Gen {
    fn holds(&self, c: &Concept) -> bool {
        match c {
            Concept::Top => true,
            Concept::Bot => false,
            Concept::Name(n) => self.truth[n.0 as usize],
            Concept::Not(x) => !self.holds(x),
            Concept::And(a, b) => self.holds(a) && self.holds(b),
            Concept::Or(a, b) => self.holds(a) || self.holds(b),
            Concept::Exists(_, x) | Concept::Forall(_, x) => self.holds(x),
            Concept::Gfp(_) | Concept::Lfp(_) | Concept::Var(_) => unreachable!("generator emits no fixpoints"),
        }
    }

    fn name(&mut self, below: usize) -> Concept {
        let i = self.rng.random_range(0..below.max(1));
        Concept::Name(self.concepts[i])
    }

    fn concept(&mut self, depth: usize, below: usize) -> Concept {
        if depth == 0 || self.rng.random_bool(0.3) {
            let n = self.name(below);
            return if self.profile == Profile::Alc && self.rng.random_bool(0.15) { Concept::not(n) } else { n };
        }
        let r = *self.roles.choose(&mut self.rng).unwrap();
        let ops = match self.profile {
            Profile::El => 2,
            Profile::Alc => 4,
        };
        match self.rng.random_range(0..ops) {
            0 => Concept::and(self.concept(depth - 1, below), self.concept(depth - 1, below)),
            1 => Concept::exists(r, self.concept(depth - 1, below)),
            2 => Concept::or(self.concept(depth - 1, below), self.concept(depth - 1, below)),
            _ => Concept::forall(r, self.concept(depth - 1, below)),
        }
    }

    fn lhs(&mut self, i: usize) -> Concept {
        if self.rng.random_bool(0.05) {
            let r = *self.roles.choose(&mut self.rng).unwrap();
            let n = self.name(self.concepts.len());
            Concept::exists(r, n)
        } else {
            Concept::Name(self.concepts[i % self.concepts.len()])
        }
    }
}

/// Generates a consistent ontology with concept names `C0..`, roles `r0..`
/// and individuals `i0..`.
pub fn generate_ontology(cfg: &SynthConfig) -> Ontology {
    let mut symbols = SymbolTable::new();
    let concepts: Vec<ConceptName> =
        (0..cfg.concepts.max(1)).map(|i| symbols.intern_concept(&format!("C{i}"))).collect();
    let roles: Vec<RoleName> = (0..cfg.roles.max(1)).map(|i| symbols.intern_role(&format!("r{i}"))).collect();
    let individuals: Vec<Individual> =
        (0..cfg.individuals.max(1)).map(|i| symbols.intern_individual(&format!("i{i}"))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let truth = (0..concepts.len()).map(|_| rng.random_bool(0.5)).collect();
    let mut g = Gen { rng, profile: cfg.profile, concepts, roles, truth };

    let mut axioms = Vec::with_capacity(cfg.tbox_axioms + cfg.abox_axioms);
    let mut i = 0usize;
    while axioms.len() < cfg.tbox_axioms {
        let sub = g.lhs(i);
        // Right-hand sides favour names introduced earlier, giving a hierarchy.
        let below = (i % g.concepts.len()).max(1);
        let depth = g.rng.random_range(0..=cfg.max_depth);
        let sup = g.concept(depth, below);
        i += 1;
        if cfg.profile == Profile::Alc && g.holds(&sub) && !g.holds(&sup) {
            continue;
        }
        let ax = Axiom::gci(sub, sup);
        if !axioms.contains(&ax) {
            axioms.push(ax);
        }
    }
    let tbox = axioms.len();
    while axioms.len() - tbox < cfg.abox_axioms {
        let a = *individuals.choose(&mut g.rng).unwrap();
        if g.rng.random_bool(0.3) && individuals.len() > 1 {
            let b = *individuals.choose(&mut g.rng).unwrap();
            let r = *g.roles.choose(&mut g.rng).unwrap();
            axioms.push(Axiom::role(r, a, b));
            continue;
        }
        let n = g.concepts.len();
        let depth = g.rng.random_range(0..=1);
        let c = g.concept(depth, n);
        if g.profile == Profile::Alc && !g.holds(&c) {
            continue;
        }
        axioms.push(Axiom::assertion(c, a));
    }
    Ontology::with_axioms(symbols, axioms)
}
