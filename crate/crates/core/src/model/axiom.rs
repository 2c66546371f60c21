use thiserror::Error;

use super::concept::Concept;
use super::symbols::{ConceptName, Individual, RoleName, SymbolSet, SymbolTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("observation is empty")]
    EmptyObservation,
    #[error("observations may not contain role assertions")]
    RoleAssertionInObservation,
    #[error("observations may only contain concept assertions")]
    NotAnAssertion,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ConceptAssertion {
    pub concept: Concept,
    pub individual: Individual,
}

impl ConceptAssertion {
    pub fn new(concept: Concept, individual: Individual) -> Self {
        ConceptAssertion { concept, individual }
    }

    /// `¬C(a)` in NNF.
    pub fn negated(&self) -> ConceptAssertion {
        ConceptAssertion::new(self.concept.negated_nnf(), self.individual)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Axiom {
    Gci {
        sub: Concept,
        sup: Concept,
    },
    ConceptAssertion(ConceptAssertion),
    RoleAssertion {
        role: RoleName,
        subject: Individual,
        object: Individual,
    },
    /// `C₁(a₁) ⊔ … ⊔ Cₖ(aₖ)`; order is preserved.
    DisjunctiveAssertion(Vec<ConceptAssertion>),
}

impl Axiom {
    pub fn gci(sub: Concept, sup: Concept) -> Axiom {
        Axiom::Gci { sub, sup }
    }

    pub fn assertion(concept: Concept, individual: Individual) -> Axiom {
        Axiom::ConceptAssertion(ConceptAssertion::new(concept, individual))
    }

    pub fn role(role: RoleName, subject: Individual, object: Individual) -> Axiom {
        Axiom::RoleAssertion { role, subject, object }
    }

    pub fn is_tbox(&self) -> bool {
        matches!(self, Axiom::Gci { .. })
    }

    pub fn concepts(&self) -> Vec<&Concept> {
        match self {
            Axiom::Gci { sub, sup } => vec![sub, sup],
            Axiom::ConceptAssertion(a) => vec![&a.concept],
            Axiom::RoleAssertion { .. } => Vec::new(),
            Axiom::DisjunctiveAssertion(parts) => parts.iter().map(|p| &p.concept).collect(),
        }
    }

    pub fn collect_signature(&self, out: &mut SymbolSet) {
        if let Axiom::RoleAssertion { role, .. } = self {
            out.roles.insert(*role);
        }
        for c in self.concepts() {
            c.collect_signature(out);
        }
    }

    pub fn signature(&self) -> SymbolSet {
        let mut s = SymbolSet::new();
        self.collect_signature(&mut s);
        s
    }

    pub fn mentions(&self, name: ConceptName) -> bool {
        self.concepts().iter().any(|c| c.mentions(name))
    }

    pub fn contains_fixpoint(&self) -> bool {
        self.concepts().iter().any(|c| c.contains_fixpoint())
    }

    pub fn individuals(&self) -> Vec<Individual> {
        match self {
            Axiom::Gci { .. } => Vec::new(),
            Axiom::ConceptAssertion(a) => vec![a.individual],
            Axiom::RoleAssertion { subject, object, .. } => vec![*subject, *object],
            Axiom::DisjunctiveAssertion(parts) => parts.iter().map(|p| p.individual).collect(),
        }
    }

    fn map_concepts(&self, f: impl Fn(&Concept) -> Concept) -> Axiom {
        match self {
            Axiom::Gci { sub, sup } => Axiom::gci(f(sub), f(sup)),
            Axiom::ConceptAssertion(a) => Axiom::assertion(f(&a.concept), a.individual),
            Axiom::RoleAssertion { .. } => self.clone(),
            Axiom::DisjunctiveAssertion(parts) => Axiom::DisjunctiveAssertion(
                parts.iter().map(|p| ConceptAssertion::new(f(&p.concept), p.individual)).collect(),
            ),
        }
    }

    pub fn normalize(&self) -> Axiom {
        self.map_concepts(Concept::normalize)
    }

    pub fn substitute(&self, name: ConceptName, replacement: &Concept) -> Axiom {
        self.map_concepts(|c| c.substitute(name, replacement))
    }

    /// Simplifies every concept. Disjunctive parts that became `⊥` are
    /// dropped; a single remaining part collapses to a plain assertion.
    pub fn simplify(&self) -> Axiom {
        match self.map_concepts(Concept::simplify) {
            Axiom::DisjunctiveAssertion(parts) => {
                if parts.iter().any(|p| p.concept == Concept::Top) {
                    let ind = parts[0].individual;
                    return Axiom::assertion(Concept::Top, ind);
                }
                let first_ind = parts.first().map(|p| p.individual);
                let mut kept: Vec<ConceptAssertion> = parts.into_iter().filter(|p| p.concept != Concept::Bot).collect();
                match kept.len() {
                    0 => Axiom::assertion(Concept::Bot, first_ind.unwrap_or(Individual(0))),
                    1 => Axiom::ConceptAssertion(kept.pop().unwrap()),
                    _ => Axiom::DisjunctiveAssertion(kept),
                }
            }
            other => other,
        }
    }

    /// True for axioms that hold in every interpretation (`C ⊑ ⊤`, `⊤(a)`, `⊥ ⊑ C`).
    pub fn is_trivially_true(&self) -> bool {
        match self {
            Axiom::Gci { sub, sup } => *sup == Concept::Top || *sub == Concept::Bot || sub == sup,
            Axiom::ConceptAssertion(a) => a.concept == Concept::Top,
            Axiom::DisjunctiveAssertion(parts) => parts.iter().any(|p| p.concept == Concept::Top),
            Axiom::RoleAssertion { .. } => false,
        }
    }
}

/// Negates an observation `{C₁(a₁), …, Cₖ(aₖ)}` into `¬C₁(a₁) ⊔ … ⊔ ¬Cₖ(aₖ)`,
/// with each concept in NNF. A singleton yields a plain assertion.
pub fn negate_observation(obs: &[Axiom]) -> Result<Axiom, ModelError> {
    let mut parts = Vec::with_capacity(obs.len());
    for ax in obs {
        match ax {
            Axiom::ConceptAssertion(a) => parts.push(a.negated()),
            Axiom::RoleAssertion { .. } => return Err(ModelError::RoleAssertionInObservation),
            _ => return Err(ModelError::NotAnAssertion),
        }
    }
    match parts.len() {
        0 => Err(ModelError::EmptyObservation),
        1 => Ok(Axiom::ConceptAssertion(parts.pop().unwrap())),
        _ => Ok(Axiom::DisjunctiveAssertion(parts)),
    }
}

/// An ordered axiom list together with the table its symbols resolve in.
#[derive(Clone, Debug, Default)]
pub struct Ontology {
    pub axioms: Vec<Axiom>,
    pub symbols: SymbolTable,
}

impl Ontology {
    pub fn new(symbols: SymbolTable) -> Self {
        Ontology { axioms: Vec::new(), symbols }
    }

    pub fn with_axioms(symbols: SymbolTable, axioms: Vec<Axiom>) -> Self {
        Ontology { axioms, symbols }
    }

    pub fn tbox(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().filter(|a| a.is_tbox())
    }

    pub fn abox(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().filter(|a| !a.is_tbox())
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn signature(&self) -> SymbolSet {
        let mut s = SymbolSet::new();
        for a in &self.axioms {
            a.collect_signature(&mut s);
        }
        s
    }

    pub fn contains_fixpoint(&self) -> bool {
        self.axioms.iter().any(Axiom::contains_fixpoint)
    }

    /// Same symbols, different axioms.
    pub fn derive(&self, axioms: Vec<Axiom>) -> Ontology {
        Ontology { axioms, symbols: self.symbols.clone() }
    }

    pub fn extended(&self, extra: impl IntoIterator<Item = Axiom>) -> Ontology {
        let mut axioms = self.axioms.clone();
        axioms.extend(extra);
        self.derive(axioms)
    }
}
