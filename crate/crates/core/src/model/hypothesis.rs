use super::axiom::{Axiom, ConceptAssertion};
use super::concept::Concept;
use super::symbols::{Individual, SymbolSet};

/// One disjunct `αᵢ` of a hypothesis. Usually a single assertion; negating a
/// disjunctive axiom of `V*` yields a conjunction of assertions, kept in `parts`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HypothesisDisjunct {
    pub parts: Vec<ConceptAssertion>,
    /// The axiom of `V*` this disjunct negates, if any.
    pub negated_from: Option<Axiom>,
}

impl HypothesisDisjunct {
    pub fn single(assertion: ConceptAssertion) -> Self {
        HypothesisDisjunct { parts: vec![assertion], negated_from: None }
    }

    pub fn contains_fixpoint(&self) -> bool {
        self.parts.iter().any(|p| p.concept.contains_fixpoint())
    }

    /// The disjunct as a set of axioms (read conjunctively).
    pub fn axioms(&self) -> Vec<Axiom> {
        self.parts.iter().cloned().map(Axiom::ConceptAssertion).collect()
    }

    pub fn signature(&self) -> SymbolSet {
        let mut s = SymbolSet::new();
        for p in &self.parts {
            p.concept.collect_signature(&mut s);
        }
        s
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Hypothesis {
    pub disjuncts: Vec<HypothesisDisjunct>,
}

impl Hypothesis {
    pub fn new(disjuncts: Vec<HypothesisDisjunct>) -> Self {
        Hypothesis { disjuncts }
    }

    pub fn contains_fixpoint(&self) -> bool {
        self.disjuncts.iter().any(HypothesisDisjunct::contains_fixpoint)
    }

    pub fn len(&self) -> usize {
        self.disjuncts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn signature(&self) -> SymbolSet {
        let mut s = SymbolSet::new();
        for d in &self.disjuncts {
            s.extend(&d.signature());
        }
        s
    }

    /// The hypothesis as an axiom set equivalent to it. Single-part disjuncts
    /// on the same individual merge into one concept; conjunctive disjuncts
    /// are distributed into one disjunctive axiom per combination.
    pub fn to_axioms(&self) -> Vec<Axiom> {
        let mut combos: Vec<Vec<&ConceptAssertion>> = vec![Vec::new()];
        for d in &self.disjuncts {
            let mut next = Vec::with_capacity(combos.len() * d.parts.len());
            for combo in &combos {
                for p in &d.parts {
                    let mut c = combo.clone();
                    c.push(p);
                    next.push(c);
                }
            }
            combos = next;
        }
        combos.into_iter().map(|c| merge_by_individual(&c)).collect()
    }
}

/// Builds `⊔` over assertions, merging concepts that share an individual.
pub fn merge_by_individual(parts: &[&ConceptAssertion]) -> Axiom {
    let mut groups: Vec<(Individual, Vec<Concept>)> = Vec::new();
    for p in parts {
        match groups.iter_mut().find(|(i, _)| *i == p.individual) {
            Some((_, cs)) => cs.push(p.concept.clone()),
            None => groups.push((p.individual, vec![p.concept.clone()])),
        }
    }
    let mut merged: Vec<ConceptAssertion> =
        groups.into_iter().map(|(i, cs)| ConceptAssertion::new(Concept::or_all(cs), i)).collect();
    if merged.len() == 1 {
        Axiom::ConceptAssertion(merged.pop().unwrap())
    } else {
        Axiom::DisjunctiveAssertion(merged)
    }
}
