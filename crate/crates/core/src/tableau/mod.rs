//! Tableau decision procedure for ALC with general TBoxes.
//!
//! GCIs with a concept name on the left are unfolded lazily when the name
//! enters a label. The rest are internalized; those that hold trivially at a
//! vertex without successors are only asserted once the vertex gets an edge.
//! Termination comes from anywhere subset blocking on generated vertices.
//! Entailment is reduced to inconsistency of the ontology plus the negated
//! axiom.

mod arena;
mod search;

use std::time::Instant;

use thiserror::Error;

use crate::model::{Axiom, Concept, ConceptAssertion, Hypothesis, Individual, Ontology, FRESH_INDIVIDUAL_BASE};

use arena::Arena;
use search::Search;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum TableauError {
    #[error("fixpoint concepts are not supported by the tableau")]
    FixpointUnsupported,
    #[error("tableau deadline exceeded")]
    Timeout,
}

#[derive(Clone, Copy, Debug)]
pub struct Reasoner {
    /// Skip branches whose choice did not contribute to a clash.
    pub backjumping: bool,
    pub deadline: Option<Instant>,
}

impl Default for Reasoner {
    fn default() -> Self {
        Reasoner { backjumping: true, deadline: None }
    }
}

/// A fresh individual not occurring in `axioms`.
pub fn fresh_individual<'a>(axioms: impl IntoIterator<Item = &'a Axiom>) -> Individual {
    let next = axioms
        .into_iter()
        .flat_map(|ax| ax.individuals())
        .filter(|a| a.is_fresh())
        .map(|a| a.0 - FRESH_INDIVIDUAL_BASE + 1)
        .max()
        .unwrap_or(0);
    Individual::fresh(next)
}

/// Assertions that hold exactly in the models violating `ax`; `None` for role
/// assertions, whose negation is not expressible.
pub fn negate_axiom(ax: &Axiom, fresh: Individual) -> Option<Vec<Axiom>> {
    match ax {
        Axiom::Gci { sub, sup } => {
            Some(vec![Axiom::assertion(Concept::and(sub.clone(), Concept::not(sup.clone())), fresh)])
        }
        Axiom::ConceptAssertion(a) => Some(vec![Axiom::ConceptAssertion(a.negated())]),
        Axiom::DisjunctiveAssertion(parts) => {
            Some(parts.iter().map(|p| Axiom::ConceptAssertion(p.negated())).collect())
        }
        Axiom::RoleAssertion { .. } => None,
    }
}

impl Reasoner {
    pub fn with_deadline(deadline: Option<Instant>) -> Self {
        Reasoner { deadline, ..Reasoner::default() }
    }

    /// Whether the axioms have a common model.
    pub fn satisfiable(&self, axioms: &[&Axiom]) -> Result<bool, TableauError> {
        if axioms.iter().any(|a| a.contains_fixpoint()) {
            return Err(TableauError::FixpointUnsupported);
        }
        let mut arena = Arena::default();
        Search::new(&mut arena, self.backjumping, self.deadline).satisfiable(axioms.iter().copied())
    }

    pub fn is_consistent(&self, onto: &Ontology) -> Result<bool, TableauError> {
        let axioms: Vec<&Axiom> = onto.axioms.iter().collect();
        self.satisfiable(&axioms)
    }

    /// Whether every model of `axioms` satisfies `ax`.
    pub fn entails_from(&self, axioms: &[&Axiom], ax: &Axiom) -> Result<bool, TableauError> {
        if ax.contains_fixpoint() {
            return Err(TableauError::FixpointUnsupported);
        }
        let fresh = fresh_individual(axioms.iter().copied().chain(std::iter::once(ax)));
        match negate_axiom(ax, fresh) {
            Some(neg) => {
                let mut all: Vec<&Axiom> = axioms.to_vec();
                all.extend(neg.iter());
                Ok(!self.satisfiable(&all)?)
            }
            None => Ok(axioms.contains(&ax) || !self.satisfiable(axioms)?),
        }
    }

    pub fn entails(&self, onto: &Ontology, ax: &Axiom) -> Result<bool, TableauError> {
        let axioms: Vec<&Axiom> = onto.axioms.iter().collect();
        self.entails_from(&axioms, ax)
    }

    /// Whether `onto` together with each disjunct of `hyp` entails every
    /// assertion of `obs`.
    pub fn entails_hypothesis(
        &self,
        onto: &Ontology,
        hyp: &Hypothesis,
        obs: &[ConceptAssertion],
    ) -> Result<bool, TableauError> {
        if hyp.contains_fixpoint() {
            return Err(TableauError::FixpointUnsupported);
        }
        for d in &hyp.disjuncts {
            let extra = d.axioms();
            let mut axioms: Vec<&Axiom> = onto.axioms.iter().collect();
            axioms.extend(extra.iter());
            for o in obs {
                if !self.entails_from(&axioms, &Axiom::ConceptAssertion(o.clone()))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn is_consistent(onto: &Ontology) -> Result<bool, TableauError> {
    Reasoner::default().is_consistent(onto)
}

pub fn entails(onto: &Ontology, ax: &Axiom) -> Result<bool, TableauError> {
    Reasoner::default().entails(onto, ax)
}

pub fn entails_hypothesis(onto: &Ontology, hyp: &Hypothesis, obs: &[ConceptAssertion]) -> Result<bool, TableauError> {
    Reasoner::default().entails_hypothesis(onto, hyp, obs)
}
