//! Concepts, axioms, ontologies and hypotheses.

pub mod axiom;
pub mod concept;
pub mod hypothesis;
pub mod symbols;

pub use axiom::{negate_observation, Axiom, ConceptAssertion, ModelError, Ontology};
pub use concept::Concept;
pub use hypothesis::{Hypothesis, HypothesisDisjunct};
pub use symbols::{ConceptName, Individual, RoleName, SymbolSet, SymbolTable, FRESH_INDIVIDUAL_BASE};
