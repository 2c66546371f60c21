//! ABox abduction for ALC ontologies via forgetting.
//!
//! The pipeline negates an observation, forgets a signature from the
//! ontology together with that negation, keeps the consequences that
//! depend on the observation, removes redundant ones and negates the rest
//! into a disjunctive hypothesis.

pub mod abduction;
pub mod bench;
pub mod clausal;
pub mod forgetting;
pub mod model;
pub mod parser;
pub mod tableau;
