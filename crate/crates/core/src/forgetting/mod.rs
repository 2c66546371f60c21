//! Concept forgetting: saturation with definers, purification and definer
//! elimination. The result is a uniform interpolant of the input for the
//! complement of the forgotten names.

mod eliminate;
mod saturate;

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::clausal::{clausify, render_clause, ClausalError, Clause, ClauseSet, DefinerRegistry, Origin};
use crate::model::{Axiom, ConceptName, Ontology, SymbolSet, SymbolTable};

pub use eliminate::eliminate_definers;
pub use saturate::{Derivation, Limits, Saturated, Saturator};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForgetError {
    #[error("budget exceeded after {clauses} clauses")]
    BudgetExceeded { clauses: usize },
    #[error("definer elimination would build a concept of more than {limit} nodes")]
    OutputTooLarge { limit: usize },
    #[error("input axiom {0} contains a fixpoint")]
    FixpointInInput(usize),
    #[error("malformed definer graph: {0}")]
    MalformedDefinerGraph(String),
    #[error("invalid forgetting signature: {0}")]
    InvalidSignature(String),
}

impl From<ClausalError> for ForgetError {
    fn from(e: ClausalError) -> Self {
        match e {
            ClausalError::FixpointInInput(i) => ForgetError::FixpointInInput(i),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub timeout: Duration,
    pub max_clauses: usize,
    /// Largest concept, counted as a tree, built while eliminating definers.
    pub max_concept_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { timeout: Duration::from_millis(300_000), max_clauses: 1_000_000, max_concept_size: 100_000 }
    }
}

impl Budget {
    pub fn with_timeout_ms(ms: u64) -> Self {
        Budget { timeout: Duration::from_millis(ms), ..Budget::default() }
    }

    fn limits(&self) -> Limits {
        let now = Instant::now();
        let deadline = now.checked_add(self.timeout).unwrap_or(now + Duration::from_secs(u32::MAX as u64));
        Limits { deadline, max_clauses: self.max_clauses }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolantAxiom {
    pub axiom: Axiom,
    /// Whether the annotation name occurs in the axiom.
    pub annotated: bool,
    /// Id of the saturated clause the axiom came from; `None` for role assertions.
    pub source: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct UniformInterpolant {
    pub axioms: Vec<InterpolantAxiom>,
    pub saturated: Saturated,
    pub registry: DefinerRegistry,
}

impl UniformInterpolant {
    pub fn axioms_only(&self) -> Vec<Axiom> {
        self.axioms.iter().map(|a| a.axiom.clone()).collect()
    }

    pub fn log(&self) -> &[Derivation] {
        &self.saturated.log
    }

    /// Every clause kept during saturation, numbered from 1, with the rule
    /// and premises for derived ones.
    pub fn trace(&self, table: &SymbolTable) -> String {
        let mut out = String::new();
        for (id, c) in self.saturated.clauses.iter().enumerate() {
            out.push_str(&format!("{}. {}", id + 1, render_clause(c, table, &self.registry)));
            if let Origin::Derived { rule, parents } = &c.origin {
                let ps: Vec<String> = parents.iter().map(|p| (p + 1).to_string()).collect();
                out.push_str(&format!("  {}({})", rule.label(), ps.join(",")));
            }
            out.push('\n');
        }
        out
    }
}

fn check_signature(forget: &SymbolSet) -> Result<(), ForgetError> {
    if let Some(r) = forget.roles.iter().next() {
        return Err(ForgetError::InvalidSignature(format!("role {} cannot be forgotten", r.0)));
    }
    if let Some(c) = forget.concepts.iter().find(|c| !c.is_user()) {
        return Err(ForgetError::InvalidSignature(format!("reserved symbol {} cannot be forgotten", c.0)));
    }
    Ok(())
}

pub fn saturate(
    set: ClauseSet,
    forget: &BTreeSet<ConceptName>,
    reg: &mut DefinerRegistry,
    budget: &Budget,
) -> Result<Saturated, ForgetError> {
    Saturator::new(set, forget, reg, budget.limits())?.run()
}

/// Drops every clause that mentions a forgotten name.
pub fn purify<'c>(clauses: &[(usize, &'c Clause)], forget: &BTreeSet<ConceptName>) -> Vec<(usize, &'c Clause)> {
    clauses.iter().copied().filter(|(_, c)| !c.mentions_any(forget)).collect()
}

/// Forgets the concept names in `forget` from `onto` together with `extra`.
/// With `annotation`, the clauses of `extra` carry that name.
pub fn forget(
    onto: &Ontology,
    extra: Option<&Axiom>,
    annotation: Option<ConceptName>,
    forget: &SymbolSet,
    budget: &Budget,
) -> Result<UniformInterpolant, ForgetError> {
    check_signature(forget)?;
    let mut registry = DefinerRegistry::new();
    let set = clausify(onto, extra, annotation, &mut registry)?;
    let saturated = saturate(set, &forget.concepts, &mut registry, budget)?;
    let live: Vec<(usize, &Clause)> = saturated.live().collect();
    let pure = purify(&live, &forget.concepts);
    let mut seen: HashSet<Axiom> = HashSet::new();
    let mut axioms = Vec::new();
    for (axiom, id) in eliminate_definers(&pure, budget.max_concept_size)? {
        if seen.insert(axiom.clone()) {
            let annotated = annotation.is_some_and(|a| axiom.mentions(a));
            axioms.push(InterpolantAxiom { axiom, annotated, source: Some(id) });
        }
    }
    for r in &saturated.role_assertions {
        let axiom = Axiom::role(r.role, r.subject, r.object);
        if seen.insert(axiom.clone()) {
            axioms.push(InterpolantAxiom { axiom, annotated: false, source: None });
        }
    }
    Ok(UniformInterpolant { axioms, saturated, registry })
}
