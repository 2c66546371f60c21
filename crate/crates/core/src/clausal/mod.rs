//! Clausal normal form with definer symbols.
//!
//! A clause is a disjunction of literals `A(t)`, `¬A(t)`, `∀r.D(t)` and
//! `∃r.D(t)`, where `D` is a definer standing for the concept under the
//! quantifier and `t` is either the variable `x` or an individual.

mod clause;
mod clausify;
mod registry;

use crate::model::SymbolTable;

pub use clause::{unify, Clause, Literal, LiteralKey, Origin, Rule, Shape, Term};
pub use clausify::{
    clause_to_axiom, clausify, declausify_context, literal_concept, ClausalError, ClauseSet, RoleAssertion,
};
pub use registry::{DefinerInfo, DefinerRegistry};

fn shape_str(shape: Shape, table: &SymbolTable, reg: &DefinerRegistry) -> String {
    let name = |c: crate::model::ConceptName| {
        if c.is_annotation() {
            "ℓ".to_string()
        } else if c.is_definer() {
            reg.label(c)
        } else {
            table.concept_str(c)
        }
    };
    match shape {
        Shape::Name(c) => name(c),
        Shape::Forall(r, d) => format!("∀{}.{}", table.role_str(r), name(d)),
        Shape::Exists(r, d) => format!("∃{}.{}", table.role_str(r), name(d)),
    }
}

fn term_str(t: Term, table: &SymbolTable) -> String {
    match t {
        Term::Var => "x".into(),
        Term::Ind(a) => table.individual_str(a),
    }
}

/// Renders a clause in the usual notation, e.g. `(ℓ ⊔ ¬Pogona ⊔ ∃livesIn.D12)(Gary)`.
pub fn render_clause(c: &Clause, table: &SymbolTable, reg: &DefinerRegistry) -> String {
    if c.literals.is_empty() {
        return "⊥".into();
    }
    let mut lits: Vec<&Literal> = c.literals.iter().collect();
    lits.sort_by_key(|l| !l.shape.symbol().is_annotation());
    let lit = |l: &Literal| format!("{}{}", if l.positive { "" } else { "¬" }, shape_str(l.shape, table, reg));
    let first_term = lits[0].term;
    if lits.iter().all(|l| l.term == first_term) {
        let body: Vec<String> = lits.iter().map(|l| lit(l)).collect();
        if body.len() == 1 {
            format!("{}({})", body[0], term_str(first_term, table))
        } else {
            format!("({})({})", body.join(" ⊔ "), term_str(first_term, table))
        }
    } else {
        let body: Vec<String> = lits.iter().map(|l| format!("{}({})", lit(l), term_str(l.term, table))).collect();
        body.join(" ⊔ ")
    }
}
