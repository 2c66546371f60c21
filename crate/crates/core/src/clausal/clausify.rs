use thiserror::Error;

use crate::model::hypothesis::merge_by_individual;
use crate::model::{Axiom, Concept, ConceptAssertion, ConceptName, Individual, Ontology, RoleName};

use super::clause::{Clause, Literal, Origin, Shape, Term};
use super::registry::DefinerRegistry;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClausalError {
    #[error("input axiom {0} contains a fixpoint")]
    FixpointInInput(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RoleAssertion {
    pub role: RoleName,
    pub subject: Individual,
    pub object: Individual,
}

#[derive(Clone, Debug, Default)]
pub struct ClauseSet {
    pub clauses: Vec<Clause>,
    pub role_assertions: Vec<RoleAssertion>,
}

struct Clausifier<'r> {
    reg: &'r mut DefinerRegistry,
    definitions: Vec<Clause>,
}

impl Clausifier<'_> {
    /// CNF of an NNF concept at `term`, as literal lists.
    fn cnf(&mut self, c: &Concept, term: Term) -> Vec<Vec<Literal>> {
        match c {
            Concept::Top => Vec::new(),
            Concept::Bot => vec![Vec::new()],
            Concept::Name(n) => vec![vec![Literal::pos(Shape::Name(*n), term)]],
            Concept::Not(inner) => match &**inner {
                Concept::Name(n) => vec![vec![Literal::neg(Shape::Name(*n), term)]],
                other => self.cnf(&other.negated_nnf(), term),
            },
            Concept::And(a, b) => {
                let mut out = self.cnf(a, term);
                out.extend(self.cnf(b, term));
                out
            }
            Concept::Or(a, b) => {
                let left = self.cnf(a, term);
                let right = self.cnf(b, term);
                product(&left, &right)
            }
            Concept::Exists(r, f) => {
                let d = self.definer(f);
                vec![vec![Literal::pos(Shape::Exists(*r, d), term)]]
            }
            Concept::Forall(r, f) => {
                let d = self.definer(f);
                vec![vec![Literal::pos(Shape::Forall(*r, d), term)]]
            }
            Concept::Gfp(_) | Concept::Lfp(_) | Concept::Var(_) => {
                unreachable!("fixpoints are rejected before clausification")
            }
        }
    }

    fn definer(&mut self, filler: &Concept) -> ConceptName {
        let key = filler.normalize();
        let (d, fresh) = self.reg.for_filler(&key);
        if fresh {
            for mut lits in self.cnf(&key, Term::Var) {
                lits.push(Literal::neg(Shape::Name(d), Term::Var));
                let clause = Clause::new(lits, Origin::Definition(d));
                if !clause.is_tautology() {
                    self.definitions.push(clause);
                }
            }
        }
        d
    }

    fn assertion_clauses(&mut self, parts: &[ConceptAssertion]) -> Vec<Vec<Literal>> {
        let mut acc: Vec<Vec<Literal>> = vec![Vec::new()];
        for p in parts {
            let c = prepare(&p.concept);
            let cnf = self.cnf(&c, Term::Ind(p.individual));
            acc = product(&acc, &cnf);
        }
        acc
    }

    fn axiom_clauses(&mut self, ax: &Axiom) -> Vec<Vec<Literal>> {
        match ax {
            Axiom::Gci { sub, sup } => {
                let c = prepare(&Concept::or(Concept::not(sub.clone()), sup.clone()));
                self.cnf(&c, Term::Var)
            }
            Axiom::ConceptAssertion(a) => self.assertion_clauses(std::slice::from_ref(a)),
            Axiom::DisjunctiveAssertion(parts) => self.assertion_clauses(parts),
            Axiom::RoleAssertion { .. } => Vec::new(),
        }
    }
}

fn prepare(c: &Concept) -> Concept {
    c.nnf().simplify()
}

fn product(left: &[Vec<Literal>], right: &[Vec<Literal>]) -> Vec<Vec<Literal>> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            let mut c = l.clone();
            c.extend_from_slice(r);
            out.push(c);
        }
    }
    out
}

/// Converts the ontology plus an optional extra axiom (the negated
/// observation) into clauses. With `annotation`, the name is added as a
/// positive literal to every top-level clause of the extra axiom.
pub fn clausify(
    onto: &Ontology,
    extra: Option<&Axiom>,
    annotation: Option<ConceptName>,
    reg: &mut DefinerRegistry,
) -> Result<ClauseSet, ClausalError> {
    let mut out = ClauseSet::default();
    let mut cz = Clausifier { reg, definitions: Vec::new() };
    let emit = |cz: &mut Clausifier, out: &mut ClauseSet, lits: Vec<Vec<Literal>>, origin: Origin| {
        for l in lits {
            let c = Clause::new(l, origin.clone());
            if !c.is_tautology() {
                out.clauses.push(c);
            }
        }
        out.clauses.append(&mut cz.definitions);
    };
    for (i, ax) in onto.axioms.iter().enumerate() {
        if ax.contains_fixpoint() {
            return Err(ClausalError::FixpointInInput(i));
        }
        if let Axiom::RoleAssertion { role, subject, object } = ax {
            out.role_assertions.push(RoleAssertion { role: *role, subject: *subject, object: *object });
            continue;
        }
        let lits = cz.axiom_clauses(ax);
        emit(&mut cz, &mut out, lits, Origin::Ontology(i));
    }
    if let Some(ax) = extra {
        if ax.contains_fixpoint() {
            return Err(ClausalError::FixpointInInput(onto.axioms.len()));
        }
        if let Axiom::RoleAssertion { role, subject, object } = ax {
            out.role_assertions.push(RoleAssertion { role: *role, subject: *subject, object: *object });
        } else {
            let mut lits = cz.axiom_clauses(ax);
            if let Some(ann) = annotation {
                let term = Term::Ind(ax.individuals()[0]);
                for l in &mut lits {
                    l.push(Literal::pos(Shape::Name(ann), term));
                }
            }
            emit(&mut cz, &mut out, lits, Origin::Observation);
        }
    }
    Ok(out)
}

/// The concept a literal denotes.
pub fn literal_concept(l: &Literal) -> Concept {
    let c = match l.shape {
        Shape::Name(n) => Concept::Name(n),
        Shape::Forall(r, d) => Concept::forall(r, Concept::Name(d)),
        Shape::Exists(r, d) => Concept::exists(r, Concept::Name(d)),
    };
    if l.positive {
        c
    } else {
        Concept::not(c)
    }
}

/// `(¬A₁ ⊔ … ⊔ ¬Aₙ ⊔ C)(x)` becomes `A₁ ⊓ … ⊓ Aₙ ⊑ C`; ground clauses
/// become assertions grouped by individual.
pub fn clause_to_axiom(c: &Clause) -> Axiom {
    if c.literals.is_empty() {
        return Axiom::gci(Concept::Top, Concept::Bot);
    }
    if c.is_ground() {
        let parts: Vec<ConceptAssertion> = c
            .literals
            .iter()
            .map(|l| {
                let Term::Ind(a) = l.term else { unreachable!() };
                ConceptAssertion::new(literal_concept(l), a)
            })
            .collect();
        let refs: Vec<&ConceptAssertion> = parts.iter().collect();
        return merge_by_individual(&refs);
    }
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for l in &c.literals {
        match (l.positive, l.shape) {
            (false, Shape::Name(n)) => lhs.push(Concept::Name(n)),
            _ => rhs.push(literal_concept(l)),
        }
    }
    Axiom::gci(Concept::and_all(lhs), Concept::or_all(rhs))
}

/// Regroups clauses into axioms; definers are left in place.
pub fn declausify_context(set: &ClauseSet) -> Vec<Axiom> {
    let mut out: Vec<Axiom> = set.clauses.iter().map(clause_to_axiom).collect();
    out.extend(set.role_assertions.iter().map(|r| Axiom::role(r.role, r.subject, r.object)));
    out
}
