use crate::model::{ConceptName, Individual, RoleName};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    /// The single universally quantified variable `x`.
    Var,
    Ind(Individual),
}

impl Term {
    pub fn is_ground(self) -> bool {
        matches!(self, Term::Ind(_))
    }

    pub fn apply(self, sigma: Option<Individual>) -> Term {
        match (self, sigma) {
            (Term::Var, Some(a)) => Term::Ind(a),
            _ => self,
        }
    }
}

/// Most general unifier of two terms, as the individual `x` is bound to
/// (`Some(None)` means both are `x`). `None` when they do not unify.
pub fn unify(a: Term, b: Term) -> Option<Option<Individual>> {
    match (a, b) {
        (Term::Var, Term::Var) => Some(None),
        (Term::Var, Term::Ind(i)) | (Term::Ind(i), Term::Var) => Some(Some(i)),
        (Term::Ind(i), Term::Ind(j)) if i == j => Some(Some(i)),
        _ => None,
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Shape {
    Name(ConceptName),
    Forall(RoleName, ConceptName),
    Exists(RoleName, ConceptName),
}

impl Shape {
    /// The concept name at the literal's core: the name itself or the definer
    /// under the quantifier.
    pub fn symbol(self) -> ConceptName {
        match self {
            Shape::Name(c) | Shape::Forall(_, c) | Shape::Exists(_, c) => c,
        }
    }

    pub fn is_quantified(self) -> bool {
        !matches!(self, Shape::Name(_))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    pub term: Term,
    pub shape: Shape,
    pub positive: bool,
}

impl Literal {
    pub fn pos(shape: Shape, term: Term) -> Self {
        Literal { term, shape, positive: true }
    }

    pub fn neg(shape: Shape, term: Term) -> Self {
        Literal { term, shape, positive: false }
    }

    pub fn complement(self) -> Literal {
        Literal { positive: !self.positive, ..self }
    }

    pub fn key(self) -> LiteralKey {
        LiteralKey { shape: self.shape, positive: self.positive }
    }

    pub fn with_term(self, sigma: Option<Individual>) -> Literal {
        Literal { term: self.term.apply(sigma), ..self }
    }

    /// `¬D(t)` for a definer `D`.
    pub fn is_negative_definer(self) -> bool {
        !self.positive && matches!(self.shape, Shape::Name(c) if c.is_definer())
    }
}

/// A literal with its term erased; used for indexing.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LiteralKey {
    pub shape: Shape,
    pub positive: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Rule {
    Resolution,
    RolePropagation,
    ExistsElimination,
    RoleInstantiation,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::Resolution => "res",
            Rule::RolePropagation => "role_prop",
            Rule::ExistsElimination => "exis_elim",
            Rule::RoleInstantiation => "role_inst",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Origin {
    /// Index of the source axiom in the ontology.
    Ontology(usize),
    Observation,
    /// Defining clause `¬D ⊔ C` emitted when a definer is introduced.
    Definition(ConceptName),
    Derived {
        rule: Rule,
        parents: Vec<usize>,
    },
}

/// A disjunction of literals. Literals are sorted and deduplicated; every
/// literal uses `x`, or every literal is ground.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Clause {
    pub literals: Vec<Literal>,
    pub origin: Origin,
}

impl Clause {
    pub fn new(mut literals: Vec<Literal>, origin: Origin) -> Self {
        literals.sort_unstable();
        literals.dedup();
        Clause { literals, origin }
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(|l| l.term.is_ground())
    }

    pub fn is_tautology(&self) -> bool {
        self.literals
            .windows(2)
            .any(|w| w[0].term == w[1].term && w[0].shape == w[1].shape && w[0].positive != w[1].positive)
    }

    /// The definer `D` of a defining clause `¬D(x) ⊔ …`.
    pub fn negative_definer(&self) -> Option<ConceptName> {
        self.literals.iter().find(|l| l.is_negative_definer()).map(|l| l.shape.symbol())
    }

    /// At most one negative definer literal, on `x` only.
    pub fn satisfies_definer_condition(&self) -> bool {
        let mut seen = None;
        for l in self.literals.iter().filter(|l| l.is_negative_definer()) {
            if l.term.is_ground() {
                return false;
            }
            match seen {
                None => seen = Some(l.shape.symbol()),
                Some(d) if d == l.shape.symbol() => {}
                Some(_) => return false,
            }
        }
        true
    }

    pub fn mentions(&self, c: ConceptName) -> bool {
        self.literals.iter().any(|l| l.shape.symbol() == c)
    }

    pub fn mentions_any(&self, names: &std::collections::BTreeSet<ConceptName>) -> bool {
        self.literals.iter().any(|l| names.contains(&l.shape.symbol()))
    }

    pub fn has_annotation(&self) -> bool {
        self.literals.iter().any(|l| l.shape.symbol().is_annotation())
    }

    pub fn individuals(&self) -> Vec<Individual> {
        let mut out: Vec<Individual> = self
            .literals
            .iter()
            .filter_map(|l| match l.term {
                Term::Ind(a) => Some(a),
                Term::Var => None,
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn parents(&self) -> &[usize] {
        match &self.origin {
            Origin::Derived { parents, .. } => parents,
            _ => &[],
        }
    }

    /// Does `self` subsume `other`, i.e. is `self·σ ⊆ other` for some σ?
    pub fn subsumes(&self, other: &Clause) -> bool {
        if self.len() > other.len() {
            return false;
        }
        if !self.is_ground() && other.is_ground() {
            return other.individuals().into_iter().any(|a| subset(&self.literals, &other.literals, Some(a)));
        }
        if self.is_ground() != other.is_ground() && !self.literals.is_empty() {
            return false;
        }
        subset(&self.literals, &other.literals, None)
    }
}

fn subset(small: &[Literal], big: &[Literal], sigma: Option<crate::model::Individual>) -> bool {
    small.iter().all(|l| big.binary_search(&l.with_term(sigma)).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(i: u32) -> Shape {
        Shape::Name(ConceptName(i))
    }

    #[test]
    fn tautologies_and_condition() {
        let c =
            Clause::new(vec![Literal::pos(name(0), Term::Var), Literal::neg(name(0), Term::Var)], Origin::Observation);
        assert!(c.is_tautology());
        let d = ConceptName::definer(0);
        let e = ConceptName::definer(1);
        let two = Clause::new(
            vec![Literal::neg(Shape::Name(d), Term::Var), Literal::neg(Shape::Name(e), Term::Var)],
            Origin::Observation,
        );
        assert!(!two.satisfies_definer_condition());
        let ground = Clause::new(vec![Literal::neg(Shape::Name(d), Term::Ind(Individual(0)))], Origin::Observation);
        assert!(!ground.satisfies_definer_condition());
    }

    #[test]
    fn variable_clause_subsumes_ground_instance() {
        let a = Term::Ind(Individual(3));
        let general = Clause::new(vec![Literal::neg(name(0), Term::Var)], Origin::Observation);
        let inst = Clause::new(vec![Literal::neg(name(0), a), Literal::pos(name(1), a)], Origin::Observation);
        assert!(general.subsumes(&inst));
        assert!(!inst.subsumes(&general));
    }

    #[test]
    fn unification() {
        let a = Term::Ind(Individual(0));
        let b = Term::Ind(Individual(1));
        assert_eq!(unify(Term::Var, Term::Var), Some(None));
        assert_eq!(unify(Term::Var, a), Some(Some(Individual(0))));
        assert!(unify(a, b).is_none());
    }
}
