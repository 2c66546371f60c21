use crate::forgetting::InterpolantAxiom;
use crate::model::{
    Axiom, Concept, ConceptAssertion, ConceptName, Hypothesis, HypothesisDisjunct, Individual, Ontology,
};
use crate::tableau::{fresh_individual, Reasoner, TableauError};

use super::AbductionError;

/// Checks `O ⊭ ⊥`, `O, ψ ⊭ ⊥` and `O ⊭ ψ`.
pub fn check_preconditions(
    onto: &Ontology,
    observation: &[ConceptAssertion],
    reasoner: &Reasoner,
) -> Result<(), AbductionError> {
    let base: Vec<&Axiom> = onto.axioms.iter().collect();
    if !reasoner.satisfiable(&base)? {
        return Err(AbductionError::InconsistentOntology);
    }
    let obs: Vec<Axiom> = observation.iter().cloned().map(Axiom::ConceptAssertion).collect();
    let mut with_obs = base.clone();
    with_obs.extend(obs.iter());
    if !reasoner.satisfiable(&with_obs)? {
        return Err(AbductionError::ObservationInconsistent);
    }
    let mut entailed = true;
    for o in &obs {
        if !reasoner.entails_from(&base, o)? {
            entailed = false;
            break;
        }
    }
    if entailed {
        return Err(AbductionError::ObservationAlreadyEntailed);
    }
    Ok(())
}

/// The annotation name used for the negated observation.
pub fn annotation_symbol() -> ConceptName {
    ConceptName::annotation(0)
}

/// Disjoins `ℓ` into the negated observation: `¬C(a)` becomes `(ℓ ⊔ ¬C)(a)`.
/// For assertions over several individuals, `ℓ` joins the first one.
pub fn annotate(negated_obs: &Axiom) -> (Axiom, ConceptName) {
    let ann = annotation_symbol();
    let ell = Concept::Name(ann);
    let out = match negated_obs {
        Axiom::ConceptAssertion(a) => Axiom::assertion(Concept::or(ell, a.concept.clone()), a.individual),
        Axiom::DisjunctiveAssertion(parts) => {
            let mut parts = parts.clone();
            if let Some(first) = parts.first_mut() {
                first.concept = Concept::or(ell, first.concept.clone());
            }
            Axiom::DisjunctiveAssertion(parts)
        }
        other => other.clone(),
    };
    (out, ann)
}

fn drop_annotation(ax: &Axiom, ann: ConceptName) -> Axiom {
    ax.substitute(ann, &Concept::Bot).simplify().normalize()
}

/// Keeps the annotated axioms of `V` and sets `ℓ` to `⊥` in them, giving `V*_app`.
pub fn filter_annotated(v: &[InterpolantAxiom], ann: ConceptName) -> Vec<Axiom> {
    v.iter().filter(|a| a.axiom.mentions(ann)).map(|a| drop_annotation(&a.axiom, ann)).collect()
}

/// Every axiom of `V` with `ℓ` set to `⊥`, unfiltered.
pub fn unannotated(v: &[InterpolantAxiom], ann: ConceptName) -> Vec<Axiom> {
    v.iter().map(|a| drop_annotation(&a.axiom, ann)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reduction {
    pub kept: Vec<Axiom>,
    pub removed: Vec<Axiom>,
    /// Kept without a completed entailment check (fixpoints or deadline).
    pub unchecked: Vec<Axiom>,
    pub timed_out: bool,
}

/// Drops, in order, each candidate entailed by `onto` and the candidates
/// still remaining. Axioms with fixpoints are kept and never used as premises.
pub fn reduce(candidates: &[Axiom], onto: &Ontology, reasoner: &Reasoner) -> Reduction {
    let mut alive = vec![true; candidates.len()];
    let mut out = Reduction::default();
    for i in 0..candidates.len() {
        let beta = &candidates[i];
        if beta.contains_fixpoint() {
            out.unchecked.push(beta.clone());
            continue;
        }
        let mut premises: Vec<&Axiom> = onto.axioms.iter().collect();
        premises.extend(
            candidates
                .iter()
                .enumerate()
                .filter(|&(j, c)| j != i && alive[j] && !c.contains_fixpoint())
                .map(|(_, c)| c),
        );
        match reasoner.entails_from(&premises, beta) {
            Ok(true) => {
                alive[i] = false;
                out.removed.push(beta.clone());
            }
            Ok(false) => {}
            Err(TableauError::Timeout) => {
                out.timed_out = true;
                out.unchecked.push(beta.clone());
            }
            Err(TableauError::FixpointUnsupported) => out.unchecked.push(beta.clone()),
        }
    }
    out.kept = candidates.iter().zip(&alive).filter(|(_, a)| **a).map(|(c, _)| c.clone()).collect();
    out
}

/// The negation of one axiom of `V*` as a hypothesis disjunct. A GCI
/// `C ⊑ D` becomes `(C ⊓ ¬D)(w)` for a fresh individual `w`; role assertions
/// have no negation and yield `None`.
pub fn negate_member(beta: &Axiom, fresh: Individual) -> Option<HypothesisDisjunct> {
    let parts = match beta {
        Axiom::ConceptAssertion(a) => vec![neg_part(a)],
        Axiom::DisjunctiveAssertion(ps) => ps.iter().map(neg_part).collect(),
        Axiom::Gci { sub, sup } => {
            let c = Concept::and(sub.clone(), Concept::not(sup.clone())).nnf().simplify().normalize();
            vec![ConceptAssertion::new(c, fresh)]
        }
        Axiom::RoleAssertion { .. } => return None,
    };
    Some(HypothesisDisjunct { parts, negated_from: Some(beta.clone()) })
}

fn neg_part(a: &ConceptAssertion) -> ConceptAssertion {
    ConceptAssertion::new(a.concept.negated_nnf().simplify().normalize(), a.individual)
}

/// Negates `V*` into `H = α₁ ⊔ … ⊔ αₙ`. Also returns how many members were
/// TBox axioms negated on fresh individuals.
pub fn assemble_hypothesis(vstar: &[Axiom], onto: &Ontology) -> Result<(Hypothesis, usize), AbductionError> {
    let mut disjuncts = Vec::new();
    let mut gcis = 0;
    let mut used: Vec<Axiom> = onto.axioms.clone();
    for beta in vstar {
        let fresh = fresh_individual(used.iter().chain(vstar.iter()));
        if let Some(d) = negate_member(beta, fresh) {
            if beta.is_tbox() {
                gcis += 1;
                used.push(Axiom::assertion(Concept::Top, fresh));
            }
            if !disjuncts.contains(&d) {
                disjuncts.push(d);
            }
        }
    }
    if disjuncts.is_empty() {
        return Err(AbductionError::NoHypothesis);
    }
    Ok((Hypothesis::new(disjuncts), gcis))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Unverified,
    NotChecked,
}

impl Verdict {
    pub(crate) fn from_result(r: Result<bool, TableauError>) -> Verdict {
        match r {
            Ok(true) => Verdict::Holds,
            Ok(false) => Verdict::Fails,
            Err(_) => Verdict::Unverified,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Conditions {
    pub consistency: Verdict,
    pub explains: Verdict,
    pub independence: Verdict,
}

impl Conditions {
    pub fn unverified() -> Self {
        Conditions {
            consistency: Verdict::Unverified,
            explains: Verdict::Unverified,
            independence: Verdict::Unverified,
        }
    }
}

/// `O, H ⊭ ⊥`.
pub fn hypothesis_consistent(onto: &Ontology, h: &Hypothesis, reasoner: &Reasoner) -> Result<bool, TableauError> {
    let extra = h.to_axioms();
    let mut axioms: Vec<&Axiom> = onto.axioms.iter().collect();
    axioms.extend(extra.iter());
    reasoner.satisfiable(&axioms)
}

/// For every disjunct `αᵢ`: `O, αᵢ ⊭ ⊔_{j≠i} αⱼ`.
pub fn disjuncts_independent(onto: &Ontology, h: &Hypothesis, reasoner: &Reasoner) -> Result<bool, TableauError> {
    for (i, d) in h.disjuncts.iter().enumerate() {
        let mut extra = d.axioms();
        for (j, other) in h.disjuncts.iter().enumerate() {
            if i == j {
                continue;
            }
            let negs: Vec<ConceptAssertion> = other.parts.iter().map(ConceptAssertion::negated).collect();
            extra.push(if negs.len() == 1 {
                Axiom::ConceptAssertion(negs.into_iter().next().unwrap())
            } else {
                Axiom::DisjunctiveAssertion(negs)
            });
        }
        let mut axioms: Vec<&Axiom> = onto.axioms.iter().collect();
        axioms.extend(extra.iter());
        if !reasoner.satisfiable(&axioms)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks conditions (i)–(iii); (iii) only when `independence` is set.
pub fn verify(
    onto: &Ontology,
    h: &Hypothesis,
    observation: &[ConceptAssertion],
    independence: bool,
    reasoner: &Reasoner,
) -> Conditions {
    if h.contains_fixpoint() {
        return Conditions::unverified();
    }
    Conditions {
        consistency: Verdict::from_result(hypothesis_consistent(onto, h, reasoner)),
        explains: Verdict::from_result(reasoner.entails_hypothesis(onto, h, observation)),
        independence: if independence {
            Verdict::from_result(disjuncts_independent(onto, h, reasoner))
        } else {
            Verdict::NotChecked
        },
    }
}
