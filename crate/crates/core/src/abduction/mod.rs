//! ABox abduction by forgetting.
//!
//! The negated observation is annotated with `ℓ` and added to the ontology,
//! the forgetting signature is forgotten, the result is filtered by `ℓ` and
//! optionally reduced by entailment checks, and the survivors are negated
//! into a disjunctive hypothesis.

mod report;
mod steps;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::forgetting::{self, Budget, ForgetError, UniformInterpolant};
use crate::model::{negate_observation, Axiom, ConceptAssertion, Hypothesis, HypothesisDisjunct, Ontology, SymbolSet};
use crate::tableau::{Reasoner, TableauError};

pub use report::AbductionReport;
pub use steps::{
    annotate, annotation_symbol, assemble_hypothesis, check_preconditions, disjuncts_independent, filter_annotated,
    hypothesis_consistent, negate_member, reduce, unannotated, verify, Conditions, Reduction, Verdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbductionError {
    #[error("the ontology is inconsistent")]
    InconsistentOntology,
    #[error("the observation is inconsistent with the ontology")]
    ObservationInconsistent,
    #[error("the ontology already entails the observation")]
    ObservationAlreadyEntailed,
    #[error("no hypothesis: every axiom of the interpolant follows from the ontology")]
    NoHypothesis,
    #[error("the observation is empty")]
    EmptyObservation,
    #[error("invalid forgetting signature: {0}")]
    InvalidSignature(String),
    #[error(transparent)]
    Forget(#[from] ForgetError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Mode {
    /// Negate `V*_app` directly.
    #[serde(rename = "approx")]
    Approx,
    /// Reduce `V*_app` by entailment checks, then negate.
    #[serde(rename = "full")]
    Full,
    /// Reduce all of `V` by entailment checks, skipping the annotation filter.
    #[serde(rename = "full-no-approx")]
    FullNoApprox,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Approx, Mode::Full, Mode::FullNoApprox];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Approx => "approx",
            Mode::Full => "full",
            Mode::FullNoApprox => "full-no-approx",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "approx" => Ok(Mode::Approx),
            "full" => Ok(Mode::Full),
            "full-no-approx" => Ok(Mode::FullNoApprox),
            other => Err(format!("unknown mode `{other}` (expected approx, full or full-no-approx)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AbductionRequest {
    pub ontology: Ontology,
    pub observation: Vec<ConceptAssertion>,
    pub forget: SymbolSet,
    pub mode: Mode,
    pub budget: Budget,
    /// Check conditions (i)–(iii) on the result.
    pub verify: bool,
    /// Keep the interpolant (with its derivation) in the report.
    pub keep_interpolant: bool,
}

impl AbductionRequest {
    pub fn new(ontology: Ontology, observation: Vec<ConceptAssertion>, forget: SymbolSet, mode: Mode) -> Self {
        AbductionRequest {
            ontology,
            observation,
            forget,
            mode,
            budget: Budget::default(),
            verify: true,
            keep_interpolant: false,
        }
    }

    /// The abducibles: `sig(O ∪ ψ) \ F`, roles included.
    pub fn abducibles(&self) -> SymbolSet {
        let mut sig = self.ontology.signature();
        for o in &self.observation {
            o.concept.collect_signature(&mut sig);
        }
        let concepts = sig.concepts.difference(&self.forget.concepts).copied().collect();
        SymbolSet { concepts, roles: sig.roles }
    }

    fn validate(&self) -> Result<(), AbductionError> {
        if self.observation.is_empty() {
            return Err(AbductionError::EmptyObservation);
        }
        if !self.forget.roles.is_empty() {
            return Err(AbductionError::InvalidSignature("roles cannot be forgotten".into()));
        }
        let mut sig = self.ontology.signature();
        for o in &self.observation {
            o.concept.collect_signature(&mut sig);
        }
        for c in &self.forget.concepts {
            if !c.is_user() {
                return Err(AbductionError::InvalidSignature("reserved symbols cannot be forgotten".into()));
            }
            if !sig.concepts.contains(c) {
                return Err(AbductionError::InvalidSignature(format!(
                    "{} does not occur in the ontology or observation",
                    self.ontology.symbols.concept_str(*c)
                )));
            }
        }
        Ok(())
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

/// Runs the full pipeline for `req`.
pub fn abduce(req: &AbductionRequest) -> Result<AbductionReport, AbductionError> {
    let start = Instant::now();
    req.validate()?;
    let deadline = start.checked_add(req.budget.timeout);
    let reasoner = Reasoner::with_deadline(deadline);
    let onto = &req.ontology;
    check_preconditions(onto, &req.observation, &reasoner)?;

    let mut report = AbductionReport::new(req.mode);
    let obs_sig = {
        let mut s = SymbolSet::new();
        for o in &req.observation {
            o.concept.collect_signature(&mut s);
        }
        s
    };
    if !req.forget.intersects_concepts(&obs_sig) {
        report.trivial = true;
        report.warnings.push("forgetting signature shares no concept with the observation; H = ψ".into());
        let h = Hypothesis::new(vec![HypothesisDisjunct { parts: req.observation.clone(), negated_from: None }]);
        report.hyp_disjuncts = h.len();
        report.hypothesis = Some(h);
        report.t_total_ms = ms(start);
        return Ok(report);
    }

    let obs_axioms: Vec<Axiom> = req.observation.iter().cloned().map(Axiom::ConceptAssertion).collect();
    let negated = negate_observation(&obs_axioms).map_err(|_| AbductionError::EmptyObservation)?;
    let ann = annotation_symbol();

    let t = Instant::now();
    let remaining = req.budget.timeout.saturating_sub(start.elapsed());
    let budget = Budget { timeout: remaining, ..req.budget };
    let ui: UniformInterpolant = match forgetting::forget(onto, Some(&negated), Some(ann), &req.forget, &budget) {
        Ok(ui) => ui,
        Err(e @ (ForgetError::BudgetExceeded { .. } | ForgetError::OutputTooLarge { .. })) => {
            report.t_forget_ms = ms(t);
            report.t_total_ms = ms(start);
            report.timeout = true;
            report.warnings.push(format!("forgetting stopped: {e}"));
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    report.t_forget_ms = ms(t);
    report.v_size = ui.axioms.len();

    let t = Instant::now();
    let candidates = match req.mode {
        Mode::Approx | Mode::Full => filter_annotated(&ui.axioms, ann),
        Mode::FullNoApprox => unannotated(&ui.axioms, ann),
    };
    report.filtered = ui.axioms.iter().filter(|a| !a.annotated).map(|a| a.axiom.clone()).collect();
    if req.mode == Mode::FullNoApprox {
        report.filtered.clear();
    }
    report.v_app_size = candidates.len();
    report.t_filter_ms = ms(t);

    let t = Instant::now();
    let vstar = match req.mode {
        Mode::Approx => candidates.clone(),
        Mode::Full | Mode::FullNoApprox => {
            let r = reduce(&candidates, onto, &reasoner);
            report.reduced = r.removed.clone();
            report.unchecked = r.unchecked.clone();
            if r.timed_out {
                report.timeout = true;
            }
            r.kept
        }
    };
    report.t_reduce_ms = ms(t);
    report.v_star_size = vstar.len();
    report.fixpoint = vstar.iter().any(Axiom::contains_fixpoint);
    report.v_star = vstar.clone();

    match assemble_hypothesis(&vstar, onto) {
        Ok((h, gcis)) => {
            if gcis > 0 {
                report.warnings.push(format!("{gcis} TBox axiom(s) negated on fresh individuals"));
            }
            let independence = req.mode != Mode::Approx;
            if req.verify {
                report.conditions = Some(verify(onto, &h, &req.observation, independence, &reasoner));
            }
            if req.mode == Mode::Approx && !h.contains_fixpoint() {
                let consistent = match report.conditions {
                    Some(c) => c.consistency,
                    None => Verdict::from_result(hypothesis_consistent(onto, &h, &reasoner)),
                };
                if consistent == Verdict::Fails {
                    report.warnings.push("approximate hypothesis is inconsistent with the ontology".into());
                    report.no_hypothesis = true;
                    report.t_total_ms = ms(start);
                    return Ok(report);
                }
            }
            report.hyp_disjuncts = h.len();
            report.hypothesis = Some(h);
        }
        Err(AbductionError::NoHypothesis) => {
            report.no_hypothesis = true;
            report.warnings.push(AbductionError::NoHypothesis.to_string());
        }
        Err(e) => return Err(e),
    }
    if req.keep_interpolant {
        report.interpolant = Some(ui);
    }
    report.t_total_ms = ms(start);
    Ok(report)
}
