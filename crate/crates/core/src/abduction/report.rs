use serde_json::{json, Value};

use crate::forgetting::UniformInterpolant;
use crate::model::{Axiom, Hypothesis, SymbolTable};
use crate::parser::{render_axiom, render_hypothesis};

use super::{Conditions, Mode};

#[derive(Clone, Debug)]
pub struct AbductionReport {
    pub mode: Mode,
    pub hypothesis: Option<Hypothesis>,
    pub v_size: usize,
    pub v_app_size: usize,
    pub v_star_size: usize,
    pub hyp_disjuncts: usize,
    /// Axioms of `V` dropped by the annotation filter.
    pub filtered: Vec<Axiom>,
    /// Candidates dropped by entailment checks.
    pub reduced: Vec<Axiom>,
    /// Candidates kept without a completed entailment check.
    pub unchecked: Vec<Axiom>,
    pub v_star: Vec<Axiom>,
    pub t_forget_ms: f64,
    pub t_filter_ms: f64,
    pub t_reduce_ms: f64,
    pub t_total_ms: f64,
    pub fixpoint: bool,
    pub trivial: bool,
    pub no_hypothesis: bool,
    pub timeout: bool,
    pub conditions: Option<Conditions>,
    pub warnings: Vec<String>,
    pub interpolant: Option<UniformInterpolant>,
}

impl AbductionReport {
    pub(crate) fn new(mode: Mode) -> Self {
        AbductionReport {
            mode,
            hypothesis: None,
            v_size: 0,
            v_app_size: 0,
            v_star_size: 0,
            hyp_disjuncts: 0,
            filtered: Vec::new(),
            reduced: Vec::new(),
            unchecked: Vec::new(),
            v_star: Vec::new(),
            t_forget_ms: 0.0,
            t_filter_ms: 0.0,
            t_reduce_ms: 0.0,
            t_total_ms: 0.0,
            fixpoint: false,
            trivial: false,
            no_hypothesis: false,
            timeout: false,
            conditions: None,
            warnings: Vec::new(),
            interpolant: None,
        }
    }

    /// Redundancies removed by the annotation filter.
    pub fn removed_by_filter(&self) -> usize {
        self.v_size.saturating_sub(self.v_app_size)
    }

    /// Redundancies removed by entailment checks.
    pub fn removed_by_reduce(&self) -> usize {
        self.v_app_size.saturating_sub(self.v_star_size)
    }

    pub fn to_json(&self, table: &SymbolTable) -> Value {
        let axioms = |xs: &[Axiom]| xs.iter().map(|a| render_axiom(a, table)).collect::<Vec<_>>();
        json!({
            "mode": self.mode,
            "hypothesis": self.hypothesis.as_ref().map(|h| render_hypothesis(h, table).trim_end().to_string()),
            "hyp_disjuncts": self.hyp_disjuncts,
            "v_size": self.v_size,
            "v_app_size": self.v_app_size,
            "v_star_size": self.v_star_size,
            "redundancies_removed": {
                "v_to_v_app": self.removed_by_filter(),
                "v_app_to_v_star": self.removed_by_reduce(),
            },
            "filtered": axioms(&self.filtered),
            "reduced": axioms(&self.reduced),
            "unchecked": axioms(&self.unchecked),
            "v_star": axioms(&self.v_star),
            "t_forget_ms": self.t_forget_ms,
            "t_filter_ms": self.t_filter_ms,
            "t_reduce_ms": self.t_reduce_ms,
            "t_total_ms": self.t_total_ms,
            "fixpoint": self.fixpoint,
            "trivial": self.trivial,
            "no_hypothesis": self.no_hypothesis,
            "timeout": self.timeout,
            "conditions": self.conditions,
            "warnings": self.warnings,
        })
    }
}
