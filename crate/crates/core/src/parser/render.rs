use crate::model::{Axiom, Concept, ConceptAssertion, Hypothesis, Ontology, SymbolTable};

use super::lexer::keyword;

const VAR_NAMES: [&str; 4] = ["X", "Y", "Z", "W"];

struct Renderer<'a> {
    table: &'a SymbolTable,
    vars: Vec<String>,
}

impl Renderer<'_> {
    /// Name for the binder at `depth`, skipping anything that clashes with
    /// a concept name in the table.
    fn var_name(&self, depth: usize) -> String {
        let mut candidates = VAR_NAMES
            .iter()
            .map(|s| s.to_string())
            .chain((1..).map(|i| format!("X{i}")))
            .filter(|n| self.table.concept(n).is_none() && keyword(n).is_none());
        candidates.nth(depth).expect("infinite candidate stream")
    }

    fn level(c: &Concept) -> u8 {
        match c {
            Concept::Gfp(_) | Concept::Lfp(_) => 0,
            Concept::Or(..) => 1,
            Concept::And(..) => 2,
            Concept::Not(_) | Concept::Exists(..) | Concept::Forall(..) => 3,
            Concept::Top | Concept::Bot | Concept::Name(_) | Concept::Var(_) => 4,
        }
    }

    fn concept(&mut self, c: &Concept, min_level: u8, out: &mut String) {
        let paren = Self::level(c) < min_level;
        if paren {
            out.push('(');
        }
        match c {
            Concept::Top => out.push_str("Top"),
            Concept::Bot => out.push_str("Bot"),
            Concept::Name(n) => out.push_str(&self.table.concept_str(*n)),
            Concept::Var(i) => {
                let idx = self.vars.len().checked_sub(1 + *i as usize);
                match idx {
                    Some(k) => out.push_str(&self.vars[k]),
                    None => out.push_str(&format!("_free{i}")),
                }
            }
            Concept::Not(x) => {
                out.push_str("not ");
                self.concept(x, 3, out);
            }
            Concept::And(a, b) => {
                self.concept(a, 3, out);
                out.push_str(" and ");
                self.concept(b, 2, out);
            }
            Concept::Or(a, b) => {
                self.concept(a, 2, out);
                out.push_str(" or ");
                self.concept(b, 1, out);
            }
            Concept::Exists(r, x) | Concept::Forall(r, x) => {
                out.push_str(if matches!(c, Concept::Exists(..)) { "exists " } else { "forall " });
                out.push_str(&self.table.role_str(*r));
                out.push('.');
                self.concept(x, 3, out);
            }
            Concept::Gfp(x) | Concept::Lfp(x) => {
                let name = self.var_name(self.vars.len());
                out.push_str(if matches!(c, Concept::Lfp(_)) { "lfp " } else { "gfp " });
                out.push_str(&name);
                out.push_str(" . ");
                self.vars.push(name);
                self.concept(x, 0, out);
                self.vars.pop();
            }
        }
        if paren {
            out.push(')');
        }
    }

    fn assertion(&mut self, a: &ConceptAssertion, out: &mut String) {
        let c = a.concept.normalize();
        self.concept(&c, 4, out);
        out.push('(');
        out.push_str(&self.table.individual_str(a.individual));
        out.push(')');
    }

    fn axiom(&mut self, ax: &Axiom, out: &mut String) {
        match ax {
            Axiom::Gci { sub, sup } => {
                self.concept(&sub.normalize(), 0, out);
                out.push_str(" SubClassOf ");
                self.concept(&sup.normalize(), 0, out);
            }
            Axiom::ConceptAssertion(a) => self.assertion(a, out),
            Axiom::RoleAssertion { role, subject, object } => {
                out.push_str(&self.table.role_str(*role));
                out.push('(');
                out.push_str(&self.table.individual_str(*subject));
                out.push(',');
                out.push_str(&self.table.individual_str(*object));
                out.push(')');
            }
            Axiom::DisjunctiveAssertion(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" or ");
                    }
                    self.assertion(p, out);
                }
            }
        }
    }
}

pub fn render_concept(c: &Concept, table: &SymbolTable) -> String {
    let mut out = String::new();
    Renderer { table, vars: Vec::new() }.concept(&c.normalize(), 0, &mut out);
    out
}

pub fn render_axiom(ax: &Axiom, table: &SymbolTable) -> String {
    let mut out = String::new();
    Renderer { table, vars: Vec::new() }.axiom(ax, &mut out);
    out
}

/// One axiom per line, in order.
pub fn render_ontology(onto: &Ontology) -> String {
    render_axioms(&onto.axioms, &onto.symbols)
}

pub fn render_axioms(axioms: &[Axiom], table: &SymbolTable) -> String {
    let mut out = String::new();
    for ax in axioms {
        out.push_str(&render_axiom(ax, table));
        out.push('\n');
    }
    out
}

/// The hypothesis as axiom lines. Disjuncts on one individual share a single
/// line, e.g. `(Pogona or exists livesIn.PineWoods)(Gary)`.
pub fn render_hypothesis(h: &Hypothesis, table: &SymbolTable) -> String {
    render_axioms(&h.to_axioms(), table)
}
