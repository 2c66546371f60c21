//! Definer elimination by substitution, with greatest fixpoints for definers
//! that depend on themselves.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::clausal::{clause_to_axiom, literal_concept, Clause};
use crate::model::{Axiom, Concept, ConceptName};

use super::ForgetError;

/// Replaces definers in `clauses` by their definitions and returns the
/// resulting axioms, each with the id of the clause it came from.
/// Fails with [`ForgetError::OutputTooLarge`] rather than build a concept
/// with more than `max_size` nodes.
pub fn eliminate_definers(clauses: &[(usize, &Clause)], max_size: usize) -> Result<Vec<(Axiom, usize)>, ForgetError> {
    let fit = Fit(max_size);
    let mut defs: BTreeMap<ConceptName, Vec<Concept>> = BTreeMap::new();
    let mut others: Vec<(usize, &Clause)> = Vec::new();
    for &(id, c) in clauses {
        let negs: Vec<_> = c.literals.iter().filter(|l| l.is_negative_definer()).collect();
        let Some(first) = negs.first() else {
            if c.literals.iter().any(|l| !l.positive && l.shape.symbol().is_definer()) {
                return Err(ForgetError::MalformedDefinerGraph(format!(
                    "clause {} negates a definer on an individual",
                    id + 1
                )));
            }
            others.push((id, c));
            continue;
        };
        let d = first.shape.symbol();
        if negs.iter().any(|l| l.term.is_ground() || l.shape.symbol() != d) {
            return Err(ForgetError::MalformedDefinerGraph(format!(
                "clause {} has more than one negative definer literal",
                id + 1
            )));
        }
        let rest: Vec<Concept> = c.literals.iter().filter(|l| !l.is_negative_definer()).map(literal_concept).collect();
        defs.entry(d).or_default().push(Concept::or_all(rest));
    }
    let definition =
        |d: ConceptName| -> Concept { defs.get(&d).map_or(Concept::Top, |cs| Concept::and_all(cs.iter().cloned())) };

    let mut reachable: BTreeSet<ConceptName> = BTreeSet::new();
    let mut stack: Vec<ConceptName> = Vec::new();
    for (_, c) in &others {
        for l in &c.literals {
            let s = l.shape.symbol();
            if s.is_definer() && reachable.insert(s) {
                stack.push(s);
            }
        }
    }
    let mut raw: BTreeMap<ConceptName, Concept> = BTreeMap::new();
    while let Some(d) = stack.pop() {
        let def = definition(d);
        for e in def.signature().concepts.into_iter().filter(|e| e.is_definer()) {
            if reachable.insert(e) {
                stack.push(e);
            }
        }
        raw.insert(d, def);
    }

    let mut graph: DiGraph<ConceptName, ()> = DiGraph::new();
    let nodes: HashMap<ConceptName, _> = raw.keys().map(|&d| (d, graph.add_node(d))).collect();
    for (d, def) in &raw {
        for e in def.signature().concepts.into_iter().filter(|e| e.is_definer()) {
            graph.add_edge(nodes[d], nodes[&e], ());
        }
    }

    let mut solved: HashMap<ConceptName, Concept> = HashMap::new();
    for scc in tarjan_scc(&graph) {
        let members: BTreeSet<ConceptName> = scc.iter().map(|&n| graph[n]).collect();
        let members: Vec<ConceptName> = members.into_iter().collect();
        for (d, sol) in members.iter().zip(solve_component(&members, &raw, &solved, fit)?) {
            solved.insert(*d, sol);
        }
    }

    let mut out = Vec::new();
    for (id, c) in others {
        let ax = substitute_axiom(&clause_to_axiom(c), &solved);
        for c in ax.concepts() {
            fit.check(c)?;
        }
        let ax = ax.simplify();
        if !ax.is_trivially_true() {
            out.push((ax.normalize(), id));
        }
    }
    Ok(out)
}

fn substitute_solved(c: &Concept, solved: &HashMap<ConceptName, Concept>) -> Concept {
    c.map_names(&mut |n, _| solved.get(&n).cloned())
}

fn substitute_axiom(ax: &Axiom, solved: &HashMap<ConceptName, Concept>) -> Axiom {
    let mut out = ax.clone();
    for d in ax.signature().concepts.into_iter().filter(|d| d.is_definer()) {
        if let Some(sol) = solved.get(&d) {
            out = out.substitute(d, sol);
        }
    }
    out
}

/// Solutions for one strongly connected component of definers by Gaussian
/// elimination: each member in turn is bound by a greatest fixpoint and
/// substituted into the members after it, then solutions are substituted
/// back into the earlier ones.
fn solve_component(
    members: &[ConceptName],
    raw: &BTreeMap<ConceptName, Concept>,
    solved: &HashMap<ConceptName, Concept>,
    fit: Fit,
) -> Result<Vec<Concept>, ForgetError> {
    let mut eqs = Vec::with_capacity(members.len());
    for d in members {
        eqs.push(fit.simplified(substitute_solved(&raw[d], solved))?);
    }
    for i in 0..members.len() {
        let d = members[i];
        let e = bind(&eqs[i], d).simplify();
        for eq in &mut eqs[i + 1..] {
            if eq.mentions(d) {
                *eq = fit.simplified(eq.substitute(d, &e))?;
            }
        }
        eqs[i] = e;
    }
    for i in (0..members.len()).rev() {
        for j in i + 1..members.len() {
            if eqs[i].mentions(members[j]) {
                eqs[i] = eqs[i].substitute(members[j], &eqs[j]);
            }
        }
        eqs[i] = fit.simplified(eqs[i].clone())?.normalize();
    }
    Ok(eqs)
}

/// Size limit for concepts built during elimination. Substitution shares
/// subterms, so sizes are counted over the shared structure.
#[derive(Clone, Copy)]
struct Fit(usize);

impl Fit {
    fn check(self, c: &Concept) -> Result<(), ForgetError> {
        if tree_size(c, &mut HashMap::new()) > self.0 {
            return Err(ForgetError::OutputTooLarge { limit: self.0 });
        }
        Ok(())
    }

    fn simplified(self, c: Concept) -> Result<Concept, ForgetError> {
        self.check(&c)?;
        Ok(c.simplify())
    }
}

fn tree_size(c: &Concept, memo: &mut HashMap<*const Concept, usize>) -> usize {
    let key = c as *const Concept;
    if let Some(&n) = memo.get(&key) {
        return n;
    }
    let n = match c {
        Concept::Top | Concept::Bot | Concept::Name(_) | Concept::Var(_) => 1,
        Concept::Not(x) | Concept::Exists(_, x) | Concept::Forall(_, x) | Concept::Gfp(x) | Concept::Lfp(x) => {
            tree_size(x, memo).saturating_add(1)
        }
        Concept::And(a, b) | Concept::Or(a, b) => {
            tree_size(a, memo).saturating_add(tree_size(b, memo)).saturating_add(1)
        }
    };
    memo.insert(key, n);
    n
}

/// `νd.body`, or `body` if `d` does not occur in it.
fn bind(body: &Concept, d: ConceptName) -> Concept {
    if !body.mentions(d) {
        return body.clone();
    }
    Concept::gfp(body.map_names(&mut |n, depth| (n == d).then_some(Concept::Var(depth))))
}
