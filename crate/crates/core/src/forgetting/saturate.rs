//! Given-clause saturation under resolution, role propagation,
//! ∃-restriction elimination and role instantiation.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};
use std::time::Instant;

use crate::clausal::{
    unify, Clause, ClauseSet, DefinerRegistry, Literal, LiteralKey, Origin, RoleAssertion, Rule, Shape, Term,
};
use crate::model::{ConceptName, Individual, RoleName};

use super::ForgetError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: usize,
    pub rule: Rule,
    pub premises: Vec<usize>,
}

/// Result of saturation: every clause ever kept (by id) and which are still alive.
#[derive(Clone, Debug)]
pub struct Saturated {
    pub clauses: Vec<Clause>,
    pub alive: Vec<bool>,
    pub role_assertions: Vec<RoleAssertion>,
    pub log: Vec<Derivation>,
}

impl Saturated {
    pub fn live(&self) -> impl Iterator<Item = (usize, &Clause)> {
        self.clauses.iter().enumerate().filter(|(i, _)| self.alive[*i])
    }
}

pub struct Limits {
    pub deadline: Instant,
    pub max_clauses: usize,
}

#[derive(Default)]
struct DefinerFacts {
    pos: HashMap<ConceptName, BTreeSet<ConceptName>>,
    neg: HashMap<ConceptName, BTreeSet<ConceptName>>,
    /// `(is_forall, role, filler definer)` occurring in a definer's defining clauses.
    quant: HashMap<ConceptName, BTreeSet<(bool, RoleName, ConceptName)>>,
    /// Positive definer literals in defining clauses (`¬D₁₂ ⊔ D₁`).
    sub: HashMap<ConceptName, BTreeSet<ConceptName>>,
}

pub struct Saturator<'a> {
    forget: &'a BTreeSet<ConceptName>,
    reg: &'a mut DefinerRegistry,
    limits: Limits,
    clauses: Vec<Clause>,
    alive: Vec<bool>,
    active: Vec<bool>,
    passive: BinaryHeap<Reverse<(usize, usize)>>,
    by_key: HashMap<LiteralKey, Vec<usize>>,
    by_first: HashMap<LiteralKey, Vec<usize>>,
    empty_clause: Option<usize>,
    active_by_key: HashMap<LiteralKey, Vec<usize>>,
    active_quant: HashMap<RoleName, Vec<usize>>,
    active_by_filler: HashMap<ConceptName, Vec<usize>>,
    unit_negative: HashMap<ConceptName, usize>,
    roles: HashMap<RoleName, Vec<RoleAssertion>>,
    role_list: Vec<RoleAssertion>,
    compatible: HashSet<(ConceptName, ConceptName)>,
    relevant: HashSet<ConceptName>,
    log: Vec<Derivation>,
    inserted: usize,
}

fn pair(a: ConceptName, b: ConceptName) -> (ConceptName, ConceptName) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn substituted(lits: &[Literal], skip: usize, sigma: Option<Individual>) -> impl Iterator<Item = Literal> + '_ {
    lits.iter().enumerate().filter(move |(i, _)| *i != skip).map(move |(_, l)| l.with_term(sigma))
}

impl<'a> Saturator<'a> {
    pub fn new(
        input: ClauseSet,
        forget: &'a BTreeSet<ConceptName>,
        reg: &'a mut DefinerRegistry,
        limits: Limits,
    ) -> Result<Self, ForgetError> {
        let mut roles: HashMap<RoleName, Vec<RoleAssertion>> = HashMap::new();
        for r in &input.role_assertions {
            roles.entry(r.role).or_default().push(*r);
        }
        let mut s = Saturator {
            forget,
            reg,
            limits,
            clauses: Vec::new(),
            alive: Vec::new(),
            active: Vec::new(),
            passive: BinaryHeap::new(),
            by_key: HashMap::new(),
            by_first: HashMap::new(),
            empty_clause: None,
            active_by_key: HashMap::new(),
            active_quant: HashMap::new(),
            active_by_filler: HashMap::new(),
            unit_negative: HashMap::new(),
            roles,
            role_list: input.role_assertions,
            compatible: HashSet::new(),
            relevant: HashSet::new(),
            log: Vec::new(),
            inserted: 0,
        };
        for c in input.clauses {
            s.insert(c)?;
        }
        Ok(s)
    }

    fn check_limits(&self) -> Result<(), ForgetError> {
        if self.clauses.len() > self.limits.max_clauses || Instant::now() > self.limits.deadline {
            return Err(ForgetError::BudgetExceeded { clauses: self.clauses.len() });
        }
        Ok(())
    }

    fn is_subsumed(&self, c: &Clause) -> bool {
        if self.empty_clause.is_some() {
            return true;
        }
        let mut seen = HashSet::new();
        for l in &c.literals {
            let Some(ids) = self.by_first.get(&l.key()) else { continue };
            for &id in ids {
                if self.alive[id] && seen.insert(id) && self.clauses[id].subsumes(c) {
                    return true;
                }
            }
        }
        false
    }

    /// Adds a clause unless redundant; returns its id.
    fn insert(&mut self, c: Clause) -> Result<Option<usize>, ForgetError> {
        if c.is_tautology() || !c.satisfies_definer_condition() || self.is_subsumed(&c) {
            return Ok(None);
        }
        self.inserted += 1;
        if self.inserted.is_multiple_of(64) {
            self.check_limits()?;
        }
        let id = self.clauses.len();
        // Backward subsumption through the rarest key of the new clause.
        let victims: Vec<usize> = if c.literals.is_empty() {
            (0..self.clauses.len()).filter(|&i| self.alive[i]).collect()
        } else {
            let rarest =
                c.literals.iter().map(|l| l.key()).min_by_key(|k| self.by_key.get(k).map_or(0, Vec::len)).unwrap();
            self.by_key
                .get(&rarest)
                .map(|ids| ids.iter().copied().filter(|&i| self.alive[i] && c.subsumes(&self.clauses[i])).collect())
                .unwrap_or_default()
        };
        for v in victims {
            self.alive[v] = false;
        }
        if let Origin::Derived { rule, parents } = &c.origin {
            self.log.push(Derivation { conclusion: id, rule: *rule, premises: parents.clone() });
        }
        let mut keys: Vec<LiteralKey> = c.literals.iter().map(|l| l.key()).collect();
        keys.sort_unstable();
        keys.dedup();
        for k in &keys {
            self.by_key.entry(*k).or_default().push(id);
        }
        match c.literals.first() {
            Some(l) => self.by_first.entry(l.key()).or_default().push(id),
            None => self.empty_clause = Some(id),
        }
        self.passive.push(Reverse((c.len(), id)));
        self.clauses.push(c);
        self.alive.push(true);
        self.active.push(false);
        Ok(Some(id))
    }

    fn derive(&mut self, lits: Vec<Literal>, rule: Rule, parents: Vec<usize>) -> Result<Option<usize>, ForgetError> {
        self.insert(Clause::new(lits, Origin::Derived { rule, parents }))
    }

    fn resolvable(&self, shape: Shape) -> bool {
        match shape {
            Shape::Name(c) => c.is_definer() || self.forget.contains(&c),
            _ => false,
        }
    }

    pub fn run(mut self) -> Result<Saturated, ForgetError> {
        self.refresh_facts()?;
        loop {
            while let Some(Reverse((_, id))) = self.passive.pop() {
                if self.alive[id] && !self.active[id] {
                    self.activate(id)?;
                }
            }
            if !self.refresh_facts()? {
                break;
            }
            if self.passive.is_empty() {
                break;
            }
        }
        Ok(Saturated { clauses: self.clauses, alive: self.alive, role_assertions: self.role_list, log: self.log })
    }

    fn live_active(&self, ids: Option<&Vec<usize>>, not: usize) -> Vec<usize> {
        ids.map(|v| v.iter().copied().filter(|&i| i != not && self.alive[i] && self.active[i]).collect())
            .unwrap_or_default()
    }

    fn activate(&mut self, g: usize) -> Result<(), ForgetError> {
        self.check_limits()?;
        self.active[g] = true;
        let given = self.clauses[g].clone();
        let mut keys: BTreeSet<LiteralKey> = BTreeSet::new();
        let mut roles: BTreeSet<RoleName> = BTreeSet::new();
        let mut fillers: BTreeSet<ConceptName> = BTreeSet::new();
        for l in &given.literals {
            keys.insert(l.key());
            if let Shape::Forall(r, d) | Shape::Exists(r, d) = l.shape {
                roles.insert(r);
                fillers.insert(d);
            }
        }
        for k in keys {
            self.active_by_key.entry(k).or_default().push(g);
        }
        for r in roles {
            self.active_quant.entry(r).or_default().push(g);
        }
        for d in fillers {
            self.active_by_filler.entry(d).or_default().push(g);
        }

        // Resolution.
        for (i, l) in given.literals.iter().enumerate() {
            if !self.resolvable(l.shape) {
                continue;
            }
            let partners = self.live_active(self.active_by_key.get(&l.complement().key()), g);
            for p in partners {
                if !self.alive[g] {
                    return Ok(());
                }
                let other = self.clauses[p].clone();
                for (j, m) in other.literals.iter().enumerate() {
                    if m.key() != l.complement().key() {
                        continue;
                    }
                    let Some(sigma) = unify(l.term, m.term) else { continue };
                    let lits: Vec<Literal> =
                        substituted(&given.literals, i, sigma).chain(substituted(&other.literals, j, sigma)).collect();
                    self.derive(lits, Rule::Resolution, sorted(vec![g, p]))?;
                }
            }
        }

        // Role propagation: the given clause's ∀ against any quantifier, and
        // its ∃ against ∀.
        for (i, l) in given.literals.iter().enumerate() {
            let (is_forall, r, d) = match l.shape {
                Shape::Forall(r, d) => (true, r, d),
                Shape::Exists(r, d) => (false, r, d),
                Shape::Name(_) => continue,
            };
            let partners = self.live_active(self.active_quant.get(&r), g);
            for p in partners {
                let other = self.clauses[p].clone();
                for (j, m) in other.literals.iter().enumerate() {
                    let (m_forall, m_role, e) = match m.shape {
                        Shape::Forall(r2, e) => (true, r2, e),
                        Shape::Exists(r2, e) => (false, r2, e),
                        Shape::Name(_) => continue,
                    };
                    if m_role != r || (!is_forall && !m_forall) {
                        continue;
                    }
                    if is_forall {
                        self.propagate(g, i, d, p, j, e, m_forall)?;
                    } else {
                        self.propagate(p, j, e, g, i, d, false)?;
                    }
                }
            }
        }

        // ∃-restriction elimination.
        if given.literals.len() == 1 && given.literals[0].is_negative_definer() {
            let d = given.literals[0].shape.symbol();
            self.unit_negative.insert(d, g);
            for p in self.live_active(self.active_by_filler.get(&d), g) {
                self.eliminate_exists(p, d, g)?;
            }
        }
        for l in &given.literals {
            if let Shape::Exists(_, d) = l.shape {
                if let Some(&u) = self.unit_negative.get(&d) {
                    if self.alive[u] {
                        self.eliminate_exists(g, d, u)?;
                    }
                }
            }
        }

        // Role instantiation.
        for (i, l) in given.literals.iter().enumerate() {
            if let Shape::Forall(r, d) = l.shape {
                if self.relevant.contains(&d) {
                    self.instantiate(g, i, r, d)?;
                }
            }
        }
        Ok(())
    }

    /// `(C₁ ⊔ ∀r.D₁)(t₁)`, `(C₂ ⊔ Qr.D₂)(t₂)` ⊢ `(C₁ ⊔ C₂ ⊔ Qr.D₁₂)σ`.
    #[allow(clippy::too_many_arguments)]
    fn propagate(
        &mut self,
        a: usize,
        i: usize,
        d1: ConceptName,
        b: usize,
        j: usize,
        d2: ConceptName,
        q_forall: bool,
    ) -> Result<(), ForgetError> {
        if d1 == d2 || !self.compatible.contains(&pair(d1, d2)) {
            return Ok(());
        }
        if !self.alive[a] || !self.alive[b] {
            return Ok(());
        }
        let ca = self.clauses[a].clone();
        let cb = self.clauses[b].clone();
        let (la, lb) = (ca.literals[i], cb.literals[j]);
        let Some(sigma) = unify(la.term, lb.term) else { return Ok(()) };
        let Shape::Forall(r, _) = la.shape else { unreachable!() };
        let (d12, fresh) = self.reg.combine(d1, d2);
        if fresh {
            for part in [d1, d2] {
                if part != d12 {
                    let lits =
                        vec![Literal::neg(Shape::Name(d12), Term::Var), Literal::pos(Shape::Name(part), Term::Var)];
                    self.insert(Clause::new(lits, Origin::Definition(d12)))?;
                }
            }
        }
        let term = la.term.apply(sigma);
        let new_lit = Literal::pos(if q_forall { Shape::Forall(r, d12) } else { Shape::Exists(r, d12) }, term);
        let lits: Vec<Literal> = substituted(&ca.literals, i, sigma)
            .chain(substituted(&cb.literals, j, sigma))
            .chain(std::iter::once(new_lit))
            .collect();
        self.derive(lits, Rule::RolePropagation, sorted(vec![a, b]))?;
        Ok(())
    }

    fn eliminate_exists(&mut self, p: usize, d: ConceptName, unit: usize) -> Result<(), ForgetError> {
        let clause = self.clauses[p].clone();
        for (i, l) in clause.literals.iter().enumerate() {
            if matches!(l.shape, Shape::Exists(_, e) if e == d) && l.positive {
                let lits: Vec<Literal> = substituted(&clause.literals, i, None).collect();
                self.derive(lits, Rule::ExistsElimination, vec![p, unit])?;
            }
        }
        Ok(())
    }

    fn instantiate(&mut self, g: usize, i: usize, r: RoleName, d: ConceptName) -> Result<(), ForgetError> {
        let clause = self.clauses[g].clone();
        let l = clause.literals[i];
        let assertions = self.roles.get(&r).cloned().unwrap_or_default();
        for ra in assertions {
            let Some(sigma) = unify(l.term, Term::Ind(ra.subject)) else { continue };
            let lits: Vec<Literal> = substituted(&clause.literals, i, sigma)
                .chain(std::iter::once(Literal::pos(Shape::Name(d), Term::Ind(ra.object))))
                .collect();
            self.derive(lits, Rule::RoleInstantiation, vec![g])?;
        }
        Ok(())
    }

    fn collect_facts(&self) -> DefinerFacts {
        let mut f = DefinerFacts::default();
        for (id, c) in self.clauses.iter().enumerate() {
            if !self.alive[id] {
                continue;
            }
            let Some(d) = c.negative_definer() else { continue };
            for l in &c.literals {
                match l.shape {
                    Shape::Name(s) if self.forget.contains(&s) => {
                        let side = if l.positive { &mut f.pos } else { &mut f.neg };
                        side.entry(d).or_default().insert(s);
                    }
                    Shape::Name(s) if s.is_definer() && l.positive => {
                        f.sub.entry(d).or_default().insert(s);
                    }
                    Shape::Forall(r, e) => {
                        f.quant.entry(d).or_default().insert((true, r, e));
                    }
                    Shape::Exists(r, e) => {
                        f.quant.entry(d).or_default().insert((false, r, e));
                    }
                    Shape::Name(_) => {}
                }
            }
        }
        // Inherit facts along `¬D ⊔ E` links.
        let definers: Vec<ConceptName> = f.sub.keys().copied().collect();
        let mut changed = true;
        while changed {
            changed = false;
            for &d in &definers {
                let subs: Vec<ConceptName> = f.sub[&d].iter().copied().collect();
                for e in subs {
                    for map in [&mut f.pos, &mut f.neg] {
                        let add: Vec<ConceptName> =
                            map.get(&e).map(|s| s.iter().copied().collect()).unwrap_or_default();
                        let entry = map.entry(d).or_default();
                        for x in add {
                            changed |= entry.insert(x);
                        }
                    }
                    let add: Vec<(bool, RoleName, ConceptName)> =
                        f.quant.get(&e).map(|s| s.iter().copied().collect()).unwrap_or_default();
                    let entry = f.quant.entry(d).or_default();
                    for x in add {
                        changed |= entry.insert(x);
                    }
                }
            }
        }
        f
    }

    /// Recomputes which definer pairs may be combined and which definers are
    /// worth instantiating, then fires the inferences that became possible.
    /// Returns whether anything changed.
    fn refresh_facts(&mut self) -> Result<bool, ForgetError> {
        let facts = self.collect_facts();
        let mut compatible = self.compatible.clone();
        let mut by_symbol_pos: HashMap<ConceptName, Vec<ConceptName>> = HashMap::new();
        for (d, syms) in &facts.pos {
            for s in syms {
                by_symbol_pos.entry(*s).or_default().push(*d);
            }
        }
        for (d2, syms) in &facts.neg {
            for s in syms {
                for d1 in by_symbol_pos.get(s).into_iter().flatten() {
                    if d1 != d2 {
                        compatible.insert(pair(*d1, *d2));
                    }
                }
            }
        }
        // Nested quantifiers over compatible fillers.
        let mut forall_users: HashMap<ConceptName, Vec<(RoleName, ConceptName)>> = HashMap::new();
        let mut quant_users: HashMap<ConceptName, Vec<(RoleName, ConceptName)>> = HashMap::new();
        for (d, qs) in &facts.quant {
            for &(is_forall, r, e) in qs {
                if is_forall {
                    forall_users.entry(e).or_default().push((r, *d));
                }
                quant_users.entry(e).or_default().push((r, *d));
            }
        }
        let mut work: Vec<(ConceptName, ConceptName)> = compatible.iter().copied().collect();
        while let Some((e1, e2)) = work.pop() {
            for (x, y) in [(e1, e2), (e2, e1)] {
                for &(r, d1) in forall_users.get(&x).into_iter().flatten() {
                    for &(r2, d2) in quant_users.get(&y).into_iter().flatten() {
                        if r == r2 && d1 != d2 && compatible.insert(pair(d1, d2)) {
                            work.push(pair(d1, d2));
                        }
                    }
                }
            }
        }
        let mut relevant = self.relevant.clone();
        for d in facts.pos.keys().chain(facts.neg.keys()) {
            relevant.insert(*d);
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (d, qs) in &facts.quant {
                if !relevant.contains(d) && qs.iter().any(|(_, _, e)| relevant.contains(e)) {
                    relevant.insert(*d);
                    changed = true;
                }
            }
        }

        let new_pairs: Vec<(ConceptName, ConceptName)> = compatible.difference(&self.compatible).copied().collect();
        let new_relevant: Vec<ConceptName> = relevant.difference(&self.relevant).copied().collect();
        self.compatible = compatible;
        self.relevant = relevant;
        if new_pairs.is_empty() && new_relevant.is_empty() {
            return Ok(false);
        }
        let mut new_pairs = new_pairs;
        new_pairs.sort_unstable();
        for (d1, d2) in new_pairs {
            self.fire_pair(d1, d2)?;
            self.fire_pair(d2, d1)?;
        }
        let mut new_relevant = new_relevant;
        new_relevant.sort_unstable();
        for d in new_relevant {
            for c in self.live_active(self.active_by_filler.get(&d), usize::MAX) {
                let clause = self.clauses[c].clone();
                for (i, l) in clause.literals.iter().enumerate() {
                    if let Shape::Forall(r, e) = l.shape {
                        if e == d {
                            self.instantiate(c, i, r, d)?;
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Propagation between active `∀r.D₁` and `Qr.D₂` literals (∀∀ pairs
    /// once, from the call with `d1 < d2`).
    fn fire_pair(&mut self, d1: ConceptName, d2: ConceptName) -> Result<(), ForgetError> {
        let users1 = self.live_active(self.active_by_filler.get(&d1), usize::MAX);
        let users2 = self.live_active(self.active_by_filler.get(&d2), usize::MAX);
        for &a in &users1 {
            for &b in &users2 {
                if a == b {
                    continue;
                }
                let ca = self.clauses[a].clone();
                let cb = self.clauses[b].clone();
                for (i, la) in ca.literals.iter().enumerate() {
                    let Shape::Forall(r, x) = la.shape else { continue };
                    if x != d1 {
                        continue;
                    }
                    for (j, lb) in cb.literals.iter().enumerate() {
                        match lb.shape {
                            Shape::Exists(r2, y) if r2 == r && y == d2 => {
                                self.propagate(a, i, d1, b, j, d2, false)?;
                            }
                            Shape::Forall(r2, y) if r2 == r && y == d2 && d1 < d2 => {
                                self.propagate(a, i, d1, b, j, d2, true)?;
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}
