//! ALC concepts extended with greatest/least fixpoints.
//!
//! Fixpoint variables are de Bruijn indices: `Var(0)` refers to the
//! innermost enclosing binder. Names are only chosen when printing.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::symbols::{ConceptName, RoleName, SymbolSet};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Concept {
    Top,
    Bot,
    Name(ConceptName),
    Not(Arc<Concept>),
    And(Arc<Concept>, Arc<Concept>),
    Or(Arc<Concept>, Arc<Concept>),
    Exists(RoleName, Arc<Concept>),
    Forall(RoleName, Arc<Concept>),
    /// Greatest fixpoint `νX.C`.
    Gfp(Arc<Concept>),
    /// Least fixpoint `μX.C`.
    Lfp(Arc<Concept>),
    /// Bound fixpoint variable (de Bruijn index).
    Var(u32),
}

use Concept::*;

impl Concept {
    pub fn name(c: ConceptName) -> Concept {
        Name(c)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Concept) -> Concept {
        Not(Arc::new(c))
    }

    pub fn and(a: Concept, b: Concept) -> Concept {
        And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Concept, b: Concept) -> Concept {
        Or(Arc::new(a), Arc::new(b))
    }

    pub fn exists(r: RoleName, c: Concept) -> Concept {
        Exists(r, Arc::new(c))
    }

    pub fn forall(r: RoleName, c: Concept) -> Concept {
        Forall(r, Arc::new(c))
    }

    pub fn gfp(body: Concept) -> Concept {
        Gfp(Arc::new(body))
    }

    pub fn lfp(body: Concept) -> Concept {
        Lfp(Arc::new(body))
    }

    /// Right-nested conjunction; the empty conjunction is `Top`.
    pub fn and_all(items: impl IntoIterator<Item = Concept>) -> Concept {
        let items: Vec<Concept> = items.into_iter().collect();
        items.into_iter().rev().reduce(|acc, c| Concept::and(c, acc)).unwrap_or(Top)
    }

    /// Right-nested disjunction; the empty disjunction is `Bot`.
    pub fn or_all(items: impl IntoIterator<Item = Concept>) -> Concept {
        let items: Vec<Concept> = items.into_iter().collect();
        items.into_iter().rev().reduce(|acc, c| Concept::or(c, acc)).unwrap_or(Bot)
    }

    pub fn is_fixpoint_free(&self) -> bool {
        match self {
            Top | Bot | Name(_) => true,
            Not(c) | Exists(_, c) | Forall(_, c) => c.is_fixpoint_free(),
            And(a, b) | Or(a, b) => a.is_fixpoint_free() && b.is_fixpoint_free(),
            Gfp(_) | Lfp(_) | Var(_) => false,
        }
    }

    pub fn contains_fixpoint(&self) -> bool {
        !self.is_fixpoint_free()
    }

    /// Negation normal form. Negation is pushed down to names; the fixpoint
    /// dual `¬νX.C ≡ μX.¬C[¬X/X]` is applied, so bound variables stay positive.
    pub fn nnf(&self) -> Concept {
        match self {
            Top | Bot | Name(_) | Var(_) => self.clone(),
            Not(c) => c.negated_nnf(),
            And(a, b) => Concept::and(a.nnf(), b.nnf()),
            Or(a, b) => Concept::or(a.nnf(), b.nnf()),
            Exists(r, c) => Concept::exists(*r, c.nnf()),
            Forall(r, c) => Concept::forall(*r, c.nnf()),
            Gfp(c) => Concept::gfp(c.nnf()),
            Lfp(c) => Concept::lfp(c.nnf()),
        }
    }

    /// NNF of `¬self`.
    pub fn negated_nnf(&self) -> Concept {
        match self {
            Top => Bot,
            Bot => Top,
            Name(_) => Concept::not(self.clone()),
            Not(c) => c.nnf(),
            And(a, b) => Concept::or(a.negated_nnf(), b.negated_nnf()),
            Or(a, b) => Concept::and(a.negated_nnf(), b.negated_nnf()),
            Exists(r, c) => Concept::forall(*r, c.negated_nnf()),
            Forall(r, c) => Concept::exists(*r, c.negated_nnf()),
            Gfp(c) => Concept::lfp(c.negated_nnf()),
            Lfp(c) => Concept::gfp(c.negated_nnf()),
            // The enclosing binder flips polarity as well.
            Var(_) => self.clone(),
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Top | Bot | Name(_) | Var(_) => true,
            Not(c) => matches!(**c, Name(_) | Var(_)),
            And(a, b) | Or(a, b) => a.is_nnf() && b.is_nnf(),
            Exists(_, c) | Forall(_, c) | Gfp(c) | Lfp(c) => c.is_nnf(),
        }
    }

    pub fn collect_signature(&self, out: &mut SymbolSet) {
        match self {
            Top | Bot | Var(_) => {}
            Name(c) => {
                out.concepts.insert(*c);
            }
            Not(c) | Gfp(c) | Lfp(c) => c.collect_signature(out),
            And(a, b) | Or(a, b) => {
                a.collect_signature(out);
                b.collect_signature(out);
            }
            Exists(r, c) | Forall(r, c) => {
                out.roles.insert(*r);
                c.collect_signature(out);
            }
        }
    }

    pub fn signature(&self) -> SymbolSet {
        let mut s = SymbolSet::new();
        self.collect_signature(&mut s);
        s
    }

    pub fn mentions(&self, name: ConceptName) -> bool {
        match self {
            Top | Bot | Var(_) => false,
            Name(c) => *c == name,
            Not(c) | Gfp(c) | Lfp(c) | Exists(_, c) | Forall(_, c) => c.mentions(name),
            And(a, b) | Or(a, b) => a.mentions(name) || b.mentions(name),
        }
    }

    /// Structural depth: names, `Top`, `Bot` have depth 0; each operator adds one.
    pub fn depth(&self) -> usize {
        match self {
            Top | Bot | Name(_) | Var(_) => 0,
            Not(c) | Gfp(c) | Lfp(c) | Exists(_, c) | Forall(_, c) => 1 + c.depth(),
            And(a, b) | Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Top-level operands of a (right- or left-nested) conjunction.
    pub fn conjuncts(&self) -> Vec<&Concept> {
        let mut out = Vec::new();
        fn go<'a>(c: &'a Concept, out: &mut Vec<&'a Concept>) {
            match c {
                And(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                _ => out.push(c),
            }
        }
        go(self, &mut out);
        out
    }

    pub fn disjuncts(&self) -> Vec<&Concept> {
        let mut out = Vec::new();
        fn go<'a>(c: &'a Concept, out: &mut Vec<&'a Concept>) {
            match c {
                Or(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                _ => out.push(c),
            }
        }
        go(self, &mut out);
        out
    }

    /// Canonical form: n-ary `⊓`/`⊔` flattened, operands sorted and
    /// deduplicated, then rebuilt right-nested.
    pub fn normalize(&self) -> Concept {
        match self {
            Top | Bot | Name(_) | Var(_) => self.clone(),
            Not(c) => Concept::not(c.normalize()),
            And(..) => {
                let ops: BTreeSet<Concept> = self.conjuncts().into_iter().map(Concept::normalize).collect();
                Concept::and_all(ops)
            }
            Or(..) => {
                let ops: BTreeSet<Concept> = self.disjuncts().into_iter().map(Concept::normalize).collect();
                Concept::or_all(ops)
            }
            Exists(r, c) => Concept::exists(*r, c.normalize()),
            Forall(r, c) => Concept::forall(*r, c.normalize()),
            Gfp(c) => Concept::gfp(c.normalize()),
            Lfp(c) => Concept::lfp(c.normalize()),
        }
    }

    /// Local simplification with `Top`/`Bot` as units and absorbing elements.
    pub fn simplify(&self) -> Concept {
        match self {
            Top | Bot | Name(_) | Var(_) => self.clone(),
            Not(c) => match c.simplify() {
                Top => Bot,
                Bot => Top,
                Not(inner) => (*inner).clone(),
                s => Concept::not(s),
            },
            And(a, b) => match (a.simplify(), b.simplify()) {
                (Bot, _) | (_, Bot) => Bot,
                (Top, x) | (x, Top) => x,
                (x, y) if x == y => x,
                (x, y) => Concept::and(x, y),
            },
            Or(a, b) => match (a.simplify(), b.simplify()) {
                (Top, _) | (_, Top) => Top,
                (Bot, x) | (x, Bot) => x,
                (x, y) if x == y => x,
                (x, y) => Concept::or(x, y),
            },
            Exists(r, c) => match c.simplify() {
                Bot => Bot,
                s => Concept::exists(*r, s),
            },
            Forall(r, c) => match c.simplify() {
                Top => Top,
                s => Concept::forall(*r, s),
            },
            Gfp(c) => {
                let s = c.simplify();
                if s.has_free_var(0) {
                    Concept::gfp(s)
                } else {
                    s.shift_vars(-1, 0)
                }
            }
            Lfp(c) => {
                let s = c.simplify();
                if s.has_free_var(0) {
                    Concept::lfp(s)
                } else {
                    s.shift_vars(-1, 0)
                }
            }
        }
    }

    /// True if variable `index` (relative to the root of `self`) occurs free.
    pub fn has_free_var(&self, index: u32) -> bool {
        match self {
            Var(i) => *i == index,
            Top | Bot | Name(_) => false,
            Not(c) | Exists(_, c) | Forall(_, c) => c.has_free_var(index),
            And(a, b) | Or(a, b) => a.has_free_var(index) || b.has_free_var(index),
            Gfp(c) | Lfp(c) => c.has_free_var(index + 1),
        }
    }

    /// True if no variable escapes its binder.
    pub fn is_closed(&self) -> bool {
        fn go(c: &Concept, depth: u32) -> bool {
            match c {
                Var(i) => *i < depth,
                Top | Bot | Name(_) => true,
                Not(c) | Exists(_, c) | Forall(_, c) => go(c, depth),
                And(a, b) | Or(a, b) => go(a, depth) && go(b, depth),
                Gfp(c) | Lfp(c) => go(c, depth + 1),
            }
        }
        go(self, 0)
    }

    /// Adds `delta` to every free variable with index `>= cutoff`.
    pub fn shift_vars(&self, delta: i64, cutoff: u32) -> Concept {
        match self {
            Var(i) if *i >= cutoff => Var((*i as i64 + delta) as u32),
            Top | Bot | Name(_) | Var(_) => self.clone(),
            Not(c) => Concept::not(c.shift_vars(delta, cutoff)),
            And(a, b) => Concept::and(a.shift_vars(delta, cutoff), b.shift_vars(delta, cutoff)),
            Or(a, b) => Concept::or(a.shift_vars(delta, cutoff), b.shift_vars(delta, cutoff)),
            Exists(r, c) => Concept::exists(*r, c.shift_vars(delta, cutoff)),
            Forall(r, c) => Concept::forall(*r, c.shift_vars(delta, cutoff)),
            Gfp(c) => Concept::gfp(c.shift_vars(delta, cutoff + 1)),
            Lfp(c) => Concept::lfp(c.shift_vars(delta, cutoff + 1)),
        }
    }

    /// Replaces concept names via `f`. `f` receives the number of fixpoint
    /// binders above the occurrence; replacements are inserted verbatim.
    pub fn map_names(&self, f: &mut impl FnMut(ConceptName, u32) -> Option<Concept>) -> Concept {
        fn go(c: &Concept, depth: u32, f: &mut impl FnMut(ConceptName, u32) -> Option<Concept>) -> Concept {
            match c {
                Name(n) => f(*n, depth).unwrap_or_else(|| c.clone()),
                Top | Bot | Var(_) => c.clone(),
                Not(x) => Concept::not(go(x, depth, f)),
                And(a, b) => Concept::and(go(a, depth, f), go(b, depth, f)),
                Or(a, b) => Concept::or(go(a, depth, f), go(b, depth, f)),
                Exists(r, x) => Concept::exists(*r, go(x, depth, f)),
                Forall(r, x) => Concept::forall(*r, go(x, depth, f)),
                Gfp(x) => Concept::gfp(go(x, depth + 1, f)),
                Lfp(x) => Concept::lfp(go(x, depth + 1, f)),
            }
        }
        go(self, 0, f)
    }

    /// Substitutes a closed concept for every occurrence of `name`.
    pub fn substitute(&self, name: ConceptName, replacement: &Concept) -> Concept {
        debug_assert!(replacement.is_closed());
        self.map_names(&mut |n, _| (n == name).then(|| replacement.clone()))
    }

    /// Checks that every variable is bound and occurs under an even number
    /// of negations relative to its binder.
    pub fn is_well_formed(&self) -> bool {
        fn go(c: &Concept, polarity: &mut Vec<bool>, positive: bool) -> bool {
            match c {
                Var(i) => {
                    let n = polarity.len();
                    (*i as usize) < n && polarity[n - 1 - *i as usize] == positive
                }
                Top | Bot | Name(_) => true,
                Not(x) => go(x, polarity, !positive),
                And(a, b) | Or(a, b) => go(a, polarity, positive) && go(b, polarity, positive),
                Exists(_, x) | Forall(_, x) => go(x, polarity, positive),
                Gfp(x) | Lfp(x) => {
                    polarity.push(positive);
                    let ok = go(x, polarity, positive);
                    polarity.pop();
                    ok
                }
            }
        }
        go(self, &mut Vec::new(), true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Concept {
        Name(ConceptName(0))
    }
    fn b() -> Concept {
        Name(ConceptName(1))
    }
    const R: RoleName = RoleName(0);

    #[test]
    fn de_morgan() {
        let c = Concept::not(Concept::and(a(), b()));
        assert_eq!(c.nnf(), Concept::or(Concept::not(a()), Concept::not(b())));
    }

    #[test]
    fn quantifier_duality() {
        let c = Concept::not(Concept::forall(R, a()));
        assert_eq!(c.nnf(), Concept::exists(R, Concept::not(a())));
    }

    #[test]
    fn fixpoint_duality() {
        // ¬∃r.νX.∃r.X  ≡  ∀r.μX.∀r.X
        let v = Concept::exists(R, Concept::gfp(Concept::exists(R, Var(0))));
        let n = Concept::not(v).nnf();
        assert_eq!(n, Concept::forall(R, Concept::lfp(Concept::forall(R, Var(0)))));
        assert!(n.is_nnf());
        assert!(n.is_well_formed());
    }

    #[test]
    fn normalize_flattens_and_sorts() {
        let c = Concept::and(b(), Concept::and(a(), b()));
        assert_eq!(c.normalize(), Concept::and(a(), b()));
    }

    #[test]
    fn simplify_drops_vacuous_binder() {
        let c = Concept::gfp(Concept::exists(R, a()));
        assert_eq!(c.simplify(), Concept::exists(R, a()));
        let c = Concept::or(Bot, Concept::and(Top, a()));
        assert_eq!(c.simplify(), a());
    }

    #[test]
    fn ill_formed_variables() {
        assert!(!Var(0).is_well_formed());
        assert!(!Concept::gfp(Concept::not(Var(0))).is_well_formed());
        assert!(Concept::gfp(Concept::not(Concept::not(Var(0)))).is_well_formed());
    }

    #[test]
    fn signature_of_top_is_empty() {
        assert!(Top.signature().is_empty());
        let s = Concept::exists(R, Concept::and(a(), b())).signature();
        assert_eq!(s.concepts.len(), 2);
        assert_eq!(s.roles.len(), 1);
    }
}
