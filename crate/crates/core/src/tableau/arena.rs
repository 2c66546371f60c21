use std::collections::HashMap;

use crate::model::{Concept, ConceptName, RoleName};

pub(crate) type Cid = u32;

/// Hash-consed NNF concept. `And`/`Or` operands are flattened, sorted and
/// deduplicated, so equal concepts get equal ids.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Node {
    Top,
    Bot,
    Atom(ConceptName, bool),
    And(Vec<Cid>),
    Or(Vec<Cid>),
    Exists(RoleName, Cid),
    Forall(RoleName, Cid),
}

#[derive(Default)]
pub(crate) struct Arena {
    nodes: Vec<Node>,
    index: HashMap<Node, Cid>,
    neg: Vec<Option<Cid>>,
}

impl Arena {
    pub fn node(&self, c: Cid) -> &Node {
        &self.nodes[c as usize]
    }

    fn make(&mut self, n: Node) -> Cid {
        if let Some(&c) = self.index.get(&n) {
            return c;
        }
        let c = self.nodes.len() as Cid;
        self.nodes.push(n.clone());
        self.neg.push(None);
        self.index.insert(n, c);
        c
    }

    fn junction(&mut self, and: bool, parts: Vec<Cid>) -> Cid {
        let (unit, zero) = if and { (Node::Top, Node::Bot) } else { (Node::Bot, Node::Top) };
        let mut flat = Vec::with_capacity(parts.len());
        for p in parts {
            match self.node(p) {
                n if *n == unit => {}
                n if *n == zero => return self.make(zero),
                Node::And(cs) if and => flat.extend_from_slice(cs),
                Node::Or(cs) if !and => flat.extend_from_slice(cs),
                _ => flat.push(p),
            }
        }
        flat.sort_unstable();
        flat.dedup();
        match flat.len() {
            0 => self.make(unit),
            1 => flat[0],
            _ if and => self.make(Node::And(flat)),
            _ => self.make(Node::Or(flat)),
        }
    }

    /// Interns the NNF of a fixpoint-free concept.
    pub fn intern(&mut self, c: &Concept) -> Cid {
        match c {
            Concept::Top => self.make(Node::Top),
            Concept::Bot => self.make(Node::Bot),
            Concept::Name(n) => self.make(Node::Atom(*n, true)),
            Concept::Not(inner) => match &**inner {
                Concept::Name(n) => self.make(Node::Atom(*n, false)),
                other => self.intern(&other.negated_nnf()),
            },
            Concept::And(..) => {
                let parts = c.conjuncts().into_iter().map(|p| self.intern(p)).collect();
                self.junction(true, parts)
            }
            Concept::Or(..) => {
                let parts = c.disjuncts().into_iter().map(|p| self.intern(p)).collect();
                self.junction(false, parts)
            }
            Concept::Exists(r, f) => {
                let f = self.intern(f);
                self.make(Node::Exists(*r, f))
            }
            Concept::Forall(r, f) => {
                let f = self.intern(f);
                self.make(Node::Forall(*r, f))
            }
            Concept::Gfp(_) | Concept::Lfp(_) | Concept::Var(_) => {
                unreachable!("fixpoints are rejected before interning")
            }
        }
    }

    /// The id of the NNF negation of `c`.
    pub fn neg(&mut self, c: Cid) -> Cid {
        if let Some(n) = self.neg[c as usize] {
            return n;
        }
        let n = match self.node(c).clone() {
            Node::Top => self.make(Node::Bot),
            Node::Bot => self.make(Node::Top),
            Node::Atom(a, pos) => self.make(Node::Atom(a, !pos)),
            Node::And(cs) => {
                let parts = cs.into_iter().map(|x| self.neg(x)).collect();
                self.junction(false, parts)
            }
            Node::Or(cs) => {
                let parts = cs.into_iter().map(|x| self.neg(x)).collect();
                self.junction(true, parts)
            }
            Node::Exists(r, f) => {
                let f = self.neg(f);
                self.make(Node::Forall(r, f))
            }
            Node::Forall(r, f) => {
                let f = self.neg(f);
                self.make(Node::Exists(r, f))
            }
        };
        self.neg[c as usize] = Some(n);
        self.neg[n as usize] = Some(c);
        n
    }
}
