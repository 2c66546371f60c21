//! Completion-graph search with subset blocking and dependency-directed
//! backjumping.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;
use std::time::Instant;

use crate::model::{Axiom, Concept, ConceptName, Individual, RoleName};

use super::arena::{Arena, Cid, Node};
use super::TableauError;

/// Sorted set of branching levels a fact depends on. Shared, since the
/// same set is attached to many facts.
#[derive(Clone, Default, Debug, PartialEq, Eq)]
struct Deps(Option<Arc<[u32]>>);

impl Deps {
    fn from_vec(v: Vec<u32>) -> Deps {
        if v.is_empty() {
            Deps(None)
        } else {
            Deps(Some(v.into()))
        }
    }

    fn levels(&self) -> &[u32] {
        self.0.as_deref().unwrap_or(&[])
    }

    fn level(l: u32) -> Deps {
        Deps::from_vec(vec![l])
    }

    fn union(&self, other: &Deps) -> Deps {
        let (a, b) = (self.levels(), other.levels());
        if b.is_empty() || a == b {
            return self.clone();
        }
        if a.is_empty() {
            return other.clone();
        }
        let mut v = Vec::with_capacity(a.len() + b.len());
        v.extend_from_slice(a);
        v.extend_from_slice(b);
        v.sort_unstable();
        v.dedup();
        Deps::from_vec(v)
    }

    fn contains(&self, l: u32) -> bool {
        self.levels().binary_search(&l).is_ok()
    }

    fn without(&self, l: u32) -> Deps {
        if !self.contains(l) {
            return self.clone();
        }
        Deps::from_vec(self.levels().iter().copied().filter(|&x| x != l).collect())
    }
}

#[derive(Clone)]
struct Edge {
    role: RoleName,
    to: usize,
    deps: Deps,
}

#[derive(Clone, Default)]
struct Vertex {
    label: im::HashMap<Cid, Deps>,
    foralls: Vec<Cid>,
    edges: Vec<Edge>,
    parent: Option<usize>,
    /// The filler that caused a generated vertex to be created.
    core: Option<Cid>,
}

#[derive(Clone)]
struct Disjunction {
    parts: Vec<(usize, Cid)>,
    deps: Deps,
}

/// Persistent collections keep branch snapshots cheap: a snapshot shares
/// everything except what later changes.
#[derive(Clone, Default)]
struct State {
    verts: im::Vector<Arc<Vertex>>,
    /// Never shrinks; a label only grows along a branch, so a satisfied
    /// entry stays satisfied.
    pending: im::Vector<Disjunction>,
    /// Entries of `pending` before this index are satisfied.
    head: usize,
    /// Indices into `pending` by each `(vertex, part)` they contain.
    watch: im::HashMap<(usize, Cid), Arc<Vec<u32>>>,
    /// Cached blocking status by vertex. The status of `x` depends only on
    /// labels of vertices up to `x`, so a label change at `v` invalidates
    /// entries from `v` on.
    blocked: im::Vector<Option<bool>>,
    /// Lowest vertex whose label changed since `blocked` was last trimmed.
    dirty: Option<usize>,
    /// Entries of `pending` to re-examine for unit propagation.
    recheck: Vec<u32>,
    exists: im::Vector<(usize, Cid)>,
    queue: VecDeque<(usize, Cid)>,
}

impl State {
    fn vertex_mut(&mut self, v: usize) -> &mut Vertex {
        Arc::make_mut(&mut self.verts[v])
    }

    fn push_disjunction(&mut self, d: Disjunction) {
        let i = self.pending.len() as u32;
        for &key in &d.parts {
            Arc::make_mut(self.watch.entry(key).or_default()).push(i);
        }
        self.pending.push_back(d);
        self.recheck.push(i);
    }
}

enum Step {
    Clash(Deps),
    Branch(Disjunction),
    Complete,
    Timeout,
}

struct Frame {
    snapshot: State,
    level: u32,
    choice: Disjunction,
    next: usize,
    failed: Deps,
}

pub(crate) struct Search<'a> {
    arena: &'a mut Arena,
    tbox: Vec<Cid>,
    /// TBox concepts true at any vertex without successors; asserted when a
    /// vertex gets its first edge, before any successor is expanded.
    tbox_edges: Vec<Cid>,
    /// Right-hand sides of `A ⊑ D`, added whenever `A` enters a label.
    unfold: HashMap<ConceptName, Vec<Cid>>,
    backjumping: bool,
    deadline: Option<Instant>,
}

impl<'a> Search<'a> {
    pub fn new(arena: &'a mut Arena, backjumping: bool, deadline: Option<Instant>) -> Self {
        Search { arena, tbox: Vec::new(), tbox_edges: Vec::new(), unfold: HashMap::new(), backjumping, deadline }
    }

    fn new_vertex(&mut self, st: &mut State, parent: Option<usize>) -> Result<usize, Deps> {
        let v = st.verts.len();
        st.verts.push_back(Arc::new(Vertex { parent, ..Vertex::default() }));
        for i in 0..self.tbox.len() {
            self.add(st, v, self.tbox[i], Deps::default())?;
        }
        Ok(v)
    }

    fn add(&mut self, st: &mut State, v: usize, c: Cid, deps: Deps) -> Result<(), Deps> {
        if st.verts[v].label.contains_key(&c) {
            return Ok(());
        }
        match self.arena.node(c) {
            Node::Top => return Ok(()),
            Node::Bot => return Err(deps),
            Node::Atom(..) => {
                let n = self.arena.neg(c);
                if let Some(d) = st.verts[v].label.get(&n) {
                    return Err(deps.union(d));
                }
            }
            _ => {}
        }
        st.vertex_mut(v).label.insert(c, deps);
        st.dirty = Some(st.dirty.map_or(v, |d| d.min(v)));
        let n = self.arena.neg(c);
        if let Some(ws) = st.watch.get(&(v, n)) {
            st.recheck.extend(ws.iter().copied());
        }
        st.queue.push_back((v, c));
        Ok(())
    }

    fn add_edge(&mut self, st: &mut State, from: usize, role: RoleName, to: usize, deps: Deps) -> Result<(), Deps> {
        let first = st.verts[from].edges.is_empty();
        st.vertex_mut(from).edges.push(Edge { role, to, deps: deps.clone() });
        if first {
            for i in 0..self.tbox_edges.len() {
                self.add(st, from, self.tbox_edges[i], Deps::default())?;
            }
        }
        for i in 0..st.verts[from].foralls.len() {
            let f = st.verts[from].foralls[i];
            if let Node::Forall(r, d) = *self.arena.node(f) {
                if r == role {
                    let fd = st.verts[from].label[&f].union(&deps);
                    self.add(st, to, d, fd)?;
                }
            }
        }
        Ok(())
    }

    fn process(&mut self, st: &mut State, v: usize, c: Cid) -> Result<(), Deps> {
        let deps = st.verts[v].label[&c].clone();
        match self.arena.node(c).clone() {
            Node::And(cs) => {
                for x in cs {
                    self.add(st, v, x, deps.clone())?;
                }
            }
            Node::Or(cs) => st.push_disjunction(Disjunction { parts: cs.into_iter().map(|x| (v, x)).collect(), deps }),
            Node::Exists(..) => st.exists.push_back((v, c)),
            Node::Forall(r, d) => {
                st.vertex_mut(v).foralls.push(c);
                for i in 0..st.verts[v].edges.len() {
                    let e = &st.verts[v].edges[i];
                    if e.role == r {
                        let (to, ed) = (e.to, deps.union(&e.deps));
                        self.add(st, to, d, ed)?;
                    }
                }
            }
            Node::Atom(a, true) => {
                if let Some(ds) = self.unfold.get(&a) {
                    for x in ds.clone() {
                        self.add(st, v, x, deps.clone())?;
                    }
                }
            }
            Node::Top | Node::Bot | Node::Atom(..) => {}
        }
        Ok(())
    }

    /// The parts of `dj` whose negation is not yet in a label, with the deps
    /// of the excluded ones; `None` if `dj` is already satisfied.
    fn open_parts(&mut self, st: &State, dj: &Disjunction) -> Option<(Vec<(usize, Cid)>, Deps)> {
        if dj.parts.iter().any(|(v, p)| st.verts[*v].label.contains_key(p)) {
            return None;
        }
        let mut open = Vec::new();
        let mut deps = dj.deps.clone();
        for &(v, p) in &dj.parts {
            let n = self.arena.neg(p);
            match st.verts[v].label.get(&n) {
                Some(d) => deps = deps.union(d),
                None => open.push((v, p)),
            }
        }
        Some((open, deps))
    }

    /// Applies deterministic rules, including unit propagation over pending
    /// disjunctions, then reports what is left to do.
    fn expand(&mut self, st: &mut State) -> Step {
        loop {
            while let Some((v, c)) = st.queue.pop_front() {
                if let Err(d) = self.process(st, v, c) {
                    return Step::Clash(d);
                }
            }
            if let Some(i) = st.recheck.pop() {
                let dj = st.pending[i as usize].clone();
                if let Some((open, deps)) = self.open_parts(st, &dj) {
                    match open.len() {
                        0 => return Step::Clash(deps),
                        1 => {
                            let (v, p) = open[0];
                            if let Err(d) = self.add(st, v, p, deps) {
                                return Step::Clash(d);
                            }
                        }
                        _ => {}
                    }
                }
                continue;
            }
            while st.head < st.pending.len() {
                let dj = st.pending[st.head].clone();
                match self.open_parts(st, &dj) {
                    None => st.head += 1,
                    Some((open, deps)) => match open.len() {
                        0 => return Step::Clash(deps),
                        1 => {
                            st.recheck.push(st.head as u32);
                            break;
                        }
                        _ => return Step::Branch(Disjunction { parts: open, deps }),
                    },
                }
            }
            if !st.recheck.is_empty() {
                continue;
            }
            match self.generate(st) {
                Ok(true) if st.verts.len().is_multiple_of(64) && self.timed_out() => return Step::Timeout,
                Ok(true) => continue,
                Ok(false) => return Step::Complete,
                Err(d) => return Step::Clash(d),
            }
        }
    }

    /// Anywhere subset blocking: a generated vertex is blocked if an
    /// ancestor is, or if its label is contained in the label of an earlier
    /// vertex with no blocked ancestor. `memo` is valid for one state.
    fn blocked(&self, st: &State, memo: &mut im::Vector<Option<bool>>, x: usize) -> bool {
        if let Some(Some(b)) = memo.get(x) {
            return *b;
        }
        let b = st.verts[x].parent.is_some() && (self.ancestor_blocked(st, memo, x) || self.contained(st, memo, x));
        while memo.len() <= x {
            memo.push_back(None);
        }
        memo.set(x, Some(b));
        b
    }

    fn ancestor_blocked(&self, st: &State, memo: &mut im::Vector<Option<bool>>, x: usize) -> bool {
        st.verts[x].parent.is_some_and(|p| self.blocked(st, memo, p))
    }

    fn contained(&self, st: &State, memo: &mut im::Vector<Option<bool>>, x: usize) -> bool {
        let vx = &st.verts[x];
        for u in 0..x {
            let vu = &st.verts[u];
            if vu.label.len() < vx.label.len() || vx.core.is_some_and(|c| !vu.label.contains_key(&c)) {
                continue;
            }
            if vx.label.keys().all(|k| vu.label.contains_key(k)) && !self.ancestor_blocked(st, memo, u) {
                return true;
            }
        }
        false
    }

    /// Creates a successor for the first unsatisfied existential on an
    /// unblocked vertex. Returns whether one was created.
    fn generate(&mut self, st: &mut State) -> Result<bool, Deps> {
        let mut satisfied = Vec::new();
        let mut blocked = std::mem::take(&mut st.blocked);
        if let Some(d) = st.dirty.take() {
            blocked.truncate(d.min(blocked.len()));
        }
        let mut pick = None;
        for (i, &(v, c)) in st.exists.iter().enumerate() {
            let Node::Exists(r, d) = *self.arena.node(c) else { unreachable!() };
            let top = matches!(self.arena.node(d), Node::Top);
            if st.verts[v].edges.iter().any(|e| e.role == r && (top || st.verts[e.to].label.contains_key(&d))) {
                satisfied.push(i);
                continue;
            }
            if self.blocked(st, &mut blocked, v) {
                continue;
            }
            if pick.is_none_or(|(pv, _, _)| v < pv) {
                pick = Some((v, i, c));
            }
        }
        st.blocked = blocked;
        let mut gone = satisfied;
        gone.extend(pick.map(|(_, i, _)| i));
        gone.sort_unstable();
        for i in gone.into_iter().rev() {
            st.exists.remove(i);
        }
        let Some((v, _, c)) = pick else { return Ok(false) };
        let Node::Exists(r, d) = *self.arena.node(c) else { unreachable!() };
        let deps = st.verts[v].label[&c].clone();
        let y = self.new_vertex(st, Some(v))?;
        self.add(st, y, d, deps.clone())?;
        if st.verts[y].label.contains_key(&d) {
            st.vertex_mut(y).core = Some(d);
        }
        self.add_edge(st, v, r, y, deps)?;
        Ok(true)
    }

    fn try_branch(&mut self, st: &mut State, f: &Frame) -> Result<(), Deps> {
        for &(v, p) in &f.choice.parts[..f.next] {
            let n = self.arena.neg(p);
            self.add(st, v, n, f.failed.union(&f.choice.deps))?;
        }
        let (v, p) = f.choice.parts[f.next];
        let deps = if f.next + 1 == f.choice.parts.len() {
            f.failed.union(&f.choice.deps)
        } else {
            Deps::level(f.level).union(&f.choice.deps)
        };
        self.add(st, v, p, deps)
    }

    fn timed_out(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() > d)
    }

    /// Whether the fixpoint-free `axioms` have a model.
    pub fn satisfiable<'x>(
        &mut self,
        axioms: impl IntoIterator<Item = &'x Axiom> + Clone,
    ) -> Result<bool, TableauError> {
        let mut st = State::default();
        let mut inds: HashMap<Individual, usize> = HashMap::new();
        for ax in axioms.clone() {
            match ax {
                Axiom::Gci { sub: Concept::Name(a), sup } => {
                    let c = self.arena.intern(&sup.nnf());
                    self.unfold.entry(*a).or_default().push(c);
                }
                Axiom::Gci { sub, sup } => {
                    let c = self.arena.intern(&Concept::or(Concept::not(sub.clone()), sup.clone()).nnf());
                    self.tbox.push(c);
                }
                _ => {}
            }
        }
        self.tbox.sort_unstable();
        self.tbox.dedup();
        let arena = &*self.arena;
        let vacuous = |c: Cid| match arena.node(c) {
            Node::Forall(..) => true,
            Node::Or(cs) => cs.iter().any(|&x| matches!(arena.node(x), Node::Forall(..))),
            _ => false,
        };
        let (lazy, eager) = self.tbox.iter().partition(|&&c| vacuous(c));
        self.tbox_edges = lazy;
        self.tbox = eager;
        match self.build(&mut st, &mut inds, axioms) {
            Ok(()) => {}
            Err(_) => return Ok(false),
        }
        self.run(st)
    }

    fn vertex_of(
        &mut self,
        st: &mut State,
        inds: &mut HashMap<Individual, usize>,
        a: Individual,
    ) -> Result<usize, Deps> {
        if let Some(&v) = inds.get(&a) {
            return Ok(v);
        }
        let v = self.new_vertex(st, None)?;
        inds.insert(a, v);
        Ok(v)
    }

    fn build<'x>(
        &mut self,
        st: &mut State,
        inds: &mut HashMap<Individual, usize>,
        axioms: impl IntoIterator<Item = &'x Axiom>,
    ) -> Result<(), Deps> {
        for ax in axioms {
            match ax {
                Axiom::Gci { .. } => {}
                Axiom::ConceptAssertion(a) => {
                    let v = self.vertex_of(st, inds, a.individual)?;
                    let c = self.arena.intern(&a.concept.nnf());
                    self.add(st, v, c, Deps::default())?;
                }
                Axiom::RoleAssertion { role, subject, object } => {
                    let s = self.vertex_of(st, inds, *subject)?;
                    let o = self.vertex_of(st, inds, *object)?;
                    self.add_edge(st, s, *role, o, Deps::default())?;
                }
                Axiom::DisjunctiveAssertion(parts) => {
                    let mut ps = Vec::with_capacity(parts.len());
                    for p in parts {
                        let v = self.vertex_of(st, inds, p.individual)?;
                        ps.push((v, self.arena.intern(&p.concept.nnf())));
                    }
                    if ps.is_empty() {
                        return Err(Deps::default());
                    }
                    st.push_disjunction(Disjunction { parts: ps, deps: Deps::default() });
                }
            }
        }
        if st.verts.is_empty() {
            self.new_vertex(st, None)?;
        }
        Ok(())
    }

    fn run(&mut self, mut cur: State) -> Result<bool, TableauError> {
        let mut stack: Vec<Frame> = Vec::new();
        let mut steps: u64 = 0;
        'outer: loop {
            steps += 1;
            if steps.is_multiple_of(256) && self.timed_out() {
                return Err(TableauError::Timeout);
            }
            let mut deps = match self.expand(&mut cur) {
                Step::Complete => return Ok(true),
                Step::Timeout => return Err(TableauError::Timeout),
                Step::Branch(choice) => {
                    let frame = Frame {
                        snapshot: cur.clone(),
                        level: stack.len() as u32,
                        choice,
                        next: 0,
                        failed: Deps::default(),
                    };
                    match self.try_branch(&mut cur, &frame) {
                        Ok(()) => {
                            stack.push(frame);
                            continue;
                        }
                        Err(d) => {
                            stack.push(frame);
                            d
                        }
                    }
                }
                Step::Clash(d) => d,
            };
            loop {
                let Some(frame) = stack.last_mut() else { return Ok(false) };
                if self.backjumping && !deps.contains(frame.level) {
                    stack.pop();
                    continue;
                }
                frame.failed = frame.failed.union(&deps.without(frame.level));
                frame.next += 1;
                if frame.next < frame.choice.parts.len() {
                    cur = frame.snapshot.clone();
                    match self.try_branch(&mut cur, &stack[stack.len() - 1]) {
                        Ok(()) => continue 'outer,
                        Err(d) => {
                            deps = d;
                            continue;
                        }
                    }
                }
                deps = frame.failed.union(&frame.choice.deps);
                stack.pop();
            }
        }
    }
}
