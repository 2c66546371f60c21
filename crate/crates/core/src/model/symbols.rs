//! Interned symbols and the symbol table.
//!
//! Concept names, role names and individuals live in separate id spaces.
//! Concept ids are further partitioned: user names occupy the low range,
//! definer symbols start at [`DEFINER_BASE`] and annotation concepts at
//! [`ANNOTATION_BASE`], so classifying a name is a single comparison.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

/// First concept id reserved for definer symbols.
pub const DEFINER_BASE: u32 = 0x4000_0000;
/// First concept id reserved for annotation concepts.
pub const ANNOTATION_BASE: u32 = 0x8000_0000;
/// First individual id reserved for fresh (witness) individuals.
pub const FRESH_INDIVIDUAL_BASE: u32 = 0x8000_0000;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ConceptName(pub u32);

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct RoleName(pub u32);

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Individual(pub u32);

impl ConceptName {
    pub fn definer(index: u32) -> Self {
        debug_assert!(index < ANNOTATION_BASE - DEFINER_BASE);
        ConceptName(DEFINER_BASE + index)
    }

    pub fn annotation(index: u32) -> Self {
        ConceptName(ANNOTATION_BASE + index)
    }

    #[inline]
    pub fn is_definer(self) -> bool {
        (DEFINER_BASE..ANNOTATION_BASE).contains(&self.0)
    }

    #[inline]
    pub fn is_annotation(self) -> bool {
        self.0 >= ANNOTATION_BASE
    }

    /// True for names that came from user input.
    #[inline]
    pub fn is_user(self) -> bool {
        self.0 < DEFINER_BASE
    }

    pub fn definer_index(self) -> Option<u32> {
        self.is_definer().then(|| self.0 - DEFINER_BASE)
    }
}

impl Individual {
    pub fn fresh(index: u32) -> Self {
        Individual(FRESH_INDIVIDUAL_BASE + index)
    }

    #[inline]
    pub fn is_fresh(self) -> bool {
        self.0 >= FRESH_INDIVIDUAL_BASE
    }
}

/// A set of concept and role names, e.g. a signature or a forgetting signature.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolSet {
    pub concepts: BTreeSet<ConceptName>,
    pub roles: BTreeSet<RoleName>,
}

impl SymbolSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_concepts(concepts: impl IntoIterator<Item = ConceptName>) -> Self {
        SymbolSet { concepts: concepts.into_iter().collect(), roles: BTreeSet::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.roles.is_empty()
    }

    pub fn len(&self) -> usize {
        self.concepts.len() + self.roles.len()
    }

    pub fn extend(&mut self, other: &SymbolSet) {
        self.concepts.extend(other.concepts.iter().copied());
        self.roles.extend(other.roles.iter().copied());
    }

    pub fn union(&self, other: &SymbolSet) -> SymbolSet {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    pub fn contains_concept(&self, c: ConceptName) -> bool {
        self.concepts.contains(&c)
    }

    pub fn intersects_concepts(&self, other: &SymbolSet) -> bool {
        self.concepts.iter().any(|c| other.concepts.contains(c))
    }

    /// Drops definer and annotation names.
    pub fn user_only(&self) -> SymbolSet {
        SymbolSet {
            concepts: self.concepts.iter().copied().filter(|c| c.is_user()).collect(),
            roles: self.roles.clone(),
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Namespace {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

impl Namespace {
    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        id
    }

    fn get(&self, name: &str) -> Option<u32> {
        self.ids.get(name).copied()
    }
}

/// Interns user-visible names. Reserved ids (definers, annotations, fresh
/// individuals) are never stored here; they get synthetic names on display.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    concepts: Namespace,
    roles: Namespace,
    individuals: Namespace,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern_concept(&mut self, name: &str) -> ConceptName {
        ConceptName(self.concepts.intern(name))
    }

    pub fn intern_role(&mut self, name: &str) -> RoleName {
        RoleName(self.roles.intern(name))
    }

    pub fn intern_individual(&mut self, name: &str) -> Individual {
        Individual(self.individuals.intern(name))
    }

    pub fn concept(&self, name: &str) -> Option<ConceptName> {
        self.concepts.get(name).map(ConceptName)
    }

    pub fn role(&self, name: &str) -> Option<RoleName> {
        self.roles.get(name).map(RoleName)
    }

    pub fn individual(&self, name: &str) -> Option<Individual> {
        self.individuals.get(name).map(Individual)
    }

    pub fn concept_count(&self) -> usize {
        self.concepts.names.len()
    }

    pub fn role_count(&self) -> usize {
        self.roles.names.len()
    }

    pub fn individual_count(&self) -> usize {
        self.individuals.names.len()
    }

    pub fn concept_names(&self) -> impl Iterator<Item = ConceptName> + '_ {
        (0..self.concepts.names.len() as u32).map(ConceptName)
    }

    pub fn role_names(&self) -> impl Iterator<Item = RoleName> + '_ {
        (0..self.roles.names.len() as u32).map(RoleName)
    }

    pub fn concept_str(&self, c: ConceptName) -> String {
        if c.is_annotation() {
            format!("_ann{}", c.0 - ANNOTATION_BASE)
        } else if let Some(i) = c.definer_index() {
            format!("_D{}", i + 1)
        } else {
            self.concepts.names.get(c.0 as usize).cloned().unwrap_or_else(|| format!("_C{}", c.0))
        }
    }

    pub fn role_str(&self, r: RoleName) -> String {
        self.roles.names.get(r.0 as usize).cloned().unwrap_or_else(|| format!("_r{}", r.0))
    }

    pub fn individual_str(&self, a: Individual) -> String {
        if a.is_fresh() {
            format!("_w{}", a.0 - FRESH_INDIVIDUAL_BASE)
        } else {
            self.individuals.names.get(a.0 as usize).cloned().unwrap_or_else(|| format!("_i{}", a.0))
        }
    }

    /// Display adapter for a symbol set, concepts then `role:`-prefixed roles.
    pub fn display_set<'a>(&'a self, set: &'a SymbolSet) -> impl fmt::Display + 'a {
        DisplaySet { table: self, set }
    }
}

struct DisplaySet<'a> {
    table: &'a SymbolTable,
    set: &'a SymbolSet,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.set.concepts {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            f.write_str(&self.table.concept_str(*c))?;
        }
        for r in &self.set.roles {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "role:{}", self.table.role_str(*r))?;
        }
        Ok(())
    }
}
