use std::collections::HashMap;

use crate::model::{Concept, ConceptName};

#[derive(Clone, Debug)]
pub struct DefinerInfo {
    /// The concept a base definer stands for; `None` for combinations.
    pub filler: Option<Concept>,
    /// Base definers this one is the conjunction of (itself, for a base definer).
    pub components: Vec<ConceptName>,
    /// 1-based ordinal among base definers; 0 for combinations.
    pub ordinal: u32,
}

/// Allocates definer symbols. Base definers are memoized by their filler,
/// combined definers by the set of base definers they conjoin.
#[derive(Clone, Debug, Default)]
pub struct DefinerRegistry {
    info: Vec<DefinerInfo>,
    by_filler: HashMap<Concept, ConceptName>,
    by_components: HashMap<Vec<ConceptName>, ConceptName>,
    bases: u32,
}

impl DefinerRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.info.len()
    }

    pub fn is_empty(&self) -> bool {
        self.info.is_empty()
    }

    pub fn info(&self, d: ConceptName) -> Option<&DefinerInfo> {
        d.definer_index().and_then(|i| self.info.get(i as usize))
    }

    fn push(&mut self, info: DefinerInfo) -> ConceptName {
        let d = ConceptName::definer(self.info.len() as u32);
        self.info.push(info);
        d
    }

    /// The definer for `filler` (expected normalized), and whether it is new.
    pub fn for_filler(&mut self, filler: &Concept) -> (ConceptName, bool) {
        if let Some(&d) = self.by_filler.get(filler) {
            return (d, false);
        }
        self.bases += 1;
        let idx = ConceptName::definer(self.info.len() as u32);
        let d = self.push(DefinerInfo { filler: Some(filler.clone()), components: vec![idx], ordinal: self.bases });
        self.by_filler.insert(filler.clone(), d);
        self.by_components.insert(vec![d], d);
        (d, true)
    }

    /// The definer for `D₁ ⊓ D₂`, and whether it is new. If the conjunction
    /// coincides with an operand, that operand is returned.
    pub fn combine(&mut self, d1: ConceptName, d2: ConceptName) -> (ConceptName, bool) {
        let mut comps: Vec<ConceptName> = self.components(d1).to_vec();
        comps.extend_from_slice(self.components(d2));
        comps.sort_unstable();
        comps.dedup();
        if let Some(&d) = self.by_components.get(&comps) {
            return (d, false);
        }
        let d = self.push(DefinerInfo { filler: None, components: comps.clone(), ordinal: 0 });
        self.by_components.insert(comps, d);
        (d, true)
    }

    pub fn components(&self, d: ConceptName) -> &[ConceptName] {
        self.info(d).map_or(&[], |i| i.components.as_slice())
    }

    /// `D1`, `D2`, … for base definers, `D12` for their combination
    /// (`D3_11` once an ordinal has two digits).
    pub fn label(&self, d: ConceptName) -> String {
        let Some(info) = self.info(d) else {
            return format!("D?{}", d.0);
        };
        if info.ordinal > 0 {
            return format!("D{}", info.ordinal);
        }
        let ords: Vec<u32> = info.components.iter().filter_map(|c| self.info(*c)).map(|i| i.ordinal).collect();
        let sep = if ords.iter().any(|&o| o >= 10) { "_" } else { "" };
        let parts: Vec<String> = ords.iter().map(u32::to_string).collect();
        format!("D{}", parts.join(sep))
    }
}
