//! Line-oriented text format for ontologies, observations and signatures.
//!
//! ```text
//! # comment
//! Pogona SubClassOf exists livesIn.(Woodland and Arid)
//! (exists livesIn.Woodland)(Gary)
//! A(a) or B(b)
//! livesIn(Gary,Florida)
//! ```
//!
//! Precedence from tightest: `not`/`exists`/`forall`, `and`, `or`; a
//! fixpoint `lfp X . C` extends as far right as possible.

mod grammar;
mod lexer;
mod render;

use std::path::Path;

use thiserror::Error;

use crate::model::{Axiom, Concept, ConceptAssertion, Ontology, SymbolSet, SymbolTable};

pub use render::{render_axiom, render_axioms, render_concept, render_hypothesis, render_ontology};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("{line}:{col}: `{name}` is used both as a concept name and a role name")]
    DuplicateDeclaration { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown operator `{ch}`")]
    UnknownOperator { line: usize, col: usize, ch: char },
    #[error("{line}:{col}: observations may not contain role assertions")]
    RoleAssertionInObservation { line: usize, col: usize },
    #[error("{line}:{col}: input is not valid UTF-8")]
    InvalidUtf8 { line: usize, col: usize },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl ParseError {
    /// Line and column, when the error points into the text.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            ParseError::Syntax { line, col, .. }
            | ParseError::DuplicateDeclaration { line, col, .. }
            | ParseError::UnknownOperator { line, col, .. }
            | ParseError::RoleAssertionInObservation { line, col }
            | ParseError::InvalidUtf8 { line, col } => Some((*line, *col)),
            ParseError::Io { .. } => None,
        }
    }
}

/// Text to be parsed plus a name used in diagnostics.
#[derive(Clone, Debug)]
pub struct SourceDocument {
    pub name: String,
    pub text: String,
}

impl SourceDocument {
    pub fn inline(text: impl Into<String>) -> Self {
        SourceDocument { name: "<inline>".into(), text: text.into() }
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, ParseError> {
        let path = path.as_ref();
        let bytes = std::fs::read(path)
            .map_err(|e| ParseError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_bytes(path.display().to_string(), &bytes)
    }

    pub fn from_bytes(name: impl Into<String>, bytes: &[u8]) -> Result<Self, ParseError> {
        match std::str::from_utf8(bytes) {
            Ok(s) => Ok(SourceDocument { name: name.into(), text: s.to_owned() }),
            Err(e) => {
                let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).unwrap_or_default();
                let line = valid.matches('\n').count() + 1;
                let col = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
                Err(ParseError::InvalidUtf8 { line, col })
            }
        }
    }
}

fn parse_lines(
    doc: &SourceDocument,
    table: &mut SymbolTable,
    mut each: impl FnMut(Axiom, (usize, usize)) -> Result<(), ParseError>,
) -> Result<(), ParseError> {
    let toks = lexer::tokenize(&doc.text)?;
    let mut p = grammar::Parser::new(toks, table);
    loop {
        p.skip_blank_lines();
        if p.at_eof() {
            return Ok(());
        }
        let pos = p.position();
        let ax = p.axiom()?;
        p.end_line()?;
        each(ax, pos)?;
    }
}

/// Parses an ontology, interning its symbols into a fresh table.
pub fn parse_ontology(doc: &SourceDocument) -> Result<Ontology, ParseError> {
    let mut table = SymbolTable::new();
    let axioms = parse_axioms_into(doc, &mut table)?;
    Ok(Ontology::with_axioms(table, axioms))
}

/// Parses axiom lines against an existing table.
pub fn parse_axioms_into(doc: &SourceDocument, table: &mut SymbolTable) -> Result<Vec<Axiom>, ParseError> {
    let mut axioms = Vec::new();
    parse_lines(doc, table, |ax, _| {
        axioms.push(ax);
        Ok(())
    })?;
    Ok(axioms)
}

/// Parses an observation: concept assertions only, one per line.
pub fn parse_observation(doc: &SourceDocument, table: &mut SymbolTable) -> Result<Vec<ConceptAssertion>, ParseError> {
    let mut obs = Vec::new();
    parse_lines(doc, table, |ax, (line, col)| match ax {
        Axiom::ConceptAssertion(a) => {
            obs.push(a);
            Ok(())
        }
        Axiom::RoleAssertion { .. } => Err(ParseError::RoleAssertionInObservation { line, col }),
        _ => Err(ParseError::Syntax { line, col, expected: "a single concept assertion".into() }),
    })?;
    Ok(obs)
}

/// Parses exactly one axiom.
pub fn parse_axiom(text: &str, table: &mut SymbolTable) -> Result<Axiom, ParseError> {
    let toks = lexer::tokenize(text)?;
    let mut p = grammar::Parser::new(toks, table);
    p.skip_blank_lines();
    let ax = p.axiom()?;
    p.skip_blank_lines();
    p.expect_eof()?;
    Ok(ax)
}

/// Parses exactly one concept.
pub fn parse_concept(text: &str, table: &mut SymbolTable) -> Result<Concept, ParseError> {
    let toks = lexer::tokenize(text)?;
    let mut p = grammar::Parser::new(toks, table);
    let c = p.concept()?;
    p.expect_eof()?;
    Ok(c)
}

/// Parses a signature file: one symbol per line, roles prefixed `role:`.
pub fn parse_signature(doc: &SourceDocument, table: &mut SymbolTable) -> Result<SymbolSet, ParseError> {
    let mut out = SymbolSet::new();
    for (i, raw) in doc.text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        add_symbol(line, i + 1, raw.len() - raw.trim_start().len() + 1, table, &mut out)?;
    }
    Ok(out)
}

/// Parses a comma-separated symbol list such as `Woodland,role:livesIn`.
pub fn parse_symbol_list(text: &str, table: &mut SymbolTable) -> Result<SymbolSet, ParseError> {
    let mut out = SymbolSet::new();
    let mut col = 1;
    for item in text.split(',') {
        let trimmed = item.trim();
        if !trimmed.is_empty() {
            add_symbol(trimmed, 1, col + item.len() - item.trim_start().len(), table, &mut out)?;
        }
        col += item.chars().count() + 1;
    }
    Ok(out)
}

fn add_symbol(
    s: &str,
    line: usize,
    col: usize,
    table: &mut SymbolTable,
    out: &mut SymbolSet,
) -> Result<(), ParseError> {
    let (is_role, name) = match s.strip_prefix("role:") {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && lexer::keyword(name).is_none();
    if !valid {
        return Err(ParseError::Syntax { line, col, expected: "a symbol name".into() });
    }
    if is_role {
        if table.concept(name).is_some() {
            return Err(ParseError::DuplicateDeclaration { line, col, name: name.into() });
        }
        out.roles.insert(table.intern_role(name));
    } else {
        if table.role(name).is_some() {
            return Err(ParseError::DuplicateDeclaration { line, col, name: name.into() });
        }
        out.concepts.insert(table.intern_concept(name));
    }
    Ok(())
}
