use crate::model::{Axiom, Concept, ConceptAssertion, SymbolTable};

use super::lexer::{Tok, Token};
use super::ParseError;

const MAX_NESTING: usize = 256;

pub struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    table: &'a mut SymbolTable,
    scope: Vec<String>,
    nesting: usize,
}

impl<'a> Parser<'a> {
    pub fn new(toks: Vec<Token>, table: &'a mut SymbolTable) -> Self {
        Parser { toks, pos: 0, table, scope: Vec::new(), nesting: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax { line, col, expected: format!("{expected}, found {}", self.peek().describe()) }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.advance())
        } else {
            Err(self.error(what))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize, usize), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let t = self.advance();
                Ok((s, t.line, t.col))
            }
            _ => Err(self.error(what)),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn position(&self) -> (usize, usize) {
        self.here()
    }

    pub fn expect_eof(&mut self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    pub fn skip_blank_lines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.advance();
        }
    }

    /// Consumes the end of the current line (or input).
    pub fn end_line(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Newline => {
                self.advance();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.error("end of line")),
        }
    }

    fn intern_concept(&mut self, name: &str, line: usize, col: usize) -> Result<Concept, ParseError> {
        if self.table.role(name).is_some() {
            return Err(ParseError::DuplicateDeclaration { line, col, name: name.to_owned() });
        }
        Ok(Concept::Name(self.table.intern_concept(name)))
    }

    fn intern_role(&mut self, name: &str, line: usize, col: usize) -> Result<crate::model::RoleName, ParseError> {
        if self.table.concept(name).is_some() {
            return Err(ParseError::DuplicateDeclaration { line, col, name: name.to_owned() });
        }
        Ok(self.table.intern_role(name))
    }

    fn is_role_assertion_ahead(&self) -> bool {
        matches!(self.peek_at(0), Tok::Ident(_))
            && *self.peek_at(1) == Tok::LParen
            && matches!(self.peek_at(2), Tok::Ident(_))
            && *self.peek_at(3) == Tok::Comma
    }

    /// One axiom, not including the line terminator.
    pub fn axiom(&mut self) -> Result<Axiom, ParseError> {
        if self.is_role_assertion_ahead() {
            let (r, line, col) = self.expect_ident("role name")?;
            let role = self.intern_role(&r, line, col)?;
            self.advance();
            let (a, _, _) = self.expect_ident("individual")?;
            self.advance();
            let (b, _, _) = self.expect_ident("individual")?;
            self.expect(Tok::RParen, "`)`")?;
            let subject = self.table.intern_individual(&a);
            let object = self.table.intern_individual(&b);
            return Ok(Axiom::role(role, subject, object));
        }
        let first = self.concept()?;
        match self.peek() {
            Tok::SubClassOf => {
                self.advance();
                let sup = self.concept()?;
                Ok(Axiom::gci(first, sup))
            }
            Tok::LParen => {
                let mut parts = vec![self.assertion_tail(first)?];
                while *self.peek() == Tok::Or {
                    self.advance();
                    let c = self.concept()?;
                    if *self.peek() != Tok::LParen {
                        return Err(self.error("`(` starting an individual"));
                    }
                    parts.push(self.assertion_tail(c)?);
                }
                if parts.len() == 1 {
                    Ok(Axiom::ConceptAssertion(parts.pop().unwrap()))
                } else {
                    Ok(Axiom::DisjunctiveAssertion(parts))
                }
            }
            _ => Err(self.error("`SubClassOf` or `(`")),
        }
    }

    fn assertion_tail(&mut self, concept: Concept) -> Result<ConceptAssertion, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let (a, _, _) = self.expect_ident("individual")?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(ConceptAssertion::new(concept, self.table.intern_individual(&a)))
    }

    pub fn concept(&mut self) -> Result<Concept, ParseError> {
        let (line, col) = self.here();
        let c = self.fixpoint_or_or()?;
        if self.scope.is_empty() && !c.is_well_formed() {
            return Err(ParseError::Syntax {
                line,
                col,
                expected: "fixpoint variables in positive positions only".into(),
            });
        }
        Ok(c)
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            Err(self.error("shallower nesting"))
        } else {
            Ok(())
        }
    }

    fn fixpoint_or_or(&mut self) -> Result<Concept, ParseError> {
        if matches!(self.peek(), Tok::Lfp | Tok::Gfp) {
            self.fixpoint()
        } else {
            self.disjunction()
        }
    }

    fn fixpoint(&mut self) -> Result<Concept, ParseError> {
        self.enter()?;
        let least = self.advance().tok == Tok::Lfp;
        let (var, _, _) = self.expect_ident("fixpoint variable")?;
        self.expect(Tok::Dot, "`.`")?;
        self.scope.push(var);
        let body = self.fixpoint_or_or();
        self.scope.pop();
        self.nesting -= 1;
        let body = body?;
        Ok(if least { Concept::lfp(body) } else { Concept::gfp(body) })
    }

    /// `C or D or …`, built right-nested. A fixpoint operand extends to the
    /// end of the enclosing scope, so it is always the last one.
    fn disjunction(&mut self) -> Result<Concept, ParseError> {
        let mut ops = vec![self.conjunction()?];
        while *self.peek() == Tok::Or {
            self.advance();
            if matches!(self.peek(), Tok::Lfp | Tok::Gfp) {
                ops.push(self.fixpoint()?);
                break;
            }
            ops.push(self.conjunction()?);
        }
        Ok(Concept::or_all(ops))
    }

    fn conjunction(&mut self) -> Result<Concept, ParseError> {
        let mut ops = vec![self.unary()?];
        while *self.peek() == Tok::And {
            self.advance();
            if matches!(self.peek(), Tok::Lfp | Tok::Gfp) {
                ops.push(self.fixpoint()?);
                break;
            }
            ops.push(self.unary()?);
        }
        Ok(Concept::and_all(ops))
    }

    fn unary(&mut self) -> Result<Concept, ParseError> {
        self.enter()?;
        let out = match self.peek().clone() {
            Tok::Not => {
                self.advance();
                Concept::not(self.unary()?)
            }
            Tok::Exists | Tok::Forall => {
                let exists = self.advance().tok == Tok::Exists;
                let (r, line, col) = self.expect_ident("role name")?;
                let role = self.intern_role(&r, line, col)?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.unary()?;
                if exists {
                    Concept::exists(role, body)
                } else {
                    Concept::forall(role, body)
                }
            }
            Tok::Lfp | Tok::Gfp => self.fixpoint()?,
            Tok::Top => {
                self.advance();
                Concept::Top
            }
            Tok::Bot => {
                self.advance();
                Concept::Bot
            }
            Tok::Ident(name) => {
                let t = self.advance();
                match self.scope.iter().rev().position(|v| *v == name) {
                    Some(i) => Concept::Var(i as u32),
                    None => self.intern_concept(&name, t.line, t.col)?,
                }
            }
            Tok::LParen => {
                self.advance();
                let c = self.fixpoint_or_or()?;
                self.expect(Tok::RParen, "`)`")?;
                c
            }
            _ => return Err(self.error("a concept")),
        };
        self.nesting -= 1;
        Ok(out)
    }
}
