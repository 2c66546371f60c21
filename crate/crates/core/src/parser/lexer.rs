use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    And,
    Or,
    Not,
    Exists,
    Forall,
    SubClassOf,
    Top,
    Bot,
    Lfp,
    Gfp,
    LParen,
    RParen,
    Comma,
    Dot,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.lexeme()),
        }
    }

    fn lexeme(&self) -> &str {
        match self {
            Tok::Ident(s) => s,
            Tok::And => "and",
            Tok::Or => "or",
            Tok::Not => "not",
            Tok::Exists => "exists",
            Tok::Forall => "forall",
            Tok::SubClassOf => "SubClassOf",
            Tok::Top => "Top",
            Tok::Bot => "Bot",
            Tok::Lfp => "lfp",
            Tok::Gfp => "gfp",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Newline => "\\n",
            Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "and" => Tok::And,
        "or" => Tok::Or,
        "not" => Tok::Not,
        "exists" => Tok::Exists,
        "forall" => Tok::Forall,
        "SubClassOf" => Tok::SubClassOf,
        "Top" => Tok::Top,
        "Bot" => Tok::Bot,
        "lfp" => Tok::Lfp,
        "gfp" => Tok::Gfp,
        _ => return None,
    })
}

/// Splits `text` into tokens. Lines and columns are 1-based; columns count
/// characters, not bytes.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&ch) = chars.peek() {
        let (tl, tc) = (line, col);
        let simple = match ch {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '\n' => Some(Tok::Newline),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            out.push(Token { tok, line: tl, col: tc });
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            continue;
        }
        if ch == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        if ch == ' ' || ch == '\t' || ch == '\r' {
            chars.next();
            col += 1;
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let tok = keyword(&word).unwrap_or(Tok::Ident(word));
            out.push(Token { tok, line: tl, col: tc });
            continue;
        }
        return Err(ParseError::UnknownOperator { line: tl, col: tc, ch });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_keywords() {
        let toks = tokenize("A SubClassOf exists r.B # note\nr(a,b)").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.tok).collect();
        assert_eq!(kinds[1], &Tok::SubClassOf);
        assert_eq!(kinds[2], &Tok::Exists);
        assert_eq!(kinds[6], &Tok::Newline);
        let r = &toks[7];
        assert_eq!((r.line, r.col), (2, 1));
    }

    #[test]
    fn unknown_character() {
        let err = tokenize("A ⊑ B").unwrap_err();
        assert_eq!(err, ParseError::UnknownOperator { line: 1, col: 3, ch: '⊑' });
    }
}
