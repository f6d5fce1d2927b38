//! Tokenizer and precedence-climbing parser for LTL text.
//!
//! Precedence, tightest first: unary (`!`, `X`, `F`, `G`), `U`, `&`, `|`,
//! `->` (right-associative), `<->`.

use crate::ltl::LtlError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Ltl {
    Const(bool),
    Atom(String),
    Not(Box<Ltl>),
    And(Box<Ltl>, Box<Ltl>),
    Or(Box<Ltl>, Box<Ltl>),
    Implies(Box<Ltl>, Box<Ltl>),
    Iff(Box<Ltl>, Box<Ltl>),
    Next(Box<Ltl>),
    Finally(Box<Ltl>),
    Globally(Box<Ltl>),
    Until(Box<Ltl>, Box<Ltl>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Finally,
    Globally,
    Until,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, LtlError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = i;
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        if c.is_whitespace() {
            i += 1;
        } else if rest.starts_with("<->") {
            toks.push((Tok::Iff, at));
            i += 3;
        } else if rest.starts_with("->") {
            toks.push((Tok::Implies, at));
            i += 2;
        } else if rest.starts_with("&&") || rest.starts_with("||") {
            toks.push((if c == '&' { Tok::And } else { Tok::Or }, at));
            i += 2;
        } else if c == '&' {
            toks.push((Tok::And, at));
            i += 1;
        } else if c == '|' {
            toks.push((Tok::Or, at));
            i += 1;
        } else if c == '!' || c == '~' {
            toks.push((Tok::Not, at));
            i += 1;
        } else if c == '(' {
            toks.push((Tok::LParen, at));
            i += 1;
        } else if c == ')' {
            toks.push((Tok::RParen, at));
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "true" => toks.push((Tok::True, at)),
                "false" => toks.push((Tok::False, at)),
                "U" => toks.push((Tok::Until, at)),
                // Runs of temporal operators such as `GF` or `FG`.
                w if w.chars().all(|c| matches!(c, 'G' | 'F' | 'X')) => {
                    for (k, op) in w.chars().enumerate() {
                        let tok = match op {
                            'G' => Tok::Globally,
                            'F' => Tok::Finally,
                            _ => Tok::Next,
                        };
                        toks.push((tok, start + k));
                    }
                }
                _ => toks.push((Tok::Ident(word), at)),
            }
        } else {
            return Err(LtlError::Syntax {
                pos: at,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(_, p)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> LtlError {
        LtlError::Syntax {
            pos: self.offset(),
            message: message.into(),
        }
    }

    fn iff(&mut self) -> Result<Ltl, LtlError> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Iff) {
            lhs = Ltl::Iff(Box::new(lhs), Box::new(self.implies()?));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Ltl, LtlError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            Ok(Ltl::Implies(Box::new(lhs), Box::new(self.implies()?)))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Ltl, LtlError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = Ltl::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ltl, LtlError> {
        let mut lhs = self.until()?;
        while self.eat(&Tok::And) {
            lhs = Ltl::And(Box::new(lhs), Box::new(self.until()?));
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Ltl, LtlError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Until) {
            Ok(Ltl::Until(Box::new(lhs), Box::new(self.until()?)))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Ltl, LtlError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of formula"));
        };
        self.pos += 1;
        match tok {
            Tok::Not => Ok(Ltl::Not(Box::new(self.unary()?))),
            Tok::Next => Ok(Ltl::Next(Box::new(self.unary()?))),
            Tok::Finally => Ok(Ltl::Finally(Box::new(self.unary()?))),
            Tok::Globally => Ok(Ltl::Globally(Box::new(self.unary()?))),
            Tok::True => Ok(Ltl::Const(true)),
            Tok::False => Ok(Ltl::Const(false)),
            Tok::Ident(name) => Ok(Ltl::Atom(name)),
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected an operand"))
            }
        }
    }
}

pub(crate) fn parse(text: &str) -> Result<Ltl, LtlError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        len: text.chars().count(),
    };
    let formula = parser.iff()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(formula)
}
