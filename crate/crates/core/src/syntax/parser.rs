//! Recursive-descent parser for the formula text grammar.
//!
//! Precedence, tightest first: unary (`!`, `X`, `F`, `G`), then `U`/`W`/`R`
//! (right-associative), `&`, `|`, `->` (right-associative), `<->`.

use std::collections::BTreeSet;

use super::{
    validate_prop_name, validate_var_name, Atom, Formula, HyperFormula, Prop, Quantifier,
    TraceVar, WellFormednessError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("ill-formed formula: {0}")]
    WellFormedness(#[from] WellFormednessError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Forall,
    Exists,
    Dot,
    Not,
    Next,
    Eventually,
    Globally,
    Until,
    WeakUntil,
    Release,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Eof => "end of input".into(),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "true" => Tok::True,
                "false" => Tok::False,
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "X" => Tok::Next,
                "F" => Tok::Eventually,
                "G" => Tok::Globally,
                "U" => Tok::Until,
                "W" => Tok::WeakUntil,
                "R" => Tok::Release,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((tok, start));
            continue;
        }
        let (tok, len) = match (c, bytes.get(i + 1), bytes.get(i + 2)) {
            (b'<', Some(b'-'), Some(b'>')) => (Tok::Iff, 3),
            (b'-', Some(b'>'), _) => (Tok::Implies, 2),
            (b'&', Some(b'&'), _) => (Tok::And, 2),
            (b'|', Some(b'|'), _) => (Tok::Or, 2),
            (b'&', ..) => (Tok::And, 1),
            (b'|', ..) => (Tok::Or, 1),
            (b'!', ..) => (Tok::Not, 1),
            (b'(', ..) => (Tok::LParen, 1),
            (b')', ..) => (Tok::RParen, 1),
            (b'.', ..) => (Tok::Dot, 1),
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += len;
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    bound: BTreeSet<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(ParseError {
            position: self.offset(),
            message: message.into(),
        }
        .into())
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                describe(&tok),
                describe(self.peek())
            ))
        }
    }

    fn prefix(&mut self) -> Result<Vec<(Quantifier, TraceVar)>, SyntaxError> {
        let mut prefix = Vec::new();
        loop {
            let q = match self.peek() {
                Tok::Forall => Quantifier::Forall,
                Tok::Exists => Quantifier::Exists,
                _ => break,
            };
            self.bump();
            let name = match self.bump() {
                Tok::Ident(name) => name,
                other => {
                    self.pos -= 1;
                    return self.error(format!(
                        "expected trace variable, found {}",
                        describe(&other)
                    ));
                }
            };
            validate_var_name(&name)?;
            if !self.bound.insert(name.clone()) {
                return Err(WellFormednessError::DuplicateBinder(TraceVar::new(name)).into());
            }
            self.expect(Tok::Dot)?;
            prefix.push((q, TraceVar::new(name)));
        }
        Ok(prefix)
    }

    fn iff(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.implies()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.temporal()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.temporal()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.unary()?;
        let ctor: fn(Formula, Formula) -> Formula = match self.peek() {
            Tok::Until => Formula::until,
            Tok::WeakUntil => Formula::weak_until,
            Tok::Release => Formula::release,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.temporal()?;
        Ok(ctor(lhs, rhs))
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let ctor: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::Next => Formula::next,
            Tok::Eventually => Formula::eventually,
            Tok::Globally => Formula::globally,
            _ => return self.primary(),
        };
        self.bump();
        Ok(ctor(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                self.bump();
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(word) => {
                self.bump();
                self.atom(&word)
            }
            Tok::Forall | Tok::Exists => Err(WellFormednessError::NonPrenex.into()),
            other => self.error(format!("expected a formula, found {}", describe(&other))),
        }
    }

    /// `x_y` is an indexed atom when `y` is bound; the rightmost such split wins.
    fn atom(&self, word: &str) -> Result<Formula, SyntaxError> {
        let split = word
            .char_indices()
            .rev()
            .filter(|&(_, c)| c == '_')
            .map(|(i, _)| i)
            .find(|&i| i > 0 && self.bound.contains(&word[i + 1..]));
        let atom = match split {
            Some(i) => Atom {
                prop: Prop::new(&word[..i]),
                trace: Some(TraceVar::new(&word[i + 1..])),
            },
            None => Atom {
                prop: Prop::new(word),
                trace: None,
            },
        };
        validate_prop_name(atom.prop.as_str())?;
        Ok(Formula::Atom(atom))
    }
}

/// Parses a prenex HyperLTL formula (or, with an empty prefix, a plain LTL formula).
pub fn parse_hyperltl(text: &str) -> Result<HyperFormula, SyntaxError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        bound: BTreeSet::new(),
    };
    let prefix = parser.prefix()?;
    let body = parser.iff()?;
    if *parser.peek() != Tok::Eof {
        if matches!(parser.peek(), Tok::Forall | Tok::Exists) {
            return Err(WellFormednessError::NonPrenex.into());
        }
        return parser.error(format!("unexpected {}", describe(parser.peek())));
    }
    Ok(HyperFormula::new(prefix, body)?)
}
