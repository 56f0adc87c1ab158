//! Ground terms over a ranked alphabet.

use std::fmt;

use crate::alphabet::{Alphabet, SymbolId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub symbol: SymbolId,
    pub children: Vec<Term>,
}

impl Term {
    pub fn leaf(symbol: SymbolId) -> Self {
        Term {
            symbol,
            children: Vec::new(),
        }
    }

    pub fn node(symbol: SymbolId, children: Vec<Term>) -> Self {
        Term { symbol, children }
    }

    /// Constants have height 1.
    pub fn height(&self) -> usize {
        1 + self.children.iter().map(Term::height).max().unwrap_or(0)
    }

    /// Same positions, labels ignored.
    pub fn same_shape(&self, other: &Term) -> bool {
        self.children.len() == other.children.len()
            && self
                .children
                .iter()
                .zip(&other.children)
                .all(|(a, b)| a.same_shape(b))
    }

    /// Parses `name` or `name(t, ..., t)`; whitespace is ignored. The arity is
    /// the number of arguments, so `c` and `c()` both denote `c:0`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Term> {
        let mut p = Parser {
            text: text.as_bytes(),
            pos: 0,
            alphabet,
        };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != p.text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> TermDisplay<'a> {
        TermDisplay {
            term: self,
            alphabet,
        }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    alphabet: &'a Alphabet,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alphabet.symbol(self.term.symbol).name)?;
        if !self.term.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.term.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", c.display(self.alphabet))?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::TermSyntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && !matches!(self.text[self.pos], b'(' | b')' | b',')
            && !self.text[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected symbol name"));
        }
        let name = std::str::from_utf8(&self.text[start..self.pos])
            .map_err(|_| self.error("invalid utf-8"))?
            .to_string();
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() == Some(b')') {
                self.pos += 1;
            } else {
                loop {
                    children.push(self.term()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected `,` or `)`")),
                    }
                }
            }
        }
        let symbol = self.alphabet.resolve(&name, children.len())?;
        Ok(Term { symbol, children })
    }
}
