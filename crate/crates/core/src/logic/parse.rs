//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! f := E <var> . f | A <var> . f | !f | adj(<var>,<var>) | <var>=<var>
//!    | (f) | (f & f & ...) | (f | f | ...) | (f -> f)
//! ```
//! Offsets in errors are 1-based character positions.

use super::ast::{Formula, Var};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const KEYWORDS: [&str; 3] = ["E", "A", "adj"];

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos + 1,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            self.pos = start;
            return self.err("expected an identifier");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn var(&mut self) -> Result<Var> {
        let save = self.pos;
        let name = self.ident()?;
        if KEYWORDS.contains(&name.as_str()) {
            self.pos = save;
            self.skip_ws();
            return self.err(format!("`{name}` is reserved"));
        }
        Ok(name)
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(b'(') => self.group(),
            Some(_) => {
                let save = self.pos;
                let word = self.ident()?;
                match word.as_str() {
                    "E" | "A" => {
                        let v = self.var()?;
                        self.expect(".")?;
                        let body = self.formula()?;
                        Ok(if word == "E" {
                            Formula::exists(v, body)
                        } else {
                            Formula::forall(v, body)
                        })
                    }
                    "adj" => {
                        self.expect("(")?;
                        let a = self.var()?;
                        self.expect(",")?;
                        let b = self.var()?;
                        self.expect(")")?;
                        Ok(Formula::adj(a, b))
                    }
                    _ => {
                        let _ = save;
                        self.expect("=")?;
                        let b = self.var()?;
                        Ok(Formula::eq(word, b))
                    }
                }
            }
        }
    }

    fn group(&mut self) -> Result<Formula> {
        self.expect("(")?;
        let first = self.formula()?;
        match self.peek() {
            Some(b')') => {
                self.pos += 1;
                Ok(first)
            }
            Some(b'-') => {
                self.expect("->")?;
                let second = self.formula()?;
                self.expect(")")?;
                Ok(Formula::implies(first, second))
            }
            Some(op @ (b'&' | b'|')) => {
                let mut parts = vec![first];
                while self.peek() == Some(op) {
                    self.pos += 1;
                    parts.push(self.formula()?);
                }
                self.expect(")")?;
                Ok(if op == b'&' {
                    Formula::And(parts)
                } else {
                    Formula::Or(parts)
                })
            }
            _ => self.err("expected `)`, `&`, `|` or `->`"),
        }
    }
}

/// Parses a formula; free variables are allowed.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.formula()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parses a closed formula, rejecting free variables.
pub fn parse_sentence(text: &str) -> Result<Formula> {
    let f = parse(text)?;
    match f.free_variables().into_iter().next() {
        Some(v) => Err(Error::Unbound(v)),
        None => Ok(f),
    }
}
