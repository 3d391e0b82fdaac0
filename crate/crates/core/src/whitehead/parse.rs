//! Text syntax for expressions.
//!
//! ```text
//! expr  := '0' | ['-'] term (('+' | '-') term)*
//! term  := [int '*'] tree post*
//! tree  := '[' tree ',' tree ']' | leaf
//! leaf  := ('s' int)* base
//! base  := letter int            (letter ∉ {s, o}; 'v' is the η-composite)
//! post  := ('o' | '∘') ('eta' int | 'eta^' int | 'η' int | 'η^' int)
//! ```
//!
//! Degeneracy prefixes are written outermost first, so `s1 s0 i2` is
//! `s₁s₀ι₂`. A post-composition `eta<d>` must name the π-degree `d` of the
//! class it follows; `eta^c` is the `c`-fold composite. All terms of a sum
//! share one π-degree.

use crate::error::{Error, Result};
use crate::simplicial::DegeneracySet;

use super::{Base, Expression, Term, Tree};

pub fn parse_expression(text: &str) -> Result<Expression> {
    if text.trim() == "0" {
        return Ok(Expression::zero());
    }
    let mut p = Parser::new(text);
    let e = p.expression()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected {c:?}")));
    }
    Ok(e)
}

pub fn parse_base(text: &str) -> Result<Base> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let b = p.base()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected {c:?} after base symbol")));
    }
    Ok(b)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected {c:?}, found {x:?}"))),
            None => Err(self.error(format!("expected {c:?}, found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Syntax {
            column: start + 1,
            message: format!("integer {s} out of range"),
        })
    }

    fn expression(&mut self) -> Result<Expression> {
        let mut terms: Vec<Term<i64>> = Vec::new();
        let mut degree: Option<u32> = None;
        self.skip_ws();
        let mut sign = 1i64;
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let start = self.pos;
            let mut term = self.term()?;
            term.coefficient *= sign;
            let d = term.pi_degree();
            match degree {
                Some(d0) if d0 != d => {
                    return Err(Error::Degree(format!(
                        "term at column {} has π-degree {d}, expected {d0}",
                        start + 1
                    )))
                }
                _ => degree = Some(d),
            }
            terms.push(term);
            self.skip_ws();
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(Expression::from_terms(terms))
    }

    fn term(&mut self) -> Result<Term<i64>> {
        self.skip_ws();
        let mut coefficient = 1i64;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = self.integer()?;
            coefficient = i64::try_from(n).map_err(|_| self.error("coefficient out of range"))?;
            self.expect('*')?;
        }
        let tree = self.tree()?;
        let mut term = Term::new(coefficient, tree);
        while self.post_composition(&mut term)? {}
        Ok(term)
    }

    /// Consumes one `o eta<d>` / `∘η^c`, returning whether one was present.
    fn post_composition(&mut self, term: &mut Term<i64>) -> Result<bool> {
        self.skip_ws();
        let ascii =
            self.peek() == Some('o') && !self.peek_at(1).is_some_and(|c| c.is_ascii_digit());
        if !(ascii || self.peek() == Some('∘')) {
            return Ok(false);
        }
        self.pos += 1;
        self.skip_ws();
        if self.chars[self.pos..].starts_with(&['e', 't', 'a']) {
            self.pos += 3;
        } else if self.peek() == Some('η') {
            self.pos += 1;
        } else {
            return Err(self.error("expected eta after composition"));
        }
        if self.peek() == Some('^') {
            self.pos += 1;
            let c = self.integer()?;
            term.eta_post += u32::try_from(c).map_err(|_| self.error("exponent out of range"))?;
        } else {
            let start = self.pos;
            let d = self.integer()?;
            if d != u64::from(term.pi_degree()) {
                return Err(Error::Syntax {
                    column: start + 1,
                    message: format!(
                        "eta{d} cannot follow a class of π-degree {}",
                        term.pi_degree()
                    ),
                });
            }
            term.eta_post += 1;
        }
        Ok(true)
    }

    fn tree(&mut self) -> Result<Tree> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let a = self.tree()?;
                self.expect(',')?;
                let b = self.tree()?;
                self.expect(']')?;
                Ok(Tree::bracket(a, b))
            }
            Some(_) => self.leaf(),
            None => Err(self.error("expected a bracket or generator, found end of input")),
        }
    }

    fn leaf(&mut self) -> Result<Tree> {
        let mut ops: Vec<usize> = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() == Some('s') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
                let j = self.integer()?;
                ops.push(usize::try_from(j).map_err(|_| self.error("index out of range"))?);
            } else {
                break;
            }
        }
        let base = self.base()?;
        // outermost first: apply from the right
        let degeneracies = ops.iter().rev().fold(DegeneracySet::empty(), |acc, &j| {
            acc.then(&DegeneracySet::single(j))
        });
        Ok(Tree::leaf(base, degeneracies))
    }

    fn base(&mut self) -> Result<Base> {
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() && c != 's' && c != 'o' => {
                self.pos += 1;
                if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error(format!("expected a dimension after {c:?}")));
                }
                let d = self.integer()?;
                let dim = u32::try_from(d).map_err(|_| self.error("dimension out of range"))?;
                if dim == 0 {
                    return Err(self.error("dimension must be positive"));
                }
                Ok(if c == 'v' {
                    Base::Eta { dim }
                } else {
                    Base::Sphere { family: c, dim }
                })
            }
            Some(c) => Err(self.error(format!("expected a generator, found {c:?}"))),
            None => Err(self.error("expected a generator, found end of input")),
        }
    }
}
