//! Small set-expression language used by the identity catalog and the
//! construction recipes.
//!
//! Grammar: `expr := term (op term)*` with `op` one of `| & - ^`, all of equal
//! precedence and left associative; `term := word? (atom | "(" expr ")")`
//! where `word` is a string over `a b i f g` applied right to left and `atom`
//! is `A`, `B`, `X` or `0`.

use crate::error::{Error, Result};
use crate::topology::Topology;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Empty,
    Full,
    Apply(String, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Union,
    Inter,
    Diff,
    Sym,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::InvalidExpression {
            expr: self.src.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            let op = match self.bytes.get(self.pos) {
                Some(b'|') => BinOp::Union,
                Some(b'&') => BinOp::Inter,
                Some(b'-') => BinOp::Diff,
                Some(b'^') => BinOp::Sym,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while matches!(
            self.bytes.get(self.pos),
            Some(b'a' | b'b' | b'i' | b'f' | b'g')
        ) {
            self.pos += 1;
        }
        let word = &self.src[start..self.pos];
        let inner = match self.bytes.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.bytes.get(self.pos) != Some(&b')') {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                e
            }
            Some(b'0') => {
                self.pos += 1;
                Expr::Empty
            }
            Some(b'X') => {
                self.pos += 1;
                Expr::Full
            }
            Some(&c) if c.is_ascii_uppercase() => {
                self.pos += 1;
                let name = (c as char).to_string();
                let k = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| self.err(format!("unbound variable {name}")))?;
                Expr::Var(k)
            }
            _ => return Err(self.err(format!("unexpected input at offset {}", self.pos))),
        };
        Ok(if word.is_empty() {
            inner
        } else {
            Expr::Apply(word.to_string(), Box::new(inner))
        })
    }
}

impl Expr {
    /// Parse `src`, binding the upper-case letters listed in `vars`.
    pub fn parse(src: &str, vars: &[&str]) -> Result<Expr> {
        let mut p = Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            vars,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err(format!("trailing input at offset {}", p.pos)));
        }
        Ok(e)
    }

    pub fn eval(&self, t: &Topology, env: &[u32]) -> u32 {
        let m = t.mask();
        match self {
            Expr::Var(k) => env[*k],
            Expr::Empty => 0,
            Expr::Full => m,
            Expr::Apply(w, e) => crate::catalog::eval_letters(t, w, e.eval(t, env)),
            Expr::Bin(op, l, r) => {
                let (x, y) = (l.eval(t, env), r.eval(t, env));
                match op {
                    BinOp::Union => x | y,
                    BinOp::Inter => x & y,
                    BinOp::Diff => x & !y,
                    BinOp::Sym => x ^ y,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_evaluates() {
        let t = Topology::from_letter_base(&["w", "x y", "w x y z"]).unwrap();
        let e = Expr::parse("(b(A&B)-iA)|(b(A&B)-iB)", &["A", "B"]).unwrap();
        let f = Expr::parse("f(A&B)", &["A", "B"]).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(e.eval(&t, &[a, b]), f.eval(&t, &[a, b]));
            }
        }
        let g = Expr::parse("gaA", &["A"]).unwrap();
        assert_eq!(g, Expr::Apply("ga".into(), Box::new(Expr::Var(0))));
        assert_eq!(
            Expr::parse("A-B^X", &["A", "B"])
                .unwrap()
                .eval(&t, &[0b11, 0b1]),
            0b1101
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(Expr::parse("bA)", &["A"]).is_err());
        assert!(Expr::parse("b(A", &["A"]).is_err());
        assert!(Expr::parse("bC", &["A"]).is_err());
        assert!(Expr::parse("", &["A"]).is_err());
    }
}
