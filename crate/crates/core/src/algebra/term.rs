use std::fmt;

use super::{Algebra, CausalValue, ElementaryTerm, Label};
use crate::error::{Error, Result};

/// Syntactic causal term. `Product(vec![])` is `1` and `Sum(vec![])` is `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CausalTerm {
    Label(Label),
    Product(Vec<CausalTerm>),
    Sum(Vec<CausalTerm>),
    App(Box<CausalTerm>, Box<CausalTerm>),
    Neg(Box<CausalTerm>),
}

impl CausalTerm {
    pub fn label(name: &str) -> Self {
        CausalTerm::Label(Label::new(name))
    }

    pub fn one() -> Self {
        CausalTerm::Product(Vec::new())
    }

    pub fn zero() -> Self {
        CausalTerm::Sum(Vec::new())
    }

    pub fn app(t: CausalTerm, u: CausalTerm) -> Self {
        CausalTerm::App(Box::new(t), Box::new(u))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: CausalTerm) -> Self {
        CausalTerm::Neg(Box::new(t))
    }

    pub fn eval(&self, alg: &Algebra) -> Result<CausalValue> {
        match self {
            CausalTerm::Label(l) => Ok(CausalValue::elementary(ElementaryTerm::positive(l.clone()))),
            CausalTerm::Product(ts) => {
                let mut acc = CausalValue::one();
                for t in ts {
                    acc = alg.prod(&acc, &t.eval(alg)?)?;
                }
                Ok(acc)
            }
            CausalTerm::Sum(ts) => {
                let mut acc = CausalValue::zero();
                for t in ts {
                    acc = alg.sum(&acc, &t.eval(alg)?)?;
                }
                Ok(acc)
            }
            CausalTerm::App(t, u) => alg.app(&t.eval(alg)?, &u.eval(alg)?),
            CausalTerm::Neg(t) => alg.neg(&t.eval(alg)?),
        }
    }
}

/// Canonical value of a term.
pub fn normalize(t: &CausalTerm) -> CausalValue {
    t.eval(&Algebra::unbounded()).expect("unbounded")
}

impl fmt::Display for CausalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &CausalTerm, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            // 0: sum context, 1: product operand, 2: application operand, 3: under `~`.
            let (mine, open) = match t {
                CausalTerm::Sum(ts) if ts.is_empty() => return f.write_str("0"),
                CausalTerm::Product(ts) if ts.is_empty() => return f.write_str("1"),
                CausalTerm::Sum(ts) if ts.len() == 1 => return go(&ts[0], level, f),
                CausalTerm::Product(ts) if ts.len() == 1 => return go(&ts[0], level, f),
                CausalTerm::Label(l) => return write!(f, "{l}"),
                CausalTerm::Neg(u) => {
                    f.write_str("~")?;
                    return go(u, 3, f);
                }
                CausalTerm::Sum(_) => (0, level > 0),
                CausalTerm::Product(_) => (1, level > 1),
                CausalTerm::App(..) => (2, level > 2),
            };
            if open {
                f.write_str("(")?;
            }
            match t {
                CausalTerm::Sum(ts) | CausalTerm::Product(ts) => {
                    let sep = if mine == 0 { " + " } else { " * " };
                    for (i, u) in ts.iter().enumerate() {
                        if i > 0 {
                            f.write_str(sep)?;
                        }
                        go(u, mine + 1, f)?;
                    }
                }
                CausalTerm::App(u, w) => {
                    go(u, 2, f)?;
                    f.write_str(".")?;
                    go(w, 3, f)?;
                }
                _ => unreachable!(),
            }
            if open {
                f.write_str(")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

/// Characters allowed after the first one in a label or atom name.
pub(crate) fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '(' | ')' | ',' | '-')
}

pub(crate) fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '-'
}

/// Length in bytes of the name starting at `s`. Parentheses inside a name
/// must balance; an unmatched `)` or a comma outside parentheses ends it.
pub(crate) fn scan_name(s: &str) -> usize {
    let mut depth = 0usize;
    let mut end = 0;
    for (i, c) in s.char_indices() {
        let ok = if i == 0 {
            is_name_start(c)
        } else {
            match c {
                '(' => {
                    depth += 1;
                    true
                }
                ')' if depth == 0 => false,
                ')' => {
                    depth -= 1;
                    true
                }
                ',' => depth > 0,
                c => is_name_char(c),
            }
        };
        if !ok {
            break;
        }
        end = i + c.len_utf8();
    }
    end
}

struct TermParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: 1,
            column: self.src[..self.pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<CausalTerm> {
        let mut ts = vec![self.product()?];
        while self.eat('+') {
            ts.push(self.product()?);
        }
        Ok(if ts.len() == 1 { ts.pop().unwrap() } else { CausalTerm::Sum(ts) })
    }

    fn product(&mut self) -> Result<CausalTerm> {
        let mut ts = vec![self.application()?];
        while self.eat('*') {
            ts.push(self.application()?);
        }
        Ok(if ts.len() == 1 { ts.pop().unwrap() } else { CausalTerm::Product(ts) })
    }

    fn application(&mut self) -> Result<CausalTerm> {
        let mut t = self.unary()?;
        while self.eat('.') || self.eat('·') {
            let u = self.unary()?;
            t = CausalTerm::app(t, u);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<CausalTerm> {
        if self.eat('~') {
            return Ok(CausalTerm::neg(self.unary()?));
        }
        if self.eat('(') {
            let t = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(t);
        }
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(CausalTerm::zero())
            }
            Some('1') => {
                self.pos += 1;
                Ok(CausalTerm::one())
            }
            Some(_) => {
                let n = scan_name(&self.src[self.pos..]);
                if n == 0 {
                    return Err(self.error("expected a label, `~`, `(`, `0` or `1`"));
                }
                let name = &self.src[self.pos..self.pos + n];
                self.pos += n;
                Ok(CausalTerm::label(name))
            }
            None => Err(self.error("unexpected end of term")),
        }
    }
}

/// Parses the text syntax of causal terms.
pub fn parse_term(text: &str) -> Result<CausalTerm> {
    let mut p = TermParser { src: text, pos: 0 };
    let t = p.sum()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

impl std::str::FromStr for CausalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(normalize(&parse_term(s)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> CausalValue {
        s.parse().unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_term("a.b*c+d").unwrap().to_string(), "a.b * c + d");
        assert_eq!(parse_term("(a*b).c").unwrap().to_string(), "(a * b).c");
    }

    #[test]
    fn labels_with_arguments() {
        let t = parse_term("(~throw(suzy)_0 * throw(billy)_1).s_2").unwrap();
        assert_eq!(t.to_string(), "(~throw(suzy)_0 * throw(billy)_1).s_2");
        assert_eq!(v("-dead_0.r").to_string(), "-dead_0.r");
    }

    #[test]
    fn negation_of_application() {
        assert_eq!(v("~(~h.r2)").to_string(), "~~h + ~r2");
    }

    #[test]
    fn identity_and_pseudo_complement() {
        assert_eq!(v("1.t"), v("t"));
        assert!(v("a * ~a").is_zero());
    }

    #[test]
    fn weak_excluded_middle() {
        assert!(v("~(a.b*c) + ~~(a.b*c)").is_one());
    }

    #[test]
    fn chain_printing() {
        let x = v("shoot_8.d_9 * load_1.l_2 * l_2.d_9");
        assert_eq!(x, v("(shoot_8 * load_1.l_2).d_9"));
        assert_eq!(x.to_string(), "(load_1.l_2 * shoot_8).d_9");
    }
}
