//! Terse polynomial expressions: `x^2+y, y^2+x, xy - 3/2 x`.
//!
//! Variables are single letters. Juxtaposition multiplies, `/` divides by a
//! nonzero constant, `^` takes a nonnegative integer power.

use num_traits::Zero;

use super::poly::{Poly, Var};
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_NAMES: [(char, Var); 3] = [('x', Var::X), ('y', Var::Y), ('t', Var::T)];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str, names: &[(char, Var)], consts: &[(char, Rational)]) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = vec![];
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Lexed>, tok| out.push(Lexed { tok, line: l0, col: c0 });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let text = if text.starts_with('.') { format!("0{}", text) } else { text };
            let v = parse_rational(&text).ok_or_else(|| Error::parse(l0, c0, format!("bad number '{}'", text)))?;
            col += i - start;
            push(&mut out, Tok::Num(v));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => match (names.iter().find(|(n, _)| *n == c), consts.iter().find(|(n, _)| *n == c)) {
                (Some(&(_, v)), _) => Tok::Var(v),
                (None, Some((_, r))) => Tok::Num(r.clone()),
                _ => return Err(Error::parse(l0, c0, format!("unexpected character '{}'", c))),
            },
        };
        push(&mut out, tok);
        i += 1;
        col += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|l| (l.line, l.col)).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::parse(l, c, msg))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.power()?;
                    match d.constant_value() {
                        Some(v) if !v.is_zero() => acc = acc.scale(&(Rational::from_integer(1.into()) / v)),
                        _ => return Err(Error::parse(at.0, at.1, "division by a nonconstant or zero")),
                    }
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::LParen) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(e)) if e.is_integer() && e >= Rational::zero() && e <= Rational::from_integer(64.into()) => {
                    self.pos += 1;
                    let k: u32 = e.to_integer().try_into().expect("small exponent");
                    return Ok(base.pow(k));
                }
                _ => return self.err("expected a small nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Poly::constant(v))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Poly::var(v))
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {:?}", t)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn end_position(src: &str) -> (usize, usize) {
    let line = src.matches('\n').count() + 1;
    let col = src.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

pub fn parse_poly_with(src: &str, names: &[(char, Var)]) -> Result<Poly> {
    let mut p = Parser { toks: lex(src, names, &[])?, pos: 0, end: end_position(src) };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_poly(src: &str) -> Result<Poly> {
    parse_poly_with(src, &DEFAULT_NAMES)
}

/// Comma separated components, optionally wrapped in one pair of parentheses.
pub fn parse_tuple_with(src: &str, names: &[(char, Var)]) -> Result<Vec<Poly>> {
    parse_tuple_in(src, names, &[])
}

/// Like [`parse_tuple_with`], with letters in `consts` standing for fixed values.
pub fn parse_tuple_in(src: &str, names: &[(char, Var)], consts: &[(char, Rational)]) -> Result<Vec<Poly>> {
    let toks = lex(src, names, consts)?;
    let mut p = Parser { toks, pos: 0, end: end_position(src) };
    let wrapped = p.peek() == Some(&Tok::LParen) && {
        // The outer parentheses wrap a tuple only if a top-level comma sits inside them.
        let mut depth = 0i32;
        let mut comma = false;
        let mut closes_at_end = false;
        for (i, l) in p.toks.iter().enumerate() {
            match l.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        closes_at_end = i + 1 == p.toks.len();
                        break;
                    }
                }
                Tok::Comma if depth == 1 => comma = true,
                _ => {}
            }
        }
        comma && closes_at_end
    };
    if wrapped {
        p.pos = 1;
        p.toks.pop();
    }
    let mut out = vec![p.expr()?];
    while p.peek() == Some(&Tok::Comma) {
        p.pos += 1;
        out.push(p.expr()?);
    }
    if p.pos != p.toks.len() {
        return p.err("expected ',' or end of input");
    }
    Ok(out)
}

pub fn parse_tuple(src: &str) -> Result<Vec<Poly>> {
    parse_tuple_with(src, &DEFAULT_NAMES)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_products_and_fractions() {
        let p = parse_poly("x^2 - 3/2 xy + 2(x+1)^2 - .5y").unwrap();
        assert_eq!(p.to_string(), "3*x^2 - 3/2*x*y + 4*x - 1/2*y + 2");
    }

    #[test]
    fn tuples() {
        let t = parse_tuple("(x^2+y, y^2+x, xy)").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(parse_tuple("(x+y)^2, x").unwrap()[0].to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(parse_tuple("(x+y)").unwrap().len(), 1);
        assert_eq!(parse_tuple("x\u{2212}y").unwrap()[0].to_string(), "x - y");
        let two = Rational::from_integer(2.into());
        let t = parse_tuple_in("a^2/b x, y", &DEFAULT_NAMES, &[('a', two.clone()), ('b', &two * &two)]).unwrap();
        assert_eq!(t[0].to_string(), "x");
    }

    #[test]
    fn positioned_errors() {
        assert_eq!(
            parse_tuple("x^2+y, y^2+q"),
            Err(Error::parse(1, 12, "unexpected character 'q'"))
        );
        assert!(matches!(parse_poly("x/y"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_poly("(x+1"), Err(Error::Parse { column: 5, .. })));
        assert!(matches!(parse_poly("x^y"), Err(Error::Parse { .. })));
    }
}
