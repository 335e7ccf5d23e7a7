//! Text grammar for field elements and polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*')? unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'g' | variable | '(' expr ')'
//! ```
//!
//! Variables are single letters chosen by the caller; `g` is the field
//! generator. Integers are reduced modulo the characteristic.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Fe, Field, GaloisField};

/// Sparse polynomial: exponent vector -> nonzero coefficient.
pub type Terms = BTreeMap<Vec<u32>, Fe>;

const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(char),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            let mut v: u64 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(chars[i] as u64 - '0' as u64))
                    .ok_or(Error::Parse {
                        pos: start,
                        msg: "integer too large".into(),
                    })?;
                i += 1;
            }
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() {
            out.push((i, Tok::Ident(c)));
            i += 1;
        } else if "+-*^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [char],
    f: &'a GaloisField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' {
                add(&acc, &t, self.f)
            } else {
                add(&acc, &neg(&t, self.f), self.f)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let u = self.unary()?;
                    acc = mul(&acc, &u, self.f);
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let u = self.unary()?;
                    acc = mul(&acc, &u, self.f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Terms> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            let u = self.unary()?;
            return Ok(neg(&u, self.f));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Terms> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(k)) if k <= MAX_EXPONENT => {
                    self.pos += 1;
                    return Ok(pow(&base, k as u32, self.vars.len(), self.f));
                }
                Some(Tok::Int(_)) => return Err(self.err("exponent too large")),
                _ => return Err(self.err("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Terms> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                Ok(constant(self.f.from_int((k % self.f.p() as u64) as i64), n))
            }
            Some(Tok::Ident(c)) => {
                self.pos += 1;
                if let Some(i) = self.vars.iter().position(|&v| v == c) {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    Ok(BTreeMap::from([(e, Fe(1))]))
                } else if c == 'g' {
                    Ok(constant(self.f.generator(), n))
                } else {
                    self.pos -= 1;
                    Err(self.err(format!("unknown symbol '{c}'")))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

fn constant(c: Fe, n: usize) -> Terms {
    let mut t = BTreeMap::new();
    if c.0 != 0 {
        t.insert(vec![0; n], c);
    }
    t
}

fn add(a: &Terms, b: &Terms, f: &GaloisField) -> Terms {
    let mut out = a.clone();
    for (e, c) in b {
        let v = f.add(out.get(e).unwrap_or(&Fe(0)), c);
        if v.0 == 0 {
            out.remove(e);
        } else {
            out.insert(e.clone(), v);
        }
    }
    out
}

fn neg(a: &Terms, f: &GaloisField) -> Terms {
    a.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect()
}

fn mul(a: &Terms, b: &Terms, f: &GaloisField) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = f.add(out.get(&e).unwrap_or(&Fe(0)), &f.mul(ca, cb));
            if v.0 == 0 {
                out.remove(&e);
            } else {
                out.insert(e, v);
            }
        }
    }
    out
}

fn pow(a: &Terms, k: u32, n: usize, f: &GaloisField) -> Terms {
    let mut acc = constant(Fe(1), n);
    for _ in 0..k {
        acc = mul(&acc, a, f);
    }
    acc
}

/// Parse a polynomial in the given variables over `f`.
pub fn parse_poly(src: &str, vars: &[char], f: &GaloisField) -> Result<Terms> {
    if vars.contains(&'g') {
        return Err(Error::invalid("'g' is reserved for the field generator"));
    }
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.chars().count(),
        vars,
        f,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parse a field element such as `1+2*g+g^2`.
pub fn parse_element(src: &str, f: &GaloisField) -> Result<Fe> {
    let t = parse_poly(src, &[], f)?;
    Ok(t.get(&Vec::new()).copied().unwrap_or(Fe(0)))
}

/// Render `c` as a factor in front of a monomial.
fn coeff_prefix(c: Fe, f: &GaloisField, monomial_empty: bool) -> String {
    let s = f.fmt_elem(c);
    if monomial_empty {
        return s;
    }
    if c.0 == 1 {
        String::new()
    } else if s.contains('+') {
        format!("({s})*")
    } else {
        format!("{s}*")
    }
}

/// Print terms in descending lexicographic exponent order, e.g.
/// `X^4+Y^4+Z^4`.
pub fn format_poly(t: &Terms, vars: &[char], f: &GaloisField) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (e, c) in t.iter().rev() {
        let mono: Vec<String> = e
            .iter()
            .zip(vars)
            .filter(|(k, _)| **k > 0)
            .map(|(k, v)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
            .collect();
        let mono = mono.join("*");
        parts.push(format!("{}{}", coeff_prefix(*c, f, mono.is_empty()), mono));
    }
    parts.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_fermat() {
        let f = GaloisField::get(3, 1).unwrap();
        let t = parse_poly("X^4+Y^4+Z^4", &['X', 'Y', 'Z'], &f).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(format_poly(&t, &['X', 'Y', 'Z'], &f), "X^4+Y^4+Z^4");
    }

    #[test]
    fn arithmetic_and_implicit_products() {
        let f = GaloisField::get(3, 2).unwrap();
        let t = parse_poly("(X - Y)(X + Y) - 2XY", &['X', 'Y'], &f).unwrap();
        let u = parse_poly("X^2 - Y^2 + X*Y", &['X', 'Y'], &f).unwrap();
        assert_eq!(t, u);
        assert_eq!(parse_element("g^2", &f).unwrap(), f.from_int(-1));
        assert_eq!(parse_element("1+g", &f).unwrap(), Fe(4));
        assert_eq!(f.fmt_elem(Fe(4)), "1+g");
    }

    #[test]
    fn errors_carry_positions() {
        let f = GaloisField::get(5, 1).unwrap();
        match parse_poly("X^2 + $", &['X'], &f) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("X^", &['X'], &f), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("W", &['X'], &f), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_poly("(X", &['X'], &f), Err(Error::Parse { .. })));
    }
}
