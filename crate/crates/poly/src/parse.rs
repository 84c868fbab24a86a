//! Recursive-descent parser for polynomial text.
//!
//! Accepts `+ - * ^`, parentheses, implicit multiplication (`3u^2x`),
//! exponents written `^2`, `^{12}` or as superscript digits, rational
//! literals `a/b`, and the typographic minus and middle dot.

use std::collections::BTreeMap;

use rug::{Integer, Rational};

use crate::{BiPoly, PolyError, UniPoly, Var};

/// Exponent vector over the allowed variables, in the order given.
type Poly = BTreeMap<Vec<u32>, Rational>;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [Var],
}

pub(crate) fn parse_uni(text: &str, var: Var) -> Result<UniPoly, PolyError> {
    let p = Parser::new(text, std::slice::from_ref(&var)).run()?;
    let mut coeffs = Vec::new();
    for (e, c) in p {
        let k = e[0] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::new());
        }
        coeffs[k] = c;
    }
    Ok(UniPoly::from_coeffs(var, coeffs))
}

pub(crate) fn parse_bi(text: &str, x: Var, u: Var) -> Result<BiPoly, PolyError> {
    let vars = [x, u];
    let p = Parser::new(text, &vars).run()?;
    Ok(BiPoly::from_terms(p.into_iter().map(|(e, c)| (e[0], e[1], c))).with_vars(x, u))
}

fn superscript_digit(c: char) -> Option<u32> {
    Some(match c {
        '⁰' => 0,
        '¹' => 1,
        '²' => 2,
        '³' => 3,
        '⁴' => 4,
        '⁵' => 5,
        '⁶' => 6,
        '⁷' => 7,
        '⁸' => 8,
        '⁹' => 9,
        _ => return None,
    })
}

fn add_into(acc: &mut Poly, e: Vec<u32>, c: Rational) {
    if c == 0 {
        return;
    }
    let slot = acc.entry(e.clone()).or_default();
    *slot += c;
    if *slot == 0 {
        acc.remove(&e);
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(&mut out, e, Rational::from(ca * cb));
        }
    }
    out
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a [Var]) -> Self {
        let chars = text
            .chars()
            .map(|c| match c {
                '−' | '–' => '-',
                '·' | '×' => '*',
                c => c,
            })
            .filter(|c| !c.is_whitespace())
            .collect();
        Parser { chars, pos: 0, vars }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn constant(&self, c: Rational) -> Poly {
        let mut p = Poly::new();
        add_into(&mut p, vec![0; self.vars.len()], c);
        p
    }

    fn run(mut self) -> Result<Poly, PolyError> {
        if self.chars.is_empty() {
            return self.err("empty input");
        }
        let p = self.expr()?;
        if self.pos != self.chars.len() {
            return self.err(format!("unexpected '{}'", self.chars[self.pos]));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = Poly::new();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            for (e, c) in t {
                add_into(&mut acc, e, if sign < 0 { -c } else { c });
            }
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = mul(&acc, &f);
                }
                Some(c) if c == '(' || c.is_ascii_digit() || c.is_alphabetic() => {
                    let f = self.power()?;
                    acc = mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        let exp = match self.peek() {
            Some('^') => {
                self.pos += 1;
                if self.peek() == Some('{') {
                    self.pos += 1;
                    let n = self.integer()?;
                    if self.peek() != Some('}') {
                        return self.err("expected '}'");
                    }
                    self.pos += 1;
                    n
                } else {
                    self.integer()?
                }
            }
            Some(c) if superscript_digit(c).is_some() => {
                let mut n = 0u32;
                while let Some(d) = self.peek().and_then(superscript_digit) {
                    n = n * 10 + d;
                    self.pos += 1;
                }
                Integer::from(n)
            }
            _ => return Ok(base),
        };
        let Some(exp) = exp.to_u32() else {
            return self.err("exponent out of range");
        };
        let mut acc = self.constant(Rational::from(1));
        for _ in 0..exp {
            acc = mul(&acc, &base);
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<Integer, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = Rational::from(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == 0 {
                        return self.err("zero denominator");
                    }
                    value /= Rational::from(d);
                }
                Ok(self.constant(value))
            }
            Some(c) if c.is_alphabetic() => match self.vars.iter().position(|v| v.name() == c) {
                Some(i) => {
                    self.pos += 1;
                    let mut e = vec![0; self.vars.len()];
                    e[i] = 1;
                    let mut p = Poly::new();
                    p.insert(e, Rational::from(1));
                    Ok(p)
                }
                None => self.err(format!("unknown variable '{c}'")),
            },
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn typographic_forms() {
        let a = BiPoly::parse("x⁴ + (−10u − 10)x³ − 324u⁴").unwrap();
        let b = BiPoly::parse("x^4 + (-10*u - 10)*x^{3} - 324 u^4").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coeff(3, 1), Rational::from(-10));
    }

    #[test]
    fn rational_literals() {
        let p = UniPoly::parse("u^12 - 11364/1225 u^11 + 1", Var::U).unwrap();
        assert_eq!(p.coeff(11), Rational::from((-11364, 1225)));
        assert_eq!(p.degree(), Some(12));
    }

    #[test]
    fn rejects_garbage() {
        assert!(BiPoly::parse("x + y").is_err());
        assert!(BiPoly::parse("(x + 1").is_err());
        assert!(BiPoly::parse("").is_err());
        assert!(BiPoly::parse("1/0").is_err());
        assert!(UniPoly::parse("x", Var::U).is_err());
    }

    #[test]
    fn leading_sign_and_nesting() {
        let p = BiPoly::parse("-(x - u)^2").unwrap();
        assert_eq!(p, BiPoly::from_int_terms(&[(2, 0, -1), (1, 1, 2), (0, 2, -1)]));
    }
}
