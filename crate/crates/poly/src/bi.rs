use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::uni::{monomial_text, owned_ops, push_signed_term};
use crate::{format_rational, parse_rational, PolyError, UniPoly, Var};

/// Sparse bivariate polynomial, keyed by `(deg_x, deg_u)`.
///
/// The first variable is the "x" slot (the one resultants eliminate), the
/// second the "u" slot. By default these are `x` and `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    vars: (Var, Var),
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::zero_in(Var::X, Var::U)
    }

    pub fn zero_in(x: Var, u: Var) -> Self {
        BiPoly { vars: (x, u), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c x^dx u^du`
    pub fn monomial(c: Rational, dx: u32, du: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(dx, du, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rational::from(1), 1, 0)
    }

    pub fn u() -> Self {
        Self::monomial(Rational::from(1), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (dx, du, c) in terms {
            p.add_term(dx, du, c);
        }
        p
    }

    /// Convenience for integer coefficients: `(dx, du, c)`.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(a, b, c)| (a, b, Rational::from(c))))
    }

    /// Builds `sum_k coeffs[k](u) x^k`.
    pub fn from_x_coeffs(coeffs: &[UniPoly]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                p.add_term(k as u32, j as u32, a.clone());
            }
        }
        p
    }

    /// Embeds a univariate polynomial in either slot.
    pub fn from_uni(p: &UniPoly, in_x: bool) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            if in_x {
                (k as u32, 0, c.clone())
            } else {
                (0, k as u32, c.clone())
            }
        }))
    }

    pub fn vars(&self) -> (Var, Var) {
        self.vars
    }

    /// Relabels the two slots without touching the terms.
    pub fn with_vars(mut self, x: Var, u: Var) -> Self {
        self.vars = (x, u);
        self
    }

    pub fn add_term(&mut self, dx: u32, du: u32, c: Rational) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((dx, du)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, dx: u32, du: u32) -> Rational {
        self.terms.get(&(dx, du)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_u(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    /// Coefficients of `x^0 .. x^deg_x` as polynomials in the second slot.
    pub fn x_coeffs(&self) -> Vec<UniPoly> {
        let Some(n) = self.deg_x() else { return Vec::new() };
        let mut out = vec![Vec::<Rational>::new(); n as usize + 1];
        for (&(dx, du), c) in &self.terms {
            let v = &mut out[dx as usize];
            if v.len() <= du as usize {
                v.resize(du as usize + 1, Rational::new());
            }
            v[du as usize] = c.clone();
        }
        out.into_iter().map(|v| UniPoly::from_coeffs(self.vars.1, v)).collect()
    }

    /// Coefficient of `x^k` as a polynomial in the second slot.
    pub fn x_coeff(&self, k: u32) -> UniPoly {
        let mut v = Vec::new();
        for (&(dx, du), c) in self.terms.range((k, 0)..=(k, u32::MAX)) {
            debug_assert_eq!(dx, k);
            v.resize(du as usize + 1, Rational::new());
            v[du as usize] = c.clone();
        }
        UniPoly::from_coeffs(self.vars.1, v)
    }

    /// Leading coefficient in x, as a polynomial in the second slot.
    pub fn leading_x_coeff(&self) -> Option<UniPoly> {
        self.deg_x().map(|n| self.x_coeff(n))
    }

    pub fn derivative_x(&self) -> Self {
        let mut p = Self::zero_in(self.vars.0, self.vars.1);
        for (&(dx, du), c) in &self.terms {
            if dx > 0 {
                p.add_term(dx - 1, du, Rational::from(c * dx));
            }
        }
        p
    }

    pub fn derivative_u(&self) -> Self {
        let mut p = Self::zero_in(self.vars.0, self.vars.1);
        for (&(dx, du), c) in &self.terms {
            if du > 0 {
                p.add_term(dx, du - 1, Rational::from(c * du));
            }
        }
        p
    }

    /// Specializes the second slot, leaving a polynomial in the first.
    pub fn eval_u(&self, u: &Rational) -> UniPoly {
        let mut out = Vec::new();
        for (k, c) in self.x_coeffs().iter().enumerate() {
            out.resize(k + 1, Rational::new());
            out[k] = c.eval(u);
        }
        UniPoly::from_coeffs(self.vars.0, out)
    }

    /// Specializes the first slot, leaving a polynomial in the second.
    pub fn eval_x(&self, x: &Rational) -> UniPoly {
        let mut acc = UniPoly::zero(self.vars.1);
        for c in self.x_coeffs().iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    pub fn eval(&self, x: &Rational, u: &Rational) -> Rational {
        self.eval_u(u).eval(x)
    }

    /// The part of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut p = Self::zero_in(self.vars.0, self.vars.1);
        for (&(dx, du), c) in &self.terms {
            if dx + du == k {
                p.add_term(dx, du, c.clone());
            }
        }
        p
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero_in(self.vars.0, self.vars.1);
        for (&(dx, du), a) in &self.terms {
            p.add_term(dx, du, Rational::from(a * c));
        }
        p
    }

    /// Least common multiple of all coefficient denominators.
    pub fn common_denominator(&self) -> Integer {
        crate::rational::common_denominator(self.terms.values())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one().with_vars(self.vars.0, self.vars.1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Projective closure with a third variable `w` of total degree
    /// `total_degree()`, so that `F(x, u, 1) = self`.
    pub fn homogenize(&self) -> Homogeneous {
        let d = self.total_degree().unwrap_or(0);
        Homogeneous {
            degree: d,
            terms: self.terms.iter().map(|(&(dx, du), c)| ((dx, du, d - dx - du), c.clone())).collect(),
        }
    }

    /// Text form grouped by descending powers of x, with the x-free part
    /// expanded at the end, e.g. `x^2 + (-u - 1)x - 3u + 2`.
    pub fn to_text(&self) -> String {
        let (xv, uv) = self.vars;
        let coeffs = self.x_coeffs();
        let mut out = String::new();
        for (k, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xm = monomial_text(&[(xv, k)]);
            if k == 0 {
                for (j, a) in c.coeffs().iter().enumerate().rev() {
                    if *a != 0 {
                        push_signed_term(&mut out, a, &monomial_text(&[(uv, j)]));
                    }
                }
            } else if c.coeffs().iter().filter(|a| **a != 0).count() == 1 {
                let j = c.coeffs().len() - 1;
                let a = &c.coeffs()[j];
                push_signed_term(&mut out, a, &monomial_text(&[(uv, j), (xv, k)]));
            } else {
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push('(');
                out.push_str(&c.to_text());
                out.push(')');
                out.push_str(&xm);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses text in the two variables `x` and `u`.
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        crate::parse::parse_bi(text, Var::X, Var::U)
    }

    pub fn parse_in(text: &str, x: Var, u: Var) -> Result<Self, PolyError> {
        crate::parse::parse_bi(text, x, u)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable mismatch");
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.check(rhs);
        let mut p = self.clone();
        for (&(dx, du), c) in &rhs.terms {
            p.add_term(dx, du, c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.check(rhs);
        let mut p = self.clone();
        for (&(dx, du), c) in &rhs.terms {
            p.add_term(dx, du, Rational::from(-c));
        }
        p
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { vars: self.vars, terms: self.terms.iter().map(|(k, c)| (*k, Rational::from(-c))).collect() }
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.check(rhs);
        let mut p = BiPoly::zero_in(self.vars.0, self.vars.1);
        for (&(ax, au), a) in &self.terms {
            for (&(bx, bu), b) in &rhs.terms {
                p.add_term(ax + bx, au + bu, Rational::from(a * b));
            }
        }
        p
    }
}

owned_ops!(BiPoly);

/// JSON form: array of `[deg_x, deg_u, "num/den"]`, sorted by exponent pair.
impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(dx, du), c) in &self.terms {
            seq.serialize_element(&(dx, du, format_rational(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples = Vec::<(u32, u32, String)>::deserialize(d)?;
        let mut p = BiPoly::zero();
        for (dx, du, s) in triples {
            p.add_term(dx, du, parse_rational(&s).map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

/// Homogeneous polynomial in `(x, u, w)` of a fixed total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous {
    degree: u32,
    terms: BTreeMap<(u32, u32, u32), Rational>,
}

impl Homogeneous {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn eval(&self, x: &Rational, u: &Rational, w: &Rational) -> Rational {
        let mut acc = Rational::new();
        for (&(a, b, c), k) in &self.terms {
            let mut t = k.clone();
            t *= Rational::from(x.pow(a as i32));
            t *= Rational::from(u.pow(b as i32));
            t *= Rational::from(w.pow(c as i32));
            acc += t;
        }
        acc
    }

    /// Sets `w = 1`.
    pub fn dehomogenize(&self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&(a, b, _), c)| (a, b, c.clone())))
    }

    /// Sets `u = 1`, giving a polynomial in `(x, w)`.
    pub fn chart_u(&self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&(a, _, c), k)| (a, c, k.clone()))).with_vars(Var::X, Var::W)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (&(a, b, c), k) in self.terms.iter().rev() {
            let m = monomial_text(&[(Var::X, a as usize), (Var::U, b as usize), (Var::W, c as usize)]);
            push_signed_term(&mut out, k, &m);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Homogeneous {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
