use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::common_denominator;
use crate::{format_rational, parse_rational, PolyError, Var};

/// Dense univariate polynomial with rational coefficients, ascending degree.
///
/// The coefficient list never ends in a zero; the zero polynomial is the
/// empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero(var: Var) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rational::from(1))
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::from_coeffs(var, vec![c])
    }

    /// `c * var^deg`
    pub fn monomial(var: Var, c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::new(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(var, coeffs)
    }

    /// The polynomial `var` itself.
    pub fn identity(var: Var) -> Self {
        Self::monomial(var, Rational::from(1), 1)
    }

    pub fn from_coeffs(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::from_coeffs(var, coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn from_integers(var: Var, coeffs: &[Integer]) -> Self {
        Self::from_coeffs(var, coeffs.iter().map(|c| Rational::from(c.clone())).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `var^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for zero and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| Rational::from(c * Integer::from(k))).collect();
        Self::from_coeffs(self.var, coeffs)
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = Rational::from(lc.recip_ref());
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero(self.var);
        }
        UniPoly { var: self.var, coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect() }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= at;
            acc += c;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert_eq!(self.var, divisor.var, "variable mismatch");
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = Rational::from(divisor.coeffs[dd].recip_ref());
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(self.var), Self::zero(self.var));
        };
        if nd < dd {
            return (Self::zero(self.var), self.clone());
        }
        let mut quot = vec![Rational::new(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = Rational::from(&rem[k + dd] * &lc_inv);
            if q != 0 {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= Rational::from(&q * d);
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(self.var, quot), Self::from_coeffs(self.var, rem))
    }

    /// Monic greatest common divisor over the rationals. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "variable mismatch");
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Splits `self = content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    /// Returns `None` for the zero polynomial.
    pub fn primitive_part(&self) -> Option<(Rational, Vec<Integer>)> {
        let lc = self.leading_coeff()?;
        let den = common_denominator(&self.coeffs);
        let ints: Vec<Integer> = self.coeffs.iter().map(|c| Rational::from(c * &den).into_numer_denom().0).collect();
        let mut g = Integer::new();
        for c in &ints {
            g.gcd_mut(c);
        }
        if *lc < 0 {
            g = -g;
        }
        let prim = ints.into_iter().map(|c| c.div_exact(&g)).collect();
        Some((Rational::from((g, den)), prim))
    }

    /// Substitutes `var -> scale * var`.
    pub fn rescale_var(&self, scale: &Rational) -> Self {
        let mut pw = Rational::from(1);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(Rational::from(c * &pw));
            pw *= scale;
        }
        Self::from_coeffs(self.var, coeffs)
    }

    /// Text form; parseable by [`UniPoly::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if *c == 0 {
                continue;
            }
            push_signed_term(&mut out, c, &monomial_text(&[(self.var, k)]));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn parse(text: &str, var: Var) -> Result<Self, PolyError> {
        crate::parse::parse_uni(text, var)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.var, other.var, "variable mismatch");
    }
}

pub(crate) fn monomial_text(parts: &[(Var, usize)]) -> String {
    let mut s = String::new();
    for &(v, e) in parts {
        match e {
            0 => {}
            1 => s.push(v.name()),
            _ => {
                s.push(v.name());
                s.push('^');
                s.push_str(&e.to_string());
            }
        }
    }
    s
}

/// Appends ` + c*m` / ` - c*m` (or a leading `c*m`), with the coefficient
/// suppressed when it is one and the monomial nontrivial.
pub(crate) fn push_signed_term(out: &mut String, c: &Rational, mono: &str) {
    let neg = *c < 0;
    let abs = Rational::from(c.abs_ref());
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        out.push_str(&abs_text(&abs));
    } else if abs == 1 {
        out.push_str(mono);
    } else if *abs.denom() == 1 {
        out.push_str(&abs.numer().to_string());
        out.push_str(mono);
    } else {
        out.push_str(&abs_text(&abs));
        out.push(' ');
        out.push_str(mono);
    }
}

fn abs_text(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => Rational::from(a + b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UniPoly::from_coeffs(self.var, coeffs)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { var: self.var, coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.check(rhs);
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut coeffs = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += Rational::from(a * b);
            }
        }
        UniPoly::from_coeffs(self.var, coeffs)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;
owned_ops!(UniPoly);

/// JSON form: array of `[degree, "num/den"]` pairs, ascending, zeros omitted.
impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let nz = self.coeffs.iter().filter(|c| **c != 0).count();
        let mut seq = s.serialize_seq(Some(nz))?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                seq.serialize_element(&(k, format_rational(c)))?;
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    /// The variable tag is not part of the wire format; it defaults to `u`.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(usize, String)>::deserialize(d)?;
        let len = pairs.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        let mut coeffs = vec![Rational::new(); len];
        for (k, s) in pairs {
            coeffs[k] += parse_rational(&s).map_err(D::Error::custom)?;
        }
        Ok(UniPoly::from_coeffs(Var::U, coeffs))
    }
}
