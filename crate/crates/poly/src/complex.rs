use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Float, Rational};

use crate::{BiPoly, UniPoly};

/// Complex number with two MPFR floats of a common precision.
#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn zero(prec: u32) -> Self {
        MpComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        MpComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_floats(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        MpComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        MpComplex { re: Float::with_val(prec, r), im: Float::new(prec) }
    }

    /// `r (cos t + i sin t)`
    pub fn from_polar(r: &Float, t: &Float) -> Self {
        let prec = r.prec().max(t.prec());
        let (s, c) = Float::with_val(prec, t).sin_cos(Float::new(prec));
        MpComplex { re: c * r, im: s * r }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        MpComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn conj(&self) -> Self {
        MpComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        MpComplex { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        MpComplex { re: Float::with_val(p, &self.re / &n), im: Float::with_val(p, -&self.im) / &n }
    }

    pub fn dist(&self, other: &Self) -> Float {
        (self - other).abs()
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        if im < 0.0 {
            write!(f, "{re} - {}i", -im)
        } else {
            write!(f, "{re} + {im}i")
        }
    }
}

impl<'a> Add<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: &MpComplex) -> MpComplex {
        let p = self.prec().max(rhs.prec());
        MpComplex { re: Float::with_val(p, &self.re + &rhs.re), im: Float::with_val(p, &self.im + &rhs.im) }
    }
}

impl<'a> Sub<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: &MpComplex) -> MpComplex {
        let p = self.prec().max(rhs.prec());
        MpComplex { re: Float::with_val(p, &self.re - &rhs.re), im: Float::with_val(p, &self.im - &rhs.im) }
    }
}

impl<'a> Mul<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: &MpComplex) -> MpComplex {
        let p = self.prec().max(rhs.prec());
        let rr = Float::with_val(p, &self.re * &rhs.re);
        let ii = Float::with_val(p, &self.im * &rhs.im);
        let ri = Float::with_val(p, &self.re * &rhs.im);
        let ir = Float::with_val(p, &self.im * &rhs.re);
        MpComplex { re: rr - ii, im: ri + ir }
    }
}

impl<'a> Div<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &MpComplex) -> MpComplex {
        self * &rhs.recip()
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        let p = self.prec();
        MpComplex { re: Float::with_val(p, -&self.re), im: Float::with_val(p, -&self.im) }
    }
}

macro_rules! owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MpComplex {
            type Output = MpComplex;
            fn $f(self, rhs: MpComplex) -> MpComplex {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a MpComplex> for MpComplex {
            type Output = MpComplex;
            fn $f(self, rhs: &MpComplex) -> MpComplex {
                (&self).$f(rhs)
            }
        }
    };
}
owned!(Add, add);
owned!(Sub, sub);
owned!(Mul, mul);
owned!(Div, div);

impl Neg for MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        -&self
    }
}

/// A computed value together with an upper bound on its distance from the
/// exact value.
#[derive(Clone, Debug)]
pub struct Enclosure {
    pub value: MpComplex,
    pub radius: Float,
}

impl Enclosure {
    /// True when zero lies inside the enclosing disc.
    pub fn contains_zero(&self) -> bool {
        self.value.abs() <= self.radius
    }
}

/// Relative rounding factor for an evaluation scheme with `ops` nested
/// multiply-adds: each complex multiply-add costs at most a few ulps, and the
/// coefficients themselves are rounded once.
fn gamma(ops: usize, prec: u32) -> Float {
    Float::with_val(64, 8 * (ops + 1)) >> prec
}

/// Horner evaluation of `p` at `z` with `prec` bits of working precision.
///
/// The radius bounds the rounding error by `8 (n + 1) 2^-prec sum |a_k| |z|^k`.
pub fn eval_uni_complex(p: &UniPoly, z: &MpComplex, prec: u32) -> Enclosure {
    assert!(prec >= 53, "precision below 53 bits");
    let z = z.with_prec(prec);
    let az = Float::with_val(64, z.abs());
    let mut acc = MpComplex::zero(prec);
    let mut mag = Float::new(64);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &z) + &MpComplex::from_rational(c, prec);
        mag = mag * &az + Float::with_val(64, c).abs();
    }
    let n = p.degree().unwrap_or(0);
    Enclosure { value: acc, radius: mag * gamma(n, prec) }
}

/// Nested Horner evaluation of `p(x, u)`: inner in u, outer in x.
pub fn eval_bi_complex(p: &BiPoly, x: &MpComplex, u: &MpComplex, prec: u32) -> Enclosure {
    assert!(prec >= 53, "precision below 53 bits");
    let x = x.with_prec(prec);
    let u = u.with_prec(prec);
    let ax = Float::with_val(64, x.abs());
    let au = Float::with_val(64, u.abs());
    let mut acc = MpComplex::zero(prec);
    let mut mag = Float::new(64);
    for c in p.x_coeffs().iter().rev() {
        let mut inner = MpComplex::zero(prec);
        let mut imag = Float::new(64);
        for a in c.coeffs().iter().rev() {
            inner = &(&inner * &u) + &MpComplex::from_rational(a, prec);
            imag = imag * &au + Float::with_val(64, a).abs();
        }
        acc = &(&acc * &x) + &inner;
        mag = mag * &ax + imag;
    }
    let ops = (p.deg_x().unwrap_or(0) + p.deg_u().unwrap_or(0)) as usize;
    Enclosure { value: acc, radius: mag * gamma(ops, prec) }
}
