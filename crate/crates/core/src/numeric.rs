//! Floating-point layer: a small scalar abstraction over `Complex64` and
//! [`MpComplex`], Sturm bisection for real symmetric tridiagonal matrices,
//! and an all-roots Aberth iteration with a precision ladder.

use std::f64::consts::PI;
use std::fmt;

use gaudin_poly::{Float, MpComplex, Rational, UniPoly};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::{GaudinError, Result};

/// Complex scalar usable by the generic numeric routines.
pub trait Scalar: Clone + Send + Sync + fmt::Debug {
    fn zero(prec: u32) -> Self;
    fn from_f64(re: f64, im: f64, prec: u32) -> Self;
    fn from_rational(q: &Rational, prec: u32) -> Self;
    /// Positive square root of a nonnegative rational.
    fn sqrt_rational(q: &Rational, prec: u32) -> Self;
    fn from_c64(z: Complex64, prec: u32) -> Self {
        Self::from_f64(z.re, z.im, prec)
    }
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn div_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn modulus(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn to_c64(&self) -> Complex64;
    /// Unit roundoff of the representation.
    fn epsilon(&self) -> f64;
}

impl Scalar for Complex64 {
    fn zero(_: u32) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_f64(re: f64, im: f64, _: u32) -> Self {
        Complex64::new(re, im)
    }
    fn from_rational(q: &Rational, _: u32) -> Self {
        Complex64::new(q.to_f64(), 0.0)
    }
    fn sqrt_rational(q: &Rational, _: u32) -> Self {
        Complex64::new(Float::with_val(64, q).sqrt().to_f64(), 0.0)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn epsilon(&self) -> f64 {
        f64::EPSILON
    }
}

impl Scalar for MpComplex {
    fn zero(prec: u32) -> Self {
        MpComplex::zero(prec)
    }
    fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        MpComplex::from_f64(re, im, prec)
    }
    fn from_rational(q: &Rational, prec: u32) -> Self {
        MpComplex::from_rational(q, prec)
    }
    fn sqrt_rational(q: &Rational, prec: u32) -> Self {
        MpComplex::from_floats(Float::with_val(prec, q).sqrt(), Float::new(prec))
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn modulus(&self) -> f64 {
        self.abs().to_f64()
    }
    fn is_zero(&self) -> bool {
        MpComplex::is_zero(self)
    }
    fn to_c64(&self) -> Complex64 {
        let (re, im) = self.to_f64();
        Complex64::new(re, im)
    }
    fn epsilon(&self) -> f64 {
        (-(self.prec() as f64)).exp2()
    }
}

/// Eigenvalues, ascending, of the real symmetric tridiagonal matrix with
/// diagonal `alpha` and squared off-diagonals `beta2`, by Sturm-count
/// bisection to full double accuracy.
pub fn sturm_eigenvalues(alpha: &[f64], beta2: &[f64]) -> Vec<f64> {
    let n = alpha.len();
    if n == 0 {
        return Vec::new();
    }
    let beta: Vec<f64> = beta2.iter().map(|b| b.sqrt()).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..n {
        let rad = if k > 0 { beta[k - 1] } else { 0.0 } + if k + 1 < n { beta[k] } else { 0.0 };
        lo = lo.min(alpha[k] - rad);
        hi = hi.max(alpha[k] + rad);
    }
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    lo -= 4.0 * f64::EPSILON * scale;
    hi += 4.0 * f64::EPSILON * scale;
    let pivmin = f64::MIN_POSITIVE.max(f64::EPSILON * f64::EPSILON * scale * scale);

    // Number of eigenvalues strictly below x.
    let count = |x: f64| {
        let mut c = 0;
        let mut q = alpha[0] - x;
        for k in 0..n {
            if k > 0 {
                q = alpha[k] - x - beta2[k - 1] / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                c += 1;
            }
        }
        c
    };

    (0..n)
        .into_par_iter()
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            while b - a > 2.0 * f64::EPSILON * (a.abs().max(b.abs())) + pivmin {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if count(mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// A computed root with a radius such that the disc around `value`
/// contains exactly one root of the polynomial.
#[derive(Clone, Debug)]
pub struct Root {
    pub value: MpComplex,
    pub radius: Float,
}

impl Root {
    pub fn to_c64(&self) -> Complex64 {
        self.value.to_c64()
    }

    pub fn radius_f64(&self) -> f64 {
        self.radius.to_f64()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// First rung of the precision ladder, in bits.
    pub start_prec: u32,
    /// Last rung; failure there is reported.
    pub max_prec: u32,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { start_prec: 128, max_prec: 8192, max_iter: 500 }
    }
}

impl RootOptions {
    pub fn with_precision(prec: u32) -> Self {
        RootOptions { start_prec: prec.max(64), ..Default::default() }
    }
}

/// Value, derivative and rounding-error bounds of `p` at `z` by Horner.
struct Horner {
    p: MpComplex,
    dp: MpComplex,
    err_p: Float,
    err_dp: Float,
}

fn horner(coeffs: &[MpComplex], mags: &[Float], z: &MpComplex, prec: u32) -> Horner {
    let az = Float::with_val(64, z.abs());
    let mut p = MpComplex::zero(prec);
    let mut dp = MpComplex::zero(prec);
    let mut mp = Float::new(64);
    let mut mdp = Float::new(64);
    for (c, m) in coeffs.iter().zip(mags).rev() {
        dp = &(&dp * z) + &p;
        mdp = mdp * &az + &mp;
        p = &(&p * z) + c;
        mp = mp * &az + m;
    }
    // Each step is a complex multiply-add; allow a few ulps per step plus
    // the initial rounding of the coefficients.
    let gamma = Float::with_val(64, 8 * (coeffs.len() + 1)) >> prec;
    Horner { p, dp, err_p: mp * &gamma, err_dp: mdp * gamma }
}

/// Initial points on the circles of the Newton polygon of `log |a_k|`,
/// slightly squashed so that no two starts are conjugate or collinear with
/// a real root.
fn initial_points(mags: &[Float], prec: u32) -> Vec<MpComplex> {
    let n = mags.len() - 1;
    let logs: Vec<Option<f64>> = mags
        .iter()
        .map(|m| {
            if m.is_zero() {
                None
            } else {
                let (mant, exp) = m.to_f64_exp();
                Some(mant.abs().log2() + exp as f64)
            }
        })
        .collect();
    // Upper convex hull over the nonzero coefficients.
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..=n {
        let Some(lk) = logs[k] else { continue };
        while hull.len() >= 2 {
            let (i, j) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let (li, lj) = (logs[i].unwrap(), logs[j].unwrap());
            // drop j if it lies on or below the segment i..k
            if (lj - li) * (k - i) as f64 <= (lk - li) * (j - i) as f64 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut pts = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let cnt = j - i;
        let log_r = (logs[i].unwrap() - logs[j].unwrap()) / cnt as f64;
        let radius = Float::with_val(prec, log_r).exp2();
        for t in 0..cnt {
            let theta = 2.0 * PI * t as f64 / cnt as f64 + 2.0 * PI * i as f64 / n as f64 + 0.4;
            let (s, c) = theta.sin_cos();
            let z = MpComplex::from_f64(c, 0.93 * s, prec);
            pts.push(z.scale(&radius));
        }
    }
    pts
}

/// Outcome of one rung: the final approximations are kept even on failure so
/// the next rung can start from them.
type Attempt = (Vec<MpComplex>, Result<Vec<Root>>);

/// All complex roots of a polynomial with complex coefficients (ascending),
/// at a fixed working precision, optionally warm-started.
fn aberth_at(coeffs: &[MpComplex], prec: u32, max_iter: usize, warm: Option<&[MpComplex]>) -> Attempt {
    let n = coeffs.len() - 1;
    let mags: Vec<Float> = coeffs.iter().map(|c| Float::with_val(64, c.abs())).collect();
    let mut z = match warm {
        Some(w) if w.len() == n => w.iter().map(|v| v.with_prec(prec)).collect(),
        _ => initial_points(&mags, prec),
    };
    let mut done = vec![false; n];
    let tiny = Float::with_val(64, 1u32) >> (prec - 6);

    let mut iter = 0;
    while done.iter().any(|d| !d) {
        if iter == max_iter {
            return (z, Err(GaudinError::ConvergenceFailure { precision: prec, iterations: iter }));
        }
        iter += 1;
        let snapshot = z.clone();
        let updates: Vec<(MpComplex, bool)> = (0..n)
            .into_par_iter()
            .map(|k| {
                let zk = &snapshot[k];
                if done[k] {
                    return (zk.clone(), true);
                }
                let h = horner(coeffs, &mags, zk, prec);
                if h.p.abs() <= h.err_p || h.dp.is_zero() {
                    return (zk.clone(), true);
                }
                let w = &h.p / &h.dp;
                let mut s = MpComplex::zero(prec);
                for (j, zj) in snapshot.iter().enumerate() {
                    if j != k {
                        let diff = zk - zj;
                        if !diff.is_zero() {
                            s = &s + &diff.recip();
                        }
                    }
                }
                let one = MpComplex::from_f64(1.0, 0.0, prec);
                let denom = &one - &(&w * &s);
                let step = if denom.is_zero() { w } else { &w / &denom };
                let next = zk - &step;
                let small = step.abs() <= Float::with_val(64, zk.abs()) * &tiny;
                (next, small)
            })
            .collect();
        for (k, (next, fin)) in updates.into_iter().enumerate() {
            z[k] = next;
            done[k] = fin;
        }
        if z.iter().any(|v| !v.is_finite()) {
            return (Vec::new(), Err(GaudinError::ConvergenceFailure { precision: prec, iterations: iter }));
        }
    }

    // Newton polish and inclusion radii.
    let nf = Float::with_val(64, n as u32);
    let roots: Vec<Root> = z
        .par_iter()
        .cloned()
        .map(|mut zk| {
            for _ in 0..2 {
                let h = horner(coeffs, &mags, &zk, prec);
                if h.p.abs() <= h.err_p || h.dp.is_zero() {
                    break;
                }
                zk = &zk - &(&h.p / &h.dp);
            }
            let h = horner(coeffs, &mags, &zk, prec);
            let num = Float::with_val(64, h.p.abs()) + &h.err_p;
            let den = Float::with_val(64, h.dp.abs()) - &h.err_dp;
            let radius = if den > 0 { num * &nf / den } else { Float::with_val(64, f64::INFINITY) };
            Root { value: zk, radius }
        })
        .collect();
    let approx = roots.iter().map(|r| r.value.clone()).collect();
    (approx, check_separation(&roots, prec).map(|_| roots))
}

fn check_separation(roots: &[Root], prec: u32) -> Result<()> {
    let n = roots.len();
    let bad = (0..n).into_par_iter().find_any(|&i| {
        !roots[i].radius.is_finite()
            || (i + 1..n).any(|j| {
                let r = Float::with_val(64, roots[i].radius.max_ref(&roots[j].radius)) * 10u32;
                Float::with_val(64, roots[i].value.dist(&roots[j].value)) < r
            })
    });
    match bad {
        None => Ok(()),
        Some(i) => Err(GaudinError::SeparationFailure {
            precision: prec,
            detail: format!("root near {} (radius {:e})", roots[i].value, roots[i].radius.to_f64()),
        }),
    }
}

/// Roots of a polynomial given by complex coefficients, walking the ladder
/// from `opts.start_prec` up to the coefficients' own precision.
pub fn roots_complex(coeffs: &[MpComplex], opts: RootOptions) -> Result<Vec<Root>> {
    let top = coeffs.iter().map(MpComplex::prec).max().unwrap_or(64).max(opts.start_prec);
    ladder(opts.start_prec.min(top), top, |prec, warm| {
        let c: Vec<MpComplex> = coeffs.iter().map(|c| c.with_prec(prec)).collect();
        roots_fixed(&c, prec, opts.max_iter, warm)
    })
}

/// Roots of an exact polynomial, re-rounding the coefficients at each rung.
pub fn roots_of(p: &UniPoly, opts: RootOptions) -> Result<Vec<Root>> {
    ladder(opts.start_prec, opts.max_prec, |prec, warm| {
        let c: Vec<MpComplex> = p.coeffs().iter().map(|q| MpComplex::from_rational(q, prec)).collect();
        roots_fixed(&c, prec, opts.max_iter, warm)
    })
}

/// Doubles the precision on numeric failure, seeding each rung with the
/// previous rung's approximations.
fn ladder(start: u32, max: u32, mut attempt: impl FnMut(u32, Option<&[MpComplex]>) -> Attempt) -> Result<Vec<Root>> {
    let mut prec = start;
    let mut warm: Vec<MpComplex> = Vec::new();
    loop {
        let (approx, res) = attempt(prec, (!warm.is_empty()).then_some(&warm[..]));
        match res {
            Err(e) if e.is_numeric() && prec < max => {
                prec = (prec * 2).min(max);
                warm = approx;
            }
            other => return other,
        }
    }
}

/// Handles zero roots exactly and trims a vanishing leading part before
/// running the iteration.
fn roots_fixed(coeffs: &[MpComplex], prec: u32, max_iter: usize, warm: Option<&[MpComplex]>) -> Attempt {
    let hi = coeffs.iter().rposition(|c| !c.is_zero());
    let Some(hi) = hi else { return (Vec::new(), Ok(Vec::new())) };
    let lo = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if lo > 1 {
        let e = GaudinError::SeparationFailure { precision: prec, detail: "multiple root at zero".into() };
        return (Vec::new(), Err(e));
    }
    let mut roots: Vec<Root> = (0..lo).map(|_| Root { value: MpComplex::zero(prec), radius: Float::new(64) }).collect();
    if hi > lo {
        let (approx, rest) = aberth_at(&coeffs[lo..=hi], prec, max_iter, warm);
        let rest = match rest {
            Ok(r) => r,
            Err(e) => return (approx, Err(e)),
        };
        if lo == 1 && rest.iter().any(|r| r.value.abs() <= r.radius.clone() * 10u32) {
            let e = GaudinError::SeparationFailure { precision: prec, detail: "root too close to zero".into() };
            return (approx, Err(e));
        }
        roots.extend(rest);
        return (approx, Ok(roots));
    }
    (Vec::new(), Ok(roots))
}
