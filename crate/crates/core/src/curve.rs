//! The Gaudin curve `f(x, u, w) = det(x + uΩ13 + wΩ12)` on the singular
//! subspace, its adjugate eigenvector and the smoothness check.

use gaudin_poly::modular::coprime_with_resultant;
use gaudin_poly::{eval_bi_complex, BiPoly, Homogeneous, MpComplex, Rational, UniPoly, Var};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hamiltonian::TridiagonalModel;
use crate::numeric::{roots_complex, roots_of, sturm_eigenvalues, RootOptions, Scalar};
use crate::{GaudinError, Result, WeightConfig};

/// Affine curve `f(x, u) = f(x, u, 1)`, monic of degree `n` in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaudinCurve {
    pub cfg: WeightConfig,
    pub n: usize,
    pub f: BiPoly,
    pub model: TridiagonalModel,
}

/// Serialized form of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub config: WeightConfig,
    pub degree: usize,
    pub monomials: BiPoly,
}

impl GaudinCurve {
    pub fn homogenized(&self) -> Homogeneous {
        self.f.homogenize()
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson { config: self.cfg, degree: self.n, monomials: self.f.clone() }
    }
}

/// Leading principal minors `p_0 = 1`, `p_k = (x + u a + d) p_(k-1) - u² c² p_(k-2)`.
pub fn char_poly(model: &TridiagonalModel) -> GaudinCurve {
    let n = model.dim();
    let u2 = BiPoly::monomial(Rational::from(1), 0, 2);
    let mut prev = BiPoly::zero();
    let mut cur = BiPoly::one();
    for k in 0..n {
        let lin =
            BiPoly::from_terms([(1, 0, Rational::from(1)), (0, 1, model.a[k].clone()), (0, 0, model.d[k].clone())]);
        let mut next = &lin * &cur;
        if k > 0 {
            next = &next - &(&u2 * &prev).scale(&model.c2[k - 1]);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    assert_eq!(cur.deg_x(), Some(n as u32));
    assert_eq!(cur.coeff(n as u32, 0), 1, "curve must be monic in x");
    GaudinCurve { cfg: model.cfg, n, f: cur, model: model.clone() }
}

/// `x + uΩ13 + Ω12` with exact entries in the gauge where the upper
/// off-diagonal carries `-u c²` and the lower one `-u`.
pub fn pencil_matrix(model: &TridiagonalModel) -> Vec<Vec<BiPoly>> {
    let n = model.dim();
    let mut m = vec![vec![BiPoly::zero(); n]; n];
    for k in 0..n {
        m[k][k] =
            BiPoly::from_terms([(1, 0, Rational::from(1)), (0, 1, model.a[k].clone()), (0, 0, model.d[k].clone())]);
        if k + 1 < n {
            m[k][k + 1] = BiPoly::monomial(-model.c2[k].clone(), 0, 1);
            m[k + 1][k] = BiPoly::monomial(Rational::from(-1), 0, 1);
        }
    }
    m
}

/// Determinant by the Leibniz expansion. Exponential in the size; meant
/// for cross-checking small cases.
pub fn direct_determinant(m: &[Vec<BiPoly>]) -> BiPoly {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BiPoly::zero();
    // Heap's algorithm, tracking the sign of each permutation.
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let term = |perm: &[usize], sign: i64| {
        let mut t = BiPoly::constant(Rational::from(sign));
        for (row, &col) in perm.iter().enumerate() {
            if m[row][col].is_zero() {
                return BiPoly::zero();
            }
            t = &t * &m[row][col];
        }
        t
    };
    total = &total + &term(&perm, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            total = &total + &term(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

/// Model data lifted to a floating scalar type.
#[derive(Clone, Debug)]
pub struct NumericModel<S> {
    pub a: Vec<S>,
    pub d: Vec<S>,
    pub c: Vec<S>,
    pub c2: Vec<S>,
    prec: u32,
}

impl<S: Scalar> NumericModel<S> {
    pub fn new(model: &TridiagonalModel, prec: u32) -> Self {
        let lift = |v: &[Rational]| v.iter().map(|q| S::from_rational(q, prec)).collect();
        NumericModel {
            a: lift(&model.a),
            d: lift(&model.d),
            c2: lift(&model.c2),
            c: model.c2.iter().map(|q| S::sqrt_rational(q, prec)).collect(),
            prec,
        }
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn diag(&self, k: usize, x: &S, u: &S, w: &S) -> S {
        x.add_ref(&u.mul_ref(&self.a[k])).add_ref(&w.mul_ref(&self.d[k]))
    }

    /// Leading principal minors `p_0, ..., p_N` at a point.
    pub fn minors(&self, x: &S, u: &S, w: &S) -> Vec<S> {
        let n = self.dim();
        let u2 = u.mul_ref(u);
        let mut p = Vec::with_capacity(n + 1);
        p.push(S::from_f64(1.0, 0.0, self.prec));
        for k in 0..n {
            let mut next = self.diag(k, x, u, w).mul_ref(&p[k]);
            if k > 0 {
                next = next.sub_ref(&u2.mul_ref(&self.c2[k - 1]).mul_ref(&p[k - 1]));
            }
            p.push(next);
        }
        p
    }

    /// `f` and `∂f/∂x`, both multiplied by the same positive factor to stay
    /// in range; only their ratio is meaningful.
    pub fn newton_pair(&self, x: &S, u: &S) -> (S, S) {
        let w = S::from_f64(1.0, 0.0, self.prec);
        let u2 = u.mul_ref(u);
        let zero = S::zero(self.prec);
        let (mut p0, mut p1) = (zero.clone(), w.clone());
        let (mut d0, mut d1) = (zero.clone(), zero);
        let shrink = S::from_f64(1e-100, 0.0, self.prec);
        for k in 0..self.dim() {
            let g = self.diag(k, x, u, &w);
            let q = if k > 0 { u2.mul_ref(&self.c2[k - 1]) } else { S::zero(self.prec) };
            let p2 = g.mul_ref(&p1).sub_ref(&q.mul_ref(&p0));
            let d2 = p1.add_ref(&g.mul_ref(&d1)).sub_ref(&q.mul_ref(&d0));
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
            if p1.modulus() > 1e100 || d1.modulus() > 1e100 {
                p0 = p0.mul_ref(&shrink);
                p1 = p1.mul_ref(&shrink);
                d0 = d0.mul_ref(&shrink);
                d1 = d1.mul_ref(&shrink);
            }
        }
        (p1, d1)
    }

    /// Bound on the size of the terms making up `f`, for relative tests.
    pub fn magnitude(&self, x: &S, u: &S, w: &S) -> f64 {
        let (ax, au, aw) = (x.modulus(), u.modulus(), w.modulus());
        let (mut q0, mut q1) = (0.0, 1.0);
        for k in 0..self.dim() {
            let g = ax + au * self.a[k].modulus() + aw * self.d[k].modulus();
            let c = if k > 0 { au * au * self.c2[k - 1].modulus() } else { 0.0 };
            let q2 = g * q1 + c * q0;
            q0 = q1;
            q1 = q2;
        }
        q1
    }

    /// Last column of `adj(x + uΩ13 + wΩ12)`:
    /// `v_k = (u c_k)(u c_(k+1))...(u c_(N-2)) p_k`.
    pub fn adjugate_column(&self, x: &S, u: &S, w: &S) -> Vec<S> {
        let n = self.dim();
        let p = self.minors(x, u, w);
        let mut v = vec![S::zero(self.prec); n];
        let mut tail = S::from_f64(1.0, 0.0, self.prec);
        for k in (0..n).rev() {
            v[k] = tail.mul_ref(&p[k]);
            if k > 0 {
                tail = tail.mul_ref(&u.mul_ref(&self.c[k - 1]));
            }
        }
        v
    }

    /// `(x + uΩ13 + wΩ12) v` in the orthonormal basis, where the
    /// off-diagonal is `-u c`.
    pub fn apply_pencil(&self, x: &S, u: &S, w: &S, v: &[S]) -> Vec<S> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut acc = self.diag(k, x, u, w).mul_ref(&v[k]);
                if k > 0 {
                    acc = acc.sub_ref(&u.mul_ref(&self.c[k - 1]).mul_ref(&v[k - 1]));
                }
                if k + 1 < n {
                    acc = acc.sub_ref(&u.mul_ref(&self.c[k]).mul_ref(&v[k + 1]));
                }
                acc
            })
            .collect()
    }
}

/// Solution of `(x + uΩ13 + wΩ12) v = f(x, u, w) e_N`; an eigenvector of
/// `H1` for the eigenvalue `x` when `w = 1` and the point is on the curve.
pub fn eigenvector_at<S: Scalar>(model: &TridiagonalModel, x: &S, u: &S, w: &S, prec: u32) -> Vec<S> {
    NumericModel::<S>::new(model, prec).adjugate_column(x, u, w)
}

/// Unconjugated self-pairing of the adjugate eigenvector, with its
/// Hermitian norm for scale.
#[derive(Clone, Debug)]
pub struct Isotropy<S> {
    pub pairing: S,
    pub norm_sq: f64,
}

impl<S: Scalar> Isotropy<S> {
    pub fn relative(&self) -> f64 {
        self.pairing.modulus() / self.norm_sq
    }
}

pub fn isotropy<S: Scalar>(model: &TridiagonalModel, x: &S, u: &S, w: &S, prec: u32, tol: f64) -> Result<Isotropy<S>> {
    let nm = NumericModel::<S>::new(model, prec);
    let f = nm.minors(x, u, w).pop().unwrap();
    let scale = nm.magnitude(x, u, w);
    if f.modulus() > tol * scale {
        return Err(GaudinError::OffCurve { residual: f.modulus(), tolerance: tol * scale });
    }
    let v = nm.adjugate_column(x, u, w);
    let pairing = v.iter().fold(S::zero(prec), |acc, vk| acc.add_ref(&vk.mul_ref(vk)));
    let norm_sq = v.iter().map(|vk| vk.modulus().powi(2)).sum();
    Ok(Isotropy { pairing, norm_sq })
}

/// Ascending eigenvalues of the real symmetric `H1(u)` for real `u`.
pub fn real_spectrum(model: &TridiagonalModel, u: f64) -> Vec<f64> {
    let alpha: Vec<f64> = model.d.iter().zip(&model.a).map(|(d, a)| -d.to_f64() - u * a.to_f64()).collect();
    let beta2: Vec<f64> = model.c2.iter().map(|c| u * u * c.to_f64()).collect();
    sturm_eigenvalues(&alpha, &beta2)
}

/// Outcome of the smoothness test.
#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    /// `gcd(Res_x(f, f_x), Res_x(f, f_u))`, constant when no affine point is
    /// singular. `None` if the modular certificate settled it.
    pub affine_gcd: Option<UniPoly>,
    /// `gcd(F_N(x, 1), F_N'(x, 1), F_(N-1)(x, 1))`: singular points on `w = 0`.
    pub infinity_gcd: UniPoly,
    /// Verified affine singular points `(x, u)`.
    pub singular_points: Vec<(Complex64, Complex64)>,
}

impl SmoothnessReport {
    pub fn is_smooth(&self) -> bool {
        self.singular_points.is_empty() && self.infinity_gcd.is_constant()
    }
}

/// Decides whether the projective closure of `f = 0` is nonsingular.
///
/// `disc` must be `Res_x(f, f_x)`. Affine singular points lie over common
/// roots of `disc` and `Res_x(f, f_u)`; each candidate is checked
/// numerically. On `w = 0` the Euler relation reduces the test to the gcd of
/// the top form, its derivative and the next form at `u = 1`; the point
/// `(1:0:0)` is never on the curve because `f` is monic in `x`.
pub fn smoothness_check_with(f: &BiPoly, disc: &UniPoly) -> Result<SmoothnessReport> {
    if disc.is_zero() {
        return Err(GaudinError::InconclusiveElimination("Res_x(f, f_x) vanishes identically".into()));
    }
    let n = f.deg_x().unwrap_or(0);
    let fu = f.derivative_u();

    let infinity_gcd = {
        let top = f.homogeneous_part(n).eval_u(&Rational::from(1));
        let next = if n > 0 { f.homogeneous_part(n - 1).eval_u(&Rational::from(1)) } else { UniPoly::zero(Var::X) };
        top.gcd(&top.derivative()).gcd(&next)
    };
    // gcd(g, 0) = g, so an absent next form leaves the top-form test.
    let infinity_gcd = if infinity_gcd.is_zero() { UniPoly::one(Var::X) } else { infinity_gcd };

    if fu.is_zero() || coprime_with_resultant(disc, f, &fu) {
        return Ok(SmoothnessReport { affine_gcd: None, infinity_gcd, singular_points: Vec::new() });
    }
    let rfu = gaudin_poly::resultant_x(f, &fu)?;
    if rfu.is_zero() {
        return Err(GaudinError::InconclusiveElimination("Res_x(f, f_u) vanishes identically".into()));
    }
    let g = disc.gcd(&rfu);
    let singular_points = if g.is_constant() { Vec::new() } else { verify_candidates(f, &g)? };
    Ok(SmoothnessReport { affine_gcd: Some(g), infinity_gcd, singular_points })
}

pub fn smoothness_check(curve: &GaudinCurve) -> Result<SmoothnessReport> {
    let disc = gaudin_poly::resultant_x(&curve.f, &curve.f.derivative_x())?;
    smoothness_check_with(&curve.f, &disc)
}

/// For each root `u0` of `g`, looks for `x` with `f = f_x = f_u = 0`: the
/// common root must be a root of `f_x(., u0)`, which is then tested.
fn verify_candidates(f: &BiPoly, g: &UniPoly) -> Result<Vec<(Complex64, Complex64)>> {
    let prec = 256;
    let fx = f.derivative_x();
    let fu = f.derivative_u();
    let mut found = Vec::new();
    let (core, _) = g.div_rem(&g.gcd(&g.derivative()));
    for u0 in roots_of(&core, RootOptions::with_precision(prec))? {
        let u = u0.value.with_prec(prec);
        let mut coeffs: Vec<MpComplex> =
            fx.x_coeffs().iter().map(|c| gaudin_poly::eval_uni_complex(c, &u, prec).value).collect();
        // exact zero roots may be multiple; split them off before solving
        let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut xs: Vec<MpComplex> = if zeros > 0 { vec![MpComplex::zero(prec)] } else { Vec::new() };
        coeffs.drain(..zeros.min(coeffs.len()));
        if coeffs.len() > 1 {
            xs.extend(roots_complex(&coeffs, RootOptions::with_precision(prec))?.into_iter().map(|r| r.value));
        }
        for x in xs {
            let small = |p: &BiPoly| {
                let e = eval_bi_complex(p, &x, &u, prec);
                let mag = eval_bi_complex(
                    &abs_poly(p),
                    &MpComplex::from_f64(x.abs().to_f64(), 0.0, prec),
                    &MpComplex::from_f64(u.abs().to_f64(), 0.0, prec),
                    prec,
                );
                e.value.abs().to_f64() <= 1e-40 * mag.value.abs().to_f64().max(1.0)
            };
            if small(f) && small(&fu) {
                found.push((x.to_c64(), u.to_c64()));
            }
        }
    }
    Ok(found)
}

fn abs_poly(p: &BiPoly) -> BiPoly {
    BiPoly::from_terms(p.terms().map(|(i, j, c)| (i, j, c.clone().abs())))
}
