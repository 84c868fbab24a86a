//! Discriminant in `u`, branch points, simplicity, genus, the closed forms
//! for `r = 1` and the large-weight limit check.

use gaudin_poly::modular::{coprime_with_resultant, is_squarefree};
use gaudin_poly::{resultant_x, BiPoly, Rational, UniPoly, Var};
use num_complex::Complex64;
use serde::Serialize;

use crate::curve::{char_poly, GaudinCurve};
use crate::hamiltonian::build_model;
use crate::monodromy::MonodromyReport;
use crate::numeric::{roots_of, Root, RootOptions};
use crate::{GaudinError, Result, WeightConfig};

/// `Res_x(f, f_x)` together with its monic normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    pub raw: UniPoly,
    pub monic: UniPoly,
    pub leading: Rational,
}

pub fn discriminant_u(curve: &GaudinCurve) -> Result<Discriminant> {
    discriminant_of(&curve.f)
}

pub fn discriminant_of(f: &BiPoly) -> Result<Discriminant> {
    let raw = resultant_x(f, &f.derivative_x())?;
    let leading = raw
        .leading_coeff()
        .cloned()
        .ok_or_else(|| GaudinError::PreconditionFailed("discriminant vanishes identically".into()))?;
    Ok(Discriminant { monic: raw.monic(), raw, leading })
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchPoint {
    pub re: f64,
    pub im: f64,
    pub error_radius: f64,
}

impl BranchPoint {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug)]
pub struct BranchSet {
    pub cfg: WeightConfig,
    pub discriminant: Discriminant,
    pub points: Vec<BranchPoint>,
    /// The roots at working precision, in the order of `points`.
    pub precise: Vec<Root>,
    pub squarefree: bool,
    /// Every root is farther than the margin from the real axis.
    pub no_real_roots: bool,
    /// `conjugate[i]` is the index of the root closest to `conj(points[i])`.
    pub conjugate: Vec<usize>,
    pub precision: u32,
}

/// Distance from the real axis below which a root counts as real.
pub const REAL_MARGIN: f64 = 1e-8;

impl BranchSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.points.iter().map(BranchPoint::z).collect()
    }

    /// Largest relative mismatch between a root and the conjugate of its
    /// partner.
    pub fn conjugation_defect(&self) -> f64 {
        self.points
            .iter()
            .zip(&self.conjugate)
            .map(|(p, &j)| (p.z().conj() - self.points[j].z()).norm() / p.z().norm().max(1.0))
            .fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,error_radius\n");
        for p in &self.points {
            s.push_str(&format!("{:e},{:e},{:e}\n", p.re, p.im, p.error_radius));
        }
        s
    }
}

/// Certified simple roots of the discriminant, sorted by argument about
/// `1/2` for reproducible output.
pub fn branch_points(curve: &GaudinCurve, disc: &Discriminant, opts: RootOptions) -> Result<BranchSet> {
    let squarefree = is_squarefree(&disc.monic);
    if !squarefree {
        return Err(GaudinError::PreconditionFailed(format!("discriminant of {} has a repeated factor", curve.cfg)));
    }
    let mut precise = if disc.monic.is_constant() { Vec::new() } else { roots_of(&disc.monic, opts)? };
    let key = |r: &Root| {
        let z = r.to_c64() - Complex64::new(0.5, 0.0);
        (z.arg(), z.norm())
    };
    precise.sort_by(|p, q| key(p).partial_cmp(&key(q)).unwrap());
    let precision = precise.first().map_or(opts.start_prec, |r| r.value.prec());
    let points: Vec<BranchPoint> = precise
        .iter()
        .map(|r| {
            let z = r.to_c64();
            BranchPoint { re: z.re, im: z.im, error_radius: r.radius_f64() }
        })
        .collect();
    let conjugate = (0..points.len())
        .map(|i| {
            let target = points[i].z().conj();
            (0..points.len())
                .min_by(|&a, &b| (points[a].z() - target).norm().total_cmp(&(points[b].z() - target).norm()))
                .unwrap()
        })
        .collect();
    let no_real_roots = points.iter().all(|p| p.im.abs() > REAL_MARGIN + p.error_radius);
    Ok(BranchSet {
        cfg: curve.cfg,
        discriminant: disc.clone(),
        points,
        precise,
        squarefree,
        no_real_roots,
        conjugate,
        precision,
    })
}

/// Only simple branch points: the discriminant is squarefree and
/// `f = f_x = f_xx = 0` has no solution, certified by
/// `gcd(disc, Res_x(f, f_xx)) = 1`.
pub fn simplicity_check(curve: &GaudinCurve, disc: &Discriminant) -> Result<bool> {
    simplicity_of(&curve.f, &disc.raw)
}

pub fn simplicity_of(f: &BiPoly, disc: &UniPoly) -> Result<bool> {
    if disc.is_zero() || !is_squarefree(disc) {
        return Ok(false);
    }
    if coprime_with_resultant(disc, f, &f.derivative_x().derivative_x()) {
        return Ok(true);
    }
    Err(GaudinError::InconclusiveElimination("squarefree discriminant shares a factor with Res_x(f, f_xx)".into()))
}

/// Riemann-Hurwitz for a connected cover of the sphere of degree N with
/// only simple branching: `g = B/2 - N + 1`.
pub fn genus(branch: &BranchSet, simple: bool, monodromy: &MonodromyReport) -> Result<u64> {
    if !simple {
        return Err(GaudinError::PreconditionFailed("branch points are not certified simple".into()));
    }
    if !monodromy.transitive {
        return Err(GaudinError::PreconditionFailed("monodromy is not transitive".into()));
    }
    genus_from_counts(branch.len(), monodromy.degree)
}

pub fn genus_from_counts(branch_points: usize, degree: usize) -> Result<u64> {
    if !branch_points.is_multiple_of(2) || branch_points / 2 + 1 < degree {
        return Err(GaudinError::PreconditionFailed(format!(
            "{branch_points} branch points are inconsistent with degree {degree}"
        )));
    }
    Ok((branch_points / 2 + 1 - degree) as u64)
}

fn check_positive(m: [u32; 3]) -> Result<()> {
    if m.contains(&0) {
        return Err(GaudinError::InvalidWeights(format!("{m:?}: all weights must be positive")));
    }
    Ok(())
}

/// Closed form of the curve at `r = 1`.
pub fn two_fold_curve(m1: u32, m2: u32, m3: u32) -> Result<BiPoly> {
    check_positive([m1, m2, m3])?;
    let (m1, m2, m3) = (Rational::from(m1), Rational::from(m2), Rational::from(m3));
    let half = Rational::from((1, 2));
    let quarter = Rational::from((1, 4));
    let sq1 = Rational::from(&m1 * &m1);
    let one = Rational::from(1);

    let x_u = Rational::from(&m1 - &one) * &m3 - &m1;
    let x_1 = Rational::from(&m1 - &one) * &m2 - &m1;
    let k = Rational::from(&quarter * &sq1) - Rational::from(&half * &m1);
    let u2 = Rational::from(&k * &m3) * &m3 - Rational::from(&half * &sq1) * &m3;
    let h = Rational::from(&half * &sq1) - &m1;
    let u1 = (Rational::from(&h * &m2) - &h) * &m3 - Rational::from(&h * &m2) + &sq1;
    let u0 = Rational::from(&k * &m2) * &m2 - Rational::from(&half * &sq1) * &m2;
    Ok(BiPoly::from_terms([(2, 0, one), (1, 1, x_u), (1, 0, x_1), (0, 2, u2), (0, 1, u1), (0, 0, u0)]))
}

/// `(M1+M3)² u² - ((M1+M3)² - (M2+M3)² + (M1+M2)²) u + (M1+M2)²`.
pub fn two_fold_branch_quadratic(m: [Rational; 3]) -> Result<UniPoly> {
    if m.iter().any(|x| *x <= 0) {
        return Err(GaudinError::InvalidWeights("limit ratios must be positive".into()));
    }
    let sq = |a: &Rational, b: &Rational| Rational::from(a + b).square();
    let (s13, s23, s12) = (sq(&m[0], &m[2]), sq(&m[1], &m[2]), sq(&m[0], &m[1]));
    let mid = -(Rational::from(&s13 - &s23) + &s12);
    Ok(UniPoly::from_coeffs(Var::U, vec![s12, mid, s13]))
}

/// Roots of a real quadratic, upper half-plane first.
pub fn quadratic_roots(q: &UniPoly) -> (Complex64, Complex64) {
    let (c, b, a) = (q.coeff(0).to_f64(), q.coeff(1).to_f64(), q.coeff(2).to_f64());
    let disc = Complex64::new(b * b - 4.0 * a * c, 0.0).sqrt();
    let r1 = (-b + disc) / (2.0 * a);
    let r2 = (-b - disc) / (2.0 * a);
    if r1.im >= r2.im {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScaleRow {
    pub scale: u32,
    pub weights: [u32; 3],
    pub branch_points: Vec<BranchPoint>,
    /// Largest distance from a branch point with `Im u > 0` to the upper
    /// limit root, and likewise below.
    pub upper_max: f64,
    pub lower_max: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticReport {
    pub ratio: [u32; 3],
    pub r: u32,
    pub limit_upper: [f64; 2],
    pub limit_lower: [f64; 2],
    pub rows: Vec<ScaleRow>,
    pub upper_decreasing: bool,
    pub lower_decreasing: bool,
}

/// Branch points for `m_i = scale · M_i` at fixed `r`, compared with the
/// roots of the limit quadratic of the ratio.
pub fn asymptotic_limit_check(ratio: [u32; 3], r: u32, scales: &[u32], opts: RootOptions) -> Result<AsymptoticReport> {
    if scales.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GaudinError::PreconditionFailed("scales must be strictly increasing".into()));
    }
    let q = two_fold_branch_quadratic(ratio.map(Rational::from))?;
    let (up, lo) = quadratic_roots(&q);
    let mut rows = Vec::new();
    for &s in scales {
        let weights = ratio.map(|m| m * s);
        let cfg = WeightConfig::new(weights[0], weights[1], weights[2], r);
        let curve = char_poly(&build_model(&cfg)?);
        let disc = discriminant_u(&curve)?;
        let set = branch_points(&curve, &disc, opts)?;
        let far = |target: Complex64, upper: bool| {
            set.values().into_iter().filter(|z| (z.im > 0.0) == upper).map(|z| (z - target).norm()).fold(0.0, f64::max)
        };
        rows.push(ScaleRow {
            scale: s,
            weights,
            upper_max: far(up, true),
            lower_max: far(lo, false),
            branch_points: set.points,
        });
    }
    let decreasing = |f: fn(&ScaleRow) -> f64| rows.windows(2).all(|w| f(&w[1]) < f(&w[0]));
    Ok(AsymptoticReport {
        ratio,
        r,
        limit_upper: [up.re, up.im],
        limit_lower: [lo.re, lo.im],
        upper_decreasing: decreasing(|row| row.upper_max),
        lower_decreasing: decreasing(|row| row.lower_max),
        rows,
    })
}
