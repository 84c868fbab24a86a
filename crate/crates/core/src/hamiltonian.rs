//! Closed-form tridiagonal data for `Ω12`, `Ω13`, `Ω23` on the singular
//! subspace and numeric assembly of `H1`, `H2`, `H3`.

use gaudin_poly::{serde_rational, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::numeric::Scalar;
use crate::{GaudinError, Result, WeightConfig};

/// Exact data indexed by `r1` over the admissible range.
///
/// `d`, `a`, `b` are the diagonals of `Ω12`, `Ω13`, `Ω23` in the orthonormal
/// singular basis; `c2[k]` is the squared coupling between `r1_min + k` and
/// `r1_min + k + 1`. The off-diagonals are `c` in `Ω23` and `-c` in `Ω13`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TridiagonalModel {
    pub cfg: WeightConfig,
    pub r1_min: u32,
    pub r1_max: u32,
    #[serde(with = "serde_rational::vec")]
    pub d: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub a: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub b: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub c2: Vec<Rational>,
}

impl TridiagonalModel {
    pub fn dim(&self) -> usize {
        self.d.len()
    }
}

/// `num / den`, where a vanishing numerator wins over a vanishing
/// denominator. At the ends of the admissible range some denominators do
/// vanish, but always together with their numerator.
fn ratio(num: i64, den: i64) -> Rational {
    if num == 0 {
        return Rational::new();
    }
    assert!(den != 0, "nonzero numerator {num} over a vanishing denominator");
    Rational::from((num, den))
}

fn big_ratio(num: Integer, den: Integer) -> Rational {
    if num == 0 {
        return Rational::new();
    }
    assert!(den != 0, "nonzero numerator {num} over a vanishing denominator");
    Rational::from((num, den))
}

/// `(d, a, b)` at `r1`, and `c²` coupling `r1` to `r1 + 1`.
pub fn closed_forms(cfg: &WeightConfig, r1: u32) -> (Rational, Rational, Rational, Rational) {
    let (m1, m2, m3, r) = (cfg.m1 as i64, cfg.m2 as i64, cfg.m3 as i64, cfg.r as i64);
    let k = r1 as i64;
    let s = m1 + m2 - 2 * k;

    let d = Rational::from(k * (k - m1 - m2 - 1)) + Rational::from((m1 * m2, 2));

    let side = |mi: i64| {
        Rational::from((mi * (m3 - 2 * r), 2))
            + Rational::from(k * (mi - m3 + 2 * r - 2 * k))
            + ratio(k * (mi - k + 1) * (r - k + 1) * (m3 - r + k), s + 2)
            - ratio((k + 1) * (mi - k) * (r - k) * (m3 - r + k + 1), s)
    };
    let a = side(m1);
    let b = side(m2);

    let num =
        [k + 1, r - k, m1 - k, m2 - k, m1 + m2 - k + 1, m3 - r + k + 1, m1 + m2 - r - k, m1 + m2 + m3 - r - k + 1]
            .iter()
            .fold(Integer::from(1), |acc, &f| acc * f);
    let den = Integer::from(s - 1) * Integer::from(s) * Integer::from(s) * Integer::from(s + 1);
    (d, a, b, big_ratio(num, den))
}

pub fn build_model(cfg: &WeightConfig) -> Result<TridiagonalModel> {
    let range = cfg.admissible_range().ok_or(GaudinError::EmptyRange(*cfg))?;
    let (r1_min, r1_max) = (*range.start(), *range.end());
    let (mut d, mut a, mut b, mut c2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for r1 in range {
        let (dk, ak, bk, ck) = closed_forms(cfg, r1);
        d.push(dk);
        a.push(ak);
        b.push(bk);
        if r1 < r1_max {
            assert!(ck > 0, "c² must be positive inside the range ({cfg}, r1 = {r1})");
            c2.push(ck);
        }
    }
    Ok(TridiagonalModel { cfg: *cfg, r1_min, r1_max, d, a, b, c2 })
}

/// The common value of `d + a + b`: `Ω12 + Ω13 + Ω23` acts on singular
/// vectors of weight `mu` by `(mu (mu + 2) - Σ m_i (m_i + 2)) / 4`.
pub fn trace_scalar(cfg: &WeightConfig) -> Rational {
    let mu = cfg.mu();
    let own: i64 = cfg.weights().iter().map(|&m| m as i64 * (m as i64 + 2)).sum();
    Rational::from((mu * (mu + 2) - own, 4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    H1,
    H2,
    H3,
}

/// Symmetric tridiagonal matrix: `diag` of length N, `off` of length N - 1.
#[derive(Clone, Debug)]
pub struct SymTridiagonal<S> {
    pub diag: Vec<S>,
    pub off: Vec<S>,
}

impl<S: Scalar> SymTridiagonal<S> {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        SymTridiagonal {
            diag: self.diag.iter().zip(&other.diag).map(|(p, q)| p.add_ref(q)).collect(),
            off: self.off.iter().zip(&other.off).map(|(p, q)| p.add_ref(q)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SymTridiagonal {
            diag: self.diag.iter().map(S::neg_ref).collect(),
            off: self.off.iter().map(S::neg_ref).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut acc = self.diag[k].mul_ref(&v[k]);
                if k > 0 {
                    acc = acc.add_ref(&self.off[k - 1].mul_ref(&v[k - 1]));
                }
                if k + 1 < n {
                    acc = acc.add_ref(&self.off[k].mul_ref(&v[k + 1]));
                }
                acc
            })
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.diag.iter().chain(&self.off).map(S::modulus).fold(0.0, f64::max)
    }
}

/// `H1 = diag(-d - u a) + offdiag(u c)`,
/// `H2 = diag(d + u/(u-1) b) + offdiag(u/(u-1) c)`, `H3 = -H1 - H2`, with
/// `c` the positive root of `c²`.
pub fn hamiltonian_at<S: Scalar>(
    model: &TridiagonalModel,
    u: &S,
    which: Which,
    prec: u32,
) -> Result<SymTridiagonal<S>> {
    let lift = |v: &[Rational]| v.iter().map(|q| S::from_rational(q, prec)).collect::<Vec<S>>();
    let (d, a, b) = (lift(&model.d), lift(&model.a), lift(&model.b));
    let c: Vec<S> = model.c2.iter().map(|q| S::sqrt_rational(q, prec)).collect();
    let h1 = || SymTridiagonal {
        diag: d.iter().zip(&a).map(|(dk, ak)| dk.add_ref(&u.mul_ref(ak)).neg_ref()).collect(),
        off: c.iter().map(|ck| u.mul_ref(ck)).collect(),
    };
    if which == Which::H1 {
        return Ok(h1());
    }
    let one = S::from_f64(1.0, 0.0, prec);
    let um1 = u.sub_ref(&one);
    if um1.is_zero() {
        return Err(GaudinError::PoleAtOne);
    }
    let t = u.div_ref(&um1);
    let h2 = SymTridiagonal {
        diag: d.iter().zip(&b).map(|(dk, bk)| dk.add_ref(&t.mul_ref(bk))).collect(),
        off: c.iter().map(|ck| t.mul_ref(ck)).collect(),
    };
    Ok(match which {
        Which::H2 => h2,
        _ => h1().add(&h2).neg(),
    })
}
