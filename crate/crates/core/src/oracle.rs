//! Brute-force model of `V_m1 ⊗ V_m2 ⊗ V_m3` with the sl2 action, the
//! Shapovalov form and the singular bases, all in exact rationals.
//!
//! Vectors are stored in the monomial basis `f^i v_m1 ⊗ f^j v_m2 ⊗ f^k v_m3`.
//! This is the ground truth the closed forms are checked against, so it is
//! written for clarity and only meant for small weights.

use std::collections::BTreeMap;

use gaudin_poly::{Integer, Rational};

use crate::{GaudinError, Result, WeightConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
    H,
}

/// Which pair of tensor legs a two-site operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pair {
    P12,
    P23,
    P13,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::P12, Pair::P23, Pair::P13];

    pub fn legs(self) -> (usize, usize) {
        match self {
            Pair::P12 => (0, 1),
            Pair::P23 => (1, 2),
            Pair::P13 => (0, 2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    weights: [u32; 3],
    coeffs: BTreeMap<[u32; 3], Rational>,
}

/// Falling factorial `x (x-1) ... (x-n+1)`; `(x)_0 = 1`.
pub fn pochhammer(x: i64, n: u32) -> Integer {
    let mut acc = Integer::from(1);
    for k in 0..n as i64 {
        acc *= x - k;
    }
    acc
}

pub fn factorial(n: u32) -> Integer {
    pochhammer(n as i64, n)
}

fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 || n < 0 || k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

impl TensorVector {
    pub fn zero(weights: [u32; 3]) -> Self {
        TensorVector { weights, coeffs: BTreeMap::new() }
    }

    /// `f^i v ⊗ f^j v ⊗ f^k v`; indices past the module top give zero.
    pub fn basis(weights: [u32; 3], idx: [u32; 3]) -> Self {
        let mut v = Self::zero(weights);
        v.add_term(idx, Rational::from(1));
        v
    }

    /// The product of highest vectors.
    pub fn highest(weights: [u32; 3]) -> Self {
        Self::basis(weights, [0, 0, 0])
    }

    pub fn weights(&self) -> [u32; 3] {
        self.weights
    }

    pub fn coeff(&self, idx: [u32; 3]) -> Rational {
        self.coeffs.get(&idx).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, idx: [u32; 3], c: Rational) {
        if c == 0 || (0..3).any(|l| idx[l] > self.weights[l]) {
            return;
        }
        let slot = self.coeffs.entry(idx).or_default();
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&idx);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.weights, other.weights);
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.weights);
        for (k, c) in &self.coeffs {
            out.add_term(*k, Rational::from(c * s));
        }
        out
    }

    /// h-eigenvalue if the vector is homogeneous.
    pub fn weight(&self) -> Option<i64> {
        let mut it = self.coeffs.keys().map(|k| (0..3).map(|l| self.weights[l] as i64 - 2 * k[l] as i64).sum::<i64>());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }
}

/// Action of one generator on one leg: `e f^l v = l (m - l + 1) f^(l-1) v`,
/// `f f^l v = f^(l+1) v` (zero past `m`), `h f^l v = (m - 2l) f^l v`.
pub fn apply_generator(g: Generator, leg: usize, v: &TensorVector) -> TensorVector {
    let m = v.weights[leg] as i64;
    let mut out = TensorVector::zero(v.weights);
    for (idx, c) in &v.coeffs {
        let l = idx[leg] as i64;
        let mut n = *idx;
        let factor = match g {
            Generator::E => {
                if l == 0 {
                    continue;
                }
                n[leg] -= 1;
                l * (m - l + 1)
            }
            Generator::F => {
                n[leg] += 1;
                1
            }
            Generator::H => m - 2 * l,
        };
        out.add_term(n, Rational::from(c * factor));
    }
    out
}

/// Diagonal action `g ⊗ 1 ⊗ 1 + 1 ⊗ g ⊗ 1 + 1 ⊗ 1 ⊗ g`.
pub fn apply_diagonal(g: Generator, v: &TensorVector) -> TensorVector {
    (0..3).fold(TensorVector::zero(v.weights), |acc, leg| acc.add(&apply_generator(g, leg, v)))
}

/// `Ω = e ⊗ f + f ⊗ e + ½ h ⊗ h` on the given pair of legs.
pub fn apply_omega(pair: Pair, v: &TensorVector) -> TensorVector {
    let (p, q) = pair.legs();
    let ef = apply_generator(Generator::F, q, &apply_generator(Generator::E, p, v));
    let fe = apply_generator(Generator::E, q, &apply_generator(Generator::F, p, v));
    let hh = apply_generator(Generator::H, q, &apply_generator(Generator::H, p, v));
    ef.add(&fe).add(&hh.scale(&Rational::from((1, 2))))
}

/// Shapovalov pairing, the product over legs of `S(f^l v, f^l v) = l! (m)_l`.
pub fn shapovalov(v: &TensorVector, w: &TensorVector) -> Result<Rational> {
    if v.weights != w.weights {
        return Err(GaudinError::WeightMismatch(v.weights, w.weights));
    }
    let mut acc = Rational::new();
    for (idx, c) in &v.coeffs {
        if let Some(d) = w.coeffs.get(idx) {
            let mut t = Rational::from(c * d);
            for l in 0..3 {
                t *= factorial(idx[l]) * pochhammer(v.weights[l] as i64, idx[l]);
            }
            acc += t;
        }
    }
    Ok(acc)
}

/// Un-normalized singular vectors indexed by the admissible `r1`.
#[derive(Clone, Debug)]
pub struct SingularFamily {
    pub cfg: WeightConfig,
    pub r1_min: u32,
    pub vectors: Vec<TensorVector>,
    pub norms_sq: Vec<Rational>,
}

/// `C^{r1}_{i,j}` from the basis formula.
fn basis_coefficient(cfg: &WeightConfig, r1: u32, i: u32, j: u32) -> Rational {
    let (m1, m2, m3, r) = (cfg.m1 as i64, cfg.m2 as i64, cfg.m3 as i64, cfg.r);
    let den = pochhammer(m1, i)
        * pochhammer(m2, r1 - i)
        * factorial(i)
        * factorial(r1 - i)
        * pochhammer(m1 + m2 - 2 * r1 as i64, j)
        * pochhammer(m3, r - r1 - j)
        * factorial(j)
        * factorial(r - r1 - j);
    Rational::from((Integer::from(1), den))
}

/// Squared norm of the `r1` member from the closed-form product.
pub fn norm_sq_formula(cfg: &WeightConfig, r1: u32) -> Rational {
    let (m1, m2, m3, r) = (cfg.m1 as i64, cfg.m2 as i64, cfg.m3 as i64, cfg.r as i64);
    let r1i = r1 as i64;
    let first = Rational::from((binomial(m1 + m2 - r1i + 1, r1i), pochhammer(m1, r1) * pochhammer(m2, r1)));
    let second = Rational::from((
        binomial(m1 + m2 + m3 - r - r1i + 1, r - r1i),
        pochhammer(m1 + m2 - 2 * r1i, (r - r1i) as u32) * pochhammer(m3, (r - r1i) as u32),
    ));
    first * second
}

pub fn singular_family(cfg: &WeightConfig) -> Result<SingularFamily> {
    let range = cfg.admissible_range().ok_or(GaudinError::EmptyRange(*cfg))?;
    let weights = cfg.weights();
    let mut vectors = Vec::new();
    for r1 in range.clone() {
        let mut w = TensorVector::zero(weights);
        for i in 0..=r1 {
            for j in 0..=cfg.r - r1 {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let c = basis_coefficient(cfg, r1, i, j) * sign;
                let mut v = TensorVector::basis(weights, [i, r1 - i, cfg.r - r1 - j]).scale(&c);
                for _ in 0..j {
                    v = apply_generator(Generator::F, 0, &v).add(&apply_generator(Generator::F, 1, &v));
                }
                w = w.add(&v);
            }
        }
        vectors.push(w);
    }
    let norms_sq = vectors.iter().map(|v| shapovalov(v, v)).collect::<Result<Vec<_>>>()?;
    Ok(SingularFamily { cfg: *cfg, r1_min: *range.start(), vectors, norms_sq })
}

/// Matrix of `Ω_pair` in the un-normalized singular family: column `c`
/// holds the expansion of `Ω w_c`.
#[derive(Clone, Debug)]
pub struct OracleMatrix {
    pub cfg: WeightConfig,
    pub pair: Pair,
    pub entries: Vec<Vec<Rational>>,
}

impl OracleMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_tridiagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|s| (0..n).all(|c| s.abs_diff(c) <= 1 || self.entries[s][c] == 0))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.dim()).map(|k| self.entries[k][k].clone()).collect()
    }

    /// `M[k][k+1] M[k+1][k]`, the squared symmetric off-diagonal.
    pub fn offdiag_products(&self) -> Vec<Rational> {
        (0..self.dim().saturating_sub(1))
            .map(|k| Rational::from(&self.entries[k][k + 1] * &self.entries[k + 1][k]))
            .collect()
    }
}

pub fn oracle_matrix(family: &SingularFamily, pair: Pair) -> Result<OracleMatrix> {
    let n = family.vectors.len();
    let mut entries = vec![vec![Rational::new(); n]; n];
    for c in 0..n {
        let image = apply_omega(pair, &family.vectors[c]);
        let mut rebuilt = TensorVector::zero(image.weights);
        for s in 0..n {
            let coef = shapovalov(&family.vectors[s], &image)? / &family.norms_sq[s];
            rebuilt = rebuilt.add(&family.vectors[s].scale(&coef));
            entries[s][c] = coef;
        }
        // The family is a basis of an invariant subspace, so the
        // orthogonal expansion must reproduce the image exactly.
        assert_eq!(rebuilt, image, "image left the singular subspace for {}", family.cfg);
    }
    Ok(OracleMatrix { cfg: family.cfg, pair, entries })
}

pub fn oracle_tridiagonal(cfg: &WeightConfig, pair: Pair) -> Result<OracleMatrix> {
    oracle_matrix(&singular_family(cfg)?, pair)
}

/// `(d, a, b, c²)` read off the brute-force matrices of `Ω12`, `Ω13`, `Ω23`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleData {
    pub d: Vec<Rational>,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c2: Vec<Rational>,
}

pub fn oracle_data(cfg: &WeightConfig) -> Result<OracleData> {
    let family = singular_family(cfg)?;
    let m12 = oracle_matrix(&family, Pair::P12)?;
    let m13 = oracle_matrix(&family, Pair::P13)?;
    let m23 = oracle_matrix(&family, Pair::P23)?;
    Ok(OracleData { d: m12.diagonal(), a: m13.diagonal(), b: m23.diagonal(), c2: m23.offdiag_products() })
}

/// Dimension of the kernel of diagonal `e` on the weight-`mu` space.
pub fn singular_dimension_bruteforce(m1: u32, m2: u32, m3: u32, mu: i64) -> usize {
    let weights = [m1, m2, m3];
    let total = (m1 + m2 + m3) as i64;
    if mu < 0 || mu > total || (total - mu) % 2 != 0 {
        return 0;
    }
    let r = ((total - mu) / 2) as u32;
    let space: Vec<[u32; 3]> = (0..=m1.min(r))
        .flat_map(|i| (0..=m2.min(r - i)).map(move |j| [i, j, r - i - j]))
        .filter(|idx| idx[2] <= m3)
        .collect();
    // Column per basis vector of the weight space, row per target monomial.
    let mut rows: BTreeMap<[u32; 3], Vec<Rational>> = BTreeMap::new();
    for (col, idx) in space.iter().enumerate() {
        let image = apply_diagonal(Generator::E, &TensorVector::basis(weights, *idx));
        for (t, c) in image.terms() {
            rows.entry(*t).or_insert_with(|| vec![Rational::new(); space.len()])[col] = c.clone();
        }
    }
    space.len() - rank(rows.into_values().collect())
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = Rational::from(&m[r][col] / &pivot);
                for c in col..ncols {
                    let t = Rational::from(&f * &m[rank][c]);
                    m[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}
