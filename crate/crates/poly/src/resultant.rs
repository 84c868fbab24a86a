use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::{BiPoly, PolyError, UniPoly};

fn content(p: &[Integer]) -> Integer {
    let mut g = Integer::new();
    for c in p {
        g.gcd_mut(c);
    }
    g
}

fn trim(p: &mut Vec<Integer>) {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) a mod b`.
fn pseudo_rem(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut e = (a.len() - b.len() + 1) as u32;
    while r.len() > db {
        let k = r.len() - 1;
        let top = r[k].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] -= Integer::from(&top * bj);
        }
        debug_assert!(r[k] == 0);
        r.pop();
        trim(&mut r);
        e -= 1;
        if r.is_empty() {
            break;
        }
    }
    if e > 0 && !r.is_empty() {
        let f = Integer::from(lc.pow(e));
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Resultant of two integer polynomials (ascending coefficients) by the
/// subresultant algorithm of Cohen (Algorithm 3.3.7).
///
/// Zero arguments give zero; a nonzero constant `c` against `q` gives
/// `c^deg q`.
pub fn resultant_integer(a: &[Integer], b: &[Integer]) -> Integer {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return Integer::new();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    if da == 0 {
        return Integer::from((&a[0]).pow(db as u32));
    }
    if db == 0 {
        return Integer::from((&b[0]).pow(da as u32));
    }

    let ca = content(&a);
    let cb = content(&b);
    for c in a.iter_mut() {
        c.div_exact_mut(&ca);
    }
    for c in b.iter_mut() {
        c.div_exact_mut(&cb);
    }
    let t = Integer::from((&ca).pow(db as u32)) * Integer::from((&cb).pow(da as u32));
    let mut s = 1i32;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = -1;
        }
    }
    let mut g = Integer::from(1);
    let mut h = Integer::from(1);
    loop {
        let (na, nb) = (a.len() - 1, b.len() - 1);
        let delta = (na - nb) as u32;
        if na % 2 == 1 && nb % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        if r.is_empty() {
            return Integer::new();
        }
        let div = &g * Integer::from((&h).pow(delta));
        b = r.into_iter().map(|c| c.div_exact(&div)).collect();
        g = a[a.len() - 1].clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 { h } else { Integer::from((&g).pow(delta)).div_exact(&Integer::from((&h).pow(delta - 1))) };
        if b.len() == 1 {
            break;
        }
    }
    let na = (a.len() - 1) as u32;
    let lb = &b[0];
    let hh = Integer::from(lb.pow(na)).div_exact(&Integer::from((&h).pow(na - 1)));
    let out = t * hh;
    if s < 0 {
        -out
    } else {
        out
    }
}

/// Scales a rational polynomial to integer coefficients; returns the
/// integer coefficients and the common denominator used.
fn clear_denominators(p: &UniPoly) -> (Vec<Integer>, Integer) {
    let den = crate::rational::common_denominator(p.coeffs());
    let ints = p.coeffs().iter().map(|c| Rational::from(c * &den).into_numer_denom().0).collect();
    (ints, den)
}

/// Resultant of two univariate rational polynomials, with the same
/// conventions as [`resultant_integer`].
pub fn resultant_uni(p: &UniPoly, q: &UniPoly) -> Rational {
    assert_eq!(p.var(), q.var(), "variable mismatch");
    if p.is_zero() || q.is_zero() {
        return Rational::new();
    }
    let (pi, dp) = clear_denominators(p);
    let (qi, dq) = clear_denominators(q);
    let (m, n) = (pi.len() as u32 - 1, qi.len() as u32 - 1);
    let r = resultant_integer(&pi, &qi);
    // Res(p/dp, q/dq) = Res(p, q) / (dp^n dq^m)
    let scale = Integer::from((&dp).pow(n)) * Integer::from((&dq).pow(m));
    Rational::from((r, scale))
}

/// Integer coefficients of `p` in x after scaling by `den`, each a
/// polynomial in u with integer coefficients.
fn integer_x_coeffs(p: &BiPoly, den: &Integer) -> Vec<Vec<Integer>> {
    p.x_coeffs()
        .iter()
        .map(|c| c.coeffs().iter().map(|r| Rational::from(r * den).into_numer_denom().0).collect())
        .collect()
}

fn horner_int(c: &[Integer], t: &Integer) -> Integer {
    let mut acc = Integer::new();
    for a in c.iter().rev() {
        acc *= t;
        acc += a;
    }
    acc
}

/// Resultant with respect to the first slot, as a polynomial in the second.
///
/// Computed by exact evaluation at consecutive integers, an integer
/// subresultant at each point, and Newton interpolation. The number of
/// points comes from the smaller of the Bezout and Sylvester degree bounds.
///
/// Both arguments must be nonzero. If one is constant in x, with value
/// `c(u)`, the result is `c^deg_x(other)`.
pub fn resultant_x(p: &BiPoly, q: &BiPoly) -> Result<UniPoly, PolyError> {
    if p.vars() != q.vars() {
        return Err(PolyError::VariableMismatch {
            expected: format!("{}{}", p.vars().0, p.vars().1),
            found: format!("{}{}", q.vars().0, q.vars().1),
        });
    }
    let uvar = p.vars().1;
    let (Some(m), Some(n)) = (p.deg_x(), q.deg_x()) else {
        return Err(PolyError::DegenerateInput("resultant of the zero polynomial"));
    };
    if m == 0 {
        return Ok(p.x_coeff(0).pow(n));
    }
    if n == 0 {
        return Ok(q.x_coeff(0).pow(m));
    }

    let dp = p.common_denominator();
    let dq = q.common_denominator();
    let pc = integer_x_coeffs(p, &dp);
    let qc = integer_x_coeffs(q, &dq);

    let bezout = p.total_degree().unwrap() as u64 * q.total_degree().unwrap() as u64;
    let sylvester = n as u64 * p.deg_u().unwrap() as u64 + m as u64 * q.deg_u().unwrap() as u64;
    let bound = bezout.min(sylvester) as usize;

    // The block of points must avoid zeros of both leading coefficients,
    // where specialization would not commute with the resultant.
    let lp = &pc[m as usize];
    let lq = &qc[n as usize];
    let good = |t: i64| {
        let t = Integer::from(t);
        horner_int(lp, &t) != 0 && horner_int(lq, &t) != 0
    };
    let mut start = -(bound as i64 / 2);
    'search: loop {
        for k in 0..=bound as i64 {
            if !good(start + k) {
                start += k + 1;
                continue 'search;
            }
        }
        break;
    }

    let values: Vec<Integer> = (0..=bound as i64)
        .into_par_iter()
        .map(|k| {
            let t = Integer::from(start + k);
            let a: Vec<Integer> = pc.iter().map(|c| horner_int(c, &t)).collect();
            let b: Vec<Integer> = qc.iter().map(|c| horner_int(c, &t)).collect();
            resultant_integer(&a, &b)
        })
        .collect();

    let poly = interpolate_consecutive(&values, start);
    // Res(P/dp, Q/dq) = Res(P, Q) / (dp^n dq^m)
    let scale = Rational::from((Integer::from(1), Integer::from((&dp).pow(n)) * Integer::from((&dq).pow(m))));
    Ok(UniPoly::from_coeffs(uvar, poly).scale(&scale))
}

/// Exact interpolation through `(start + k, values[k])`, `k = 0..=D`.
///
/// Forward differences give the Newton coefficients `Δ^k y / k!`; scaling
/// by `D!` keeps the whole expansion in integers until one final division.
fn interpolate_consecutive(values: &[Integer], start: i64) -> Vec<Rational> {
    let d = values.len() - 1;
    let mut diff = values.to_vec();
    let mut newton = Vec::with_capacity(d + 1);
    for k in 0..=d {
        newton.push(diff[0].clone());
        for i in 0..d - k {
            let next = Integer::from(&diff[i + 1] - &diff[i]);
            diff[i] = next;
        }
    }
    // newton[k] = Δ^k y_0; scaled coefficient D!/k! Δ^k y_0.
    let mut fact_ratio = vec![Integer::from(1); d + 1];
    for k in (0..d).rev() {
        fact_ratio[k] = Integer::from(&fact_ratio[k + 1] * (k as u64 + 1));
    }
    let total = fact_ratio[0].clone();
    let scaled: Vec<Integer> = newton.into_iter().zip(&fact_ratio).map(|(a, f)| a * f).collect();

    // Nested form: acc <- acc * (u - t_k) + c_k, descending k.
    let mut acc: Vec<Integer> = vec![scaled[d].clone()];
    for k in (0..d).rev() {
        let t = Integer::from(start + k as i64);
        let mut next = vec![Integer::new(); acc.len() + 1];
        for (j, a) in acc.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= Integer::from(a * &t);
        }
        next[0] += &scaled[k];
        acc = next;
    }
    acc.into_iter().map(|c| Rational::from((c, total.clone()))).collect()
}
