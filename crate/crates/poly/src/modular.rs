//! Arithmetic over F_p for primes just below 2^61, used to certify
//! squarefreeness and coprimality cheaply before falling back to exact
//! rational gcds.

use rayon::prelude::*;
use rug::{Integer, Rational};

use crate::{BiPoly, UniPoly};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^61 in descending order.
pub fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 60)..(1u64 << 61)).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn reduce_integer(n: &Integer, p: u64) -> u64 {
    let m = Integer::from(n % p);
    let m = if m < 0 { m + p } else { m };
    m.to_u64().expect("residue fits in u64")
}

/// Reduces a rational mod p; `None` if the denominator vanishes mod p.
pub fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let d = reduce_integer(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(reduce_integer(r.numer(), p), inv_mod(d, p), p))
}

/// Reduces every coefficient mod p (ascending, untrimmed).
pub fn reduce_uni(q: &UniPoly, p: u64) -> Option<Vec<u64>> {
    q.coeffs().iter().map(|c| reduce_rational(c, p)).collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn derivative_mod(a: &[u64], p: u64) -> Vec<u64> {
    let mut d: Vec<u64> = a.iter().enumerate().skip(1).map(|(k, &c)| mul_mod(c, k as u64 % p, p)).collect();
    trim(&mut d);
    d
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let k = a.len() - 1;
        let q = mul_mod(a[k], inv, p);
        if q != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let t = mul_mod(q, bj, p);
                let slot = &mut a[k - db + j];
                *slot = (*slot + p - t) % p;
            }
        }
        a.pop();
    }
    trim(a);
}

/// Monic gcd over F_p; inputs need not be trimmed.
pub fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// Resultant over F_p by the Euclidean algorithm, with the same constant
/// conventions as the exact version.
pub fn resultant_mod(a: &[u64], b: &[u64], p: u64) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut acc = 1u64;
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return mul_mod(acc, pow_mod(b[0], da as u64, p), p);
        }
        if da == 0 {
            return mul_mod(acc, pow_mod(a[0], db as u64, p), p);
        }
        // Res(a, b) = (-1)^(da db) Res(b, a); Res(b, a) = lc(b)^(da - dr) Res(b, r)
        if da % 2 == 1 && db % 2 == 1 {
            acc = (p - acc) % p;
        }
        let mut r = a.clone();
        rem_mod(&mut r, &b, p);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        acc = mul_mod(acc, pow_mod(b[db], (da - dr) as u64, p), p);
        a = b;
        b = r;
    }
}

/// `Res_x(f, g)` reduced mod p, as ascending coefficients in u, computed by
/// evaluation at small integers and Newton interpolation over F_p.
///
/// Returns `None` when p divides a denominator or either leading
/// x-coefficient, in which case reduction would not commute with the
/// resultant.
pub fn resultant_x_mod(f: &BiPoly, g: &BiPoly, p: u64) -> Option<Vec<u64>> {
    let m = f.deg_x()?;
    let n = g.deg_x()?;
    let red = |q: &BiPoly| -> Option<Vec<Vec<u64>>> { q.x_coeffs().iter().map(|c| reduce_uni(c, p)).collect() };
    let fc = red(f)?;
    let gc = red(g)?;
    let lead_ok = |c: &Vec<Vec<u64>>| c.last().is_some_and(|l| l.iter().any(|&v| v != 0));
    if !lead_ok(&fc) || !lead_ok(&gc) {
        return None;
    }
    let bezout = f.total_degree()? as u64 * g.total_degree()? as u64;
    let sylvester = n as u64 * f.deg_u()? as u64 + m as u64 * g.deg_u()? as u64;
    let bound = bezout.min(sylvester);

    let eval = |c: &[u64], t: u64| c.iter().rev().fold(0u64, |acc, &a| (mul_mod(acc, t, p) + a) % p);
    // Points where a leading coefficient vanishes are skipped.
    let mut pts = Vec::with_capacity(bound as usize + 1);
    let mut t = 0u64;
    while pts.len() as u64 <= bound {
        if eval(fc.last().unwrap(), t) != 0 && eval(gc.last().unwrap(), t) != 0 {
            pts.push(t);
        }
        t += 1;
    }
    let vals: Vec<u64> = pts
        .par_iter()
        .map(|&t| {
            let a: Vec<u64> = fc.iter().map(|c| eval(c, t)).collect();
            let b: Vec<u64> = gc.iter().map(|c| eval(c, t)).collect();
            resultant_mod(&a, &b, p)
        })
        .collect();
    Some(interpolate_mod(&pts, &vals, p))
}

/// Newton interpolation over F_p at distinct points.
pub fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (c[i] + p - c[i - 1]) % p;
            let den = (xs[i] + p - xs[i - j]) % p;
            c[i] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    let mut acc = vec![c[n - 1]];
    for k in (0..n - 1).rev() {
        let mut next = vec![0u64; acc.len() + 1];
        for (j, &a) in acc.iter().enumerate() {
            next[j + 1] = (next[j + 1] + a) % p;
            next[j] = (next[j] + p - mul_mod(a, xs[k] % p, p)) % p;
        }
        next[0] = (next[0] + c[k]) % p;
        acc = next;
    }
    trim(&mut acc);
    acc
}

/// Number of primes tried before giving up on a modular certificate.
const ATTEMPTS: usize = 4;

/// True iff `q` has no repeated factor over Q.
///
/// A prime that keeps the degree and finds `gcd(q, q') = 1` mod p is a
/// certificate; otherwise the exact rational gcd decides.
pub fn is_squarefree(q: &UniPoly) -> bool {
    if q.is_constant() {
        return !q.is_zero();
    }
    for p in primes().take(ATTEMPTS) {
        let Some(r) = reduce_uni(q, p) else { continue };
        if r.last() == Some(&0) {
            continue;
        }
        if gcd_mod(&r, &derivative_mod(&r, p), p).len() == 1 {
            return true;
        }
    }
    q.gcd(&q.derivative()).is_constant()
}

/// True iff `a` and `b` share no nonconstant factor over Q.
/// `are_coprime(0, b)` holds only for constant nonzero `b`.
pub fn are_coprime(a: &UniPoly, b: &UniPoly) -> bool {
    if a.is_zero() {
        return b.degree() == Some(0);
    }
    if b.is_zero() {
        return a.degree() == Some(0);
    }
    if a.is_constant() || b.is_constant() {
        return true;
    }
    for p in primes().take(ATTEMPTS) {
        let (Some(ra), Some(rb)) = (reduce_uni(a, p), reduce_uni(b, p)) else { continue };
        if ra.last() == Some(&0) {
            continue;
        }
        if gcd_mod(&ra, &rb, p).len() == 1 {
            return true;
        }
    }
    a.gcd(b).is_constant()
}

/// Certifies `gcd(a, Res_x(f, g)) = 1` without forming the exact resultant
/// when a prime succeeds. Falls back to the exact computation.
pub fn coprime_with_resultant(a: &UniPoly, f: &BiPoly, g: &BiPoly) -> bool {
    if a.is_constant() {
        return !a.is_zero();
    }
    for p in primes().take(ATTEMPTS) {
        let Some(ra) = reduce_uni(a, p) else { continue };
        if ra.last() == Some(&0) {
            continue;
        }
        let Some(rr) = resultant_x_mod(f, g, p) else { continue };
        if gcd_mod(&ra, &rr, p).len() == 1 {
            return true;
        }
    }
    match crate::resultant_x(f, g) {
        Ok(r) => are_coprime(a, &r),
        Err(_) => false,
    }
}
