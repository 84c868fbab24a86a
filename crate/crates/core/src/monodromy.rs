//! Analytic continuation of the eigenvalues of `H1(u)` around the branch
//! points, and the permutation group they generate.
//!
//! Loop convention: from the base point `u0` a straight segment runs to the
//! point of the circle of radius `ρ` about the branch point `b` that faces
//! `u0`, the circle is traversed counterclockwise, and the segment is
//! retraced. `ρ` is a third of the distance from `b` to its nearest
//! neighbour (or to `u0` if that is closer). Where the segment would cut the
//! circle of another branch point it follows that circle instead, on the
//! side away from its centre. Loops are ordered by the argument of `b - u0`
//! in `(-π, π]`, and `product` applies the first loop first.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;

use gaudin_poly::{Integer, MpComplex, Rational};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::branch::BranchSet;
use crate::curve::{real_spectrum, GaudinCurve, NumericModel};
use crate::numeric::{roots_complex, RootOptions, Scalar};
use crate::{GaudinError, Result};

/// A permutation of `{0, ..., n-1}` acting on the right: `i ↦ image[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(GaudinError::PreconditionFailed(format!("{image:?} is not a permutation")));
            }
        }
        Ok(Permutation { image })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.image.swap(a, b);
        p
    }

    pub fn cycle(n: usize) -> Self {
        Permutation { image: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Permutation { image: self.image.iter().map(|&i| other.image[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn moved_points(&self) -> usize {
        self.image.iter().enumerate().filter(|(i, j)| i != *j).count()
    }

    pub fn is_transposition(&self) -> bool {
        self.moved_points() == 2
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.image.len()];
        let mut out = Vec::new();
        for start in 0..self.image.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut i = self.image[start];
            while i != start {
                seen[i] = true;
                c.push(i);
                i = self.image[i];
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let items: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInfo {
    #[serde(serialize_with = "integer_string")]
    pub order: Integer,
    pub transitive: bool,
    pub is_full_symmetric: bool,
}

fn integer_string<S: Serializer>(n: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `trans[p]` maps the base point to `p`.
    trans: Vec<Option<Permutation>>,
}

struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Strips `g` through the chain; returns the residue and the level at
    /// which it stopped.
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            match &level.trans[beta] {
                None => return (h, j),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    /// Adds the strong generator `g`, which fixes the bases of all levels
    /// below `lo`, to levels `lo..=hi`, then restores closure there.
    fn add(&mut self, lo: usize, hi: usize, g: Permutation) {
        if hi == self.levels.len() {
            let base = (0..self.n).find(|&p| g.apply(p) != p).expect("identity is never added");
            let mut trans = vec![None; self.n];
            trans[base] = Some(Permutation::identity(self.n));
            self.levels.push(Level { base, gens: Vec::new(), trans });
        }
        for k in lo..=hi {
            self.levels[k].gens.push(g.clone());
        }
        for k in (lo..=hi).rev() {
            self.close(k);
        }
    }

    /// Extends the orbit transversal of level `i` and sifts every Schreier
    /// generator into the deeper levels.
    fn close(&mut self, i: usize) {
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&p| self.levels[i].trans[p].is_some()).collect();
        let mut pending = Vec::new();
        while let Some(p) = queue.pop_front() {
            let up = self.levels[i].trans[p].clone().unwrap();
            let gens = self.levels[i].gens.clone();
            for s in &gens {
                let q = s.apply(p);
                let ups = up.then(s);
                match &self.levels[i].trans[q] {
                    None => {
                        self.levels[i].trans[q] = Some(ups);
                        queue.push_back(q);
                    }
                    Some(uq) => {
                        let schreier = ups.then(&uq.inverse());
                        if !schreier.is_identity() {
                            pending.push(schreier);
                        }
                    }
                }
            }
        }
        for s in pending {
            let (h, j) = self.sift(&s, i + 1);
            if !h.is_identity() {
                self.add(i + 1, j, h);
            }
        }
    }

    fn order(&self) -> Integer {
        self.levels
            .iter()
            .map(|l| l.trans.iter().filter(|t| t.is_some()).count())
            .fold(Integer::from(1), |acc, k| acc * k as u32)
    }
}

/// Exact order by Schreier-Sims, transitivity from the orbit of 0.
pub fn identify_group(generators: &[Permutation], n: usize) -> GroupInfo {
    let mut chain = StabilizerChain { n, levels: Vec::new() };
    for g in generators {
        assert_eq!(g.degree(), n);
        let (h, j) = chain.sift(g, 0);
        if !h.is_identity() {
            chain.add(0, j, h);
        }
    }
    let order = chain.order();
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    if n > 0 {
        seen[0] = true;
        stack.push(0);
    }
    while let Some(p) = stack.pop() {
        for g in generators {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    let factorial = Integer::from(Integer::factorial(n as u32));
    GroupInfo { is_full_symmetric: order == factorial, transitive: seen.iter().all(|&s| s), order }
}

/// Straight segment or circular arc in the `u`-plane.
#[derive(Clone, Copy, Debug, Serialize)]
pub enum Piece {
    Line {
        from: [f64; 2],
        to: [f64; 2],
    },
    /// Starts at angle `start`, turns by `sweep` radians (positive is
    /// counterclockwise).
    Arc {
        center: [f64; 2],
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn arr(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl Piece {
    pub fn length(&self) -> f64 {
        match *self {
            Piece::Line { from, to } => (c(to) - c(from)).norm(),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Point at fraction `t` of the piece.
    pub fn at(&self, t: f64) -> Complex64 {
        match *self {
            Piece::Line { from, to } => c(from) + (c(to) - c(from)) * t,
            Piece::Arc { center, radius, start, sweep } => c(center) + Complex64::from_polar(radius, start + sweep * t),
        }
    }

    fn reversed(&self) -> Piece {
        match *self {
            Piece::Line { from, to } => Piece::Line { from: to, to: from },
            Piece::Arc { center, radius, start, sweep } => {
                Piece::Arc { center, radius, start: start + sweep, sweep: -sweep }
            }
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Path {
    pub pieces: Vec<Piece>,
}

impl Path {
    pub fn start(&self) -> Option<Complex64> {
        self.pieces.first().map(|p| p.at(0.0))
    }

    pub fn end(&self) -> Option<Complex64> {
        self.pieces.last().map(|p| p.at(1.0))
    }

    pub fn reversed(&self) -> Path {
        Path { pieces: self.pieces.iter().rev().map(Piece::reversed).collect() }
    }

    pub fn circle(center: Complex64, radius: f64, start: f64) -> Path {
        Path { pieces: vec![Piece::Arc { center: arr(center), radius, start, sweep: 2.0 * PI }] }
    }
}

/// Step control for the continuation.
#[derive(Clone, Copy, Debug)]
pub struct StepPolicy {
    /// Largest step as a fraction of the distance to the branch set.
    pub safety: f64,
    /// Minimal accepted ratio between the runner-up and the matched root.
    pub match_ratio: f64,
    /// Smallest step, relative to the distance to the branch set.
    pub min_step: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy { safety: 0.25, match_ratio: 3.0, min_step: 1e-9 }
    }
}

fn dist_to_set(u: Complex64, set: &[Complex64]) -> f64 {
    set.iter().map(|b| (u - b).norm()).fold(f64::INFINITY, f64::min)
}

/// Newton on `f(., u)` from `x`; `None` if it does not settle.
fn newton<S: Scalar>(nm: &NumericModel<S>, x: &S, u: &S, tol: f64) -> Option<S> {
    // An ill-conditioned root cannot be resolved to `tol`; accept it once
    // the steps stop shrinking below this floor.
    let floor = tol.sqrt();
    let mut x = x.clone();
    let mut prev = f64::INFINITY;
    for _ in 0..60 {
        let (p, dp) = nm.newton_pair(&x, u);
        if dp.is_zero() {
            return None;
        }
        let step = p.div_ref(&dp);
        x = x.sub_ref(&step);
        let s = step.modulus();
        if !s.is_finite() {
            return None;
        }
        let scale = 1.0 + x.modulus();
        if s <= tol * scale || (s > 0.5 * prev && s <= floor * scale) {
            return Some(x);
        }
        prev = s;
    }
    None
}

/// Smallest ratio, over sheets, between the distance from the old root to
/// the nearest other new root and to its own continuation.
fn match_ratio<S: Scalar>(old: &[S], new: &[S]) -> f64 {
    let n = old.len();
    (0..n)
        .map(|j| {
            let own = old[j].sub_ref(&new[j]).modulus();
            let other =
                (0..n).filter(|&k| k != j).map(|k| old[j].sub_ref(&new[k]).modulus()).fold(f64::INFINITY, f64::min);
            if own == 0.0 {
                f64::INFINITY
            } else {
                other / own
            }
        })
        .fold(f64::INFINITY, f64::min)
}

/// Continues `roots` (sheet-ordered roots of `f(., start)`) along `path`.
pub fn continue_roots<S: Scalar>(
    nm: &NumericModel<S>,
    roots: &[S],
    path: &Path,
    branch: &[Complex64],
    policy: StepPolicy,
) -> Result<Vec<S>> {
    let prec = nm.prec();
    let tol = (roots.first().map_or(f64::EPSILON, S::epsilon) * 64.0).max(1e-300);
    let mut cur = roots.to_vec();
    for piece in &path.pieces {
        let len = piece.length();
        if len == 0.0 {
            continue;
        }
        let mut t = 0.0;
        let mut h = f64::INFINITY;
        while t < 1.0 {
            let here = piece.at(t);
            let d = dist_to_set(here, branch);
            let h_max = policy.safety * d / len.max(f64::MIN_POSITIVE);
            h = h.min(h_max).min(1.0 - t);
            loop {
                if h * len < policy.min_step * d {
                    return Err(GaudinError::StepCollapse { min_step: policy.min_step * d, at: format!("{here}") });
                }
                let u = S::from_c64(piece.at(t + h), prec);
                let next: Option<Vec<S>> = cur.iter().map(|x| newton(nm, x, &u, tol)).collect();
                if let Some(next) = next {
                    if match_ratio(&cur, &next) >= policy.match_ratio {
                        cur = next;
                        break;
                    }
                }
                h *= 0.5;
            }
            t += h;
            h *= 2.0;
            if 1.0 - t < 1e-15 {
                t = 1.0;
            }
        }
    }
    Ok(cur)
}

/// Matches `end` to `start` by nearest neighbour: sheet `i` ends on sheet
/// `perm[i]`.
fn match_back<S: Scalar>(start: &[S], end: &[S], ratio: f64, at: Complex64) -> Result<Permutation> {
    let n = start.len();
    let mut image = Vec::with_capacity(n);
    for e in end {
        let mut d: Vec<(f64, usize)> = start.iter().enumerate().map(|(k, s)| (s.sub_ref(e).modulus(), k)).collect();
        d.sort_by(|a, b| a.0.total_cmp(&b.0));
        if n > 1 && d[0].0 > 0.0 && d[1].0 / d[0].0 < ratio {
            return Err(GaudinError::MatchAmbiguity { at: format!("{at}"), ratio: d[1].0 / d[0].0 });
        }
        image.push(d[0].1);
    }
    Permutation::from_images(image)
}

/// Start values for the sheets at a real base point: eigenvalues of the
/// real symmetric `H1(u0)` in ascending order, polished at the working
/// precision.
fn base_roots<S: Scalar>(curve: &GaudinCurve, nm: &NumericModel<S>, u0: f64) -> Result<Vec<S>> {
    let u = S::from_f64(u0, 0.0, nm.prec());
    let tol = S::zero(nm.prec()).epsilon().max(S::from_f64(1.0, 0.0, nm.prec()).epsilon()) * 64.0;
    real_spectrum(&curve.model, u0)
        .into_iter()
        .map(|x| {
            newton(nm, &S::from_f64(x, 0.0, nm.prec()), &u, tol)
                .ok_or(GaudinError::ConvergenceFailure { precision: nm.prec(), iterations: 60 })
        })
        .collect()
}

/// Roots of `f(., u)` at an arbitrary point, ordered by real then
/// imaginary part.
fn roots_at(curve: &GaudinCurve, u: Complex64, prec: u32) -> Result<Vec<MpComplex>> {
    let uz = MpComplex::from_f64(u.re, u.im, prec);
    let coeffs: Vec<MpComplex> =
        curve.f.x_coeffs().iter().map(|q| gaudin_poly::eval_uni_complex(q, &uz, prec).value).collect();
    let mut r: Vec<MpComplex> =
        roots_complex(&coeffs, RootOptions::with_precision(prec))?.into_iter().map(|r| r.value).collect();
    r.sort_by(|a, b| {
        let (za, zb) = (a.to_c64(), b.to_c64());
        za.re.total_cmp(&zb.re).then(za.im.total_cmp(&zb.im))
    });
    Ok(r)
}

fn track_at<S: Scalar>(
    curve: &GaudinCurve,
    path: &Path,
    branch: &[Complex64],
    prec: u32,
    policy: StepPolicy,
) -> Result<Permutation> {
    let nm = NumericModel::<S>::new(&curve.model, prec);
    let start = path.start().unwrap();
    let roots: Vec<S> = roots_at(curve, start, prec.max(128))?
        .iter()
        .map(|z| S::from_c64(z.to_c64(), prec))
        .map(|z| newton(&nm, &z, &S::from_c64(start, prec), z.epsilon() * 64.0).unwrap_or(z))
        .collect();
    let end = continue_roots(&nm, &roots, path, branch, policy)?;
    if (path.end().unwrap() - start).norm() > 1e-12 * (1.0 + start.norm()) {
        return Err(GaudinError::PreconditionFailed("path is not closed".into()));
    }
    match_back(&roots, &end, policy.match_ratio, start)
}

/// Permutation of the sheets over the start of a closed path, where sheets
/// are the roots of `f(., start)` ordered by real then imaginary part.
pub fn track_eigenvalues(
    curve: &GaudinCurve,
    path: &Path,
    branch: &[Complex64],
    prec: u32,
    policy: StepPolicy,
) -> Result<Permutation> {
    if curve.n == 0 || path.pieces.is_empty() {
        return Ok(Permutation::identity(curve.n));
    }
    if prec <= 53 {
        track_at::<Complex64>(curve, path, branch, 53, policy)
    } else {
        track_at::<MpComplex>(curve, path, branch, prec, policy)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopReport {
    pub branch_index: usize,
    pub branch_point: [f64; 2],
    pub radius: f64,
    pub detours: usize,
    pub precision: u32,
    pub permutation: Permutation,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    pub degree: usize,
    #[serde(serialize_with = "rational_string")]
    pub base_point: Rational,
    pub base_eigenvalues: Vec<f64>,
    pub loops: Vec<LoopReport>,
    pub transitive: bool,
    #[serde(serialize_with = "integer_string")]
    pub order: Integer,
    pub is_full_symmetric: bool,
    pub all_transpositions: bool,
    pub product: Permutation,
    pub product_is_identity: bool,
}

fn rational_string<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&gaudin_poly::format_rational(q))
}

#[derive(Clone, Copy, Debug)]
pub struct MonodromyOptions {
    pub base_point: f64,
    /// Petal radius as a fraction of the nearest-neighbour distance.
    pub radius_factor: f64,
    /// Precisions tried in turn; 53 means hardware doubles.
    pub max_prec: u32,
    pub policy: StepPolicy,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions { base_point: 0.5, radius_factor: 1.0 / 3.0, max_prec: 512, policy: StepPolicy::default() }
    }
}

/// Outgoing path from `u0` to the circle about `b`, detouring around the
/// circles `(centre, radius)` it would otherwise cut.
fn approach(u0: Complex64, target: Complex64, obstacles: &[(Complex64, f64)]) -> (Path, usize) {
    let len = (target - u0).norm();
    let dir = (target - u0) / len;
    let mut cuts: Vec<(f64, f64, Complex64, f64, f64)> = Vec::new();
    for &(centre, rad) in obstacles {
        let rel = (centre - u0) * dir.conj();
        let (along, perp) = (rel.re, rel.im);
        if perp.abs() >= rad {
            continue;
        }
        let half = (rad * rad - perp * perp).sqrt();
        let (t1, t2) = (along - half, along + half);
        if t2 <= 0.0 || t1 >= len {
            continue;
        }
        cuts.push((t1.max(0.0), t2.min(len), centre, rad, perp));
    }
    cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut pieces = Vec::new();
    let mut at = u0;
    for &(t1, t2, centre, rad, perp) in &cuts {
        let entry = u0 + dir * t1;
        let exit = u0 + dir * t2;
        pieces.push(Piece::Line { from: arr(at), to: arr(entry) });
        let a1 = (entry - centre).arg();
        let a2 = (exit - centre).arg();
        let mut ccw = a2 - a1;
        while ccw <= 0.0 {
            ccw += 2.0 * PI;
        }
        // Counterclockwise from the entry point passes to the right of the
        // direction of travel; use it when the centre lies to the left.
        let sweep = if perp >= 0.0 { ccw } else { ccw - 2.0 * PI };
        pieces.push(Piece::Arc { center: arr(centre), radius: rad, start: a1, sweep });
        at = exit;
    }
    pieces.push(Piece::Line { from: arr(at), to: arr(target) });
    pieces.retain(|p| p.length() > 0.0);
    (Path { pieces }, cuts.len())
}

/// Petal radius for each branch point.
fn radii(points: &[Complex64], u0: Complex64, factor: f64) -> Vec<f64> {
    points
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let nn = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &q)| (q - b).norm())
                .fold((b - u0).norm(), f64::min);
            factor * nn
        })
        .collect()
}

/// The petal about branch point `i`: approach path and circle.
pub fn petal(points: &[Complex64], i: usize, opts: &MonodromyOptions) -> (Path, Path, f64, usize) {
    let u0 = Complex64::new(opts.base_point, 0.0);
    let guard = radii(points, u0, 1.0 / 3.0);
    let rho = radii(points, u0, opts.radius_factor)[i];
    let b = points[i];
    let standoff = b + (u0 - b) / (u0 - b).norm() * rho;
    let obstacles: Vec<(Complex64, f64)> =
        points.iter().zip(&guard).enumerate().filter(|&(j, _)| j != i).map(|(_, (&q, &r))| (q, r)).collect();
    let (out, detours) = approach(u0, standoff, &obstacles);
    let circle = Path::circle(b, rho, (standoff - b).arg());
    (out, circle, rho, detours)
}

fn loop_permutation<S: Scalar>(
    curve: &GaudinCurve,
    base: &[S],
    out: &Path,
    circle: &Path,
    points: &[Complex64],
    prec: u32,
    policy: StepPolicy,
) -> Result<Permutation> {
    let nm = NumericModel::<S>::new(&curve.model, prec);
    let base: Vec<S> = base.to_vec();
    let at_petal = continue_roots(&nm, &base, out, points, policy)?;
    let around = continue_roots(&nm, &at_petal, circle, points, policy)?;
    match_back(&at_petal, &around, policy.match_ratio, circle.start().unwrap())
}

/// Generators of the monodromy group, one per branch point, with the
/// group they generate.
pub fn monodromy_group(curve: &GaudinCurve, branch: &BranchSet, opts: MonodromyOptions) -> Result<MonodromyReport> {
    let n = curve.n;
    let u0 = Complex64::new(opts.base_point, 0.0);
    let points = branch.values();
    if points.iter().any(|b| (b - u0).norm() < 1e-6) {
        return Err(GaudinError::PreconditionFailed("base point is too close to a branch point".into()));
    }
    let base_eigenvalues = real_spectrum(&curve.model, opts.base_point);
    let gap = base_eigenvalues.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let scale = base_eigenvalues.iter().map(|x| x.abs()).fold(1.0, f64::max);
    if gap <= 1e-9 * scale {
        return Err(GaudinError::PreconditionFailed("eigenvalues at the base point are not separated".into()));
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| (points[i] - u0).arg().total_cmp(&(points[j] - u0).arg()));

    let base_f64 = base_roots::<Complex64>(curve, &NumericModel::new(&curve.model, 53), opts.base_point)?;
    let loops: Vec<LoopReport> = order
        .par_iter()
        .map(|&i| -> Result<LoopReport> {
            let (out, circle, radius, detours) = petal(&points, i, &opts);
            let mut prec = 53;
            let permutation = loop {
                let attempt = if prec == 53 {
                    loop_permutation::<Complex64>(curve, &base_f64, &out, &circle, &points, 53, opts.policy)
                } else {
                    let nm = NumericModel::<MpComplex>::new(&curve.model, prec);
                    base_roots(curve, &nm, opts.base_point).and_then(|b| {
                        loop_permutation::<MpComplex>(curve, &b, &out, &circle, &points, prec, opts.policy)
                    })
                };
                match attempt {
                    Ok(p) => break p,
                    Err(e) if e.is_numeric() && prec < opts.max_prec => prec = if prec == 53 { 128 } else { prec * 2 },
                    Err(e) => return Err(e),
                }
            };
            Ok(LoopReport {
                branch_index: i,
                branch_point: arr(points[i]),
                radius,
                detours,
                precision: prec,
                permutation,
            })
        })
        .collect::<Result<_>>()?;

    let gens: Vec<Permutation> = loops.iter().map(|l| l.permutation.clone()).collect();
    let info = identify_group(&gens, n);
    let product = gens.iter().fold(Permutation::identity(n), |acc, g| acc.then(g));
    Ok(MonodromyReport {
        degree: n,
        base_point: Rational::from_f64(opts.base_point).unwrap_or_default(),
        base_eigenvalues,
        all_transpositions: gens.iter().all(Permutation::is_transposition),
        product_is_identity: product.is_identity(),
        product,
        loops,
        transitive: info.transitive,
        order: info.order,
        is_full_symmetric: info.is_full_symmetric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_from_classical_generators() {
        for n in 1..8 {
            let info = identify_group(&[Permutation::transposition(n, 0, 1.min(n - 1)), Permutation::cycle(n)], n);
            assert_eq!(info.order, Integer::from(Integer::factorial(n as u32)));
            assert!(info.is_full_symmetric && info.transitive);
        }
    }

    #[test]
    fn trivial_group() {
        let info = identify_group(&[Permutation::identity(4)], 4);
        assert_eq!(info.order, 1);
        assert!(!info.transitive);
    }

    #[test]
    fn dihedral_and_alternating_orders() {
        // D4 on the square's vertices
        let r = Permutation::cycle(4);
        let s = Permutation::from_images(vec![0, 3, 2, 1]).unwrap();
        assert_eq!(identify_group(&[r, s], 4).order, 8);
        // A5 from two 3-cycles and a 5-cycle
        let a = Permutation::from_images(vec![1, 2, 0, 3, 4]).unwrap();
        let b = Permutation::cycle(5);
        let info = identify_group(&[a, b], 5);
        assert_eq!(info.order, 60);
        assert!(!info.is_full_symmetric);
    }

    #[test]
    fn permutation_algebra() {
        let p = Permutation::from_images(vec![2, 0, 1]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.to_string(), "(0 2 1)");
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn detour_keeps_clear_of_obstacles() {
        let u0 = Complex64::new(0.0, 0.0);
        let target = Complex64::new(4.0, 0.0);
        let obstacle = (Complex64::new(2.0, 0.1), 0.5);
        let (path, k) = approach(u0, target, &[obstacle]);
        assert_eq!(k, 1);
        assert_eq!(path.pieces.len(), 3);
        let mid = path.pieces[1].at(0.5);
        assert!(mid.im < 0.0, "detour passes on the far side: {mid}");
        assert!((path.end().unwrap() - target).norm() < 1e-12);
    }
}
