//! End-to-end acceptance run: one line per criterion, nonzero exit if any
//! fails. Run with `cargo test -p gaudin-cli --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use gaudin_core::branch::{asymptotic_limit_check, genus, two_fold_curve};
use gaudin_core::curve::isotropy;
use gaudin_core::hamiltonian::closed_forms;
use gaudin_core::monodromy::MonodromyOptions;
use gaudin_core::numeric::{roots_complex, roots_of, sturm_eigenvalues, RootOptions};
use gaudin_core::oracle::{oracle_data, singular_dimension_bruteforce};
use gaudin_core::{
    branch_points, build_model, char_poly, discriminant_u, monodromy_group, simplicity_check, singular_dimension,
    trace_scalar, BranchSet, GaudinCurve, MonodromyReport, Permutation, WeightConfig,
};
use gaudin_poly::{eval_bi_complex, eval_uni_complex, BiPoly, Integer, MpComplex, Rational, UniPoly, Var};
use num_complex::Complex64;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

const CURVE_4: &str = "x^4 + (−10u − 10)x^3 + (−27u² + 162u − 27)x² + (360u³ − 432u² − 432u + 360)x − 324u⁴ − 864u³ + 2376u² − 864u − 324";

const CURVE_7: &str = "x^7 + (-3192 u^2 + 3192 u - 3192) x^5 + (18944 u^3 - 28416 u^2 - 28416 u + 18944) x^4 \
    + (2455440 u^4 - 4910880 u^3 + 7366320 u^2 - 4910880 u + 2455440) x^3 \
    + (-18777600 u^5 + 46944000 u^4 - 18777600 u^3 - 18777600 u^2 + 46944000 u - 18777600) x^2 \
    + (-353376000 u^6 + 1060128000 u^5 - 2289600000 u^4 + 2812320000 u^3 - 2289600000 u^2 + 1060128000 u - 353376000) x \
    + 1555200000 u^7 - 5443200000 u^6 + 6998400000 u^5 - 3888000000 u^4 - 3888000000 u^3 + 6998400000 u^2 \
    - 5443200000 u + 1555200000";

const DISC_4: &str = "u¹² − 11364/1225 u¹¹ + 56991/1225 u¹⁰ − 36208/245 u⁹ + 9784071/30625 u⁸ − 15151356/30625 u⁷ \
    + 3489114/6125 u⁶ − 15151356/30625 u⁵ + 9784071/30625 u⁴ − 36208/245 u³ + 56991/1225 u² − 11364/1225 u + 1";

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit: f64, what: &str) -> Result<(), String> {
    ensure(t.as_secs_f64() < limit, || format!("{what} took {:.1} s, budget {limit} s", t.as_secs_f64()))
}

/// Superscript exponents and the typographic minus to plain ASCII.
fn ascii(s: &str) -> String {
    let mut out = String::new();
    let mut in_exp = false;
    for ch in s.chars() {
        let digit = "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|c| c == ch);
        match digit {
            Some(d) => {
                if !in_exp {
                    out.push('^');
                }
                out.push(char::from(b'0' + d as u8));
                in_exp = true;
            }
            None => {
                in_exp = false;
                out.push(if ch == '−' { '-' } else { ch });
            }
        }
    }
    out
}

fn curve(cfg: WeightConfig) -> GaudinCurve {
    char_poly(&build_model(&cfg).unwrap())
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_gaudin")).args(["curve", "3", "4", "4", "--r", "4"]).output().unwrap();
    let elapsed = t.elapsed();
    ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let text = v["polynomial"].as_str().ok_or("no polynomial field")?;
    let want = ascii(CURVE_4);
    ensure(text == want, || format!("text differs: {text}"))?;
    let parsed = BiPoly::parse(text).map_err(|e| e.to_string())?;
    ensure(parsed == BiPoly::parse(&want).unwrap(), || "coefficients differ".into())?;
    within(elapsed, 1.0, "curve")?;
    Ok(format!("{:.3} s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let c = curve(WeightConfig::new(10, 10, 10, 6));
    let elapsed = t.elapsed();
    let want = BiPoly::parse(CURVE_7).unwrap();
    ensure(c.n == 7, || format!("degree {}", c.n))?;
    ensure(c.f == want, || format!("got {}", c.f.to_text()))?;
    within(elapsed, 1.0, "curve")?;
    Ok(format!("{} monomials, {:.3} s", c.f.num_terms(), elapsed.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let d = discriminant_u(&curve(WeightConfig::new(3, 4, 4, 4))).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let want = UniPoly::parse(&ascii(DISC_4), Var::U).unwrap();
    ensure(d.monic == want, || format!("got {}", d.monic.to_text()))?;
    within(elapsed, 5.0, "discriminant")?;
    Ok(format!("{:.3} s", elapsed.as_secs_f64()))
}

struct Pipeline {
    cfg: WeightConfig,
    set: BranchSet,
    simple: bool,
    mono: MonodromyReport,
    genus: u64,
    branch_time: Duration,
    mono_time: Duration,
}

fn pipeline(cfg: WeightConfig) -> Result<Pipeline, String> {
    let e = |e: gaudin_core::GaudinError| format!("{cfg}: {e}");
    let c = curve(cfg);
    let t = Instant::now();
    let set = branch_points(&c, &discriminant_u(&c).map_err(e)?, RootOptions::default()).map_err(e)?;
    let simple = simplicity_check(&c, &set.discriminant).map_err(e)?;
    let branch_time = t.elapsed();
    let t = Instant::now();
    let mono = monodromy_group(&c, &set, MonodromyOptions::default()).map_err(e)?;
    let mono_time = t.elapsed();
    let genus = genus(&set, simple, &mono).map_err(e)?;
    Ok(Pipeline { cfg, set, simple, mono, genus, branch_time, mono_time })
}

const CASES: [(WeightConfig, usize, u64); 4] = [
    (WeightConfig::new(3, 4, 4, 4), 4, 3),
    (WeightConfig::new(10, 10, 10, 6), 7, 15),
    (WeightConfig::new(30, 30, 30, 20), 21, 190),
    (WeightConfig::new(31, 32, 33, 23), 24, 253),
];

fn criterion_4(runs: &[Result<Pipeline, String>]) -> Outcome {
    let mut notes = Vec::new();
    for ((cfg, n, g), run) in CASES.iter().zip(runs) {
        let p = run.as_ref().map_err(|e| e.clone())?;
        let count = n * (n - 1);
        ensure(p.set.len() == count, || format!("{cfg}: {} branch points, expected {count}", p.set.len()))?;
        ensure(p.set.squarefree, || format!("{cfg}: discriminant not squarefree"))?;
        ensure(p.simple, || format!("{cfg}: simplicity not certified"))?;
        let margin = p.set.points.iter().map(|b| b.im.abs() - b.error_radius).fold(f64::INFINITY, f64::min);
        ensure(p.set.no_real_roots && margin > 1e-8, || {
            format!("{cfg}: closest approach to the real axis {margin:e}")
        })?;
        ensure(p.genus == *g, || format!("{cfg}: genus {}, expected {g}", p.genus))?;
        let budget = if *n < 10 { 60.0 } else { 600.0 };
        within(p.branch_time, budget, &format!("{cfg} branch points"))?;
        notes.push(format!("g={} ({:.1} s)", p.genus, p.branch_time.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn criterion_5(runs: &[Result<Pipeline, String>]) -> Outcome {
    let mut notes = Vec::new();
    for ((_, n, _), run) in CASES.iter().zip(runs) {
        let p = run.as_ref().map_err(|e| e.clone())?;
        let m = &p.mono;
        let cfg = p.cfg;
        let want = Integer::from(Integer::factorial(*n as u32));
        ensure(m.order == want, || format!("{cfg}: order {}, expected {n}!", m.order))?;
        ensure(m.loops.len() == n * (n - 1), || format!("{cfg}: {} loops", m.loops.len()))?;
        ensure(m.loops.iter().all(|l| l.permutation.is_transposition()), || {
            format!("{cfg}: non-transposition generator")
        })?;
        ensure(m.transitive, || format!("{cfg}: not transitive"))?;
        let product = m.loops.iter().fold(Permutation::identity(*n), |acc, l| acc.then(&l.permutation));
        ensure(product.is_identity(), || format!("{cfg}: product of generators is {:?}", product.cycles()))?;
        within(p.mono_time, 1800.0, &format!("{cfg} monodromy"))?;
        notes.push(format!("{n}! ({:.1} s)", p.mono_time.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for m1 in 0..=6 {
        for m2 in 0..=6 {
            for m3 in 0..=6 {
                for r in 0..=m1 + m2 + m3 {
                    let cfg = WeightConfig::new(m1, m2, m3, r);
                    let brute = singular_dimension_bruteforce(m1, m2, m3, cfg.mu());
                    ensure(singular_dimension(m1, m2, m3, r) == brute, || format!("{cfg}: dimension"))?;
                    let Some(range) = cfg.admissible_range() else { continue };
                    let model = build_model(&cfg).map_err(|e| e.to_string())?;
                    let data = oracle_data(&cfg).map_err(|e| e.to_string())?;
                    ensure((&model.d, &model.a, &model.b, &model.c2) == (&data.d, &data.a, &data.b, &data.c2), || {
                        format!("{cfg}: closed forms differ from the tensor model")
                    })?;
                    let s = trace_scalar(&cfg);
                    for r1 in range {
                        let (d, a, b, _) = closed_forms(&cfg, r1);
                        ensure(d + a + b == s, || format!("{cfg} r1={r1}: trace identity"))?;
                    }
                    checked += 1;
                }
            }
        }
    }
    within(t.elapsed(), 120.0, "sweep")?;
    Ok(format!("{checked} configurations, {:.1} s", t.elapsed().as_secs_f64()))
}

fn sample<S: Strategy>(runner: &mut TestRunner, s: &S) -> S::Value {
    s.new_tree(runner).unwrap().current()
}

fn criterion_7() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let configs = (0u32..=20, 0u32..=20, 0u32..=20)
        .prop_flat_map(|(m1, m2, m3)| (proptest::strategy::Just((m1, m2, m3)), 0..=m1 + m2 + m3))
        .prop_map(|((m1, m2, m3), r)| WeightConfig::new(m1, m2, m3, r))
        .prop_filter("at least two sheets", |c| c.dimension() >= 2);
    // u = k / 1000 in (-5, 5), avoiding 0 and 1
    let params = (-4999i64..=4999).prop_filter("u not 0 or 1", |k| *k != 0 && *k != 1000);
    let mut worst = f64::INFINITY;
    for _ in 0..50 {
        let cfg = sample(&mut runner, &configs);
        let c = curve(cfg);
        for _ in 0..20 {
            let k = sample(&mut runner, &params);
            let u = Rational::from((k, 1000));
            let uf = k as f64 / 1000.0;
            let roots = roots_of(&c.f.eval_u(&u), RootOptions::default()).map_err(|e| format!("{cfg} u={uf}: {e}"))?;
            let alpha: Vec<f64> =
                c.model.d.iter().zip(&c.model.a).map(|(d, a)| -d.to_f64() - uf * a.to_f64()).collect();
            let beta2: Vec<f64> = c.model.c2.iter().map(|q| uf * uf * q.to_f64()).collect();
            let sturm = sturm_eigenvalues(&alpha, &beta2);
            let scale = sturm.iter().map(|x| x.abs()).fold(1.0, f64::max);
            let mut real: Vec<f64> = Vec::new();
            for r in &roots {
                let z = r.to_c64();
                ensure(z.im.abs() <= 1e-25 * scale, || format!("{cfg} u={uf}: root {z} is not real"))?;
                real.push(z.re);
            }
            real.sort_by(f64::total_cmp);
            ensure(real.len() == c.n, || format!("{cfg} u={uf}: {} roots", real.len()))?;
            for (x, y) in real.iter().zip(&sturm) {
                ensure((x - y).abs() <= 1e-9 * scale, || format!("{cfg} u={uf}: Aberth {x} vs Sturm {y}"))?;
            }
            let gap = real.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min) / scale;
            ensure(gap > 1e-9, || format!("{cfg} u={uf}: relative separation {gap:e}"))?;
            worst = worst.min(gap);
        }
    }
    Ok(format!("1000 spectra, smallest relative gap {worst:.2e}"))
}

fn criterion_8() -> Outcome {
    let c = curve(WeightConfig::new(3, 4, 4, 4));
    let set = branch_points(&c, &discriminant_u(&c).unwrap(), RootOptions::default()).map_err(|e| e.to_string())?;
    let prec = set.precision;
    let fx = c.f.derivative_x();
    let one = MpComplex::from_f64(1.0, 0.0, prec);
    let mut worst_branch: f64 = 0.0;
    for b in &set.precise {
        let u = &b.value;
        let coeffs: Vec<MpComplex> = fx.x_coeffs().iter().map(|p| eval_uni_complex(p, u, prec).value).collect();
        let critical = roots_complex(&coeffs, RootOptions::with_precision(prec)).map_err(|e| e.to_string())?;
        let residual = |x: &MpComplex| eval_bi_complex(&c.f, x, u, prec).value.abs().to_f64();
        let x = critical.iter().map(|r| r.value.clone()).min_by(|p, q| residual(p).total_cmp(&residual(q))).unwrap();
        let iso = isotropy(&c.model, &x, u, &one, prec, 1e-20).map_err(|e| e.to_string())?;
        worst_branch = worst_branch.max(iso.relative());
    }
    ensure(worst_branch <= 1e-8, || format!("isotropy {worst_branch:e} at a branch point"))?;

    let mut runner = TestRunner::deterministic();
    let points = (-3.0f64..3.0, -3.0f64..3.0);
    let branch = set.values();
    let prec = 128;
    let one = MpComplex::from_f64(1.0, 0.0, prec);
    let mut least = f64::INFINITY;
    let mut taken = 0;
    while taken < 20 {
        let (re, im) = sample(&mut runner, &points);
        let u = Complex64::new(re, im);
        if u.norm() < 0.05 || branch.iter().any(|b| (b - u).norm() <= 0.05) {
            continue;
        }
        let uz = MpComplex::from_f64(re, im, prec);
        let coeffs: Vec<MpComplex> = c.f.x_coeffs().iter().map(|p| eval_uni_complex(p, &uz, prec).value).collect();
        let roots = roots_complex(&coeffs, RootOptions::with_precision(prec)).map_err(|e| e.to_string())?;
        let x = &roots[taken % roots.len()].value;
        let iso = isotropy(&c.model, x, &uz, &one, prec, 1e-25).map_err(|e| e.to_string())?;
        least = least.min(iso.relative());
        taken += 1;
    }
    ensure(least >= 1e-3, || format!("isotropy {least:e} at a non-critical point"))?;
    Ok(format!("max at branch points {worst_branch:.1e}, min elsewhere {least:.3}"))
}

fn criterion_9() -> Outcome {
    let mut worst: f64 = 0.0;
    for m1 in 1..=10u32 {
        for m2 in 1..=10u32 {
            for m3 in 1..=10u32 {
                let c = curve(WeightConfig::new(m1, m2, m3, 1));
                let f = two_fold_curve(m1, m2, m3).map_err(|e| e.to_string())?;
                ensure(f == c.f, || format!("({m1},{m2},{m3}): two-fold curve differs"))?;
                let set = branch_points(&c, &discriminant_u(&c).unwrap(), RootOptions::default())
                    .map_err(|e| e.to_string())?;
                let sq = |a: u32, b: u32| ((a + b) * (a + b)) as f64;
                let (a, b, cc) = (sq(m1, m3), -(sq(m1, m3) - sq(m2, m3) + sq(m1, m2)), sq(m1, m2));
                let s = Complex64::new(b * b - 4.0 * a * cc, 0.0).sqrt();
                let q = if b >= 0.0 { -(b + s) / 2.0 } else { -(b - s) / 2.0 };
                let want = [q / a, cc / q];
                let got = set.values();
                ensure(got.len() == 2, || format!("({m1},{m2},{m3}): {} branch points", got.len()))?;
                for w in want {
                    let d = got.iter().map(|g| (g - w).norm()).fold(f64::INFINITY, f64::min) / w.norm().max(1.0);
                    worst = worst.max(d);
                }
            }
        }
    }
    ensure(worst <= 1e-10, || format!("branch points off the quadratic by {worst:e}"))?;
    Ok(format!("1000 triples, largest deviation {worst:.1e}"))
}

fn criterion_10() -> Outcome {
    let rep =
        asymptotic_limit_check([1, 1, 1], 3, &[10, 30, 100, 300], RootOptions::default()).map_err(|e| e.to_string())?;
    let upper: Vec<String> = rep.rows.iter().map(|r| format!("{:.3e}", r.upper_max)).collect();
    let lower: Vec<String> = rep.rows.iter().map(|r| format!("{:.3e}", r.lower_max)).collect();
    ensure(rep.upper_decreasing && rep.lower_decreasing, || format!("upper {upper:?}, lower {lower:?}"))?;
    Ok(format!("upper {}, lower {}", upper.join(" > "), lower.join(" > ")))
}

fn run(n: usize, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default())
    });
    let secs = t.elapsed().as_secs_f64();
    match outcome {
        Ok(note) => {
            println!("criterion {n}: PASS  [{secs:.1} s] {note}");
            true
        }
        Err(why) => {
            println!("criterion {n}: FAIL  [{secs:.1} s] {why}");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    ok &= run(1, criterion_1);
    ok &= run(2, criterion_2);
    ok &= run(3, criterion_3);
    let runs: Vec<Result<Pipeline, String>> = CASES
        .iter()
        .map(|(cfg, _, _)| catch_unwind(|| pipeline(*cfg)).unwrap_or_else(|_| Err(format!("{cfg}: panicked"))))
        .collect();
    ok &= run(4, || criterion_4(&runs));
    ok &= run(5, || criterion_5(&runs));
    ok &= run(6, criterion_6);
    ok &= run(7, criterion_7);
    ok &= run(8, criterion_8);
    ok &= run(9, criterion_9);
    ok &= run(10, criterion_10);
    if !ok {
        std::process::exit(1);
    }
}
