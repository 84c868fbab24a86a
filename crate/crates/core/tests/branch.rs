use gaudin_core::branch::*;
use gaudin_core::curve::isotropy;
use gaudin_core::monodromy::MonodromyOptions;
use gaudin_core::numeric::{roots_complex, RootOptions};
use gaudin_core::{build_model, char_poly, monodromy_group, GaudinCurve, GaudinError, WeightConfig};
use gaudin_poly::{eval_bi_complex, eval_uni_complex, BiPoly, MpComplex, Rational, UniPoly, Var};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const DISC_4: &str = "u^12 - 11364/1225 u^11 + 56991/1225 u^10 - 36208/245 u^9 + 9784071/30625 u^8 \
    - 15151356/30625 u^7 + 3489114/6125 u^6 - 15151356/30625 u^5 + 9784071/30625 u^4 - 36208/245 u^3 \
    + 56991/1225 u^2 - 11364/1225 u + 1";

fn curve(m1: u32, m2: u32, m3: u32, r: u32) -> GaudinCurve {
    char_poly(&build_model(&WeightConfig::new(m1, m2, m3, r)).unwrap())
}

fn branch_set(c: &GaudinCurve) -> BranchSet {
    branch_points(c, &discriminant_u(c).unwrap(), RootOptions::default()).unwrap()
}

/// Roots of `a u² + b u + c` by the quadratic formula in the form that
/// avoids cancellation.
fn formula_roots(a: f64, b: f64, c: f64) -> [Complex64; 2] {
    let s = Complex64::new(b * b - 4.0 * a * c, 0.0).sqrt();
    let qq = if b >= 0.0 { -(b + s) / 2.0 } else { -(b - s) / 2.0 };
    [qq / a, c / qq]
}

fn matches_within(got: &[Complex64], want: &[Complex64], tol: f64) -> bool {
    got.len() == want.len() && want.iter().all(|w| got.iter().any(|g| (g - w).norm() <= tol * w.norm().max(1.0)))
}

#[test]
fn discriminant_of_the_degree_four_example() {
    let d = discriminant_u(&curve(3, 4, 4, 4)).unwrap();
    assert_eq!(d.monic, UniPoly::parse(DISC_4, Var::U).unwrap());
    assert_eq!(d.raw.scale(&Rational::from(1 / &d.leading)), d.monic);
}

#[test]
fn trivial_discriminants() {
    let c = curve(2, 5, 3, 0);
    let d = discriminant_u(&c).unwrap();
    assert!(d.monic.is_constant());
    assert!(branch_set(&c).is_empty());

    let d = discriminant_u(&curve(1, 1, 1, 1)).unwrap();
    assert_eq!(d.monic, UniPoly::from_ints(Var::U, &[1, -1, 1]));
}

#[test]
fn smallest_branch_points() {
    let set = branch_set(&curve(1, 1, 1, 1));
    let h = 3f64.sqrt() / 2.0;
    assert!(matches_within(&set.values(), &[Complex64::new(0.5, h), Complex64::new(0.5, -h)], 1e-15));
}

#[test]
fn degree_four_branch_points() {
    let c = curve(3, 4, 4, 4);
    let set = branch_set(&c);
    assert_eq!(set.len(), 12);
    assert!(set.squarefree && set.no_real_roots);
    assert!(set.conjugation_defect() <= 1e-10);
    assert!(simplicity_check(&c, &set.discriminant).unwrap());
    assert!(set.to_csv().starts_with("re,im,error_radius\n"));
    assert_eq!(set.to_csv().lines().count(), 13);
}

#[test]
fn degree_seven_branch_points() {
    let c = curve(10, 10, 10, 6);
    let set = branch_set(&c);
    assert_eq!(set.len(), 42);
    assert!(set.no_real_roots);
    assert!(simplicity_check(&c, &set.discriminant).unwrap());
}

#[test]
fn double_eigenvalues_are_isotropic() {
    let c = curve(3, 4, 4, 4);
    let set = branch_set(&c);
    let prec = set.precision;
    let fx = c.f.derivative_x();
    let one = MpComplex::from_f64(1.0, 0.0, prec);
    for b in &set.precise {
        let u = &b.value;
        let coeffs: Vec<MpComplex> = fx.x_coeffs().iter().map(|p| eval_uni_complex(p, u, prec).value).collect();
        let critical = roots_complex(&coeffs, RootOptions::with_precision(prec)).unwrap();
        // the double eigenvalue is the critical point where f also vanishes
        let x = critical
            .iter()
            .map(|r| r.value.clone())
            .min_by(|p, q| {
                let fp = eval_bi_complex(&c.f, p, u, prec).value.abs();
                let fq = eval_bi_complex(&c.f, q, u, prec).value.abs();
                fp.total_cmp(&fq)
            })
            .unwrap();
        let iso = isotropy(&c.model, &x, u, &one, prec, 1e-20).unwrap();
        assert!(iso.relative() <= 1e-8, "branch point {} gives {:e}", b.to_c64(), iso.relative());
    }
}

#[test]
fn planted_triple_point_is_not_simple() {
    let f = BiPoly::parse("x^3 - u x^2 - u^2 x + u^3").unwrap();
    let d = discriminant_of(&f);
    // (x - u)²(x + u) has a repeated factor, so the discriminant vanishes
    assert!(matches!(d, Err(GaudinError::PreconditionFailed(_))));
    assert!(!simplicity_of(&f, &UniPoly::zero(Var::U)).unwrap());

    let cusp = BiPoly::parse("x^3 - u").unwrap();
    let d = discriminant_of(&cusp).unwrap();
    assert!(!simplicity_of(&cusp, &d.raw).unwrap());
}

#[test]
fn genus_of_the_small_examples() {
    for (cfg, want) in [(WeightConfig::new(3, 4, 4, 4), 3), (WeightConfig::new(10, 10, 10, 6), 15)] {
        let c = char_poly(&build_model(&cfg).unwrap());
        let set = branch_set(&c);
        let simple = simplicity_check(&c, &set.discriminant).unwrap();
        let mono = monodromy_group(&c, &set, MonodromyOptions::default()).unwrap();
        assert_eq!(genus(&set, simple, &mono).unwrap(), want);
        assert!(matches!(genus(&set, false, &mono), Err(GaudinError::PreconditionFailed(_))));
    }
}

#[test]
fn large_discriminant_degrees() {
    for (cfg, n, g) in [(WeightConfig::new(30, 30, 30, 20), 21, 190), (WeightConfig::new(31, 32, 33, 23), 24, 253)] {
        let c = char_poly(&build_model(&cfg).unwrap());
        let d = discriminant_u(&c).unwrap();
        assert_eq!(d.monic.degree(), Some(n * (n - 1)));
        assert_eq!(genus_from_counts(n * (n - 1), n).unwrap(), g);
    }
    assert!(genus_from_counts(7, 3).is_err());
}

#[test]
fn two_fold_examples() {
    let f = two_fold_curve(1, 1, 1).unwrap();
    assert_eq!(f, BiPoly::parse("x^2 - (u + 1)x - 3/4u^2 + 3/2u - 3/4").unwrap());
    let mut at_zero: Vec<Rational> = vec![Rational::from((3, 2)), Rational::from((-1, 2))];
    at_zero.sort();
    let m = build_model(&WeightConfig::new(1, 1, 1, 1)).unwrap();
    let mut minus_d: Vec<Rational> = m.d.iter().map(|d| -d.clone()).collect();
    minus_d.sort();
    assert_eq!(minus_d, at_zero);
    for x in &at_zero {
        assert_eq!(f.eval(x, &Rational::new()), 0);
    }

    assert_eq!(two_fold_curve(2, 3, 4).unwrap(), curve(2, 3, 4, 1).f);
    assert!(matches!(two_fold_curve(0, 3, 4), Err(GaudinError::InvalidWeights(_))));

    let q = two_fold_branch_quadratic([1, 1, 1].map(Rational::from)).unwrap();
    assert_eq!(q, UniPoly::from_ints(Var::U, &[4, -4, 4]));
    let (up, lo) = quadratic_roots(&q);
    let h = 3f64.sqrt() / 2.0;
    assert!((up - Complex64::new(0.5, h)).norm() < 1e-15);
    assert!((lo - Complex64::new(0.5, -h)).norm() < 1e-15);
}

#[test]
fn two_fold_closed_form_for_all_small_weights() {
    for m1 in 1..=10 {
        for m2 in 1..=10 {
            for m3 in 1..=10 {
                assert_eq!(two_fold_curve(m1, m2, m3).unwrap(), curve(m1, m2, m3, 1).f, "({m1},{m2},{m3})");
            }
        }
    }
}

#[test]
fn two_fold_branch_points_follow_the_quadratic() {
    for (m1, m2, m3) in [(1, 1, 1), (2, 3, 4), (7, 1, 5), (10, 10, 9), (3, 8, 2)] {
        let set = branch_set(&curve(m1, m2, m3, 1));
        let (s13, s23, s12) =
            (((m1 + m3) * (m1 + m3)) as f64, ((m2 + m3) * (m2 + m3)) as f64, ((m1 + m2) * (m1 + m2)) as f64);
        let want = formula_roots(s13, -(s13 - s23 + s12), s12);
        assert!(matches_within(&set.values(), &want, 1e-10), "({m1},{m2},{m3})");
    }
}

#[test]
fn asymptotic_trend() {
    let rep = asymptotic_limit_check([1, 1, 1], 3, &[10, 30, 100], RootOptions::default()).unwrap();
    assert!(rep.upper_decreasing && rep.lower_decreasing);
    assert_eq!(rep.rows.len(), 3);
    let rep = asymptotic_limit_check([1, 2, 3], 4, &[12, 60, 300], RootOptions::default()).unwrap();
    assert!(rep.upper_decreasing && rep.lower_decreasing);
    assert!(asymptotic_limit_check([1, 1, 1], 3, &[30, 10], RootOptions::default()).is_err());
}

#[test]
fn two_fold_limit_is_exact_at_r_one() {
    let rep = asymptotic_limit_check([1, 2, 3], 1, &[1, 5, 25], RootOptions::default()).unwrap();
    for row in &rep.rows {
        assert!(row.upper_max < 1e-12 && row.lower_max < 1e-12);
    }
}

fn config_strategy(cap: u32) -> impl Strategy<Value = WeightConfig> {
    (1..=cap, 1..=cap, 1..=cap)
        .prop_flat_map(|(m1, m2, m3)| (Just((m1, m2, m3)), 0..=m1 + m2 + m3))
        .prop_map(|((m1, m2, m3), r)| WeightConfig::new(m1, m2, m3, r))
        .prop_filter("small cover", |c| (2..=6).contains(&c.dimension()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, rng_seed: RngSeed::Fixed(0xb7a2), ..ProptestConfig::default() })]

    #[test]
    fn branch_sets_are_consistent(cfg in config_strategy(12)) {
        let c = char_poly(&build_model(&cfg).unwrap());
        let n = c.n;
        let d = discriminant_u(&c).unwrap();
        prop_assert_eq!(d.monic.degree(), Some(n * (n - 1)));
        let set = branch_points(&c, &d, RootOptions::default()).unwrap();
        prop_assert_eq!(set.len(), n * (n - 1));
        prop_assert!(set.no_real_roots);
        prop_assert!(set.conjugation_defect() <= 1e-10);

        let sum: Complex64 = set.values().iter().sum();
        let want = -d.monic.coeff(n * (n - 1) - 1).to_f64();
        let slack: f64 = set.points.iter().map(|p| p.error_radius + 1e-14 * p.z().norm()).sum();
        prop_assert!((sum - want).norm() <= slack.max(1e-12 * want.abs()));
        prop_assert!(sum.im.abs() <= slack.max(1e-12));
    }
}
