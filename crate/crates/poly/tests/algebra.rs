use gaudin_poly::modular::{are_coprime, is_squarefree};
use gaudin_poly::{eval_uni_complex, resultant_uni, resultant_x, BiPoly, MpComplex, Rational, UniPoly, Var};
use proptest::prelude::*;

const CURVE_3444: &str = "x^4 + (-10u - 10)x^3 + (-27u^2 + 162u - 27)x^2 \
    + (360u^3 - 432u^2 - 432u + 360)x - 324u^4 - 864u^3 + 2376u^2 - 864u - 324";

const DISC_3444: &str = "u^12 - 11364/1225 u^11 + 56991/1225 u^10 - 36208/245 u^9 \
    + 9784071/30625 u^8 - 15151356/30625 u^7 + 3489114/6125 u^6 - 15151356/30625 u^5 \
    + 9784071/30625 u^4 - 36208/245 u^3 + 56991/1225 u^2 - 11364/1225 u + 1";

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::from((n, d)))
}

fn small_bipoly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, small_rational()), 0..6).prop_map(BiPoly::from_terms)
}

fn small_unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rational(), 0..6).prop_map(|c| UniPoly::from_coeffs(Var::X, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bivariate_ring_axioms(a in small_bipoly(3), b in small_bipoly(3), c in small_bipoly(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn univariate_ring_axioms(a in small_unipoly(), b in small_unipoly(), c in small_unipoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn resultant_antisymmetry(a in small_bipoly(2), b in small_bipoly(2)) {
        prop_assume!(a.deg_x().unwrap_or(0) >= 1 && b.deg_x().unwrap_or(0) >= 1);
        let ab = resultant_x(&a, &b).unwrap();
        let ba = resultant_x(&b, &a).unwrap();
        let m = a.deg_x().unwrap() * b.deg_x().unwrap();
        let sign = if m % 2 == 0 { Rational::from(1) } else { Rational::from(-1) };
        prop_assert_eq!(ab, ba.scale(&sign));
    }

    #[test]
    fn resultant_specializes(a in small_bipoly(2), b in small_bipoly(2), t in -5i64..5) {
        prop_assume!(a.deg_x().unwrap_or(0) >= 1 && b.deg_x().unwrap_or(0) >= 1);
        let t = Rational::from(t);
        let la = a.leading_x_coeff().unwrap().eval(&t);
        let lb = b.leading_x_coeff().unwrap().eval(&t);
        prop_assume!(la != 0 && lb != 0);
        let r = resultant_x(&a, &b).unwrap();
        prop_assert_eq!(r.eval(&t), resultant_uni(&a.eval_u(&t), &b.eval_u(&t)));
    }

    #[test]
    fn json_round_trip(a in small_bipoly(4)) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<BiPoly>(&s).unwrap(), a.clone());
        prop_assert_eq!(BiPoly::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn planted_double_root(q in small_bipoly(2), a in -4i64..4, b in -4i64..4) {
        // p = (x - a - b u)^2 q has a double root in x for every u.
        prop_assume!(q.deg_x().is_some());
        let lin = BiPoly::from_terms([
            (1, 0, Rational::from(1)),
            (0, 0, Rational::from(-a)),
            (0, 1, Rational::from(-b)),
        ]);
        let p = &(&lin * &lin) * &q;
        prop_assert!(resultant_x(&p, &p.derivative_x()).unwrap().is_zero());
    }

    #[test]
    fn squarefree_part_has_nonzero_discriminant(r in prop::collection::btree_set(-6i64..6, 1..5)) {
        let roots: Vec<i64> = r.into_iter().collect();
        let mut p = UniPoly::one(Var::X);
        for &z in &roots {
            p = &p * &UniPoly::from_ints(Var::X, &[-z, 1]);
        }
        let bp = BiPoly::from_uni(&p, true);
        let disc = resultant_x(&bp, &bp.derivative_x()).unwrap();
        prop_assert!(!disc.is_zero());
        prop_assert!(is_squarefree(&p));
        let doubled = &p * &UniPoly::from_ints(Var::X, &[-roots[0], 1]);
        prop_assert!(!is_squarefree(&doubled));
        let bd = BiPoly::from_uni(&doubled, true);
        prop_assert!(resultant_x(&bd, &bd.derivative_x()).unwrap().is_zero());
    }
}

#[test]
fn linear_resultant_convention() {
    let p = BiPoly::parse("x - 3").unwrap();
    let q = BiPoly::parse("x + 4").unwrap();
    assert_eq!(resultant_x(&p, &q).unwrap(), UniPoly::from_ints(Var::U, &[7]));
    let p = BiPoly::parse("x - u").unwrap();
    let q = BiPoly::parse("x - 2u - 1").unwrap();
    assert_eq!(resultant_x(&p, &q).unwrap(), UniPoly::from_ints(Var::U, &[-1, -1]));
}

#[test]
fn square_root_resultant() {
    let p = BiPoly::parse("x^2 - u").unwrap();
    assert_eq!(resultant_x(&p, &BiPoly::x()).unwrap(), UniPoly::from_ints(Var::U, &[0, -1]));
}

#[test]
fn constant_argument_convention() {
    let c = BiPoly::parse("3").unwrap();
    let q = BiPoly::parse("x^2 + u").unwrap();
    assert_eq!(resultant_x(&c, &q).unwrap(), UniPoly::from_ints(Var::U, &[9]));
    assert!(resultant_x(&BiPoly::zero(), &q).is_err());
}

#[test]
fn discriminant_of_example_curve() {
    let f = BiPoly::parse(CURVE_3444).unwrap();
    let disc = resultant_x(&f, &f.derivative_x()).unwrap();
    assert_eq!(disc.degree(), Some(12));
    let expected = UniPoly::parse(DISC_3444, Var::U).unwrap();
    assert_eq!(disc.monic(), expected);
    assert_eq!(disc.monic().to_text().replace(' ', ""), DISC_3444.replace(' ', ""));
    assert!(is_squarefree(&disc));
    assert_eq!(disc.gcd(&disc.derivative()), UniPoly::one(Var::U));
}

#[test]
fn gcd_examples() {
    let a = UniPoly::parse("x^2 - 1", Var::X).unwrap();
    let b = UniPoly::parse("x - 1", Var::X).unwrap();
    assert_eq!(a.gcd(&b), b);
    let p = UniPoly::parse("3x^2 + 6", Var::X).unwrap();
    assert_eq!(p.gcd(&UniPoly::zero(Var::X)), p.monic());
    assert!(are_coprime(&a, &UniPoly::parse("x + 2", Var::X).unwrap()));
}

#[test]
fn complex_evaluation_examples() {
    let p = UniPoly::parse("x^2 - 1", Var::X).unwrap();
    let e = eval_uni_complex(&p, &MpComplex::from_f64(1.0, 0.0, 64), 64);
    assert!(e.value.is_zero());
    let q = BiPoly::parse("x - u").unwrap();
    let i = MpComplex::from_f64(0.0, 1.0, 64);
    assert!(gaudin_poly::eval_bi_complex(&q, &i, &i, 64).value.is_zero());
}
