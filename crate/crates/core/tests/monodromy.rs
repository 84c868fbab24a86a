use gaudin_core::curve::real_spectrum;
use gaudin_core::monodromy::*;
use gaudin_core::numeric::RootOptions;
use gaudin_core::{
    branch_points, build_model, char_poly, discriminant_u, identify_group, monodromy_group, simplicity_check,
    BranchSet, GaudinCurve, GaudinError, Permutation, WeightConfig,
};
use gaudin_poly::Integer;
use num_complex::Complex64;

fn setup(m1: u32, m2: u32, m3: u32, r: u32) -> (GaudinCurve, BranchSet) {
    let c = char_poly(&build_model(&WeightConfig::new(m1, m2, m3, r)).unwrap());
    let set = branch_points(&c, &discriminant_u(&c).unwrap(), RootOptions::default()).unwrap();
    (c, set)
}

fn check_symmetric(report: &MonodromyReport, n: usize) {
    assert_eq!(report.degree, n);
    assert!(report.transitive);
    assert_eq!(report.order, Integer::from(Integer::factorial(n as u32)));
    assert!(report.is_full_symmetric);
    assert!(report.all_transpositions);
    assert!(report.product_is_identity);
    let product = report.loops.iter().fold(Permutation::identity(n), |acc, l| acc.then(&l.permutation));
    assert!(product.is_identity());
}

#[test]
fn degree_four_group() {
    let (c, set) = setup(3, 4, 4, 4);
    let rep = monodromy_group(&c, &set, MonodromyOptions::default()).unwrap();
    assert_eq!(rep.loops.len(), 12);
    check_symmetric(&rep, 4);
}

#[test]
fn degree_seven_group() {
    let (c, set) = setup(10, 10, 10, 6);
    let rep = monodromy_group(&c, &set, MonodromyOptions::default()).unwrap();
    assert_eq!(rep.loops.len(), 42);
    check_symmetric(&rep, 7);
}

#[test]
fn loops_are_in_angular_order() {
    let (c, set) = setup(3, 4, 4, 4);
    let rep = monodromy_group(&c, &set, MonodromyOptions::default()).unwrap();
    let angles: Vec<f64> =
        rep.loops.iter().map(|l| Complex64::new(l.branch_point[0] - 0.5, l.branch_point[1]).arg()).collect();
    assert!(angles.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn runs_are_deterministic() {
    let (c, set) = setup(10, 10, 10, 6);
    let a = monodromy_group(&c, &set, MonodromyOptions::default()).unwrap();
    let b = monodromy_group(&c, &set, MonodromyOptions::default()).unwrap();
    let gens = |r: &MonodromyReport| r.loops.iter().map(|l| l.permutation.clone()).collect::<Vec<_>>();
    assert_eq!(gens(&a), gens(&b));
}

#[test]
fn generators_survive_doubling_the_radius() {
    for (m1, m2, m3, r) in [(3, 4, 4, 4), (10, 10, 10, 6)] {
        let (c, set) = setup(m1, m2, m3, r);
        let small = MonodromyOptions { radius_factor: 1.0 / 6.0, ..MonodromyOptions::default() };
        let a = monodromy_group(&c, &set, small).unwrap();
        let b = monodromy_group(&c, &set, MonodromyOptions::default()).unwrap();
        for (x, y) in a.loops.iter().zip(&b.loops) {
            assert_eq!(x.branch_index, y.branch_index);
            assert!((y.radius / x.radius - 2.0).abs() < 1e-12);
            assert_eq!(x.permutation, y.permutation);
        }
    }
}

#[test]
fn multiprecision_tracking_agrees() {
    let (c, set) = setup(3, 4, 4, 4);
    let points = set.values();
    let opts = MonodromyOptions::default();
    for i in 0..points.len() {
        let (out, circle, _, _) = petal(&points, i, &opts);
        let mut pieces = out.pieces.clone();
        pieces.extend(circle.pieces.iter().copied());
        pieces.extend(out.reversed().pieces);
        let path = Path { pieces };
        let p53 = track_eigenvalues(&c, &path, &points, 53, opts.policy).unwrap();
        let p256 = track_eigenvalues(&c, &path, &points, 256, opts.policy).unwrap();
        assert_eq!(p53, p256);
        assert!(p53.is_transposition());
    }
}

#[test]
fn trivial_paths_give_the_identity() {
    let (c, set) = setup(3, 4, 4, 4);
    let points = set.values();
    let policy = StepPolicy::default();
    let u = Complex64::new(0.5, 0.0);
    assert!(track_eigenvalues(&c, &Path::default(), &points, 53, policy).unwrap().is_identity());
    let still = Path { pieces: vec![Piece::Line { from: [0.5, 0.0], to: [0.5, 0.0] }] };
    assert!(track_eigenvalues(&c, &still, &points, 53, policy).unwrap().is_identity());
    let nearest = points.iter().map(|b| (b - u).norm()).fold(f64::INFINITY, f64::min);
    let small = Path::circle(u, nearest / 2.0, 0.0);
    assert!(track_eigenvalues(&c, &small, &points, 53, policy).unwrap().is_identity());
    // a loop enclosing every branch point is trivial as well
    let far = points.iter().map(|b| b.norm()).fold(0.0, f64::max) * 2.0 + 1.0;
    let big = Path::circle(Complex64::new(0.0, 0.0), far, 0.0);
    assert!(track_eigenvalues(&c, &big, &points, 53, policy).unwrap().is_identity());
}

#[test]
fn base_point_spectrum_is_real_and_simple() {
    for (m1, m2, m3, r) in [(3, 4, 4, 4), (10, 10, 10, 6), (30, 30, 30, 20)] {
        let m = build_model(&WeightConfig::new(m1, m2, m3, r)).unwrap();
        let ev = real_spectrum(&m, 0.5);
        let scale = ev.iter().map(|x| x.abs()).fold(1.0, f64::max);
        assert!(ev.windows(2).all(|w| w[1] - w[0] > 1e-9 * scale));
    }
}

#[test]
fn simple_covers_have_transposition_generators() {
    for (m1, m2, m3, r) in [(2, 2, 2, 2), (4, 3, 5, 3), (6, 2, 4, 2), (5, 5, 5, 5), (7, 8, 3, 6)] {
        let (c, set) = setup(m1, m2, m3, r);
        assert!(simplicity_check(&c, &set.discriminant).unwrap());
        let rep = monodromy_group(&c, &set, MonodromyOptions::default()).unwrap();
        assert!(rep.all_transpositions && rep.transitive && rep.product_is_identity, "({m1},{m2},{m3},{r})");
    }
}

#[test]
fn base_point_on_a_branch_point_is_rejected() {
    let (c, mut set) = setup(1, 1, 1, 1);
    set.points[0].re = 0.5;
    set.points[0].im = 0.0;
    let rep = monodromy_group(&c, &set, MonodromyOptions::default());
    assert!(matches!(rep, Err(GaudinError::PreconditionFailed(_))));
}

#[test]
fn group_identification() {
    for n in 2..9 {
        let info = identify_group(&[Permutation::transposition(n, 0, 1), Permutation::cycle(n)], n);
        assert_eq!(info.order, Integer::from(Integer::factorial(n as u32)));
        assert!(info.transitive && info.is_full_symmetric);
    }
    let info = identify_group(&[Permutation::identity(5)], 5);
    assert_eq!(info.order, 1);
    assert!(!info.transitive);
    // the Klein four-group inside S4
    let a = Permutation::from_images(vec![1, 0, 3, 2]).unwrap();
    let b = Permutation::from_images(vec![2, 3, 0, 1]).unwrap();
    let info = identify_group(&[a, b], 4);
    assert_eq!(info.order, 4);
    assert!(info.transitive && !info.is_full_symmetric);
    assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
}
