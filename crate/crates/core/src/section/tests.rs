use num_complex::Complex64;

use super::*;
use crate::exterior::{PairVK, Side, TwoForm};
use crate::numeric::Rational;
use crate::rng::stream;

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn qv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

fn two_lines_pair() -> PairVK<Rational> {
    let kp = vec![TwoForm::basis(4, 0, 1, Side::Dual), TwoForm::basis(4, 2, 3, Side::Dual)];
    PairVK::from_kperp(4, kp, 0.0).unwrap()
}

#[test]
fn catalan_examples() {
    assert_eq!(catalan_degree(4).unwrap(), 2);
    assert_eq!(catalan_degree(5).unwrap(), 5);
    assert_eq!(catalan_degree(6).unwrap(), 14);
    assert_eq!(catalan_degree(7).unwrap(), 42);
    assert!(catalan_degree(3).is_err());
}

#[test]
fn quadric_examples() {
    let sys = build_quadric_system(&two_lines_pair()).unwrap();
    assert_eq!(sys.len(), 1);
    assert_eq!(sys[0].terms(), &[(vec![1, 1], Complex64::new(2.0, 0.0))]);

    let full = PairVK::<Rational>::from_k(4, vec![], 0.0).unwrap();
    let sys = build_quadric_system(&full).unwrap();
    // Kperp basis is the identity in some order; the quadric is twice the Plücker relation
    let t = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0].map(|x| Complex64::new(x, 0.0));
    let kp = full.kperp_basis();
    let mut w = [Complex64::new(0.0, 0.0); 6];
    for (ti, k) in t.iter().zip(kp) {
        for (wj, c) in w.iter_mut().zip(k.coords()) {
            *wj += ti * crate::numeric::Field::to_complex(c);
        }
    }
    let plucker = w[0] * w[5] - w[1] * w[4] + w[2] * w[3];
    assert!((sys[0].eval(&t) - plucker * 2.0).norm() < 1e-9);

    let mut rng = stream(5, 0);
    let p6 = random_rational_pair(6, 8, &mut rng).unwrap();
    assert_eq!(build_quadric_system(&p6).unwrap().len(), 15);
    assert_eq!(expected_section_dim(&p6), 0);
    assert_eq!(expected_section_dim(&dual_pair(&p6)), 1);
}

#[test]
fn transversality_examples() {
    let p = two_lines_pair();
    let t = transversality_at(&qv(&[1, 0, 0, 0]), &qv(&[0, 1, 0, 0]), &p, 0.0).unwrap();
    assert!(t.transversal);
    assert_eq!(t.rank, 6);
    // scaling and change of basis of the line do not matter
    let t = transversality_at(&qv(&[3, 1, 0, 0]), &qv(&[1, -2, 0, 0]), &p, 0.0).unwrap();
    assert!(t.transversal);
    assert!(transversality_at(&qv(&[1, 0, 0, 0]), &qv(&[0, 0, 1, 0]), &p, 0.0).is_err());
    let cp = p.to_complex();
    let a = [1.0, 0.0, 0.0, 0.0].map(|x| Complex64::new(x, 0.0));
    let b = [0.0, 1.0, 0.0, 0.0].map(|x| Complex64::new(x, 0.0));
    assert!(transversality_at(&a, &b, &cp, 1e-8).unwrap().transversal);
}

#[test]
fn disjointness_examples() {
    let e = |i: usize| {
        let mut v = qv(&[0, 0, 0, 0]);
        v[i] = q(1);
        v
    };
    let (m, all) = lines_and_disjointness(&[(e(0), e(1)), (e(2), e(3))], 0.0).unwrap();
    assert!(all && m[0][1] && m[1][0] && !m[0][0]);
    let (_, all) = lines_and_disjointness(&[(e(0), e(1)), (e(1), e(2))], 0.0).unwrap();
    assert!(!all);
}

#[test]
fn two_lines_section() {
    let p = two_lines_pair();
    let r = solve_finite_section(&p, &SectionConfig::default()).unwrap();
    assert_eq!(r.expected_count, 2);
    assert_eq!(r.solutions.len(), 2);
    assert!(r.is_transversal() && r.lines_pairwise_disjoint);
    let mut ts: Vec<Vec<f64>> = r.solutions.iter().map(|s| s.t.iter().map(|z| z.norm()).collect()).collect();
    ts.sort_by(|x, y| x[0].total_cmp(&y[0]));
    assert!(ts[0][0] < 1e-8 && (ts[0][1] - 1.0).abs() < 1e-8);
    assert!(ts[1][1] < 1e-8 && (ts[1][0] - 1.0).abs() < 1e-8);
    let check = membership_cross_check(&r.solutions, &p, 5, 1e-8, 3).unwrap();
    assert!(check.passed(), "{check:?}");
}

#[test]
fn random_quintic_section() {
    let mut rng = stream(6, 0);
    let p = random_rational_pair(5, 6, &mut rng).unwrap();
    let r = solve_finite_section(&p, &SectionConfig::default()).unwrap();
    assert_eq!(r.paths_run % 8, 0);
    assert_eq!(r.solutions.len(), 5);
    assert!(r.is_transversal() && r.lines_pairwise_disjoint);
    for s in &r.solutions {
        assert!(s.full_residual < 1e-8);
    }
    assert!(membership_cross_check(&r.solutions, &p, 3, 1e-8, 4).unwrap().passed());
}

#[test]
fn duality_helpers() {
    let mut rng = stream(7, 0);
    let p = random_rational_pair(5, 6, &mut rng).unwrap();
    assert_eq!(dual_pair(&dual_pair(&p)), p);
    assert!(slice_to_finite(&p, &mut rng).is_err());
    let cut = slice_to_finite(&dual_pair(&p), &mut rng).unwrap();
    assert_eq!(expected_section_dim(&cut), 0);
    assert_eq!(cut.dim_kperp(), 4);

    let dp = degenerate_pair(6, 8, &mut rng).unwrap();
    let t = transversality_at(&dp.c, &dp.d, &dual_pair(&dp.pair), 0.0).unwrap();
    assert!(!t.transversal);
    assert_eq!(t.rank, 14);
}

#[test]
fn refuses_positive_dimensional_sections() {
    let mut rng = stream(8, 0);
    let p = random_rational_pair(5, 5, &mut rng).unwrap();
    assert!(solve_finite_section(&p, &SectionConfig::default()).is_err());
}
