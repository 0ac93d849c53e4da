use rand::Rng;

use super::*;
use crate::exterior::is_resonant;
use crate::numeric::Rational;
use crate::rng::{random_rational_vec, stream, RATIONAL_BOUND};
use crate::section::transversality_at;

fn form(c: &[i64]) -> BinaryForm {
    BinaryForm::from_ints(c).unwrap()
}

fn bundle(a: usize, b: usize) -> SplitBundle {
    SplitBundle::new(a, b).unwrap()
}

fn qv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// gcd degree via the Sylvester rank: `deg p + deg q − rank`.
fn sylvester_gcd_degree(p: &BinaryForm, q: &BinaryForm) -> usize {
    let s = sylvester_matrix(p, q);
    s.rows() - s.rank(0.0).unwrap()
}

#[test]
fn gcd_examples() {
    // x0 and x1
    assert_eq!(gcd_degree(&form(&[1, 0]), &form(&[0, 1])).unwrap(), 0);
    // x0² and x0 x1
    assert_eq!(gcd_degree(&form(&[1, 0, 0]), &form(&[0, 1, 0])).unwrap(), 1);
    // x1² and x0 x1
    assert_eq!(gcd_degree(&form(&[0, 0, 1]), &form(&[0, 1, 0])).unwrap(), 1);
    // (x0 + x1)(x0 − x1) and (x0 + x1) x0
    assert_eq!(gcd_degree(&form(&[1, 0, -1]), &form(&[1, 1, 0])).unwrap(), 1);
    assert_eq!(gcd_degree(&BinaryForm::zero(2), &form(&[1, 2, 3, 4])).unwrap(), 3);
    assert!(gcd_degree(&BinaryForm::zero(1), &BinaryForm::zero(2)).is_err());
}

#[test]
fn constructed_gcds_match_sylvester_rank() {
    let mut rng = stream(30, 0);
    for _ in 0..300 {
        let d = rng.random_range(0..=3);
        let (m, k) = (rng.random_range(0..=3), rng.random_range(0..=3));
        let f = BinaryForm::new(random_rational_vec(&mut rng, d + 1, RATIONAL_BOUND)).unwrap();
        let g1 = BinaryForm::new(random_rational_vec(&mut rng, m + 1, RATIONAL_BOUND)).unwrap();
        let g2 = BinaryForm::new(random_rational_vec(&mut rng, k + 1, RATIONAL_BOUND)).unwrap();
        let (p, q) = (f.mul(&g1), f.mul(&g2));
        let g = gcd_degree(&p, &q).unwrap();
        assert_eq!(g, sylvester_gcd_degree(&p, &q));
        assert!(g >= d);
        assert_eq!(g == d, coprime(&g1, &g2) || m + k == 0);
    }
}

#[test]
fn resonance_examples() {
    let s = section_from_ints(&[1, 0], &[1, 0]).unwrap();
    assert!(is_resonant_gcd(&s).unwrap());
    assert!(!is_resonant_gcd(&section_from_ints(&[1, 0], &[0, 1]).unwrap()).unwrap());
    assert!(is_resonant_gcd(&section_from_ints(&[0, 0], &[3, 1, 2]).unwrap()).unwrap());
    assert!(section_from_ints(&[0, 0], &[0, 0]).is_err());
}

#[test]
fn stratum_examples() {
    assert_eq!(stratum(&section_from_ints(&[1, 0, 0], &[1, 0, 0]).unwrap()).unwrap(), 2);
    assert_eq!(stratum(&section_from_ints(&[0, 1, 0], &[0, 1, 0]).unwrap()).unwrap(), 2);
    // x0 (x0 + x1) ⊕ x0 x1²
    let s = section_from_ints(&[1, 1, 0], &[0, 0, 1, 0]).unwrap();
    assert_eq!(stratum(&s).unwrap(), 1);
    assert_eq!(stratum(&section_from_ints(&[0, 0, 0], &[1, 2, 3, 4]).unwrap()).unwrap(), 3);
    assert_eq!(stratum(&section_from_ints(&[1, 2, 3], &[0, 0, 0, 0]).unwrap()).unwrap(), 2);
    assert_eq!(stratum(&section_from_ints(&[1, 0], &[0, 1]).unwrap()).unwrap(), 0);
}

#[test]
fn lambda_examples() {
    let s1 = section_from_ints(&[1, 0], &[1, 0]).unwrap();
    let s2 = section_from_ints(&[0, 1], &[0, 1]).unwrap();
    assert_eq!(lambda_stratum(&s1, &s2).unwrap(), 1);
    let s1 = section_from_ints(&[1, 0, 0], &[1, 0, 0]).unwrap();
    let s2 = section_from_ints(&[0, 1, 0], &[0, 1, 0]).unwrap();
    assert_eq!(lambda_stratum(&s1, &s2).unwrap(), 2);
    let s1 = section_from_ints(&[1, 0], &[0, 0]).unwrap();
    let s2 = section_from_ints(&[0, 0], &[0, 1]).unwrap();
    assert!(lambda_stratum(&s1, &s2).is_err());
    assert!(lambda_stratum(&s1, &s1).is_err());
}

#[test]
fn build_pair_dimensions() {
    for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 4)] {
        let p = build_pair(&bundle(a, b)).unwrap();
        let n = a + b + 2;
        assert_eq!(p.n(), n);
        assert_eq!(p.dim_kperp(), n * (n - 1) / 2 - (a + b + 1));
    }
    assert!(SplitBundle::new(0, 1).is_err());
    assert!(SplitBundle::new(3, 2).is_err());
}

#[test]
fn determinant_matrix_pairs_with_wedges() {
    // ⟨det row k, s ∧ t⟩ is the x0^(a+b−k) x1^k coefficient of s1 t2 − s2 t1
    let mut rng = stream(31, 0);
    let e = bundle(2, 3);
    let det = determinant_matrix(&e);
    for _ in 0..20 {
        let s = section_from_vector(&e, &random_rational_vec(&mut rng, e.n(), RATIONAL_BOUND)).unwrap();
        let t = section_from_vector(&e, &random_rational_vec(&mut rng, e.n(), RATIONAL_BOUND)).unwrap();
        let w = crate::exterior::wedge_vectors(&s.to_vector(), &t.to_vector()).unwrap();
        let image = det.mul_vec(w.coords()).unwrap();
        assert_eq!(image, s.cross_determinant(&t).unwrap().coeffs());
    }
}

#[test]
fn theta_examples() {
    let e = bundle(2, 3);
    let s = theta_d(&e, 1, &form(&[1, 0]), &form(&[0, 1]), &form(&[0, 0, 1])).unwrap();
    assert_eq!(s, section_from_ints(&[0, 1, 0], &[0, 0, 1, 0]).unwrap());
    // the cofactors x1 and x1² share x1, so the saturation has degree 2
    assert_eq!(stratum(&s).unwrap(), 2);
    let s = theta_d(&e, 1, &form(&[1, 0]), &form(&[0, 1]), &form(&[1, 0, 1])).unwrap();
    assert_eq!(stratum(&s).unwrap(), 1);
    let s = theta_d(&e, 1, &form(&[1, 1]), &form(&[0, 1]), &form(&[0, 1, 1])).unwrap();
    assert_eq!(stratum(&s).unwrap(), 2);
    assert!(theta_d(&e, 1, &form(&[1, 0, 0]), &form(&[0, 1]), &form(&[0, 0, 1])).is_err());
    assert!(theta_d(&e, 3, &form(&[1, 0, 0, 0]), &form(&[1]), &form(&[1])).is_err());
}

#[test]
fn sampled_strata_are_exact() {
    let mut rng = stream(32, 0);
    for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 4)] {
        let e = bundle(a, b);
        for &d in &e.strata() {
            for _ in 0..20 {
                let s = sample_stratum(&e, d, &mut rng).unwrap();
                assert_eq!(stratum(&s).unwrap(), d);
                if d > a {
                    assert!(s.h1.is_zero());
                } else {
                    assert_eq!(sylvester_gcd_degree(&s.h1, &s.h2), d);
                }
            }
        }
        assert!(sample_stratum(&e, 0, &mut rng).is_err());
    }
    assert!(sample_stratum(&bundle(2, 4), 3, &mut rng).is_err());
}

#[test]
fn gcd_test_matches_resultant() {
    let mut rng = stream(33, 0);
    for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let e = bundle(a, b);
        let strata = e.strata();
        for i in 0..500 {
            let s = if i % 2 == 0 {
                let d = strata[rng.random_range(0..strata.len())];
                sample_stratum(&e, d, &mut rng).unwrap()
            } else {
                section_from_vector(&e, &random_rational_vec(&mut rng, e.n(), RATIONAL_BOUND)).unwrap()
            };
            if s.h1.is_zero() || s.h2.is_zero() {
                continue;
            }
            assert_eq!(is_resonant_gcd(&s).unwrap(), !coprime(&s.h1, &s.h2));
        }
    }
}

#[test]
fn cone_dimensions() {
    let mut rng = stream(34, 0);
    assert_eq!(stratum_cone_dimension(&bundle(2, 3), 1, &mut rng).unwrap(), 6);
    assert_eq!(stratum_cone_dimension(&bundle(1, 1), 1, &mut rng).unwrap(), 3);
    assert_eq!(stratum_cone_dimension(&bundle(2, 2), 2, &mut rng).unwrap(), 4);
    assert!(stratum_cone_dimension(&bundle(2, 3), 3, &mut rng).is_err());
    let table = cone_dimension_table(&bundle(3, 4), 3, 1).unwrap();
    assert_eq!(table.len(), 3);
    assert!(table.iter().all(|r| r.matches()));
}

#[test]
fn cross_check_small() {
    for (a, b) in [(1, 1), (2, 2), (1, 2)] {
        let r = cross_check(&bundle(a, b), 200, 9).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.forced_resonant, 100);
        assert!(r.strata.keys().filter(|&&d| d > 0).count() >= 1);
    }
}

#[test]
fn rank_and_gcd_witnesses_agree() {
    // a rank-test witness is a second section with vanishing cross-determinant
    let e = bundle(2, 3);
    let p = build_pair(&e).unwrap();
    let s = section_from_ints(&[1, 1, 0], &[0, 0, 1, 0]).unwrap();
    let m = is_resonant(&s.to_vector(), &p, 0.0).unwrap();
    assert!(m.resonant);
    let w = section_from_vector(&e, &m.witness.unwrap()).unwrap();
    assert!(s.cross_determinant(&w).unwrap().is_zero());
    let s = section_from_ints(&[1, 0, 1], &[0, 1, 0, 0]).unwrap();
    assert!(!is_resonant(&s.to_vector(), &p, 0.0).unwrap().resonant);
}

#[test]
fn conic_points_are_transversal_for_o1_o1() {
    let p = build_pair(&bundle(1, 1)).unwrap();
    let mut rng = stream(35, 0);
    for _ in 0..25 {
        let v = random_rational_vec(&mut rng, 2, RATIONAL_BOUND);
        let (al, be) = (v[0].clone(), v[1].clone());
        let zero = Rational::from_integer(0.into());
        let a = vec![al.clone(), zero.clone(), be.clone(), zero.clone()];
        let b = vec![zero.clone(), al, zero, be];
        assert!(transversality_at(&a, &b, &p, 0.0).unwrap().transversal);
    }
}

#[test]
fn o2_o2_has_non_transversal_points() {
    let p = build_pair(&bundle(2, 2)).unwrap();
    let t = transversality_at(&qv(&[1, 0, 0, 1, 0, 0]), &qv(&[0, 1, 0, 0, 1, 0]), &p, 0.0).unwrap();
    assert!(!t.transversal);
    assert!(t.rank < 15);
}

#[test]
fn o1_o2_lambda_strata_include_one_and_b() {
    // Two generators of one saturated subsheaf: f·(g1, g2) and f'·(g1, g2),
    // or two sections of the O(b) factor.
    let e = bundle(1, 2);
    let mut rng = stream(36, 0);
    let mut seen = std::collections::BTreeSet::new();
    let mut draw = |deg: usize| BinaryForm::new(random_rational_vec(&mut rng, deg + 1, RATIONAL_BOUND)).unwrap();
    for i in 0..40 {
        let (s1, s2) = if i % 2 == 0 {
            let (f, f2, g1, g2) = (draw(1), draw(1), draw(0), draw(1));
            (theta_d(&e, 1, &f, &g1, &g2).unwrap(), theta_d(&e, 1, &f2, &g1, &g2).unwrap())
        } else {
            let zero = BinaryForm::zero(1);
            (BinaryFormPair::new(zero.clone(), draw(2)).unwrap(), BinaryFormPair::new(zero, draw(2)).unwrap())
        };
        match lambda_stratum(&s1, &s2) {
            Ok(d) => {
                seen.insert(d);
            }
            // dependent draws or a shared root between f' and g2 are possible but rare
            Err(_) => continue,
        }
    }
    assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![1, 2]);
}
