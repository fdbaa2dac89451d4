use ncym::matforms::{blade, Calculus, DiffForm};
use ncym::random;
use ncym::{GaussRat, Matrix, Scalar, Side, C64};
use proptest::prelude::*;

fn exact() -> Calculus<GaussRat> {
    Calculus::new(2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_with_star_is_metric_times_volume(seed in any::<u64>(), k in 0usize..=3) {
        let c = exact();
        let mut rng = random::rng(seed);
        let a = random::gauss_form(&c, &mut rng, k);
        let b = random::gauss_form(&c, &mut rng, k);
        let lhs = a.wedge(&c.hodge(&b, Side::Left)).unwrap();
        let rhs = c.volume().left_mul(&c.metric(&a, &b, Side::Left));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_module_rules(seed in any::<u64>(), k in 0usize..=3) {
        let c = exact();
        let mut rng = random::rng(seed);
        let mu = random::gauss_form(&c, &mut rng, k);
        let p = random::gauss_matrix(&mut rng, 2);
        let h = |f: &DiffForm<GaussRat>| c.hodge(f, Side::Left);
        let hi = |f: &DiffForm<GaussRat>| c.hodge_inv(f, Side::Left);
        prop_assert_eq!(h(&mu.right_mul(&p)), h(&mu).left_mul(&p.adjoint()));
        prop_assert_eq!(h(&mu.left_mul(&p.adjoint())), h(&mu).right_mul(&p));
        prop_assert_eq!(hi(&mu.left_mul(&p)), hi(&mu).right_mul(&p.adjoint()));
        prop_assert_eq!(hi(&mu.right_mul(&p)), hi(&mu).left_mul(&p.adjoint()));
    }

    #[test]
    fn double_star_sign(seed in any::<u64>(), k in 0usize..=3) {
        let c = exact();
        let mut rng = random::rng(seed);
        let mu = random::gauss_form(&c, &mut rng, k);
        let twice = c.hodge(&c.hodge(&mu, Side::Left), Side::Left);
        let want = if (k * (3 - k)) % 2 == 0 { mu.clone() } else { -mu.clone() };
        prop_assert_eq!(twice, want);
        prop_assert_eq!(c.hodge_inv(&c.hodge(&mu, Side::Left), Side::Left), mu.clone());
        prop_assert_eq!(c.hodge_inv(&c.hodge(&mu, Side::Right), Side::Right), mu);
    }

    #[test]
    fn triple_pairing(seed in any::<u64>(), m in 0usize..=3, l in 0usize..=3) {
        prop_assume!(m + l <= 3);
        let k = 3 - m - l;
        let c = exact();
        let mut rng = random::rng(seed);
        let tilde = random::gauss_form(&c, &mut rng, m);
        let hat = random::gauss_form(&c, &mut rng, l);
        let mu = random::gauss_form(&c, &mut rng, k);
        let hi = |f: &DiffForm<GaussRat>| c.hodge_inv(f, Side::Left);
        let lhs = c.metric(&hat, &hi(&tilde.wedge(&mu).unwrap()), Side::Left);
        let rhs = c.metric(&hat.wedge(&tilde).unwrap(), &hi(&mu), Side::Left);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inner_product_is_integral_of_wedge(seed in any::<u64>()) {
        let c = exact();
        let mut rng = random::rng(seed);
        let a = (0..=3).fold(c.zero(), |f, k| &f + &random::gauss_form(&c, &mut rng, k));
        let b = (0..=3).fold(c.zero(), |f, k| &f + &random::gauss_form(&c, &mut rng, k));
        let top = a.wedge(&c.hodge(&b, Side::Left)).unwrap().part(3);
        prop_assert_eq!(c.hodge_inner(&a, &b, Side::Left), c.integral(&top).unwrap());
    }

    #[test]
    fn codifferential_identities(seed in any::<u64>(), j in 1usize..=3) {
        let c = exact();
        let mut rng = random::rng(seed);
        let mu = random::gauss_form(&c, &mut rng, j);
        let p = random::gauss_matrix(&mut rng, 2);
        let ds = |f: &DiffForm<GaussRat>| c.codifferential(f, Side::Left);
        prop_assert!(ds(&ds(&mu)).is_zero());
        let dp = c.differential(&DiffForm::function(p.clone()));
        let dps = c.differential(&DiffForm::function(p.adjoint()));
        // d⋆(p* μ) = p* d⋆μ + (−1)^n ⋆⁻¹((⋆μ) dp), n = 3
        let lhs = ds(&mu.left_mul(&p.adjoint()));
        let corr = c.hodge_inv(&c.hodge(&mu, Side::Left).wedge(&dp).unwrap(), Side::Left);
        prop_assert_eq!(lhs, &ds(&mu).left_mul(&p.adjoint()) - &corr);
        // d⋆(μ p) = (d⋆μ) p + (−1)^{k+1} ⋆⁻¹(dp* (⋆μ)), k + 1 = j
        let lhs = ds(&mu.right_mul(&p));
        let corr = c.hodge_inv(&dps.wedge(&c.hodge(&mu, Side::Left)).unwrap(), Side::Left);
        let rhs = if j % 2 == 0 { &ds(&mu).right_mul(&p) + &corr } else { &ds(&mu).right_mul(&p) - &corr };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_structures_are_star_conjugates(seed in any::<u64>(), k in 0usize..=3) {
        let c = exact();
        let mut rng = random::rng(seed);
        let a = random::gauss_form(&c, &mut rng, k);
        let b = random::gauss_form(&c, &mut rng, k);
        prop_assert_eq!(
            c.hodge_inner(&a, &b, Side::Right),
            c.hodge_inner(&c.star(&a), &c.star(&b), Side::Left)
        );
        let ds_r = c.codifferential(&a, Side::Right);
        prop_assert_eq!(ds_r, c.star(&c.codifferential(&c.star(&a), Side::Left)));
    }

    #[test]
    fn metric_module_property(seed in any::<u64>(), k in 0usize..=3) {
        let c = exact();
        let mut rng = random::rng(seed);
        let a = random::gauss_form(&c, &mut rng, k);
        let b = random::gauss_form(&c, &mut rng, k);
        let p = random::gauss_matrix(&mut rng, 2);
        prop_assert_eq!(
            c.metric(&a.right_mul(&p), &b, Side::Left),
            c.metric(&a, &b.right_mul(&p.adjoint()), Side::Left)
        );
    }
}

#[test]
fn positivity_of_inner_products() {
    let c = Calculus::<C64>::new(2).unwrap();
    let mut rng = random::rng(9);
    for _ in 0..200 {
        let a = random::mixed_form(&c, &mut rng);
        for side in [Side::Left, Side::Right] {
            let v = c.hodge_inner(&a, &a, side);
            assert!(v.re > 0.0 && v.im.abs() < 1e-12);
        }
    }
    assert_eq!(c.hodge_inner(&c.zero(), &c.zero(), Side::Left), C64::new(0.0, 0.0));
}

#[test]
fn volume_form_is_faithful() {
    let c = exact();
    let mut rng = random::rng(2);
    for _ in 0..20 {
        let p = random::gauss_matrix(&mut rng, 2);
        let v = c.volume();
        assert_eq!(v.left_mul(&p).is_zero(), p.is_zero());
        assert_eq!(v.left_mul(&p), v.right_mul(&p));
    }
}

#[test]
fn general_n_adjointness_and_boundary() {
    let c = Calculus::<C64>::new(3).unwrap();
    let mut rng = random::rng(21);
    for k in [0usize, 1, 3, 6] {
        let a = random::form(&c, &mut rng, k);
        let b = random::form(&c, &mut rng, k + 1);
        let lhs = c.hodge_inner(&c.differential(&a), &b, Side::Left);
        let rhs = c.hodge_inner(&a, &c.codifferential(&b, Side::Left), Side::Left);
        assert!((lhs - rhs).norm() < 1e-10, "grade {k}");
    }
    let mu = random::form(&c, &mut rng, c.dim() - 1);
    assert!(c.integral(&c.differential(&mu)).unwrap().norm() < 1e-12);
}

#[test]
fn exact_boundarylessness_for_every_codimension_one_monomial() {
    let c = exact();
    let mut rng = random::rng(4);
    for b in blade::of_grade(3, 2) {
        let mu = DiffForm::monomial(b, random::gauss_matrix(&mut rng, 2));
        assert!(c.integral(&c.differential(&mu)).unwrap().is_zero());
    }
    let d = c.differential(&DiffForm::monomial(0b011, c.generator(2).clone()));
    assert!(c.integral(&d).unwrap().is_zero());
}

#[test]
fn spectra_are_hermitian_nonnegative_and_dual() {
    let c = Calculus::<C64>::new(2).unwrap();
    for side in [Side::Left, Side::Right] {
        let all = c.spectra(side).unwrap();
        for (k, s) in all.iter().enumerate() {
            assert!(s.iter().all(|v| *v >= -1e-9), "grade {k}");
            assert!(c.laplacian_hermiticity_defect(k, side) < 1e-12);
        }
        for k in 0..=3 {
            for (x, y) in all[k].iter().zip(&all[3 - k]) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }
    let grade1 = c.spectrum(1, Side::Left).unwrap();
    assert!(grade1.iter().any(|v| (v - 1.0).abs() < 1e-10));
}

#[test]
fn closed_form_laplacian_on_functions() {
    let c = exact();
    let mut rng = random::rng(1);
    for _ in 0..50 {
        let p = random::gauss_matrix(&mut rng, 2);
        let e = |r, s| p.get(r, s).clone();
        let want = Matrix::from_row_major(vec![
            e(0, 0) - e(1, 1),
            e(0, 1) * GaussRat::from_int(2),
            e(1, 0) * GaussRat::from_int(2),
            e(1, 1) - e(0, 0),
        ])
        .unwrap();
        let got = c.laplacian(&DiffForm::function(p), Side::Left);
        assert_eq!(got, DiffForm::function(want));
    }
}
