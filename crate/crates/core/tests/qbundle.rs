use ncym::matforms::Calculus;
use ncym::qbundle::total::TotalForm;
use ncym::qbundle::{upsilon, upsilon_inv, ChargedSection, GaugeConnection, QvbForm};
use ncym::random::{self, SeededRng};
use ncym::{DiffForm, GaussRat, Scalar, Side, C64};
use proptest::prelude::*;

fn exact() -> Calculus<GaussRat> {
    Calculus::new(2).unwrap()
}

fn gauss_connection(c: &Calculus<GaussRat>, rng: &mut SeededRng) -> GaugeConnection<GaussRat> {
    GaugeConnection::new(random::gauss_form(c, rng, 1)).unwrap()
}

fn float_connection(c: &Calculus<C64>, rng: &mut SeededRng) -> GaugeConnection<C64> {
    GaugeConnection::new(random::form(c, rng, 1)).unwrap()
}

fn real_part(c: &Calculus<C64>, a: &GaugeConnection<C64>) -> GaugeConnection<C64> {
    let p = a.potential();
    GaugeConnection::new((p - &c.star(p)).scale(&C64::new(0.5, 0.0))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn left_derivative_matches_total_space(seed in any::<u64>(), n in -3i64..=3, k in 0usize..=2) {
        let c = exact();
        let mut rng = random::rng(seed);
        let a = gauss_connection(&c, &mut rng);
        let mu = random::gauss_form(&c, &mut rng, k);
        let fast = c.cov_exterior(&a, &QvbForm::new(n, Side::Left, mu.clone())).unwrap();
        let slow = c.total_cov_derivative(&a, &TotalForm::horizontal(n, mu)).unwrap();
        prop_assert!(slow.vert.is_zero());
        prop_assert_eq!(fast.form, slow.base);
    }

    #[test]
    fn right_derivative_is_star_conjugate_in_total_space(seed in any::<u64>(), n in -3i64..=3, k in 0usize..=2) {
        let c = exact();
        let mut rng = random::rng(seed);
        let a = gauss_connection(&c, &mut rng);
        let mu = random::gauss_form(&c, &mut rng, k);
        let fast = c.cov_exterior(&a, &QvbForm::new(n, Side::Right, mu.clone())).unwrap();
        let conj = c.total_star(&TotalForm::horizontal(n, mu));
        let slow = c.total_star(&c.total_cov_derivative(&a, &conj).unwrap());
        prop_assert!(slow.vert.is_zero());
        prop_assert_eq!(slow.charge, n);
        prop_assert_eq!(fast.form, slow.base);
    }

    #[test]
    fn k_is_the_difference_of_derivatives(seed in any::<u64>(), n in -3i64..=3, side in prop_oneof![Just(Side::Left), Just(Side::Right)]) {
        let c = exact();
        let mut rng = random::rng(seed);
        let a = gauss_connection(&c, &mut rng);
        let lam = random::gauss_form(&c, &mut rng, 1);
        let mu = random::gauss_form(&c, &mut rng, 1);
        let psi = QvbForm::new(n, side, mu);
        let d1 = c.cov_exterior(&a.displaced(&lam).unwrap(), &psi).unwrap();
        let d0 = c.cov_exterior(&a, &psi).unwrap();
        let k = c.displacement_k_form(&lam, &psi).unwrap();
        prop_assert_eq!(&d1.form - &d0.form, k.form);
        let twice = c.displacement_k_form(&(&lam + &lam), &psi).unwrap();
        prop_assert_eq!(twice.form, c.displacement_k_form(&lam, &psi).unwrap().form.scale(&GaussRat::from_int(2)));
    }

    #[test]
    fn adjointness_exact(seed in any::<u64>(), n in -2i64..=2, k in 0usize..=2, side in prop_oneof![Just(Side::Left), Just(Side::Right)]) {
        let c = exact();
        let mut rng = random::rng(seed);
        let a = gauss_connection(&c, &mut rng);
        let x = QvbForm::new(n, side, random::gauss_form(&c, &mut rng, k));
        let y = QvbForm::new(n, side, random::gauss_form(&c, &mut rng, k + 1));
        let lhs = c.qvb_inner(&c.cov_exterior(&a, &x).unwrap(), &y).unwrap();
        let rhs = c.qvb_inner(&x, &c.cov_codifferential(&a, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn literal_formula_is_the_adjoint_for_real_connections(seed in any::<u64>(), n in -2i64..=2, j in 1usize..=3, side in prop_oneof![Just(Side::Left), Just(Side::Right)]) {
        let c = exact();
        let mut rng = random::rng(seed);
        let raw = random::gauss_form(&c, &mut rng, 1);
        let a = GaugeConnection::new(&raw - &c.star(&raw)).unwrap();
        prop_assert!(c.is_real(&a));
        let y = QvbForm::new(n, side, random::gauss_form(&c, &mut rng, j));
        prop_assert_eq!(
            c.cov_codifferential(&a, &y).unwrap(),
            c.cov_codifferential_formula(&a, &y).unwrap()
        );
    }
}

#[test]
fn adjointness_with_decomposed_non_real_connections() {
    let c = Calculus::<C64>::new(2).unwrap();
    let mut rng = random::rng(77);
    let half_i = C64::new(0.0, -0.5);
    for n in [-2i64, -1, 1, 2] {
        for side in [Side::Left, Side::Right] {
            for _ in 0..25 {
                let a = float_connection(&c, &mut rng);
                let real = real_part(&c, &a);
                // A = A' + iλ' with λ' = (A + A*)/(2i)
                let lam = (a.potential() + &c.star(a.potential())).scale(&half_i);
                let ilam = lam.scale(&C64::new(0.0, 1.0));
                assert!(real.potential().max_abs_diff(&(a.potential() - &ilam)) < 1e-14);
                for j in 1..=3 {
                    let y = QvbForm::new(n, side, random::form(&c, &mut rng, j));
                    let direct = c.cov_codifferential(&a, &y).unwrap();
                    let via = c
                        .cov_codifferential_formula(&real, &y)
                        .unwrap()
                        .add(&c.displacement_k_adjoint(&ilam, &y).unwrap())
                        .unwrap();
                    assert!(direct.form.max_abs_diff(&via.form) < 1e-12);
                    let x = QvbForm::new(n, side, random::form(&c, &mut rng, j - 1));
                    let lhs = c.qvb_inner(&c.cov_exterior(&a, &x).unwrap(), &y).unwrap();
                    let rhs = c.qvb_inner(&x, &direct).unwrap();
                    assert!((lhs - rhs).norm() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn literal_formula_fails_for_non_real_connections() {
    let c = exact();
    let gens: Vec<_> = (0..3).map(|k| c.generator(k).clone()).collect();
    let a = GaugeConnection::new(DiffForm::one_form(&gens).unwrap()).unwrap();
    assert!(!c.is_real(&a));
    let y = c.cov_derivative(&a, &ChargedSection::frame(1, Side::Left, 2)).unwrap();
    assert_ne!(
        c.cov_codifferential(&a, &y).unwrap(),
        c.cov_codifferential_formula(&a, &y).unwrap()
    );
}

#[test]
fn trivial_connection_reduces_to_codifferential() {
    let c = exact();
    let mut rng = random::rng(8);
    for j in 0..=3 {
        let mu = random::gauss_form(&c, &mut rng, j);
        let psi = QvbForm::new(3, Side::Left, mu.clone());
        let got = c.cov_codifferential(&GaugeConnection::trivial(2), &psi).unwrap();
        assert_eq!(got.form, c.codifferential(&mu, Side::Left));
        let lap = c.cov_laplacian(&GaugeConnection::trivial(2), &QvbForm::new(0, Side::Left, mu.clone())).unwrap();
        assert_eq!(lap.form, c.laplacian(&mu, Side::Left));
    }
}

#[test]
fn charge_zero_derivative_is_connection_independent() {
    let c = exact();
    let mut rng = random::rng(13);
    let p = random::gauss_matrix(&mut rng, 2);
    let t = ChargedSection::new(0, Side::Left, p.clone());
    let want = c.differential(&DiffForm::function(p));
    for _ in 0..10 {
        let a = gauss_connection(&c, &mut rng);
        assert_eq!(c.cov_derivative(&a, &t).unwrap().form, want);
    }
}

#[test]
fn positivity_and_sesquilinearity() {
    let c = Calculus::<C64>::new(2).unwrap();
    let mut rng = random::rng(17);
    for i in 0..1000 {
        let side = if i % 2 == 0 { Side::Left } else { Side::Right };
        let psi = QvbForm::new(1, side, random::mixed_form(&c, &mut rng));
        let v = c.qvb_inner(&psi, &psi).unwrap();
        assert!(v.re > 0.0 && v.im.abs() < 1e-12);
    }
    let psi = QvbForm::new(2, Side::Left, random::mixed_form(&c, &mut rng));
    let z = C64::new(0.3, -1.7);
    let lhs = c.qvb_inner(&psi.scale(&z), &psi).unwrap();
    let rhs = z * c.qvb_inner(&psi, &psi).unwrap();
    assert!((lhs - rhs).norm() < 1e-12);
}

#[test]
fn covariant_laplacian_is_symmetric_on_sections() {
    let c = Calculus::<C64>::new(2).unwrap();
    let mut rng = random::rng(23);
    let a = float_connection(&c, &mut rng);
    let basis = c.grade_basis(0);
    for side in [Side::Left, Side::Right] {
        for e in &basis {
            for f in &basis {
                let x = QvbForm::new(1, side, e.clone());
                let y = QvbForm::new(1, side, f.clone());
                let lhs = c.qvb_inner(&c.cov_laplacian(&a, &x).unwrap(), &y).unwrap();
                let rhs = c.qvb_inner(&x, &c.cov_laplacian(&a, &y).unwrap()).unwrap();
                assert!((lhs - rhs).norm() < 1e-12);
            }
            let x = QvbForm::new(1, side, e.clone());
            assert!(c.qvb_inner(&c.cov_laplacian(&a, &x).unwrap(), &x).unwrap().re >= -1e-12);
        }
    }
}

#[test]
fn upsilon_round_trips() {
    let c = Calculus::<C64>::new(2).unwrap();
    let mut rng = random::rng(29);
    for side in [Side::Left, Side::Right] {
        let mu = random::form(&c, &mut rng, 2);
        let t = ChargedSection::new(-1, side, random::matrix(&mut rng, 2));
        let psi = upsilon(&mu, &t);
        let (mu2, t2) = upsilon_inv(&psi);
        assert_eq!(upsilon(&mu2, &t2), psi);
    }
}

#[test]
fn s_omega_and_bianchi() {
    let c = exact();
    let mut rng = random::rng(31);
    let a = gauss_connection(&c, &mut rng);
    let psi = QvbForm::new(0, Side::Left, random::gauss_form(&c, &mut rng, 1));
    assert!(c.s_omega(&a, &psi).form.is_zero());
    assert!(c.s_omega_adjoint(&a, &psi).form.is_zero());
    let reg = GaugeConnection::new(c.h(0).scale(&GaussRat::i())).unwrap();
    let f = c.curvature(&reg);
    let df = c.cov_exterior(&reg, &QvbForm::new(0, Side::Left, f)).unwrap();
    assert!(df.form.is_zero());
}
