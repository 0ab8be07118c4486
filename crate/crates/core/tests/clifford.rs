use proptest::prelude::*;
use twistkit::clifford::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

#[test]
fn gamma_tables_frozen() {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let g0 = FiberMatrix::from_rows(&[&[z, z, o, z], &[z, z, z, o], &[o, z, z, z], &[z, o, z, z]]);
    assert_eq!(gamma_euclidean(0).unwrap(), g0);
    // γ¹ = [[0, −iσ₁], [iσ₁, 0]]
    let g1 = FiberMatrix::from_rows(&[&[z, z, z, -i], &[z, z, -i, z], &[z, i, z, z], &[i, z, z, z]]);
    assert_eq!(gamma_euclidean(1).unwrap(), g1);
    // γ³_M = [[0, σ₃], [−σ₃, 0]]
    let g3m = FiberMatrix::from_rows(&[&[z, z, o, z], &[z, z, z, -o], &[-o, z, z, z], &[z, o, z, z]]);
    assert_eq!(gamma_minkowski(3).unwrap(), g3m);
    assert_eq!(gamma5(), FiberMatrix::real_diagonal(&[1.0, 1.0, -1.0, -1.0]));
    assert!(gamma_euclidean(4).is_err());
    assert!(pauli(0).is_err());
}

#[test]
fn gamma5_is_ordered_product() {
    let g = gammas();
    let prod = &(&(&g[1] * &g[2]) * &g[3]) * &g[0];
    assert!(prod.max_diff(&gamma5()) < 1e-15);
}

#[test]
fn sigma_products() {
    for mu in 0..4 {
        // σ^μ σ̃^μ = 𝕀 for every μ (no sum)
        let p = &sigma(mu).unwrap() * &sigma_tilde(mu).unwrap();
        assert!(p.max_diff(&FiberMatrix::identity(2)) < 1e-15);
        let q = &sigma_m(mu).unwrap() * &sigma_bar_m(mu).unwrap();
        let eta = if mu == 0 { 1.0 } else { -1.0 };
        assert!(q.max_diff(&FiberMatrix::identity(2).scale(c(eta, 0.0))) < 1e-15);
    }
}

#[test]
fn z_boost_lorentz_matrix_frozen() {
    // b_half = 0.3 along z: Λ⁰₀ = cosh 0.6, |Λ⁰₃| = sinh 0.6
    let s = spin_boost(0.3, [0.0, 0.0, 1.0]).unwrap();
    let l = lorentz_from_spin(&s).unwrap();
    assert!((l.entries[0][0] - 0.6f64.cosh()).abs() < 1e-14);
    assert!((l.entries[0][3].abs() - 0.6f64.sinh()).abs() < 1e-14);
    assert!((l.entries[1][1] - 1.0).abs() < 1e-14 && (l.entries[2][2] - 1.0).abs() < 1e-14);
    assert!(l.entries[0][1].abs() < 1e-15 && l.entries[0][2].abs() < 1e-15);
    assert!((l.rapidity() - 0.6).abs() < 1e-12);
}

#[test]
fn identity_boost() {
    let s = SpinBoost::identity();
    assert_eq!(s.spin_matrix, FiberMatrix::identity(4));
    assert!(lorentz_from_spin(&s).unwrap().max_diff(&LorentzMatrix::identity()) < 1e-15);
}

#[test]
fn non_unit_direction_rejected() {
    assert!(matches!(spin_boost(0.1, [1.0, 1.0, 0.0]), Err(twistkit::TwistError::NonUnitDirection(_))));
}

#[test]
fn charge_conjugation_squares_to_minus_one() {
    let m = charge_conjugation();
    let jj = &m * &m.conj();
    assert!(jj.max_diff(&FiberMatrix::identity(4).scale(c(-1.0, 0.0))) < 1e-15);
}

fn boost_strategy() -> impl Strategy<Value = SpinBoost> {
    (-1.0f64..1.0, prop::array::uniform3(-1.0f64..1.0))
        .prop_filter("nonzero direction", |(_, v)| v.iter().map(|x| x * x).sum::<f64>() > 0.01)
        .prop_map(|(b, v)| spin_boost(b, unit(v)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lorentz_extraction_is_a_proper_boost(s in boost_strategy()) {
        let a = lorentz_from_sigma_relation(&s).unwrap();
        let b = lorentz_from_tilde_relation(&s).unwrap();
        prop_assert!(a.max_diff(&b) < 1e-10);
        prop_assert!(a.metric_defect() < 1e-10);
        prop_assert!((a.determinant() - 1.0).abs() < 1e-10);
        prop_assert!(a.entries[0][0] >= 1.0 - 1e-12);
        prop_assert!((a.rapidity() - 2.0 * s.rapidity_half.abs()).abs() < 1e-7);
    }

    #[test]
    fn boost_inverse_and_twist(s in boost_strategy()) {
        let si = s.spin_inverse();
        prop_assert!((&s.spin_matrix * &si).max_diff(&FiberMatrix::identity(4)) < 1e-12);
        prop_assert!(s.inverse().spin_matrix.max_diff(&si) < 1e-12);
        let g0 = gamma_euclidean(0).unwrap();
        prop_assert!((&(&g0 * &s.spin_matrix) * &g0).max_diff(&si) < 1e-12);
        let m = charge_conjugation();
        let m_inv = m.try_inverse().unwrap();
        prop_assert!((&(&m * &s.spin_matrix.conj()) * &m_inv).max_diff(&si) < 1e-12);
    }

    #[test]
    fn collinear_boosts_compose(b1 in -0.5f64..0.5, b2 in -0.5f64..0.5, v in prop::array::uniform3(-1.0f64..1.0)) {
        prop_assume!(v.iter().map(|x| x * x).sum::<f64>() > 0.01);
        let n = unit(v);
        let s1 = spin_boost(b1, n).unwrap();
        let s2 = spin_boost(b2, n).unwrap();
        let s12 = spin_boost(b1 + b2, n).unwrap();
        prop_assert!((&s1.spin_matrix * &s2.spin_matrix).max_diff(&s12.spin_matrix) < 1e-12);
        let l = lorentz_from_spin(&s1).unwrap().compose(&lorentz_from_spin(&s2).unwrap());
        prop_assert!(l.max_diff(&lorentz_from_spin(&s12).unwrap()) < 1e-10);
    }

    #[test]
    fn boosted_gammas_keep_clifford_relation(s in boost_strategy()) {
        // Sγ^μS⁻¹ is a similarity transform, so the anticommutators are unchanged
        for mu in 0..4 {
            for nu in 0..4 {
                let a = boosted_gamma(&s, mu).unwrap().anticommutator(&boosted_gamma(&s, nu).unwrap());
                let e = FiberMatrix::identity(4).scale(c(if mu == nu { 2.0 } else { 0.0 }, 0.0));
                prop_assert!(a.max_diff(&e) < 1e-10);
            }
        }
    }

    #[test]
    fn lorentz_preserves_minkowski_norm(s in boost_strategy(), p in prop::array::uniform4(-2.0f64..2.0)) {
        let l = lorentz_from_spin(&s).unwrap();
        let q = l.transform_covector(p);
        let norm = |v: [f64; 4]| (0..4).map(|m| ETA[m] * v[m] * v[m]).sum::<f64>();
        prop_assert!((norm(p) - norm(q)).abs() < 1e-9);
    }
}
