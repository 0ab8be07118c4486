use proptest::prelude::*;
use twistkit::clifford::{lorentz_from_spin, spin_boost, SpinBoost, C64};
use twistkit::dynamics::*;

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

#[test]
fn weyl_left_example() {
    let r = weyl_system(1.0, [-1.0, 0.0, 0.0, 1.0], Handedness::Left);
    assert_eq!(r.kernel.len(), 1);
    let k = &r.kernel[0];
    assert!(k[0].norm() < 1e-12 && (k[1].norm() - 1.0).abs() < 1e-12);
    assert_eq!(r.admissible_roots, vec![-1.0]);
    assert!(r.reduction_residual < 1e-15);
}

#[test]
fn weyl_wrong_energy_has_no_kernel() {
    assert!(weyl_system(1.0, [1.0, 0.0, 0.0, 1.0], Handedness::Left).kernel.is_empty());
    assert!(weyl_system(1.0, [-1.0, 0.0, 0.0, 1.0], Handedness::Right).kernel.is_empty());
    assert_eq!(weyl_system(1.0, [1.0, 0.0, 0.0, -1.0], Handedness::Right).kernel.len(), 1);
}

#[test]
fn zero_weyl_symbol_is_all_kernel() {
    assert_eq!(weyl_system(0.0, [0.0; 4], Handedness::Left).kernel.len(), 2);
}

#[test]
fn dirac_negative_mass_example() {
    // d = −i, m = −1: unprimed branch at p₀ = −f₀
    let e = (1.0f64 + 0.09 + 0.16 + 1.44).sqrt();
    let f0 = e;
    let r = dirac_system(f0, [0.0; 3], C64::new(0.0, -1.0), [-e, 0.3, -0.4, 1.2], false);
    assert_eq!(r.kernel.len(), 2);
    assert!(r.kernel_residual < 1e-12);
    assert!(r.reduction_residual < 1e-14);
    assert!(r.admissible_roots.iter().any(|x| (x + e).abs() < 1e-12));
}

#[test]
fn dirac_rest_frame_roots() {
    let r = dirac_system(0.0, [0.0; 3], C64::new(0.0, 1.0), [0.0; 4], false);
    assert_eq!(r.p0_roots, vec![-1.0, 1.0]);
}

#[test]
fn dirac_zero_mass_decouples() {
    let m = dirac_symbol(0.7, [0.1, 0.2, 0.3], C64::new(0.0, 0.0), [0.0, 0.5, 0.1, -0.2], false);
    for i in 0..2 {
        for j in 2..4 {
            assert_eq!(m[(i, j)], C64::new(0.0, 0.0));
            assert_eq!(m[(j, i)], C64::new(0.0, 0.0));
        }
    }
}

#[test]
fn boosted_weyl_identity_matches_unboosted() {
    // at p₀ = 0 and f_j = 0 the boosted symbol is the unboosted one
    let p = [0.0, 0.2, -0.6, 0.3];
    let b = boosted_weyl_symbol(&SpinBoost::identity(), [0.6, 0.0, 0.0, 0.0], p, Handedness::Left).unwrap();
    let w = weyl_symbol(0.6, p);
    assert!((b - w).iter().all(|z| z.norm() < 1e-15));
}

#[test]
fn boosted_weyl_z_boost() {
    let s = spin_boost(0.4, [0.0, 0.0, 1.0]).unwrap();
    let f = [-0.8, 0.0, 0.0, 0.8];
    let p = boosted_identification(f, Handedness::Left);
    let r = boosted_weyl_system(&s, f, p, Handedness::Left).unwrap();
    assert!(r.reduction_residual < 1e-12);
    assert_eq!(r.kernel.len(), 1);
    let pp = lorentz_from_spin(&s).unwrap().transform_covector(p);
    let kk = twistkit::dynamics::kernel(&minkowski_left(pp));
    let overlap: C64 = kk[0].iter().zip(&r.kernel[0]).map(|(a, b)| a.conj() * b).sum();
    assert!((overlap.norm() - 1.0).abs() < 1e-10);
}

#[test]
fn positive_mass_on_light_cone_of_d() {
    for sign in [1.0, -1.0] {
        let d = C64::new(sign, 1.0) * 0.7;
        let m = boosted_mass(d, false);
        let mp = boosted_mass(d, true);
        // d = m(i ± 1) gives a real mass of magnitude m for one of the branches
        assert!(m.im.abs() < 1e-15 || mp.im.abs() < 1e-15);
        assert!((m.norm() - 0.7).abs() < 1e-12);
    }
}

#[test]
fn gauge_field_shifts_momentum() {
    let g = [0.2, -0.3, 0.4];
    let p = [0.0, 0.5, 0.1, -0.2];
    let shifted = [0.0, 0.7, -0.2, 0.2];
    let a = dirac_symbol(0.9, g, C64::new(0.0, 0.5), p, false);
    let b = dirac_symbol(0.9, [0.0; 3], C64::new(0.0, 0.5), shifted, false);
    assert!((a - b).iter().all(|z| z.norm() < 1e-14));
}

#[test]
fn euler_lagrange_examples() {
    let psi2 = [C64::new(0.3, 0.1), C64::new(-0.2, 0.5)];
    let psi4 = [C64::new(0.3, 0.1), C64::new(-0.2, 0.5), C64::new(0.7, 0.0), C64::new(0.0, -0.4)];
    let p = [0.4, -0.1, 0.3, 0.9];
    for l in [Lagrangian::WeylLeft, Lagrangian::WeylRight, Lagrangian::TwistedWeyl { f0: 0.3, plus: true }] {
        assert!(euler_lagrange_check(&l, &psi2, p) < 1e-12);
    }
    for l in [
        Lagrangian::Dirac { mass: 0.8 },
        Lagrangian::TwistedDirac { f0: 0.2, g: [0.1, 0.0, -0.3], d: C64::new(0.0, 0.6), primed: false },
        Lagrangian::TwistedDirac { f0: 0.2, g: [0.1, 0.0, -0.3], d: C64::new(0.4, 0.6), primed: true },
    ] {
        assert!(euler_lagrange_check(&l, &psi4, p) < 1e-12);
    }
    assert_eq!(euler_lagrange_check(&Lagrangian::Dirac { mass: 1.0 }, &[C64::new(0.0, 0.0); 4], p), 0.0);
}

fn vec4() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-2.0f64..2.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weyl_kernel_iff_identified(f0 in -2.0f64..2.0, dir in prop::array::uniform3(-1.0f64..1.0), left in any::<bool>(), on in any::<bool>()) {
        prop_assume!(dir.iter().map(|x| x * x).sum::<f64>() > 0.01);
        let n = unit(dir);
        let h = if left { Handedness::Left } else { Handedness::Right };
        let target = if left { -f0 } else { f0 };
        let p0 = if on { target } else { target + 0.5 };
        let p = [p0, f0.abs() * n[0], f0.abs() * n[1], f0.abs() * n[2]];
        let r = weyl_system(f0, p, h);
        prop_assert_eq!(!r.kernel.is_empty(), on && f0.abs() > 1e-3 || f0.abs() <= 1e-3 && p0.abs() < 1e-9);
        prop_assert!(r.kernel_residual <= 1e-12);
    }

    #[test]
    fn determinant_kernel_duality(f0 in -2.0f64..2.0, g in prop::array::uniform3(-1.0f64..1.0), m in -2.0f64..2.0, p in vec4(), primed in any::<bool>(), on in any::<bool>()) {
        let mut f0 = f0;
        if on {
            let big: f64 = (0..3).map(|j| (p[j + 1] + g[j]).powi(2)).sum();
            f0 = (big + m * m).sqrt();
        }
        let r = dirac_system(f0, g, C64::new(0.0, m), p, primed);
        let scale = (1.0 + f0.abs() + 4.0 + m.abs()).powi(4);
        prop_assert_eq!(!r.kernel.is_empty(), r.determinant.norm() <= 1e-10 * scale);
        prop_assert!(r.kernel_residual <= 1e-12);
    }

    #[test]
    fn dirac_roots_on_mass_shell(g in prop::array::uniform3(-1.0f64..1.0), m in -2.0f64..2.0, p in vec4()) {
        let r = dirac_system(0.0, g, C64::new(0.0, m), p, false);
        let big: f64 = (0..3).map(|j| (p[j + 1] + g[j]).powi(2)).sum();
        for root in r.p0_roots {
            prop_assert!((root * root - big - m * m).abs() <= 1e-9);
            // the symbol at f₀ = −root is singular
            let s = dirac_system(-root, g, C64::new(0.0, m), [root, p[1], p[2], p[3]], false);
            prop_assert!(!s.kernel.is_empty());
        }
    }

    #[test]
    fn boosted_reductions(b in -1.0f64..1.0, dir in prop::array::uniform3(-1.0f64..1.0), f in vec4(), g in vec4(), d in prop::array::uniform2(-1.0f64..1.0), primed in any::<bool>()) {
        prop_assume!(dir.iter().map(|x| x * x).sum::<f64>() > 0.01);
        let s = spin_boost(b, unit(dir)).unwrap();
        for h in [Handedness::Left, Handedness::Right] {
            let p = boosted_identification(f, h);
            let r = boosted_weyl_system(&s, f, p, h).unwrap();
            prop_assert!(r.reduction_residual <= 1e-9);
        }
        let r = boosted_dirac_system(&s, f, g, C64::new(d[0], d[1]), [0.0; 4], primed).unwrap();
        prop_assert!(r.reduction_residual <= 1e-9);
    }

    #[test]
    fn boost_covariance_of_kernels(b in -1.0f64..1.0, dir in prop::array::uniform3(-1.0f64..1.0), e in 0.1f64..2.0, n in prop::array::uniform3(-1.0f64..1.0)) {
        prop_assume!(dir.iter().map(|x| x * x).sum::<f64>() > 0.01 && n.iter().map(|x| x * x).sum::<f64>() > 0.01);
        let s = spin_boost(b, unit(dir)).unwrap();
        let n = unit(n);
        let f = [-e, e * n[0], e * n[1], e * n[2]];
        let p = boosted_identification(f, Handedness::Left);
        let r = boosted_weyl_system(&s, f, p, Handedness::Left).unwrap();
        let pp = lorentz_from_spin(&s).unwrap().transform_covector(p);
        let expected = twistkit::dynamics::kernel(&minkowski_left(pp));
        prop_assert_eq!(r.kernel.len(), expected.len());
        prop_assert_eq!(r.kernel.len(), 1);
        let overlap: C64 = expected[0].iter().zip(&r.kernel[0]).map(|(a, b)| a.conj() * b).sum();
        prop_assert!((overlap.norm() - 1.0).abs() <= 1e-9);
    }
}
