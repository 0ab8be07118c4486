//! Fourier calculus, Grassmann algebra and field operators.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistkit::clifford::{gamma_euclidean, FiberMatrix, C64};
use twistkit::grassmann::*;
use twistkit::operator::*;
use twistkit::random;
use twistkit::torus::*;

const V: f64 = 1558.5454565440389; // (2π)⁴

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn volume_frozen() {
    assert!((VOLUME - V).abs() < 1e-9);
}

#[test]
fn plane_wave_pointwise() {
    let f = FourierScalar::mode([1, 0, -2, 0], c(0.5, -0.25));
    let x = [0.3, 1.1, 0.7, -2.0];
    let phase: f64 = 0.3 - 1.4;
    let expected = c(0.5, -0.25) * C64::from_polar(1.0, phase);
    assert!((f.evaluate(x) - expected).norm() < 1e-15);
    // ∂₂ e^{ik·x} = i k₂ e^{ik·x}
    assert_eq!(f.partial(2).get([1, 0, -2, 0]), c(0.5, -0.25) * c(0.0, -2.0));
}

#[test]
fn integrals_pick_constant_and_opposite_modes() {
    let f = FourierScalar::from_pairs([([0, 0, 0, 0], c(2.0, 1.0)), ([1, 0, 0, 0], c(3.0, 0.0))]);
    assert!((f.integrate() - c(2.0, 1.0) * V).norm() < 1e-9);
    let row = SpinorSection::from_modes(2, [([1, 1, 0, 0], vec![c(1.0, 0.0), c(0.0, 1.0)])]).unwrap();
    let col = SpinorSection::from_modes(2, [([-1, -1, 0, 0], vec![c(2.0, 0.0), c(3.0, 0.0)])]).unwrap();
    // ∫ rowᵀ col = V (1·2 + i·3)
    assert!((integrate_pair(&row, &col).unwrap() - c(2.0, 3.0) * V).norm() < 1e-9);
    // ⟨row, row⟩ = V (1 + 1)
    assert!((inner(&row, &row).unwrap() - c(2.0 * V, 0.0)).norm() < 1e-9);
    assert_eq!(inner(&row, &col).unwrap(), c(0.0, 0.0));
}

#[test]
fn grassmann_basics() {
    let a = GrassmannNumber::generator(0);
    let b = GrassmannNumber::generator(1);
    assert!(a.gr_mul(&a).is_empty());
    assert_eq!(a.gr_mul(&b).add(&b.gr_mul(&a)), GrassmannNumber::zero());
    assert_eq!(GrassmannNumber::monomial(&[1, 0], c(1.0, 0.0)).coefficient(&[0, 1]), c(-1.0, 0.0));
    assert_eq!(GrassmannNumber::monomial(&[2, 0, 1], c(1.0, 0.0)).coefficient(&[0, 1, 2]), c(1.0, 0.0));
    assert_eq!(GrassmannNumber::monomial(&[2, 0, 1], c(1.0, 0.0)).homogeneous_degree(), Some(3));
}

#[test]
fn antisymmetric_form_vanishes_on_vectors_but_not_on_grassmann() {
    // ⟨Jφ, ðξ⟩ on the manifold is antisymmetric on plain sections
    let t = twistkit::geometry::build_triple(Geometry::Manifold, c(0.0, 0.0));
    let mut r = rng(3);
    let support = random::symmetric_support(&mut r, 2, 3);
    let psi = random::section_on(&mut r, 4, &support);
    let scalar = twistkit::action::bilinear_form(&t, &t.dirac, &psi, &psi, false).unwrap();
    assert!(scalar.norm() < 1e-9);
    let mut reg = GeneratorRegistry::new();
    let g = promote(&psi, 0, &mut reg);
    let value = twistkit::action::bilinear_form(&t, &t.dirac, &g, &g, false).unwrap();
    assert_eq!(value.homogeneous_degree(), Some(2));
    assert!(value.max_abs() > 1.0);
}

fn form_matrix(seed: u64, n: usize) -> Vec<Vec<C64>> {
    let mut r = rng(seed);
    (0..n).map(|_| (0..n).map(|_| random::complex(&mut r)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g, h) = (random::scalar(&mut r, 2, 3), random::scalar(&mut r, 2, 3), random::scalar(&mut r, 2, 3));
        prop_assert!(f.multiply(&g).max_diff(&g.multiply(&f)) < 1e-14);
        prop_assert!(f.multiply(&g).multiply(&h).max_diff(&f.multiply(&g.multiply(&h))) < 1e-13);
        prop_assert!(f.multiply(&g.add(&h)).max_diff(&f.multiply(&g).add(&f.multiply(&h))) < 1e-14);
        for mu in 0..4 {
            let lhs = f.multiply(&g).partial(mu);
            let rhs = f.partial(mu).multiply(&g).add(&f.multiply(&g.partial(mu)));
            prop_assert!(lhs.max_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn product_is_pointwise(seed in any::<u64>(), x in prop::array::uniform4(-3.0f64..3.0)) {
        let mut r = rng(seed);
        let (f, g) = (random::scalar(&mut r, 2, 3), random::scalar(&mut r, 2, 3));
        prop_assert!((f.multiply(&g).evaluate(x) - f.evaluate(x) * g.evaluate(x)).norm() < 1e-12);
        prop_assert!((f.conj().evaluate(x) - f.evaluate(x).conj()).norm() < 1e-13);
        prop_assert!(random::real_scalar(&mut r, 2, 3).is_real(1e-14));
    }

    #[test]
    fn integration_by_parts(seed in any::<u64>(), mu in 0usize..4) {
        let mut r = rng(seed);
        let (f, g) = (random::scalar(&mut r, 2, 3), random::scalar(&mut r, 2, 3));
        let total = f.partial(mu).multiply(&g).add(&f.multiply(&g.partial(mu))).integrate();
        prop_assert!(total.norm() < 1e-9);
    }

    #[test]
    fn grassmann_product_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut draw = || {
            let mut g = GrassmannNumber::zero();
            for _ in 0..3 {
                let i = rand::Rng::random_range(&mut r, 0u32..5);
                let j = rand::Rng::random_range(&mut r, 0u32..5);
                g = g.add(&GrassmannNumber::monomial(&[i, j], random::complex(&mut r)));
                g = g.add(&GrassmannNumber::monomial(&[i], random::complex(&mut r)));
            }
            g
        };
        let (a, b, cc) = (draw(), draw(), draw());
        prop_assert!(a.gr_mul(&b).gr_mul(&cc).max_diff(&a.gr_mul(&b.gr_mul(&cc))) < 1e-12);
        // odd elements anticommute
        let (x, y) = (GrassmannNumber::monomial(&[1], c(0.3, 0.2)), GrassmannNumber::monomial(&[3], c(-1.0, 0.5)));
        prop_assert!(x.gr_mul(&y).add(&y.gr_mul(&x)).max_abs() < 1e-15);
    }

    #[test]
    fn bilinear_expansion_matches_dense_oracle(seed in any::<u64>(), n in 2usize..7) {
        // a form given by a matrix on the generator basis
        let a = form_matrix(seed, n);
        let basis: Vec<SpinorSection> = (0..n)
            .map(|i| SpinorSection::from_modes(1, [([i as i32, 0, 0, 0], vec![c(1.0, 0.0)])]).unwrap())
            .collect();
        let index = |s: &SpinorSection| s.modes().next().map(|(k, _)| k[0] as usize).unwrap();
        let form = |x: &SpinorSection, y: &SpinorSection| a[index(x)][index(y)];
        let mut reg = GeneratorRegistry::new();
        let mut section = GrassmannSection::zeros(1);
        for (i, b) in basis.iter().enumerate() {
            section = section.add(&promote(b, i, &mut reg)).unwrap();
        }
        let engine = bilinear_grassmann(form, &section, &section);
        let mut relabelled = vec![vec![c(0.0, 0.0); n]; n];
        for i in 0..n {
            for j in 0..n {
                let gi = reg.lookup(&GeneratorLabel { field: i, mode: [i as i32, 0, 0, 0], component: 0 }).unwrap() as usize;
                let gj = reg.lookup(&GeneratorLabel { field: j, mode: [j as i32, 0, 0, 0], component: 0 }).unwrap() as usize;
                relabelled[gi][gj] = a[i][j];
            }
        }
        prop_assert!(engine.max_diff(&dense_antisymmetrized(&relabelled)) < 1e-14);
    }

    #[test]
    fn operator_composition_matches_application(seed in any::<u64>(), mu in 0usize..4) {
        let mut r = rng(seed);
        let f = random::scalar(&mut r, 2, 2);
        let a = FieldOperator::multiplication(&f, &gamma_euclidean(mu).unwrap());
        let b = FieldOperator::derivative(mu, &FiberMatrix::identity(4));
        let psi = random::section(&mut r, 4, 2, 3);
        let lhs = a.compose(&b).unwrap().apply(&psi).unwrap();
        let rhs = a.apply(&b.apply(&psi).unwrap()).unwrap();
        prop_assert!(lhs.max_diff(&rhs).unwrap() < 1e-12);
        // both equality paths agree on a true identity
        let eq = operator_equal(&a.compose(&b).unwrap(), &a.compose(&b).unwrap(), 2).unwrap();
        prop_assert!(eq.equal);
    }

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = twistkit::geometry::build_triple(Geometry::Doubled, c(0.0, 0.0));
        let a = random::algebra_element(&mut r, Geometry::Doubled, 2);
        let op = t.represent(&a).unwrap().compose(&t.dirac).unwrap();
        prop_assert!(op.adjoint().unwrap().adjoint().unwrap().max_diff(&op).unwrap() < 1e-12);
        // ⟨φ, Oψ⟩ = ⟨O†φ, ψ⟩
        let support = random::symmetric_support(&mut r, 2, 3);
        let (phi, psi) = (random::section_on(&mut r, 8, &support), random::section_on(&mut r, 8, &support));
        let lhs = inner(&phi, &op.apply(&psi).unwrap()).unwrap();
        let rhs = inner(&op.adjoint().unwrap().apply(&phi).unwrap(), &psi).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn algebra_representation_is_multiplicative(seed in any::<u64>(), gi in 0usize..3) {
        let g = Geometry::ALL[gi];
        let mut r = rng(seed);
        let t = twistkit::geometry::build_triple(g, c(0.0, 0.0));
        let a = random::algebra_element(&mut r, g, 1);
        let b = random::algebra_element(&mut r, g, 1);
        let ab = t.represent(&a.multiply(&b).unwrap()).unwrap();
        let prod = t.represent(&a).unwrap().compose(&t.represent(&b).unwrap()).unwrap();
        prop_assert!(ab.max_diff(&prod).unwrap() < 1e-12);
        // ρ is an automorphism: flip(ab) = flip(a)flip(b)
        prop_assert!(a.multiply(&b).unwrap().flip() == a.flip().multiply(&b.flip()).unwrap());
    }
}
