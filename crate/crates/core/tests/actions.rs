//! Fermionic actions, closed forms and physical identifications.

use proptest::prelude::*;
use twistkit::action::*;
use twistkit::clifford::{SpinBoost, C64};
use twistkit::geometry::{build_triple, FluctuationFields};
use twistkit::grassmann::{GeneratorLabel, GrassmannNumber};
use twistkit::operator::Geometry;
use twistkit::random;
use twistkit::torus::{Coefficient, FourierScalar, SpinorSection};
use twistkit::verify::{action_instance, closed_form_instance};

const V: f64 = 1558.5454565440389;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn zero4() -> [FourierScalar; 4] {
    std::array::from_fn(|_| FourierScalar::zero())
}

fn close(value: &GrassmannNumber, reference: &GrassmannNumber, rel: f64) -> bool {
    reference.max_abs() > 0.0 && value.max_diff(reference) <= rel * reference.max_abs().max(1.0)
}

#[test]
fn manifold_hand_value() {
    // f₀ = 1/2, one Weyl pair at ±k with k = (0, 0, 0, 1)
    let k = [0, 0, 0, 1];
    let mk = [0, 0, 0, -1];
    let weyl = SpinorSection::from_modes(2, [(k, vec![c(1.0, 0.0), c(0.0, 0.0)]), (mk, vec![c(0.0, 0.0), c(1.0, 0.0)])]).unwrap();
    let (w, reg) = promote_weyl(std::slice::from_ref(&weyl));
    let f = [FourierScalar::constant(c(0.5, 0.0)), FourierScalar::zero(), FourierScalar::zero(), FourierScalar::zero()];
    let t = build_triple(Geometry::Manifold, c(0.0, 0.0));
    let fl = FluctuationFields::from_real(Geometry::Manifold, f, zero4());
    let value = fermionic_action(&t, &fl, &w).unwrap().value;
    let a = reg.lookup(&GeneratorLabel { field: 0, mode: k, component: 0 }).unwrap();
    let b = reg.lookup(&GeneratorLabel { field: 0, mode: mk, component: 1 }).unwrap();
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let expected = GrassmannNumber::monomial(&[lo, hi], c(-2.0 * V * sign, 0.0));
    assert!(value.max_diff(&expected) < 1e-9, "{value:?}");
}

#[test]
fn zero_data_gives_zero_action() {
    for g in Geometry::ALL {
        let t = build_triple(g, c(0.4, -0.2));
        let weyl: Vec<SpinorSection> = (0..g.finite_dim()).map(|_| SpinorSection::zeros(2)).collect();
        let (w, _) = promote_weyl(&weyl);
        let fl = FluctuationFields::from_real(g, zero4(), zero4());
        assert!(fermionic_action(&t, &fl, &w).unwrap().value.is_empty());
    }
}

#[test]
fn sector_boost_scheme_is_not_invariant() {
    let mut rng = random::stream(11, "sector");
    let (t, fl, weyl) = action_instance(Geometry::Doubled, &mut rng, 2);
    let (w, _) = promote_weyl(&weyl);
    let base = fermionic_action(&t, &fl, &w).unwrap().value;
    let s = twistkit::clifford::spin_boost(0.4, [0.0, 0.0, 1.0]).unwrap();
    let slot = boosted_action(&t, &fl, &w, &s, BoostScheme::Slot).unwrap().value;
    let sector = boosted_action(&t, &fl, &w, &s, BoostScheme::Sector).unwrap().value;
    assert!(close(&slot, &base, 1e-9));
    assert!(sector.max_diff(&base) > 1e-3 * base.max_abs());
}

#[test]
fn identity_boost_leaves_identifications_unchanged() {
    let mut rng = random::stream(2, "identity");
    let weyl = random::weyl_data(&mut rng, 4, 2);
    for (boosted, plain) in
        [(Identification::BoostedPlain, Identification::DiracPlain), (Identification::BoostedPrimed, Identification::DiracPrimed)]
    {
        let a = identify_physical(&weyl, boosted, Some(&SpinBoost::identity())).unwrap();
        let b = identify_physical(&weyl, plain, None).unwrap();
        for i in 0..2 {
            assert_eq!(a.psi[i].max_diff(&b.psi[i]).unwrap(), 0.0);
            assert_eq!(a.psi_dagger[i].max_diff(&b.psi_dagger[i]).unwrap(), 0.0);
        }
    }
}

#[test]
fn symmetric_mass_terms_need_imaginary_d() {
    let mut rng = random::stream(4, "generic d");
    let (_, _, mut spec) = closed_form_instance(ClosedForm::ElectrodynamicsBoosted, &mut rng, 2, 2.0);
    spec.d = c(0.4, -0.3);
    let s = spec.boost.clone().unwrap();
    let closed = closed_form_action(&spec).unwrap().value;
    let a = identify_physical(&spec.weyl, Identification::BoostedPlain, Some(&s)).unwrap();
    let b = identify_physical(&spec.weyl, Identification::BoostedPrimed, Some(&s)).unwrap();
    let sub = boosted_dirac_lagrangian_substituted(&a, &b, &s, &spec.f, &spec.g, spec.d).scale(c(-2.0, 0.0));
    let symmetric = boosted_dirac_lagrangian_symmetric_mass(&a, &b, &s, &spec.f, &spec.g, spec.d).scale(c(-2.0, 0.0));
    assert!(close(&sub, &closed, 1e-10));
    assert!(symmetric.max_diff(&closed) > 1e-6 * closed.max_abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn closed_forms_match_engine(seed in any::<u64>(), fi in 0usize..ClosedForm::ALL.len()) {
        let form = ClosedForm::ALL[fi];
        let mut rng = random::stream(seed, form.name());
        let (t, fl, spec) = closed_form_instance(form, &mut rng, 2, 2.0);
        let closed = closed_form_action(&spec).unwrap();
        prop_assert!(closed.value.max_abs() > 0.0);
        let diff = compare_closed_form(&t, &fl, &spec).unwrap();
        prop_assert!(diff <= 1e-10 * closed.value.max_abs().max(1.0), "{} {diff:e}", form.name());
    }

    #[test]
    fn action_is_sum_of_parts(seed in any::<u64>(), gi in 0usize..3) {
        let g = Geometry::ALL[gi];
        let mut rng = random::stream(seed, "parts");
        let (t, fl, weyl) = action_instance(g, &mut rng, 2);
        let (w, _) = promote_weyl(&weyl);
        let a = fermionic_action(&t, &fl, &w).unwrap();
        let sum = a.parts.iter().fold(GrassmannNumber::zero(), |acc, (_, p)| acc.add(p));
        prop_assert!(close(&sum, &a.value, 1e-12));
        prop_assert_eq!(a.value.homogeneous_degree(), Some(2));
    }

    #[test]
    fn weyl_identifications(seed in any::<u64>(), plus in any::<bool>()) {
        let mut rng = random::stream(seed, "weyl");
        let (_, _, spec) = closed_form_instance(ClosedForm::DoubledWeyl, &mut rng, 2, 0.0);
        let closed = closed_form_action(&spec).unwrap().value;
        let phys = identify_physical(&spec.weyl, Identification::Weyl { plus }, None).unwrap();
        prop_assert!(close(&weyl_lagrangian(&phys, &spec.f[0], plus), &closed, 1e-10));
    }

    #[test]
    fn dirac_identifications(seed in any::<u64>(), primed in any::<bool>()) {
        let mut rng = random::stream(seed, "dirac");
        let (_, _, spec) = closed_form_instance(ClosedForm::ElectrodynamicsDirac, &mut rng, 2, 0.0);
        let closed = closed_form_action(&spec).unwrap().value;
        let scheme = if primed { Identification::DiracPrimed } else { Identification::DiracPlain };
        let phys = identify_physical(&spec.weyl, scheme, None).unwrap();
        let l = dirac_lagrangian(&phys, &spec.f[0], &spec.g, spec.d.im, primed).scale(c(4.0, 0.0));
        prop_assert!(close(&l, &closed, 1e-10));
    }

    #[test]
    fn boosted_identification(seed in any::<u64>()) {
        let mut rng = random::stream(seed, "boosted");
        let (_, _, spec) = closed_form_instance(ClosedForm::ElectrodynamicsBoosted, &mut rng, 2, 2.0);
        let s = spec.boost.clone().unwrap();
        let closed = closed_form_action(&spec).unwrap().value;
        let a = identify_physical(&spec.weyl, Identification::BoostedPlain, Some(&s)).unwrap();
        let b = identify_physical(&spec.weyl, Identification::BoostedPrimed, Some(&s)).unwrap();
        let l = boosted_dirac_lagrangian_substituted(&a, &b, &s, &spec.f, &spec.g, spec.d).scale(c(-2.0, 0.0));
        prop_assert!(close(&l, &closed, 1e-10));
    }

    #[test]
    fn slot_boost_is_invariant(seed in any::<u64>(), gi in 0usize..3) {
        let g = Geometry::ALL[gi];
        let mut rng = random::stream(seed, "boost");
        let (t, fl, weyl) = action_instance(g, &mut rng, 1);
        let (w, _) = promote_weyl(&weyl);
        let base = fermionic_action(&t, &fl, &w).unwrap().value;
        let s = random::boost(&mut rng, 2.0);
        prop_assert!(close(&boosted_action(&t, &fl, &w, &s, BoostScheme::Slot).unwrap().value, &base, 1e-9));
    }
}
