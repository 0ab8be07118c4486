//! ρ-product, the bilinear forms ⟨Jφ, Dξ⟩ and ⟨Jφ, Dξ⟩_ρ, the
//! Grassmann-valued fermionic action of each geometry, and the closed-form
//! lagrangians it reduces to.
//!
//! Closed forms are evaluated on two-component Weyl sections with section
//! arithmetic only (no [`FieldOperator`]), so they give an independent route
//! to the same Grassmann coefficients. Row fields written `φ̄†` in the
//! lagrangians pair without conjugation: `∫ φ̄†Aζ = (2π)⁴ Σ_k φ_{−k}ᵀ(Aζ)_k`.

use serde::Serialize;

use crate::clifford::{
    boosted_gamma, boosted_sigma, charge_conjugation, pauli, FiberMatrix, SigmaKind, SpinBoost, C64, I, ONE, ZERO,
};
use crate::error::{Result, TwistError};
use crate::geometry::{fluctuation_from_fields, FluctuationFields, TwistedTriple};
use crate::grassmann::{promote, GeneratorRegistry, GrassmannNumber, GrassmannSection};
use crate::operator::{FieldOperator, Geometry};
use crate::torus::{integrate_pair, sesquilinear_pair, Coefficient, FourierScalar, Section, SpinorSection};

/// ⟨φ, Rξ⟩.
pub fn rho_product(triple: &TwistedTriple, phi: &SpinorSection, xi: &SpinorSection) -> Result<C64> {
    sesquilinear_pair(phi, &triple.twist_unitary.apply(xi)?)
}

/// ⟨Jφ, Dξ⟩, or ⟨Jφ, Dξ⟩_ρ = ⟨Jφ, RDξ⟩ when `twisted`.
pub fn bilinear_form<C: Coefficient>(
    triple: &TwistedTriple,
    d_total: &FieldOperator,
    phi: &Section<C>,
    xi: &Section<C>,
    twisted: bool,
) -> Result<C> {
    let jphi = triple.real_structure.apply(phi)?;
    let mut dxi = d_total.apply(xi)?;
    if twisted {
        dxi = triple.twist_unitary.apply(&dxi)?;
    }
    sesquilinear_pair(&jphi, &dxi)
}

/// Promotes Weyl data, field `i` getting generator labels with field tag `i`.
pub fn promote_weyl(weyl: &[SpinorSection]) -> (Vec<GrassmannSection>, GeneratorRegistry) {
    let mut reg = GeneratorRegistry::new();
    let out = weyl.iter().enumerate().map(|(i, w)| promote(w, i, &mut reg)).collect();
    (out, reg)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ActionValue {
    pub geometry: Geometry,
    pub value: GrassmannNumber,
    /// Contributions of the separate pieces of the Dirac operator.
    pub parts: Vec<(String, GrassmannNumber)>,
    /// Extracted rapidity of the boost, if any.
    pub boost_rapidity: Option<f64>,
}

/// Pieces of D_Z = D + fluctuation: free part, finite part, X part and
/// gauge part.
pub fn operator_parts(triple: &TwistedTriple, fluct: &FluctuationFields) -> Vec<(String, FieldOperator)> {
    let zero: [FourierScalar; 4] = std::array::from_fn(|_| FourierScalar::zero());
    let mut parts = vec![("free".to_string(), triple.free_part())];
    if triple.geometry == Geometry::Electrodynamics {
        parts.push(("finite".to_string(), triple.finite_part()));
    }
    parts.push(("x".to_string(), fluctuation_from_fields(triple.geometry, &fluct.f, &zero)));
    if triple.geometry != Geometry::Manifold {
        parts.push(("gauge".to_string(), fluctuation_from_fields(triple.geometry, &zero, &fluct.g)));
    }
    parts
}

/// D + assembled fluctuation.
pub fn covariant_operator(triple: &TwistedTriple, fluct: &FluctuationFields) -> Result<FieldOperator> {
    triple.dirac.add(&fluct.assemble())
}

/// 𝔄^ρ_{D_Z}(η̃, η̃) with η̃ assembled from promoted Weyl data, split over
/// the pieces of D_Z.
pub fn fermionic_action(
    triple: &TwistedTriple,
    fluct: &FluctuationFields,
    weyl: &[GrassmannSection],
) -> Result<ActionValue> {
    let eta = crate::geometry::hr_vector(triple.geometry, weyl)?;
    let d_total = covariant_operator(triple, fluct)?;
    let value = bilinear_form(triple, &d_total, &eta, &eta, true)?;
    let mut parts = Vec::new();
    for (name, op) in operator_parts(triple, fluct) {
        parts.push((name, bilinear_form(triple, &op, &eta, &eta, true)?));
    }
    Ok(ActionValue { geometry: triple.geometry, value, parts, boost_rapidity: None })
}

/// 𝔄^ρ_{D_Z}(η̃, η̃) on an already assembled vector.
pub fn action_on_vector(triple: &TwistedTriple, fluct: &FluctuationFields, eta: &GrassmannSection) -> Result<GrassmannNumber> {
    let d_total = covariant_operator(triple, fluct)?;
    bilinear_form(triple, &d_total, eta, eta, true)
}

/// How a boost acts on the two arguments of the form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoostScheme {
    /// First argument S⁻¹η, second argument Sη, on every finite slot.
    Slot,
    /// e-type slots S⁻¹, ē-type slots S, same vector in both arguments.
    Sector,
}

fn slot_boost(geometry: Geometry, per_slot: &[&FiberMatrix]) -> FieldOperator {
    let n = geometry.finite_dim();
    let mut m = FiberMatrix::zeros(4 * n);
    for s in 0..n {
        let mut e = FiberMatrix::zeros(n);
        e.set(s, s, ONE);
        let block = if n == 1 { per_slot[s].clone() } else { FiberMatrix::spin_finite(per_slot[s], &e) };
        m = m + block;
    }
    FieldOperator::constant(&m)
}

/// Boosted action with D_Z conjugated by 𝕀 ⊗ S.
pub fn boosted_action(
    triple: &TwistedTriple,
    fluct: &FluctuationFields,
    weyl: &[GrassmannSection],
    s: &SpinBoost,
    scheme: BoostScheme,
) -> Result<ActionValue> {
    let g = triple.geometry;
    let n = g.finite_dim();
    let sm = &s.spin_matrix;
    let si = s.spin_inverse();
    let s_all = slot_boost(g, &vec![sm; n]);
    let si_all = slot_boost(g, &vec![&si; n]);
    let eta = crate::geometry::hr_vector(g, weyl)?;
    let (first, second) = match (scheme, g) {
        (BoostScheme::Slot, _) | (BoostScheme::Sector, Geometry::Manifold) => (si_all.apply(&eta)?, s_all.apply(&eta)?),
        (BoostScheme::Sector, _) => {
            // e-type slots come first, ē-type slots last
            let per: Vec<&FiberMatrix> = (0..n).map(|k| if k < n / 2 { &si } else { sm }).collect();
            let v = slot_boost(g, &per).apply(&eta)?;
            (v.clone(), v)
        }
    };
    let conj = |op: &FieldOperator| -> Result<FieldOperator> { s_all.compose(op)?.compose(&si_all) };
    let d_total = conj(&covariant_operator(triple, fluct)?)?;
    let value = bilinear_form(triple, &d_total, &first, &second, true)?;
    let mut parts = Vec::new();
    for (name, op) in operator_parts(triple, fluct) {
        parts.push((name, bilinear_form(triple, &conj(&op)?, &first, &second, true)?));
    }
    let rapidity = crate::clifford::lorentz_from_spin(s)?.rapidity();
    Ok(ActionValue { geometry: g, value, parts, boost_rapidity: Some(rapidity) })
}

/// Boosted Dirac matrices S γ^μ S⁻¹ (exposed for checks on the boosted operator).
pub fn boosted_gammas(s: &SpinBoost) -> Result<[FiberMatrix; 4]> {
    Ok([boosted_gamma(s, 0)?, boosted_gamma(s, 1)?, boosted_gamma(s, 2)?, boosted_gamma(s, 3)?])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// 2∫ φ̄†σ₂(if₀ − σ_j∂_j)φ on the manifold.
    ManifoldWeyl,
    /// 4∫ φ̄†σ₂(if₀ − σ_j∂_j)ζ on the doubled manifold.
    DoubledWeyl,
    /// Electrodynamics lagrangian with covariant derivative 𝔇_j = ∂_j − ig_j.
    ElectrodynamicsDirac,
    /// −i∫[ū_l†σ̃^μ_Λ(∂_μ + f_μ)ζ_l + ū_r†σ^μ_Λ(∂_μ − f_μ)ζ_r] on the manifold.
    ManifoldBoosted,
    /// −2i × the same integrand on the doubled manifold.
    DoubledBoosted,
    /// −2∫ℒ_Λ for electrodynamics.
    ElectrodynamicsBoosted,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 6] = [
        ClosedForm::ManifoldWeyl,
        ClosedForm::DoubledWeyl,
        ClosedForm::ElectrodynamicsDirac,
        ClosedForm::ManifoldBoosted,
        ClosedForm::DoubledBoosted,
        ClosedForm::ElectrodynamicsBoosted,
    ];

    pub fn geometry(self) -> Geometry {
        match self {
            ClosedForm::ManifoldWeyl | ClosedForm::ManifoldBoosted => Geometry::Manifold,
            ClosedForm::DoubledWeyl | ClosedForm::DoubledBoosted => Geometry::Doubled,
            ClosedForm::ElectrodynamicsDirac | ClosedForm::ElectrodynamicsBoosted => Geometry::Electrodynamics,
        }
    }

    pub fn is_boosted(self) -> bool {
        matches!(self, ClosedForm::ManifoldBoosted | ClosedForm::DoubledBoosted | ClosedForm::ElectrodynamicsBoosted)
    }

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::ManifoldWeyl => "manifold_weyl",
            ClosedForm::DoubledWeyl => "doubled_weyl",
            ClosedForm::ElectrodynamicsDirac => "electrodynamics_dirac",
            ClosedForm::ManifoldBoosted => "manifold_boosted",
            ClosedForm::DoubledBoosted => "doubled_boosted",
            ClosedForm::ElectrodynamicsBoosted => "electrodynamics_boosted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosedFormSpec {
    pub form: ClosedForm,
    /// Two-component Weyl fields in the order used by `hr_vector`.
    pub weyl: Vec<GrassmannSection>,
    pub f: [FourierScalar; 4],
    pub g: [FourierScalar; 4],
    pub d: C64,
    pub boost: Option<SpinBoost>,
}

fn sigma(j: usize) -> FiberMatrix {
    pauli(j).expect("j in 1..=3")
}

fn madd<C: Coefficient>(a: &Section<C>, b: &Section<C>) -> Section<C> {
    a.add(b).expect("same fiber")
}

fn mat<C: Coefficient>(m: &FiberMatrix, s: &Section<C>) -> Section<C> {
    s.apply_matrix(m).expect("fiber matches")
}

/// 𝔇_μ ζ = ∂_μζ − i g_μ ζ.
fn covariant<C: Coefficient>(z: &Section<C>, g: &FourierScalar, mu: usize) -> Section<C> {
    madd(&z.partial(mu), &z.mul_scalar(g).scale(-I))
}

/// i f₀ ζ − s Σ_j σ_j 𝔇_j ζ.
fn weyl_kinetic<C: Coefficient>(z: &Section<C>, f0: &FourierScalar, g: &[FourierScalar; 4], s: f64) -> Section<C> {
    let mut out = z.mul_scalar(f0).scale(I);
    for j in 1..4 {
        out = madd(&out, &mat(&sigma(j), &covariant(z, &g[j], j)).scale(C64::new(-s, 0.0)));
    }
    out
}

/// u = S 𝒥 (φ; φ) as a 4-component section.
fn boosted_conjugate<C: Coefficient>(phi: &Section<C>, s: &SpinBoost) -> Section<C> {
    let doubled = Section::stack(&[phi, phi]);
    mat(&s.spin_matrix, &mat(&charge_conjugation(), &doubled.cc()))
}

/// Σ_μ σ^μ_Λ (∂_μ + sign·f_μ − i g_μ) ζ.
fn boosted_kinetic<C: Coefficient>(
    z: &Section<C>,
    s: &SpinBoost,
    kind: SigmaKind,
    f: &[FourierScalar; 4],
    g: &[FourierScalar; 4],
    sign: f64,
) -> Section<C> {
    let mut out = Section::zeros(2);
    for mu in 0..4 {
        let sm = boosted_sigma(s, mu, kind).expect("mu < 4");
        let inner = madd(&covariant(z, &g[mu], mu), &z.mul_scalar(&f[mu]).scale(C64::new(sign, 0.0)));
        out = madd(&out, &mat(&sm, &inner));
    }
    out
}

fn need(spec: &ClosedFormSpec, n: usize) -> Result<()> {
    if spec.weyl.len() != n || spec.weyl.iter().any(|w| w.fiber_dim() != 2) {
        return Err(TwistError::UnsupportedClosedForm {
            form: spec.form.name().into(),
            geometry: format!("{} Weyl fields", spec.weyl.len()),
        });
    }
    Ok(())
}

fn ipair(row: &GrassmannSection, col: &GrassmannSection) -> GrassmannNumber {
    integrate_pair(row, col).expect("two-component fields")
}

fn spair(row: &GrassmannSection, col: &GrassmannSection) -> GrassmannNumber {
    sesquilinear_pair(row, col).expect("two-component fields")
}

/// Evaluates a closed-form lagrangian on promoted Weyl data.
pub fn closed_form_action(spec: &ClosedFormSpec) -> Result<ActionValue> {
    let zero_g: [FourierScalar; 4] = std::array::from_fn(|_| FourierScalar::zero());
    let s2 = sigma(2);
    let identity = SpinBoost::identity();
    let s = spec.boost.as_ref().unwrap_or(&identity);
    let w = &spec.weyl;
    let value = match spec.form {
        ClosedForm::ManifoldWeyl => {
            need(spec, 1)?;
            ipair(&w[0], &mat(&s2, &weyl_kinetic(&w[0], &spec.f[0], &zero_g, 1.0))).scale(C64::new(2.0, 0.0))
        }
        ClosedForm::DoubledWeyl => {
            need(spec, 2)?;
            ipair(&w[0], &mat(&s2, &weyl_kinetic(&w[1], &spec.f[0], &zero_g, 1.0))).scale(C64::new(4.0, 0.0))
        }
        ClosedForm::ElectrodynamicsDirac => {
            need(spec, 4)?;
            let (p1, p2, z1, z2) = (&w[0], &w[1], &w[2], &w[3]);
            let mut acc = ipair(p1, &mat(&s2, &weyl_kinetic(z1, &spec.f[0], &spec.g, 1.0)));
            acc = acc.sub(&ipair(p2, &mat(&s2, &weyl_kinetic(z2, &spec.f[0], &spec.g, -1.0))));
            acc = acc.add(&ipair(p1, &mat(&s2, z2)).scale(spec.d.conj()));
            acc = acc.add(&ipair(p2, &mat(&s2, z1)).scale(spec.d));
            acc.scale(C64::new(4.0, 0.0))
        }
        ClosedForm::ManifoldBoosted | ClosedForm::DoubledBoosted => {
            let (phi, zeta, factor) = if spec.form == ClosedForm::ManifoldBoosted {
                need(spec, 1)?;
                (&w[0], &w[0], -I)
            } else {
                need(spec, 2)?;
                (&w[0], &w[1], C64::new(0.0, -2.0))
            };
            let u = boosted_conjugate(phi, s);
            let (ul, ur) = (u.slice(0, 2), u.slice(2, 2));
            let zl = mat(&s.lambda_minus, zeta);
            let zr = mat(&s.lambda_plus, zeta);
            let a = spair(&ul, &boosted_kinetic(&zl, s, SigmaKind::EuclideanTilde, &spec.f, &zero_g, 1.0));
            let b = spair(&ur, &boosted_kinetic(&zr, s, SigmaKind::EuclideanUpper, &spec.f, &zero_g, -1.0));
            a.add(&b).scale(factor)
        }
        ClosedForm::ElectrodynamicsBoosted => {
            need(spec, 4)?;
            let lagrangian = boosted_ed_lagrangian(&w[0], &w[1], &w[2], &w[3], s, &spec.f, &spec.g, spec.d);
            lagrangian.scale(C64::new(-2.0, 0.0))
        }
    };
    Ok(ActionValue {
        geometry: spec.form.geometry(),
        value,
        parts: Vec::new(),
        boost_rapidity: spec.boost.as_ref().map(|b| 2.0 * b.rapidity_half.abs()),
    })
}

/// ∫ℒ_Λ for electrodynamics.
#[allow(clippy::too_many_arguments)]
fn boosted_ed_lagrangian(
    p1: &GrassmannSection,
    p2: &GrassmannSection,
    z1: &GrassmannSection,
    z2: &GrassmannSection,
    s: &SpinBoost,
    f: &[FourierScalar; 4],
    g: &[FourierScalar; 4],
    d: C64,
) -> GrassmannNumber {
    let u1 = boosted_conjugate(p1, s);
    let u2 = boosted_conjugate(p2, s);
    let (u1l, u1r, u2l, u2r) = (u1.slice(0, 2), u1.slice(2, 2), u2.slice(0, 2), u2.slice(2, 2));
    let (z1l, z1r) = (mat(&s.lambda_minus, z1), mat(&s.lambda_plus, z1));
    let (z2l, z2r) = (mat(&s.lambda_minus, z2), mat(&s.lambda_plus, z2));
    let tilde = SigmaKind::EuclideanTilde;
    let upper = SigmaKind::EuclideanUpper;
    let k1 = spair(&u1l, &boosted_kinetic(&z1l, s, tilde, f, g, 1.0))
        .add(&spair(&u1r, &boosted_kinetic(&z1r, s, upper, f, g, -1.0)));
    let m1 = spair(&u2l, &z1r).sub(&spair(&u2r, &z1l));
    let k2 = spair(&u2l, &boosted_kinetic(&z2l, s, tilde, f, g, -1.0))
        .add(&spair(&u2r, &boosted_kinetic(&z2r, s, upper, f, g, 1.0)));
    let m2 = spair(&u1l, &z2r).sub(&spair(&u1r, &z2l));
    k1.scale(I).add(&m1.scale(d)).add(&k2.scale(I)).add(&m2.scale(d.conj()))
}

/// Largest coefficient difference between the engine action and the closed form.
pub fn compare_closed_form(
    triple: &TwistedTriple,
    fluct: &FluctuationFields,
    spec: &ClosedFormSpec,
) -> Result<f64> {
    if spec.form.geometry() != triple.geometry {
        return Err(TwistError::UnsupportedClosedForm {
            form: spec.form.name().into(),
            geometry: triple.geometry.name().into(),
        });
    }
    // the doubled forms are stated for the X ⊗ 𝕀₂ component only
    let fluct = if triple.geometry == Geometry::Doubled {
        &FluctuationFields::from_real(Geometry::Doubled, fluct.f.clone(), std::array::from_fn(|_| FourierScalar::zero()))
    } else {
        fluct
    };
    let engine = match (&spec.boost, spec.form.is_boosted()) {
        (Some(s), true) => boosted_action(triple, fluct, &spec.weyl, s, BoostScheme::Slot)?,
        (None, true) => boosted_action(triple, fluct, &spec.weyl, &SpinBoost::identity(), BoostScheme::Slot)?,
        _ => fermionic_action(triple, fluct, &spec.weyl)?,
    };
    let closed = closed_form_action(spec)?;
    Ok(engine.value.max_diff(&closed.value))
}

/// Identification of physical spinors from H_R data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identification {
    /// ψ = ζ̃, ψ† = ±i φ̃̄†σ₂ (doubled manifold); `true` selects +.
    Weyl { plus: bool },
    /// ψ_l = ζ̃₁, ψ_r = ζ̃₂ with ψ_l† = −iφ̃̄₁†σ₂, ψ_r† = iφ̃̄₂†σ₂.
    DiracPlain,
    /// ψ′_l = ζ̃₂, ψ′_r = ζ̃₁ with ψ′_l† = iφ̃̄₂†σ₂, ψ′_r† = −iφ̃̄₁†σ₂.
    DiracPrimed,
    /// Ψ = S Ξ̃ components, Ψ† = i(S𝒥φ̃)†.
    BoostedPlain,
    /// Ψ′ = Sγ⁰Ξ̃ components, Ψ′† = −i(S𝒥γ⁰φ̃)†.
    BoostedPrimed,
}

/// Physical spinors. Adjoint spinors are stored as row sections `r`, acting
/// as `ψ†X = ∫ rᵀX`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalSpinors<C: Coefficient> {
    pub labels: Vec<&'static str>,
    pub psi: Vec<Section<C>>,
    pub psi_dagger: Vec<Section<C>>,
}

/// Row form of `c · u†`: r = c · cc(u).
fn dagger_row<C: Coefficient>(u: &Section<C>, c: C64) -> Section<C> {
    u.cc().scale(c)
}

/// Row form of `c · φ̄†σ₂`: r = c σ₂ᵀ φ.
fn sigma2_row<C: Coefficient>(phi: &Section<C>, c: C64) -> Section<C> {
    mat(&sigma(2).transpose(), phi).scale(c)
}

pub fn identify_physical<C: Coefficient>(
    weyl: &[Section<C>],
    scheme: Identification,
    boost: Option<&SpinBoost>,
) -> Result<PhysicalSpinors<C>> {
    let identity = SpinBoost::identity();
    let s = boost.unwrap_or(&identity);
    let want = match scheme {
        Identification::Weyl { .. } => 2,
        _ => 4,
    };
    if weyl.len() != want {
        return Err(TwistError::Config(format!("identification needs {want} Weyl fields, got {}", weyl.len())));
    }
    let out = match scheme {
        Identification::Weyl { plus } => {
            let sign = if plus { I } else { -I };
            PhysicalSpinors { labels: vec!["psi"], psi: vec![weyl[1].clone()], psi_dagger: vec![sigma2_row(&weyl[0], sign)] }
        }
        Identification::DiracPlain => PhysicalSpinors {
            labels: vec!["psi_l", "psi_r"],
            psi: vec![weyl[2].clone(), weyl[3].clone()],
            psi_dagger: vec![sigma2_row(&weyl[0], -I), sigma2_row(&weyl[1], I)],
        },
        Identification::DiracPrimed => PhysicalSpinors {
            labels: vec!["psi_l", "psi_r"],
            psi: vec![weyl[3].clone(), weyl[2].clone()],
            psi_dagger: vec![sigma2_row(&weyl[1], I), sigma2_row(&weyl[0], -I)],
        },
        Identification::BoostedPlain => {
            let u1 = boosted_conjugate(&weyl[0], s);
            let u2 = boosted_conjugate(&weyl[1], s);
            PhysicalSpinors {
                labels: vec!["psi_l", "psi_r"],
                psi: vec![mat(&s.lambda_minus, &weyl[2]), mat(&s.lambda_plus, &weyl[3])],
                psi_dagger: vec![dagger_row(&u1.slice(0, 2), I), dagger_row(&u2.slice(2, 2), I)],
            }
        }
        Identification::BoostedPrimed => {
            let u1 = boosted_conjugate(&weyl[0], s);
            let u2 = boosted_conjugate(&weyl[1], s);
            PhysicalSpinors {
                labels: vec!["psi_l", "psi_r"],
                psi: vec![mat(&s.lambda_minus, &weyl[3]), mat(&s.lambda_plus, &weyl[2])],
                psi_dagger: vec![dagger_row(&u2.slice(0, 2), -I), dagger_row(&u1.slice(2, 2), -I)],
            }
        }
    };
    Ok(out)
}

/// ∓4i ∫ψ†(if₀ − σ_j∂_j)ψ for the Weyl identification with sign ±.
pub fn weyl_lagrangian(phys: &PhysicalSpinors<GrassmannNumber>, f0: &FourierScalar, plus: bool) -> GrassmannNumber {
    let zero_g: [FourierScalar; 4] = std::array::from_fn(|_| FourierScalar::zero());
    let k = weyl_kinetic(&phys.psi[0], f0, &zero_g, 1.0);
    let factor = if plus { C64::new(0.0, -4.0) } else { C64::new(0.0, 4.0) };
    ipair(&phys.psi_dagger[0], &k).scale(factor)
}

/// ∫[iψ_l†(if₀ − σ·𝔇)ψ_l + iψ_r†(if₀ + σ·𝔇)ψ_r + m(ψ_l†ψ_r + ψ_r†ψ_l)].
/// The primed lagrangian has the same form with ψ_l ↔ ψ_r roles swapped.
pub fn dirac_lagrangian(
    phys: &PhysicalSpinors<GrassmannNumber>,
    f0: &FourierScalar,
    g: &[FourierScalar; 4],
    m: f64,
    primed: bool,
) -> GrassmannNumber {
    let (l, r) = if primed { (1, 0) } else { (0, 1) };
    let kl = weyl_kinetic(&phys.psi[l], f0, g, 1.0);
    let kr = weyl_kinetic(&phys.psi[r], f0, g, -1.0);
    let mut acc = ipair(&phys.psi_dagger[l], &kl).scale(I).add(&ipair(&phys.psi_dagger[r], &kr).scale(I));
    let mass = ipair(&phys.psi_dagger[0], &phys.psi[1]).add(&ipair(&phys.psi_dagger[1], &phys.psi[0]));
    acc = acc.add(&mass.scale(C64::new(m, 0.0)));
    acc
}

/// The boosted electrodynamics lagrangian written with both identifications,
/// with symmetric mass terms i d(ψ_l†ψ_r + ψ_r†ψ_l) − i d̄(ψ′_r†ψ′_l + ψ′_l†ψ′_r).
pub fn boosted_dirac_lagrangian_symmetric_mass(
    plain: &PhysicalSpinors<GrassmannNumber>,
    primed: &PhysicalSpinors<GrassmannNumber>,
    s: &SpinBoost,
    f: &[FourierScalar; 4],
    g: &[FourierScalar; 4],
    d: C64,
) -> GrassmannNumber {
    boosted_dirac_lagrangian(plain, primed, s, f, g, d, false)
}

/// Same lagrangian with the mass terms that follow from substituting the
/// identifications: i d ψ_r†ψ_l − i d̄ ψ_l†ψ_r + i d ψ′_l†ψ′_r − i d̄ ψ′_r†ψ′_l.
pub fn boosted_dirac_lagrangian_substituted(
    plain: &PhysicalSpinors<GrassmannNumber>,
    primed: &PhysicalSpinors<GrassmannNumber>,
    s: &SpinBoost,
    f: &[FourierScalar; 4],
    g: &[FourierScalar; 4],
    d: C64,
) -> GrassmannNumber {
    boosted_dirac_lagrangian(plain, primed, s, f, g, d, true)
}

fn boosted_dirac_lagrangian(
    plain: &PhysicalSpinors<GrassmannNumber>,
    primed: &PhysicalSpinors<GrassmannNumber>,
    s: &SpinBoost,
    f: &[FourierScalar; 4],
    g: &[FourierScalar; 4],
    d: C64,
    substituted: bool,
) -> GrassmannNumber {
    let tilde = SigmaKind::EuclideanTilde;
    let upper = SigmaKind::EuclideanUpper;
    let (pl, pr) = (&plain.psi[0], &plain.psi[1]);
    let (pld, prd) = (&plain.psi_dagger[0], &plain.psi_dagger[1]);
    let (ql, qr) = (&primed.psi[0], &primed.psi[1]);
    let (qld, qrd) = (&primed.psi_dagger[0], &primed.psi_dagger[1]);
    let mut acc = ipair(pld, &boosted_kinetic(pl, s, tilde, f, g, 1.0))
        .add(&ipair(prd, &boosted_kinetic(pr, s, upper, f, g, 1.0)))
        .sub(&ipair(qld, &boosted_kinetic(ql, s, tilde, f, g, -1.0)))
        .sub(&ipair(qrd, &boosted_kinetic(qr, s, upper, f, g, -1.0)));
    let (lr, rl, qlr, qrl) = (ipair(pld, pr), ipair(prd, pl), ipair(qld, qr), ipair(qrd, ql));
    let id = I * d;
    let idb = I * d.conj();
    if substituted {
        acc = acc.add(&rl.scale(id)).sub(&lr.scale(idb)).add(&qlr.scale(id)).sub(&qrl.scale(idb));
    } else {
        acc = acc.add(&lr.add(&rl).scale(id)).sub(&qrl.add(&qlr).scale(idb));
    }
    acc
}

/// 𝔄^ρ_D + 𝔄_D on a pair of plain vectors.
pub fn twisted_plus_plain(triple: &TwistedTriple, d_total: &FieldOperator, phi: &SpinorSection, xi: &SpinorSection) -> Result<C64> {
    Ok(bilinear_form(triple, d_total, phi, xi, true)? + bilinear_form(triple, d_total, phi, xi, false)?)
}

/// Degree-2 coefficient matrix of an action value over `n` generators.
pub fn coefficient_matrix(value: &GrassmannNumber, n: usize) -> Vec<Vec<C64>> {
    value.degree2_matrix(n)
}

/// Numeric value of a plain-section form, for the Grassmann expansion.
pub fn plain_form<'a>(
    triple: &'a TwistedTriple,
    d_total: &'a FieldOperator,
    twisted: bool,
) -> impl Fn(&SpinorSection, &SpinorSection) -> C64 + 'a {
    move |a, b| bilinear_form(triple, d_total, a, b, twisted).unwrap_or(ZERO)
}
