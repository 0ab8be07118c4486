//! The three minimally twisted geometries: the torus itself, its product
//! with a two-point space, and the electrodynamics product with a
//! four-dimensional finite space.
//!
//! Fiber index is `finite * 4 + spinor`. Every one-form and fluctuation is
//! a block-diagonal sum `−iγ^μ (a_μ P₊ + b_μ P₋)` per finite slot, with
//! `P± = (1 ± γ⁵)/2`; extraction reads the pair `(a_μ, b_μ)` slot by slot.

use crate::clifford::{
    charge_conjugation, gamma5, gamma_euclidean, FiberMatrix, C64, I, ONE, ZERO,
};
use crate::error::{Result, TwistError};
use crate::operator::{
    conjugate_by_j, operator_equal_tol, twisted_commutator, AlgebraElement, FieldOperator, Geometry,
};
use crate::torus::{Coefficient, FourierScalar, Mode, Section};

/// Signs of J² = ε, JD = ε′DJ, JΓ = ε″ΓJ and JR = ε‴RJ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KoSigns {
    pub epsilon: f64,
    pub epsilon_prime: f64,
    pub epsilon_dprime: f64,
    pub epsilon_tprime: f64,
}

#[derive(Clone, Debug)]
pub struct TwistedTriple {
    pub geometry: Geometry,
    pub fiber_dim: usize,
    /// Finite mass parameter (zero except for electrodynamics).
    pub d: C64,
    pub dirac: FieldOperator,
    pub real_structure: FieldOperator,
    pub grading: FieldOperator,
    pub twist_unitary: FieldOperator,
    /// Linear part of J (J = j_matrix ∘ cc).
    pub j_matrix: FiberMatrix,
    pub grading_matrix: FiberMatrix,
    pub r_matrix: FiberMatrix,
    pub signs: KoSigns,
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Euclidean Dirac operator ð = −iγ^μ∂_μ on 4-spinors.
pub fn free_dirac() -> FieldOperator {
    let mut d = FieldOperator::zero(4, false);
    for mu in 0..4 {
        let g = gamma_euclidean(mu).expect("mu < 4").scale(-I);
        d = d.add(&FieldOperator::derivative(mu, &g)).expect("same dim");
    }
    d
}

/// Finite Dirac operator of electrodynamics in the basis {e_L, e_R, ē_L, ē_R}.
pub fn finite_dirac(d: C64) -> FiberMatrix {
    let z = ZERO;
    FiberMatrix::from_rows(&[&[z, d, z, z], &[d.conj(), z, z, z], &[z, z, z, d.conj()], &[z, z, d, z]])
}

/// Linear part of the finite real structure (J_F = matrix ∘ cc).
pub fn finite_real_structure(geometry: Geometry) -> FiberMatrix {
    let (o, z) = (ONE, ZERO);
    match geometry {
        Geometry::Manifold => FiberMatrix::identity(1),
        Geometry::Doubled => FiberMatrix::from_rows(&[&[z, o], &[o, z]]),
        Geometry::Electrodynamics => {
            FiberMatrix::from_rows(&[&[z, z, o, z], &[z, z, z, o], &[o, z, z, z], &[z, o, z, z]])
        }
    }
}

pub fn finite_grading(geometry: Geometry) -> FiberMatrix {
    match geometry {
        Geometry::Manifold => FiberMatrix::identity(1),
        Geometry::Doubled => FiberMatrix::real_diagonal(&[1.0, -1.0]),
        Geometry::Electrodynamics => FiberMatrix::real_diagonal(&[1.0, -1.0, -1.0, 1.0]),
    }
}

/// I′ = diag(1, −1, 1, −1).
pub fn i_prime() -> FiberMatrix {
    FiberMatrix::real_diagonal(&[1.0, -1.0, 1.0, -1.0])
}

/// I″ = diag(1, 1, −1, −1).
pub fn i_double_prime() -> FiberMatrix {
    FiberMatrix::real_diagonal(&[1.0, 1.0, -1.0, -1.0])
}

fn spin_finite(spin: &FiberMatrix, finite: &FiberMatrix) -> FiberMatrix {
    if finite.dim() == 1 {
        spin.clone()
    } else {
        FiberMatrix::spin_finite(spin, finite)
    }
}

fn lift(op: &FieldOperator, finite: &FiberMatrix) -> FieldOperator {
    if finite.dim() == 1 {
        op.clone()
    } else {
        op.tensor_finite(finite)
    }
}

fn build(geometry: Geometry, d: C64) -> TwistedTriple {
    let n = geometry.finite_dim();
    let id_f = FiberMatrix::identity(n);
    let gamma0 = gamma_euclidean(0).expect("mu = 0");
    let mut dirac = lift(&free_dirac(), &id_f);
    if geometry == Geometry::Electrodynamics {
        let mass = FieldOperator::constant(&spin_finite(&gamma5(), &finite_dirac(d)));
        dirac = dirac.add(&mass).expect("same dim");
    }
    let j_matrix = spin_finite(&charge_conjugation(), &finite_real_structure(geometry));
    let grading_matrix = spin_finite(&gamma5(), &finite_grading(geometry));
    let r_matrix = spin_finite(&gamma0, &id_f);
    let epsilon_dprime = if geometry == Geometry::Manifold { 1.0 } else { -1.0 };
    TwistedTriple {
        geometry,
        fiber_dim: geometry.fiber_dim(),
        d: if geometry == Geometry::Electrodynamics { d } else { ZERO },
        dirac,
        real_structure: FieldOperator::antilinear_constant(&j_matrix),
        grading: FieldOperator::constant(&grading_matrix),
        twist_unitary: FieldOperator::constant(&r_matrix),
        j_matrix,
        grading_matrix,
        r_matrix,
        signs: KoSigns { epsilon: -1.0, epsilon_prime: 1.0, epsilon_dprime, epsilon_tprime: -1.0 },
    }
}

pub fn build_manifold() -> TwistedTriple {
    build(Geometry::Manifold, ZERO)
}

pub fn build_doubled() -> TwistedTriple {
    build(Geometry::Doubled, ZERO)
}

pub fn build_ed(d: C64) -> TwistedTriple {
    build(Geometry::Electrodynamics, d)
}

pub fn build_triple(geometry: Geometry, d: C64) -> TwistedTriple {
    build(geometry, d)
}

impl TwistedTriple {
    pub fn represent(&self, a: &AlgebraElement) -> Result<FieldOperator> {
        self.check(a)?;
        Ok(a.represent())
    }

    fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.geometry != self.geometry {
            return Err(TwistError::GeometryMismatch {
                expected: self.geometry.name().into(),
                got: a.geometry.name().into(),
            });
        }
        Ok(())
    }

    /// J⁻¹ = ε J.
    pub fn j_inverse(&self) -> FieldOperator {
        self.real_structure.scale(c(self.signs.epsilon, 0.0))
    }

    /// J O J⁻¹.
    pub fn conjugate_by_j(&self, o: &FieldOperator) -> Result<FieldOperator> {
        conjugate_by_j(o, &self.real_structure, self.signs.epsilon)
    }

    /// Right action b° = J π(b)* J⁻¹.
    pub fn opposite(&self, b: &AlgebraElement) -> Result<FieldOperator> {
        self.check(b)?;
        self.conjugate_by_j(&b.star().represent())
    }

    /// `[π(a), b°]`.
    pub fn order_zero(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<FieldOperator> {
        let pa = self.represent(a)?;
        let bo = self.opposite(b)?;
        pa.compose(&bo)?.sub(&bo.compose(&pa)?)
    }

    /// `[[D, a]_ρ, b°]_ρ° = [D,a]_ρ b° − ρ(b)° [D,a]_ρ`.
    pub fn order_one(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<FieldOperator> {
        self.check(a)?;
        let t = twisted_commutator(&self.dirac, a)?;
        let bo = self.opposite(b)?;
        let rbo = self.opposite(&b.flip())?;
        t.compose(&bo)?.sub(&rbo.compose(&t)?)
    }

    /// γ⁵ ⊗ D_F, the finite part of D.
    pub fn finite_part(&self) -> FieldOperator {
        match self.geometry {
            Geometry::Electrodynamics => {
                FieldOperator::constant(&spin_finite(&gamma5(), &finite_dirac(self.d)))
            }
            _ => FieldOperator::zero(self.fiber_dim, false),
        }
    }

    /// ð ⊗ 𝕀.
    pub fn free_part(&self) -> FieldOperator {
        lift(&free_dirac(), &FiberMatrix::identity(self.geometry.finite_dim()))
    }
}

/// Σ_i π(a_i)[D, π(b_i)]_ρ.
pub fn one_form(triple: &TwistedTriple, pairs: &[(AlgebraElement, AlgebraElement)]) -> Result<FieldOperator> {
    let mut omega = FieldOperator::zero(triple.fiber_dim, false);
    for (a, b) in pairs {
        let pa = triple.represent(a)?;
        triple.check(b)?;
        let t = twisted_commutator(&triple.dirac, b)?;
        omega = omega.add(&pa.compose(&t)?)?;
    }
    Ok(omega)
}

/// ω + ε′ J ω J⁻¹.
pub fn fluctuate(triple: &TwistedTriple, omega: &FieldOperator) -> Result<FieldOperator> {
    let jw = triple.conjugate_by_j(omega)?;
    omega.add(&jw.scale(c(triple.signs.epsilon_prime, 0.0)))
}

/// D + ω + ε′ J ω J⁻¹.
pub fn covariant_dirac(triple: &TwistedTriple, omega: &FieldOperator) -> Result<FieldOperator> {
    triple.dirac.add(&fluctuate(triple, omega)?)
}

fn chiral_projector(plus: bool) -> FiberMatrix {
    if plus {
        FiberMatrix::real_diagonal(&[1.0, 1.0, 0.0, 0.0])
    } else {
        FiberMatrix::real_diagonal(&[0.0, 0.0, 1.0, 1.0])
    }
}

/// −iγ^μ P±.
fn slot_basis(mu: usize, plus: bool) -> FiberMatrix {
    &gamma_euclidean(mu).expect("mu < 4").scale(-I) * &chiral_projector(plus)
}

/// Per-slot coefficients `(a_μ, b_μ)` of `−iγ^μ(a_μ P₊ + b_μ P₋)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotFields {
    pub geometry: Geometry,
    /// `slots[s][μ] = (a_μ, b_μ)`.
    pub slots: Vec<[(FourierScalar, FourierScalar); 4]>,
    /// Norm of everything outside the block-diagonal γ-family.
    pub residual: f64,
}

fn empty_slot() -> [(FourierScalar, FourierScalar); 4] {
    std::array::from_fn(|_| (FourierScalar::zero(), FourierScalar::zero()))
}

/// Reads the slot coefficients from a block-diagonal, derivative-free
/// operator.
pub fn extract_slots(op: &FieldOperator, geometry: Geometry) -> Result<SlotFields> {
    if op.dim() != geometry.fiber_dim() {
        return Err(TwistError::FiberMismatch { left: geometry.fiber_dim(), right: op.dim() });
    }
    if op.is_antilinear() && op.term_count() > 0 {
        return Err(TwistError::Linearity { expected: "linear" });
    }
    let n = geometry.finite_dim();
    let mut slots: Vec<_> = (0..n).map(|_| empty_slot()).collect();
    let mut residual: f64 = op.off_block_max(4);
    let basis: Vec<[FiberMatrix; 2]> = (0..4).map(|mu| [slot_basis(mu, true), slot_basis(mu, false)]).collect();
    for ((k, alpha), g) in op.terms() {
        if *alpha != [0; 4] {
            residual = residual.max(g.max_abs());
            continue;
        }
        for (s, slot) in slots.iter_mut().enumerate() {
            let block = FiberMatrix::raw(g.matrix().view((4 * s, 4 * s), (4, 4)).into_owned());
            let mut rebuilt = FiberMatrix::zeros(4);
            for mu in 0..4 {
                for (pm, b) in basis[mu].iter().enumerate() {
                    // basis elements are orthogonal with squared norm 2
                    let coef = (&b.adjoint() * &block).trace() * 0.5;
                    rebuilt.axpy(coef, b);
                    if pm == 0 {
                        slot[mu].0.add_at(*k, coef);
                    } else {
                        slot[mu].1.add_at(*k, coef);
                    }
                }
            }
            residual = residual.max(block.max_diff(&rebuilt));
        }
    }
    Ok(SlotFields { geometry, slots, residual })
}

/// Re-assembles Σ_s Σ_μ −iγ^μ(a_μ P₊ + b_μ P₋) on slot s.
pub fn assemble_slots(fields: &SlotFields) -> FieldOperator {
    let n = fields.geometry.finite_dim();
    let mut op = FieldOperator::zero(4 * n, false);
    for (s, slot) in fields.slots.iter().enumerate() {
        let mut e = FiberMatrix::zeros(n);
        e.set(s, s, ONE);
        for (mu, (a, b)) in slot.iter().enumerate() {
            for (f, plus) in [(a, true), (b, false)] {
                let m = spin_finite(&slot_basis(mu, plus), &e);
                op = op.add(&FieldOperator::multiplication(f, &m)).expect("same dim");
            }
        }
    }
    op
}

/// Manifold one-form data: ω = −iγ^μ diag(h_μ 𝕀₂, h′_μ 𝕀₂).
#[derive(Clone, Debug, PartialEq)]
pub struct OneFormFields {
    pub h: [FourierScalar; 4],
    pub h_prime: [FourierScalar; 4],
    pub residual: f64,
}

pub fn extract_one_form(omega: &FieldOperator) -> Result<OneFormFields> {
    let s = extract_slots(omega, Geometry::Manifold)?;
    let slot = &s.slots[0];
    Ok(OneFormFields {
        h: std::array::from_fn(|mu| slot[mu].0.clone()),
        h_prime: std::array::from_fn(|mu| slot[mu].1.clone()),
        residual: s.residual,
    })
}

/// Fluctuation data: slot 0 carries `(z_μ, z′_μ)`, the other slots follow
/// the geometry's pattern; `f = Re z`, `g = Im z`.
#[derive(Clone, Debug, PartialEq)]
pub struct FluctuationFields {
    pub geometry: Geometry,
    pub z: [FourierScalar; 4],
    pub z_prime: [FourierScalar; 4],
    pub f: [FourierScalar; 4],
    pub g: [FourierScalar; 4],
    /// Distance from the fluctuation family (block structure and slot pattern).
    pub residual: f64,
}

/// Slot pattern of a fluctuation in terms of `(z, z′)`; the flag marks
/// conjugated slots.
fn slot_pattern(geometry: Geometry) -> &'static [(bool, bool)] {
    // (swap z ↔ z′, conjugate)
    match geometry {
        Geometry::Manifold => &[(false, false)],
        Geometry::Doubled => &[(false, false), (false, true)],
        Geometry::Electrodynamics => &[(false, false), (true, false), (false, true), (true, true)],
    }
}

fn pattern_pair(z: &FourierScalar, zp: &FourierScalar, swap: bool, conj: bool) -> (FourierScalar, FourierScalar) {
    let (a, b) = if swap { (zp, z) } else { (z, zp) };
    if conj {
        (a.conj(), b.conj())
    } else {
        (a.clone(), b.clone())
    }
}

pub fn extract_fields(op: &FieldOperator, geometry: Geometry) -> Result<FluctuationFields> {
    let s = extract_slots(op, geometry)?;
    let z: [FourierScalar; 4] = std::array::from_fn(|mu| s.slots[0][mu].0.clone());
    let z_prime: [FourierScalar; 4] = std::array::from_fn(|mu| s.slots[0][mu].1.clone());
    let mut residual = s.residual;
    for (slot, &(swap, conj)) in s.slots.iter().zip(slot_pattern(geometry)) {
        for mu in 0..4 {
            let (a, b) = pattern_pair(&z[mu], &z_prime[mu], swap, conj);
            residual = residual.max(slot[mu].0.max_diff(&a)).max(slot[mu].1.max_diff(&b));
        }
    }
    Ok(FluctuationFields {
        geometry,
        f: std::array::from_fn(|mu| z[mu].real_part()),
        g: std::array::from_fn(|mu| z[mu].imag_part()),
        z,
        z_prime,
        residual,
    })
}

impl FluctuationFields {
    /// Self-adjoint fluctuation from real fields: `z = f + i g`, `z′ = −z̄`.
    pub fn from_real(geometry: Geometry, f: [FourierScalar; 4], g: [FourierScalar; 4]) -> Self {
        let z: [FourierScalar; 4] = std::array::from_fn(|mu| f[mu].add(&g[mu].scale(I)));
        let z_prime = std::array::from_fn(|mu| z[mu].conj().neg());
        Self { geometry, z, z_prime, f, g, residual: 0.0 }
    }

    pub fn zero(geometry: Geometry) -> Self {
        let zero: [FourierScalar; 4] = std::array::from_fn(|_| FourierScalar::zero());
        Self::from_real(geometry, zero.clone(), zero)
    }

    pub fn to_slots(&self) -> SlotFields {
        let slots = slot_pattern(self.geometry)
            .iter()
            .map(|&(swap, conj)| std::array::from_fn(|mu| pattern_pair(&self.z[mu], &self.z_prime[mu], swap, conj)))
            .collect();
        SlotFields { geometry: self.geometry, slots, residual: 0.0 }
    }

    pub fn assemble(&self) -> FieldOperator {
        assemble_slots(&self.to_slots())
    }

    /// max |z′ + z̄|.
    pub fn selfadjoint_defect(&self) -> f64 {
        (0..4).map(|mu| self.z_prime[mu].add(&self.z[mu].conj()).max_abs()).fold(0.0, f64::max)
    }
}

/// X = −iγ^μ f_μ γ⁵ and the gauge part γ^μ g_μ combined with the finite
/// matrices of each geometry: manifold X, doubled X⊗𝕀₂ + Y⊗γ_F,
/// electrodynamics X⊗I′ + Y⊗I″.
pub fn fluctuation_from_fields(geometry: Geometry, f: &[FourierScalar; 4], g: &[FourierScalar; 4]) -> FieldOperator {
    let mut x = FieldOperator::zero(4, false);
    let mut y = FieldOperator::zero(4, false);
    for mu in 0..4 {
        let gm = gamma_euclidean(mu).expect("mu < 4");
        x = x.add(&FieldOperator::multiplication(&f[mu], &(&gm * &gamma5()).scale(-I))).expect("dim 4");
        y = y.add(&FieldOperator::multiplication(&g[mu], &gm)).expect("dim 4");
    }
    match geometry {
        Geometry::Manifold => x,
        Geometry::Doubled => {
            x.tensor_finite(&FiberMatrix::identity(2)).add(&y.tensor_finite(&finite_grading(Geometry::Doubled))).expect("dim 8")
        }
        Geometry::Electrodynamics => {
            x.tensor_finite(&i_prime()).add(&y.tensor_finite(&i_double_prime())).expect("dim 16")
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelfAdjointnessReport {
    /// ω = ω† as operators.
    pub omega_selfadjoint: bool,
    pub omega_defect: f64,
    /// ω + JωJ⁻¹ self-adjoint as an operator.
    pub fluctuation_selfadjoint: bool,
    pub fluctuation_defect: f64,
    /// Field-level predicate for ω: b_μ = −ā_μ on every slot.
    pub omega_predicate: bool,
    /// Field-level predicate for the fluctuation: z′_μ = −z̄_μ.
    pub fluctuation_predicate: bool,
    pub fluctuation_vanishes: bool,
    /// ω self-adjoint with some h_μ off the imaginary axis forces a
    /// nonzero fluctuation.
    pub implication_holds: bool,
}

pub fn selfadjointness_conditions(triple: &TwistedTriple, omega: &FieldOperator, tol: f64, probe_cutoff: i32) -> Result<SelfAdjointnessReport> {
    let geometry = triple.geometry;
    let om_adj = omega.adjoint()?;
    let eq_om = operator_equal_tol(omega, &om_adj, probe_cutoff, tol)?;
    let fl = fluctuate(triple, omega)?;
    let eq_fl = operator_equal_tol(&fl, &fl.adjoint()?, probe_cutoff, tol)?;
    let slots = extract_slots(omega, geometry)?;
    let omega_predicate = slots
        .slots
        .iter()
        .all(|slot| slot.iter().all(|(a, b)| b.add(&a.conj()).max_abs() <= tol));
    let fields = extract_fields(&fl, geometry)?;
    let fluctuation_predicate = fields.selfadjoint_defect() <= tol;
    let fluctuation_vanishes = fl.max_abs() <= tol;
    let real_part_nonzero = slots.slots[0].iter().any(|(a, _)| a.real_part().max_abs() > tol);
    let implication_holds = !(omega_predicate && real_part_nonzero) || !fluctuation_vanishes;
    Ok(SelfAdjointnessReport {
        omega_selfadjoint: eq_om.equal,
        omega_defect: eq_om.normal_form_error,
        fluctuation_selfadjoint: eq_fl.equal,
        fluctuation_defect: eq_fl.normal_form_error,
        omega_predicate,
        fluctuation_predicate,
        fluctuation_vanishes,
        implication_holds,
    })
}

/// Pure-phase scalar `e^{iφ} e^{ik·x}`.
pub fn phase(k: Mode, constant_phase: f64) -> FourierScalar {
    FourierScalar::mode(k, C64::from_polar(1.0, constant_phase))
}

/// Unitary whose components are pure phases, in the component order of
/// [`AlgebraElement`].
pub fn phase_unitary(geometry: Geometry, phases: &[(Mode, f64)]) -> Result<AlgebraElement> {
    AlgebraElement::new(geometry, phases.iter().map(|(k, p)| phase(*k, *p)).collect())
}

const UNITARITY_TOL: f64 = 1e-12;

/// ω^u = ρ(u)([D, u*]_ρ + ω u*).
pub fn gauge_transform(triple: &TwistedTriple, omega: &FieldOperator, u: &AlgebraElement) -> Result<FieldOperator> {
    triple.check(u)?;
    let defect = u.unitarity_defect();
    if defect > UNITARITY_TOL {
        return Err(TwistError::NotUnitary(defect));
    }
    let us = u.star();
    let inner = twisted_commutator(&triple.dirac, &us)?.add(&omega.compose(&us.represent())?)?;
    u.flip().represent().compose(&inner)
}

/// U = π(u) J π(u) J⁻¹.
pub fn adjoint_action(triple: &TwistedTriple, u: &AlgebraElement) -> Result<FieldOperator> {
    triple.check(u)?;
    let defect = u.unitarity_defect();
    if defect > UNITARITY_TOL {
        return Err(TwistError::NotUnitary(defect));
    }
    let pu = u.represent();
    pu.compose(&triple.conjugate_by_j(&pu)?)
}

/// Assembles an element of H_R from Weyl data: each finite slot carries
/// `(w_s; w_s)`. Manifold takes one Weyl field, doubled two (φ, ζ),
/// electrodynamics four (φ₁, φ₂, ζ₁, ζ₂).
pub fn hr_vector<C: Coefficient>(geometry: Geometry, weyl: &[Section<C>]) -> Result<Section<C>> {
    if weyl.len() != geometry.finite_dim() {
        return Err(TwistError::Config(format!(
            "{} needs {} Weyl fields, got {}",
            geometry.name(),
            geometry.finite_dim(),
            weyl.len()
        )));
    }
    let mut parts = Vec::with_capacity(2 * weyl.len());
    for w in weyl {
        if w.fiber_dim() != 2 {
            return Err(TwistError::FiberMismatch { left: 2, right: w.fiber_dim() });
        }
        parts.push(w);
        parts.push(w);
    }
    Ok(Section::stack(&parts))
}

/// Fiber-level structure of H₊ ∩ H_R.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralRealReport {
    /// ‖p₊ p_R p₊ − ½ p₊‖.
    pub compression_defect: f64,
    /// Smallest singular value of the stacked [p₋; p_R₋]; positive iff the
    /// intersection is trivial.
    pub min_singular: f64,
    /// max |ΓR + RΓ|.
    pub anticommutator: f64,
}

pub fn chiral_real_intersection(triple: &TwistedTriple) -> ChiralRealReport {
    let n = triple.fiber_dim;
    let id = FiberMatrix::identity(n);
    let half = C64::new(0.5, 0.0);
    let p_plus = (&id + &triple.grading_matrix).scale(half);
    let p_minus = (&id - &triple.grading_matrix).scale(half);
    let pr = (&id + &triple.r_matrix).scale(half);
    let pr_minus = (&id - &triple.r_matrix).scale(half);
    let comp = &(&p_plus * &pr) * &p_plus;
    let compression_defect = comp.max_diff(&p_plus.scale(half));
    let mut stacked = nalgebra::DMatrix::zeros(2 * n, n);
    stacked.view_mut((0, 0), (n, n)).copy_from(p_minus.matrix());
    stacked.view_mut((n, 0), (n, n)).copy_from(pr_minus.matrix());
    let sv = stacked.svd(false, false).singular_values;
    let min_singular = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let anticommutator = triple.grading_matrix.anticommutator(&triple.r_matrix).max_abs();
    ChiralRealReport { compression_defect, min_singular, anticommutator }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifold_structure_matrices() {
        let t = build_manifold();
        assert!(t.grading_matrix.approx_eq(&gamma5(), 0.0));
        assert!(t.r_matrix.approx_eq(&gamma_euclidean(0).unwrap(), 0.0));
    }

    #[test]
    fn ed_grading_order() {
        let t = build_ed(C64::new(0.0, 1.0));
        let d: Vec<f64> = (0..16).map(|i| t.grading_matrix.get(i, i).re).collect();
        // γ⁵ ⊗ diag(1, −1, −1, 1), finite-major
        let expect = [1., 1., -1., -1., -1., -1., 1., 1., -1., -1., 1., 1., 1., 1., -1., -1.];
        assert_eq!(d, expect);
    }

    #[test]
    fn intersection_is_trivial() {
        for g in Geometry::ALL {
            let r = chiral_real_intersection(&build_triple(g, C64::new(0.0, 1.0)));
            assert!(r.compression_defect <= 1e-14);
            assert!(r.min_singular > 0.1);
        }
    }
}
