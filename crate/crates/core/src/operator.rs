//! Differential operators with Fourier-mode coefficients.
//!
//! A [`FieldOperator`] is a finite sum of primitive terms
//! `G · e^{ik·x} · ∂^α`, optionally followed by complex conjugation `cc`.
//! Terms are keyed by `(k, α)` so the stored map is the normal form.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{FiberMatrix, C64, I, ONE, ZERO};
use crate::error::{Result, TwistError};
use crate::torus::{add_modes, modes_in_box, neg_mode, Coefficient, FourierScalar, Mode, Section};

/// Multi-index of partial derivatives (∂_0^α0 ∂_1^α1 ∂_2^α2 ∂_3^α3).
pub type DerivIndex = [u8; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Manifold,
    Doubled,
    Electrodynamics,
}

impl Geometry {
    pub const ALL: [Geometry; 3] = [Geometry::Manifold, Geometry::Doubled, Geometry::Electrodynamics];

    pub fn name(self) -> &'static str {
        match self {
            Geometry::Manifold => "manifold",
            Geometry::Doubled => "doubled",
            Geometry::Electrodynamics => "electrodynamics",
        }
    }

    /// Number of finite basis vectors tensored with the spinor fiber.
    pub fn finite_dim(self) -> usize {
        match self {
            Geometry::Manifold => 1,
            Geometry::Doubled => 2,
            Geometry::Electrodynamics => 4,
        }
    }

    pub fn fiber_dim(self) -> usize {
        4 * self.finite_dim()
    }

    /// Number of scalar components of an algebra element.
    pub fn algebra_components(self) -> usize {
        match self {
            Geometry::Manifold => 2,
            _ => 4,
        }
    }

    pub fn parse(s: &str) -> Result<Geometry> {
        match s {
            "manifold" => Ok(Geometry::Manifold),
            "doubled" => Ok(Geometry::Doubled),
            "electrodynamics" | "ed" => Ok(Geometry::Electrodynamics),
            other => Err(TwistError::Parse(format!("unknown geometry `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldOperator {
    dim: usize,
    antilinear: bool,
    terms: BTreeMap<(Mode, DerivIndex), FiberMatrix>,
}

fn binom(n: u8, k: u8) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// (i q)^α.
fn symbol_power(q: Mode, alpha: DerivIndex) -> C64 {
    let mut r = ONE;
    for mu in 0..4 {
        for _ in 0..alpha[mu] {
            r *= I * q[mu] as f64;
        }
    }
    r
}

fn order(alpha: DerivIndex) -> u32 {
    alpha.iter().map(|&a| a as u32).sum()
}

fn sub_index(a: DerivIndex, b: DerivIndex) -> DerivIndex {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn add_index(a: DerivIndex, b: DerivIndex) -> DerivIndex {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// All β ≤ α componentwise, with Π binom(α_μ, β_μ).
fn sub_indices(alpha: DerivIndex) -> Vec<(DerivIndex, f64)> {
    let mut out = Vec::new();
    for b0 in 0..=alpha[0] {
        for b1 in 0..=alpha[1] {
            for b2 in 0..=alpha[2] {
                for b3 in 0..=alpha[3] {
                    let beta = [b0, b1, b2, b3];
                    let w = (0..4).map(|m| binom(alpha[m], beta[m])).product();
                    out.push((beta, w));
                }
            }
        }
    }
    out
}

pub fn unit_index(mu: usize) -> DerivIndex {
    let mut a = [0u8; 4];
    a[mu] = 1;
    a
}

impl FieldOperator {
    pub fn zero(dim: usize, antilinear: bool) -> Self {
        Self { dim, antilinear, terms: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        Self::constant(&FiberMatrix::identity(dim))
    }

    /// Constant fiber matrix.
    pub fn constant(g: &FiberMatrix) -> Self {
        Self::term([0; 4], [0; 4], g, false)
    }

    /// `G ∘ cc`.
    pub fn antilinear_constant(g: &FiberMatrix) -> Self {
        Self::term([0; 4], [0; 4], g, true)
    }

    /// `G · M_f`.
    pub fn multiplication(f: &FourierScalar, g: &FiberMatrix) -> Self {
        let mut op = Self::zero(g.dim(), false);
        for (k, c) in f.iter() {
            op.add_term(*k, [0; 4], &g.scale(*c));
        }
        op
    }

    /// `G ∘ ∂_μ`.
    pub fn derivative(mu: usize, g: &FiberMatrix) -> Self {
        Self::term([0; 4], unit_index(mu), g, false)
    }

    pub fn term(k: Mode, alpha: DerivIndex, g: &FiberMatrix, antilinear: bool) -> Self {
        let mut op = Self::zero(g.dim(), antilinear);
        op.add_term(k, alpha, g);
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_antilinear(&self) -> bool {
        self.antilinear
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mode, DerivIndex), &FiberMatrix)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, k: Mode, alpha: DerivIndex) -> Option<&FiberMatrix> {
        self.terms.get(&(k, alpha))
    }

    pub fn derivative_order(&self) -> u32 {
        self.terms.keys().map(|(_, a)| order(*a)).max().unwrap_or(0)
    }

    fn add_term(&mut self, k: Mode, alpha: DerivIndex, g: &FiberMatrix) {
        if g.is_zero() {
            return;
        }
        let key = (k, alpha);
        match self.terms.get_mut(&key) {
            Some(m) => {
                m.axpy(ONE, g);
                if m.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, g.clone());
            }
        }
    }

    fn check_compatible(&self, other: &FieldOperator) -> Result<()> {
        if self.dim != other.dim {
            return Err(TwistError::FiberMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    fn check_same_linearity(&self, other: &FieldOperator) -> Result<bool> {
        self.check_compatible(other)?;
        if self.antilinear == other.antilinear || other.terms.is_empty() {
            Ok(self.antilinear)
        } else if self.terms.is_empty() {
            Ok(other.antilinear)
        } else {
            Err(TwistError::Linearity { expected: if self.antilinear { "antilinear" } else { "linear" } })
        }
    }

    pub fn add(&self, other: &FieldOperator) -> Result<FieldOperator> {
        self.combine(other, ONE)
    }

    pub fn sub(&self, other: &FieldOperator) -> Result<FieldOperator> {
        self.combine(other, -ONE)
    }

    fn combine(&self, other: &FieldOperator, c: C64) -> Result<FieldOperator> {
        let antilinear = self.check_same_linearity(other)?;
        let mut out = self.clone();
        out.antilinear = antilinear;
        for ((k, a), g) in &other.terms {
            out.add_term(*k, *a, &g.scale(c));
        }
        Ok(out)
    }

    pub fn scale(&self, c: C64) -> FieldOperator {
        let mut out = Self::zero(self.dim, self.antilinear);
        for ((k, a), g) in &self.terms {
            out.add_term(*k, *a, &g.scale(c));
        }
        out
    }

    /// `self ∘ other`, re-normalized with the Leibniz rule and
    /// `cc ∘ G e^{ik·x} ∂^α = Ḡ e^{−ik·x} ∂^α ∘ cc`.
    pub fn compose(&self, other: &FieldOperator) -> Result<FieldOperator> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.dim, self.antilinear ^ other.antilinear);
        for ((k1, a1), g1) in &self.terms {
            let splits = sub_indices(*a1);
            for ((k2, a2), g2) in &other.terms {
                let (g2, k2) = if self.antilinear { (g2.conj(), neg_mode(*k2)) } else { (g2.clone(), *k2) };
                let base = g1 * &g2;
                let k = add_modes(*k1, k2);
                for (beta, w) in &splits {
                    let coef = symbol_power(k2, *beta) * *w;
                    if coef == ZERO {
                        continue;
                    }
                    out.add_term(k, add_index(sub_index(*a1, *beta), *a2), &base.scale(coef));
                }
            }
        }
        Ok(out)
    }

    /// Formal adjoint with respect to the L² inner product; linear only.
    pub fn adjoint(&self) -> Result<FieldOperator> {
        if self.antilinear {
            return Err(TwistError::Linearity { expected: "linear" });
        }
        let mut out = Self::zero(self.dim, false);
        for ((k, alpha), g) in &self.terms {
            let gd = g.adjoint();
            let sign = if order(*alpha) % 2 == 0 { 1.0 } else { -1.0 };
            let mk = neg_mode(*k);
            for (beta, w) in sub_indices(*alpha) {
                let coef = symbol_power(mk, beta) * w * sign;
                if coef == ZERO {
                    continue;
                }
                out.add_term(mk, sub_index(*alpha, beta), &gd.scale(coef));
            }
        }
        Ok(out)
    }

    pub fn apply<C: Coefficient>(&self, psi: &Section<C>) -> Result<Section<C>> {
        if psi.fiber_dim() != self.dim {
            return Err(TwistError::FiberMismatch { left: self.dim, right: psi.fiber_dim() });
        }
        let input = if self.antilinear { psi.cc() } else { psi.clone() };
        let mut out = Section::zeros(self.dim);
        for ((k, alpha), g) in &self.terms {
            for (q, v) in input.modes() {
                let c = symbol_power(*q, *alpha);
                if c == ZERO {
                    continue;
                }
                let w = crate::torus::matvec(g, v);
                out.add_at(add_modes(*k, *q), &w, c);
            }
        }
        Ok(out)
    }

    /// `F ⊗ self` on the finite-major fiber.
    pub fn tensor_finite(&self, finite: &FiberMatrix) -> FieldOperator {
        let mut out = Self::zero(self.dim * finite.dim(), self.antilinear);
        for ((k, a), g) in &self.terms {
            out.add_term(*k, *a, &FiberMatrix::spin_finite(g, finite));
        }
        out
    }

    /// Block-diagonal operator; all blocks share linearity and dimension.
    pub fn block_diag(blocks: &[&FieldOperator]) -> Result<FieldOperator> {
        let first = blocks.first().ok_or(TwistError::Config("empty block list".into()))?;
        let d = first.dim;
        let n = blocks.len();
        let mut out = Self::zero(d * n, first.antilinear);
        for (s, b) in blocks.iter().enumerate() {
            if b.dim != d {
                return Err(TwistError::FiberMismatch { left: d, right: b.dim });
            }
            if b.antilinear != first.antilinear && !b.terms.is_empty() {
                return Err(TwistError::Linearity { expected: "uniform" });
            }
            let mut e = FiberMatrix::zeros(n);
            e.set(s, s, ONE);
            for ((k, a), g) in &b.terms {
                out.add_term(*k, *a, &FiberMatrix::spin_finite(g, &e));
            }
        }
        Ok(out)
    }

    /// Diagonal block `s` of size `block` as an operator of that size.
    pub fn diagonal_block(&self, s: usize, block: usize) -> FieldOperator {
        let mut out = Self::zero(block, self.antilinear);
        for ((k, a), g) in &self.terms {
            let m = g.matrix().view((s * block, s * block), (block, block)).into_owned();
            out.add_term(*k, *a, &FiberMatrix::raw(m));
        }
        out
    }

    /// Largest entry outside the diagonal blocks of size `block`.
    pub fn off_block_max(&self, block: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for g in self.terms.values() {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if i / block != j / block {
                        worst = worst.max(g.get(i, j).norm());
                    }
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, g| m.max(g.max_abs()))
    }

    /// Largest normal-form coefficient of `self − other`.
    pub fn max_diff(&self, other: &FieldOperator) -> Result<f64> {
        self.check_compatible(other)?;
        if self.antilinear != other.antilinear && !self.terms.is_empty() && !other.terms.is_empty() {
            return Ok(f64::INFINITY);
        }
        let mut worst: f64 = 0.0;
        for (key, g) in &self.terms {
            let d = match other.terms.get(key) {
                Some(h) => g.max_diff(h),
                None => g.max_abs(),
            };
            worst = worst.max(d);
        }
        for (key, h) in &other.terms {
            if !self.terms.contains_key(key) {
                worst = worst.max(h.max_abs());
            }
        }
        Ok(worst)
    }

    /// Response to the probe `e^{iq·x} e_s` for all fiber basis vectors at
    /// once: output mode ↦ matrix whose column s is the image of `e_s`.
    pub fn probe_response(&self, q: Mode) -> BTreeMap<Mode, FiberMatrix> {
        let q_in = if self.antilinear { neg_mode(q) } else { q };
        let mut out: BTreeMap<Mode, FiberMatrix> = BTreeMap::new();
        for ((k, alpha), g) in &self.terms {
            let c = symbol_power(q_in, *alpha);
            if c == ZERO {
                continue;
            }
            out.entry(add_modes(*k, q_in)).or_insert_with(|| FiberMatrix::zeros(self.dim)).axpy(c, g);
        }
        out
    }
}

/// Outcome of comparing two operators along both equality paths.
#[derive(Clone, Debug, PartialEq)]
pub struct Equality {
    pub equal: bool,
    pub normal_form_error: f64,
    pub probe_error: f64,
}

pub const STRUCTURAL_TOL: f64 = 1e-12;
pub const LEIBNIZ_TOL: f64 = 1e-10;

pub fn operator_equal(o1: &FieldOperator, o2: &FieldOperator, probe_cutoff: i32) -> Result<Equality> {
    operator_equal_tol(o1, o2, probe_cutoff, STRUCTURAL_TOL)
}

/// Compares normal forms and probe responses on `{e^{iq·x} e_s : |q|∞ ≤
/// probe_cutoff}`; the two verdicts must agree.
pub fn operator_equal_tol(o1: &FieldOperator, o2: &FieldOperator, probe_cutoff: i32, tol: f64) -> Result<Equality> {
    o1.check_compatible(o2)?;
    let normal_form_error = o1.max_diff(o2)?;
    let probes = modes_in_box(probe_cutoff);
    let probe_error = probes
        .par_iter()
        .map(|q| {
            let r1 = o1.probe_response(*q);
            let r2 = o2.probe_response(*q);
            let mut worst: f64 = 0.0;
            for (k, m) in &r1 {
                worst = worst.max(match r2.get(k) {
                    Some(n) => m.max_diff(n),
                    None => m.max_abs(),
                });
            }
            for (k, n) in &r2 {
                if !r1.contains_key(k) {
                    worst = worst.max(n.max_abs());
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    let deriv = o1.derivative_order().max(o2.derivative_order()) as i32;
    let scale = ((probe_cutoff.max(1) as f64) * 2.0).powi(deriv).max(1.0) * 4.0;
    let nf_ok = normal_form_error <= tol;
    let probe_ok = probe_error <= tol * scale;
    if nf_ok != probe_ok {
        let gap = (normal_form_error / tol).max(probe_error / (tol * scale));
        if gap > 1e4 {
            return Err(TwistError::EqualityPathsDisagree { normal: normal_form_error, probe: probe_error });
        }
    }
    Ok(Equality { equal: nf_ok && probe_ok, normal_form_error, probe_error })
}

/// Element of the twisted algebra: manifold `(f, f′)`, doubled and
/// electrodynamics `((f, g), (f′, g′))` stored as `[f, g, f′, g′]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub geometry: Geometry,
    pub comps: Vec<FourierScalar>,
}

impl AlgebraElement {
    pub fn new(geometry: Geometry, comps: Vec<FourierScalar>) -> Result<Self> {
        if comps.len() != geometry.algebra_components() {
            return Err(TwistError::Config(format!(
                "{} algebra element needs {} components, got {}",
                geometry.name(),
                geometry.algebra_components(),
                comps.len()
            )));
        }
        Ok(Self { geometry, comps })
    }

    pub fn unit(geometry: Geometry) -> Self {
        let one = FourierScalar::real_constant(1.0);
        Self { geometry, comps: vec![one; geometry.algebra_components()] }
    }

    /// Flip automorphism exchanging the two copies.
    pub fn flip(&self) -> Self {
        let comps = match self.geometry {
            Geometry::Manifold => vec![self.comps[1].clone(), self.comps[0].clone()],
            _ => vec![self.comps[2].clone(), self.comps[3].clone(), self.comps[0].clone(), self.comps[1].clone()],
        };
        Self { geometry: self.geometry, comps }
    }

    /// a* (pointwise conjugate).
    pub fn star(&self) -> Self {
        Self { geometry: self.geometry, comps: self.comps.iter().map(|c| c.conj()).collect() }
    }

    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.geometry != other.geometry {
            return Err(TwistError::GeometryMismatch {
                expected: self.geometry.name().into(),
                got: other.geometry.name().into(),
            });
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.multiply(b)).collect();
        Ok(Self { geometry: self.geometry, comps })
    }

    /// Scalars on the 2×2 spinor blocks, in fiber order.
    fn block_scalars(&self) -> Vec<&FourierScalar> {
        let c = &self.comps;
        match self.geometry {
            Geometry::Manifold => vec![&c[0], &c[1]],
            // diag(f, f′, g′, g)
            Geometry::Doubled => vec![&c[0], &c[2], &c[3], &c[1]],
            // diag(f, f′, f′, f, g′, g, g, g′)
            Geometry::Electrodynamics => vec![&c[0], &c[2], &c[2], &c[0], &c[3], &c[1], &c[1], &c[3]],
        }
    }

    /// π(a), block diagonal with 2×2 scalar blocks.
    pub fn represent(&self) -> FieldOperator {
        let blocks = self.block_scalars();
        let n = 2 * blocks.len();
        let mut op = FieldOperator::zero(n, false);
        for (b, f) in blocks.iter().enumerate() {
            let mut e = FiberMatrix::zeros(n);
            e.set(2 * b, 2 * b, ONE);
            e.set(2 * b + 1, 2 * b + 1, ONE);
            for (k, c) in f.iter() {
                op.add_term(*k, [0; 4], &e.scale(*c));
            }
        }
        op
    }

    /// max |π(a)†π(a) − 𝕀| over normal-form coefficients.
    pub fn unitarity_defect(&self) -> f64 {
        let one = FourierScalar::real_constant(1.0);
        self.comps.iter().map(|f| f.conj().multiply(f).max_diff(&one)).fold(0.0, f64::max)
    }
}

/// `[D, π(a)]_ρ = D π(a) − π(ρ(a)) D`.
pub fn twisted_commutator(d: &FieldOperator, a: &AlgebraElement) -> Result<FieldOperator> {
    let pa = a.represent();
    let pra = a.flip().represent();
    d.compose(&pa)?.sub(&pra.compose(d)?)
}

/// `R O R†`.
pub fn rho_of(o: &FieldOperator, r: &FieldOperator) -> Result<FieldOperator> {
    r.compose(o)?.compose(&r.adjoint()?)
}

/// `J O J⁻¹` with `J⁻¹ = ε J`.
pub fn conjugate_by_j(o: &FieldOperator, j: &FieldOperator, epsilon: f64) -> Result<FieldOperator> {
    if !j.is_antilinear() {
        return Err(TwistError::Linearity { expected: "antilinear" });
    }
    j.compose(o)?.compose(&j.scale(C64::new(epsilon, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{charge_conjugation, gamma_euclidean};

    #[test]
    fn leibniz_rule() {
        let f = FourierScalar::from_pairs([([1, 0, 2, 0], C64::new(0.3, 0.1)), ([0, -1, 0, 0], C64::new(1.0, 0.0))]);
        let id = FiberMatrix::identity(4);
        let d0 = FieldOperator::derivative(0, &id);
        let mf = FieldOperator::multiplication(&f, &id);
        let lhs = d0.compose(&mf).unwrap();
        let rhs = mf.compose(&d0).unwrap().add(&FieldOperator::multiplication(&f.partial(0), &id)).unwrap();
        assert!(lhs.max_diff(&rhs).unwrap() < 1e-15);
    }

    #[test]
    fn j_squares_to_minus_one() {
        let j = FieldOperator::antilinear_constant(&charge_conjugation());
        let jj = j.compose(&j).unwrap();
        assert!(!jj.is_antilinear());
        assert!(jj.max_diff(&FieldOperator::identity(4).scale(-ONE)).unwrap() < 1e-15);
    }

    #[test]
    fn dirac_is_self_adjoint() {
        let mut d = FieldOperator::zero(4, false);
        for mu in 0..4 {
            d = d.add(&FieldOperator::derivative(mu, &gamma_euclidean(mu).unwrap().scale(-I))).unwrap();
        }
        let e = operator_equal(&d, &d.adjoint().unwrap(), 2).unwrap();
        assert!(e.equal);
    }
}
