//! Fourier calculus on the flat torus (ℝ/2πℤ)⁴.
//!
//! Scalars and sections are finite Fourier sums `Σ_k c_k e^{ik·x}`. Products
//! are coefficient convolutions, `∂_μ` multiplies mode `k` by `i k_μ`, and
//! integrals keep the volume factor (2π)⁴ explicit.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Debug;

use crate::clifford::{FiberMatrix, C64, I, ZERO};
use crate::error::{Result, TwistError};

pub type Mode = [i32; 4];

/// Volume of the torus, (2π)⁴.
pub const VOLUME: f64 = (2.0 * PI) * (2.0 * PI) * (2.0 * PI) * (2.0 * PI);

pub fn neg_mode(k: Mode) -> Mode {
    [-k[0], -k[1], -k[2], -k[3]]
}

pub fn add_modes(a: Mode, b: Mode) -> Mode {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn mode_norm_inf(k: Mode) -> i32 {
    k.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// All modes with |k|∞ ≤ cutoff, in lexicographic order.
pub fn modes_in_box(cutoff: i32) -> Vec<Mode> {
    let r = -cutoff..=cutoff;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Coefficient ring of a Fourier section: complex numbers or Grassmann numbers.
pub trait Coefficient: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn scale(&self, c: C64) -> Self;
    /// `self += c * other`.
    fn add_scaled(&mut self, other: &Self, c: C64);
    /// Conjugates numeric amplitudes.
    fn conj(&self) -> Self;
    /// Ring product; for Grassmann numbers the exterior product.
    fn mul(&self, other: &Self) -> Self;
    fn max_abs(&self) -> f64;
}

impl Coefficient for C64 {
    fn zero() -> Self {
        ZERO
    }
    fn is_zero(&self) -> bool {
        *self == ZERO
    }
    fn scale(&self, c: C64) -> Self {
        self * c
    }
    fn add_scaled(&mut self, other: &Self, c: C64) {
        *self += other * c;
    }
    fn conj(&self) -> Self {
        C64::conj(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn max_abs(&self) -> f64 {
        self.norm()
    }
}

/// Trigonometric polynomial on the torus.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FourierScalar {
    coeffs: BTreeMap<Mode, C64>,
}

impl FourierScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C64) -> Self {
        Self::mode([0; 4], c)
    }

    pub fn real_constant(x: f64) -> Self {
        Self::constant(C64::new(x, 0.0))
    }

    /// Single plane wave `c e^{ik·x}`.
    pub fn mode(k: Mode, c: C64) -> Self {
        let mut s = Self::zero();
        s.add_at(k, c);
        s
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Mode, C64)>) -> Self {
        let mut s = Self::zero();
        for (k, c) in pairs {
            s.add_at(k, c);
        }
        s
    }

    pub fn get(&self, k: Mode) -> C64 {
        self.coeffs.get(&k).copied().unwrap_or(ZERO)
    }

    pub fn add_at(&mut self, k: Mode, c: C64) {
        let e = self.coeffs.entry(k).or_insert(ZERO);
        *e += c;
        if *e == ZERO {
            self.coeffs.remove(&k);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mode, &C64)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<Mode> {
        self.coeffs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn multiply(&self, other: &FourierScalar) -> FourierScalar {
        let mut out = FourierScalar::zero();
        for (k, a) in &self.coeffs {
            for (q, b) in &other.coeffs {
                out.add_at(add_modes(*k, *q), a * b);
            }
        }
        out
    }

    pub fn partial(&self, mu: usize) -> FourierScalar {
        FourierScalar::from_pairs(self.coeffs.iter().map(|(k, c)| (*k, c * I * k[mu] as f64)))
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> FourierScalar {
        FourierScalar::from_pairs(self.coeffs.iter().map(|(k, c)| (neg_mode(*k), c.conj())))
    }

    pub fn real_part(&self) -> FourierScalar {
        self.add(&self.conj()).scale(C64::new(0.5, 0.0))
    }

    pub fn imag_part(&self) -> FourierScalar {
        self.sub(&self.conj()).scale(C64::new(0.0, -0.5))
    }

    pub fn add(&self, other: &FourierScalar) -> FourierScalar {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_at(*k, *c);
        }
        out
    }

    pub fn sub(&self, other: &FourierScalar) -> FourierScalar {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_at(*k, -c);
        }
        out
    }

    pub fn scale(&self, c: C64) -> FourierScalar {
        FourierScalar::from_pairs(self.coeffs.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn neg(&self) -> FourierScalar {
        self.scale(C64::new(-1.0, 0.0))
    }

    /// ∫_M f dμ = (2π)⁴ f_0.
    pub fn integrate(&self) -> C64 {
        self.get([0; 4]) * VOLUME
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|(k, c)| (self.get(neg_mode(*k)) - c.conj()).norm() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn max_diff(&self, other: &FourierScalar) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn evaluate(&self, x: [f64; 4]) -> C64 {
        self.coeffs.iter().fold(ZERO, |acc, (k, c)| {
            let phase: f64 = (0..4).map(|m| k[m] as f64 * x[m]).sum();
            acc + c * C64::from_polar(1.0, phase)
        })
    }

    pub fn max_mode(&self) -> i32 {
        self.coeffs.keys().map(|k| mode_norm_inf(*k)).max().unwrap_or(0)
    }
}

/// Finite Fourier expansion valued in a fiber of dimension `fiber_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section<C: Coefficient> {
    fiber_dim: usize,
    coeffs: BTreeMap<Mode, Vec<C>>,
}

pub type SpinorSection = Section<C64>;

impl<C: Coefficient> Section<C> {
    pub fn zeros(fiber_dim: usize) -> Self {
        Self { fiber_dim, coeffs: BTreeMap::new() }
    }

    pub fn from_modes(fiber_dim: usize, modes: impl IntoIterator<Item = (Mode, Vec<C>)>) -> Result<Self> {
        let mut s = Self::zeros(fiber_dim);
        for (k, v) in modes {
            if v.len() != fiber_dim {
                return Err(TwistError::FiberMismatch { left: fiber_dim, right: v.len() });
            }
            s.add_at(k, &v, C64::new(1.0, 0.0));
        }
        Ok(s)
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn modes(&self) -> impl Iterator<Item = (&Mode, &Vec<C>)> {
        self.coeffs.iter()
    }

    pub fn get(&self, k: Mode) -> Option<&Vec<C>> {
        self.coeffs.get(&k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self[k] += c * v`, dropping the mode if it cancels to zero.
    pub fn add_at(&mut self, k: Mode, v: &[C], c: C64) {
        let e = self.coeffs.entry(k).or_insert_with(|| vec![C::zero(); v.len()]);
        for (a, b) in e.iter_mut().zip(v) {
            a.add_scaled(b, c);
        }
        if e.iter().all(|x| x.is_zero()) {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_at(*k, v, C64::new(1.0, 0.0));
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_at(*k, v, C64::new(-1.0, 0.0));
        }
        Ok(out)
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zeros(self.fiber_dim);
        for (k, v) in &self.coeffs {
            out.add_at(*k, v, c);
        }
        out
    }

    pub fn partial(&self, mu: usize) -> Self {
        let mut out = Self::zeros(self.fiber_dim);
        for (k, v) in &self.coeffs {
            out.add_at(*k, v, I * k[mu] as f64);
        }
        out
    }

    /// Pointwise product with a scalar function.
    pub fn mul_scalar(&self, f: &FourierScalar) -> Self {
        let mut out = Self::zeros(self.fiber_dim);
        for (q, c) in f.iter() {
            for (k, v) in &self.coeffs {
                out.add_at(add_modes(*q, *k), v, *c);
            }
        }
        out
    }

    /// Constant fiber matrix acting pointwise.
    pub fn apply_matrix(&self, m: &FiberMatrix) -> Result<Self> {
        if m.dim() != self.fiber_dim {
            return Err(TwistError::FiberMismatch { left: m.dim(), right: self.fiber_dim });
        }
        let mut out = Self::zeros(self.fiber_dim);
        for (k, v) in &self.coeffs {
            let w = matvec(m, v);
            out.add_at(*k, &w, C64::new(1.0, 0.0));
        }
        Ok(out)
    }

    /// Pointwise complex conjugation: mode k ↦ conj of mode −k.
    pub fn cc(&self) -> Self {
        let mut out = Self::zeros(self.fiber_dim);
        for (k, v) in &self.coeffs {
            let w: Vec<C> = v.iter().map(|x| x.conj()).collect();
            out.add_at(neg_mode(*k), &w, C64::new(1.0, 0.0));
        }
        out
    }

    /// Components `range` as a section of smaller fiber.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        let mut out = Self::zeros(len);
        for (k, v) in &self.coeffs {
            out.add_at(*k, &v[start..start + len], C64::new(1.0, 0.0));
        }
        out
    }

    /// Concatenates fibers of several sections.
    pub fn stack(parts: &[&Self]) -> Self {
        let dim: usize = parts.iter().map(|p| p.fiber_dim).sum();
        let mut out = Self::zeros(dim);
        let mut off = 0;
        for p in parts {
            for (k, v) in &p.coeffs {
                let mut w = vec![C::zero(); dim];
                w[off..off + p.fiber_dim].clone_from_slice(v);
                out.add_at(*k, &w, C64::new(1.0, 0.0));
            }
            off += p.fiber_dim;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().flat_map(|v| v.iter()).fold(0.0, |m, x| m.max(x.max_abs()))
    }

    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.fiber_dim != other.fiber_dim {
            return Err(TwistError::FiberMismatch { left: self.fiber_dim, right: other.fiber_dim });
        }
        Ok(())
    }
}

impl SpinorSection {
    pub fn component(&self, s: usize) -> FourierScalar {
        FourierScalar::from_pairs(self.coeffs.iter().map(|(k, v)| (*k, v[s])))
    }

    pub fn from_components(comps: &[FourierScalar]) -> Self {
        let dim = comps.len();
        let mut out = Self::zeros(dim);
        for (s, f) in comps.iter().enumerate() {
            for (k, c) in f.iter() {
                let mut v = vec![ZERO; dim];
                v[s] = *c;
                out.add_at(*k, &v, C64::new(1.0, 0.0));
            }
        }
        out
    }

    pub fn evaluate(&self, x: [f64; 4]) -> Vec<C64> {
        let mut out = vec![ZERO; self.fiber_dim];
        for (k, v) in &self.coeffs {
            let phase: f64 = (0..4).map(|m| k[m] as f64 * x[m]).sum();
            let e = C64::from_polar(1.0, phase);
            for (o, c) in out.iter_mut().zip(v) {
                *o += c * e;
            }
        }
        out
    }
}

pub(crate) fn matvec<C: Coefficient>(m: &FiberMatrix, v: &[C]) -> Vec<C> {
    let n = m.dim();
    let mut out = vec![C::zero(); n];
    for (j, vj) in v.iter().enumerate() {
        if vj.is_zero() {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            let a = m.get(i, j);
            if a != ZERO {
                o.add_scaled(vj, a);
            }
        }
    }
    out
}

/// ⟨φ, ξ⟩ = (2π)⁴ Σ_k φ_k† ξ_k, conjugate-linear in the first slot.
pub fn inner(phi: &SpinorSection, xi: &SpinorSection) -> Result<C64> {
    sesquilinear_pair(phi, xi)
}

/// Generic ⟨a, b⟩: amplitudes of `a` conjugated, coefficients multiplied
/// with `a` on the left.
pub fn sesquilinear_pair<C: Coefficient>(a: &Section<C>, b: &Section<C>) -> Result<C> {
    a.check_dim(b)?;
    let mut acc = C::zero();
    for (k, va) in &a.coeffs {
        if let Some(vb) = b.coeffs.get(k) {
            for (x, y) in va.iter().zip(vb) {
                acc.add_scaled(&x.conj().mul(y), C64::new(VOLUME, 0.0));
            }
        }
    }
    Ok(acc)
}

/// ∫_M rowᵀ col dμ = (2π)⁴ Σ_k row_{−k}ᵀ col_k, with `row` on the left.
pub fn integrate_pair<C: Coefficient>(row: &Section<C>, col: &Section<C>) -> Result<C> {
    row.check_dim(col)?;
    let mut acc = C::zero();
    for (k, vr) in &row.coeffs {
        if let Some(vc) = col.coeffs.get(&neg_mode(*k)) {
            for (x, y) in vr.iter().zip(vc) {
                acc.add_scaled(&x.mul(y), C64::new(VOLUME, 0.0));
            }
        }
    }
    Ok(acc)
}
