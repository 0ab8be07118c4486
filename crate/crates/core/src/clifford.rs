//! Pauli and Dirac matrices in Euclidean and Minkowski signature, and the
//! spinor representation of boosts.
//!
//! Euclidean conventions: `σ^μ = (𝕀, −iσ_j)`, `σ̃^μ = (𝕀, iσ_j)` and
//! `γ^μ = [[0, σ^μ], [σ̃^μ, 0]]`, all self-adjoint. Minkowski conventions:
//! `σ^μ_M = (𝕀, σ_j)`, `σ̄^μ_M = (𝕀, −σ_j)`. A boost is stored through its
//! blocks `Λ± = cosh|a| 𝕀 ± sinh|a| n·σ` and the spin matrix
//! `S = diag(Λ−, Λ+)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Result, TwistError};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Minkowski metric diag(+1, −1, −1, −1).
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Square complex matrix acting on a spinor fiber (dimension 2, 4, 8 or 16).
#[derive(Clone, Debug, PartialEq)]
pub struct FiberMatrix(DMatrix<C64>);

impl FiberMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() || !matches!(m.nrows(), 2 | 4 | 8 | 16) {
            return Err(TwistError::BadFiberDim(m.nrows()));
        }
        Ok(Self(m))
    }

    pub(crate) fn raw(m: DMatrix<C64>) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        Self(m)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let n = rows.len();
        Self(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn diagonal(d: &[C64]) -> Self {
        let n = d.len();
        Self(DMatrix::from_fn(n, n, |i, j| if i == j { d[i] } else { ZERO }))
    }

    pub fn real_diagonal(d: &[f64]) -> Self {
        let v: Vec<C64> = d.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diagonal(&v)
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diag(blocks: &[&FiberMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.dim()).sum();
        let mut m = DMatrix::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            let d = b.dim();
            m.view_mut((off, off), (d, d)).copy_from(&b.0);
            off += d;
        }
        Self(m)
    }

    /// 2×2 block matrix [[a, b], [c, d]].
    pub fn blocks2(a: &FiberMatrix, b: &FiberMatrix, c: &FiberMatrix, d: &FiberMatrix) -> Self {
        let n = a.dim();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(&a.0);
        m.view_mut((0, n), (n, n)).copy_from(&b.0);
        m.view_mut((n, 0), (n, n)).copy_from(&c.0);
        m.view_mut((n, n), (n, n)).copy_from(&d.0);
        Self(m)
    }

    /// Operator `spin ⊗ finite` on the finite-major fiber: the fiber index is
    /// `finite_index * spin_dim + spin_index`.
    pub fn spin_finite(spin: &FiberMatrix, finite: &FiberMatrix) -> Self {
        Self(finite.0.kronecker(&spin.0))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.0[(i, j)] = v;
    }

    /// Column-major entries.
    pub fn as_slice(&self) -> &[C64] {
        self.0.as_slice()
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        self.0.as_mut_slice()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self(&self.0 * c)
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.0.clone().try_inverse().map(Self)
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> C64 {
        self.0.determinant()
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: C64, other: &FiberMatrix) {
        for (a, b) in self.0.as_mut_slice().iter_mut().zip(other.0.as_slice()) {
            *a += c * b;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| *z == ZERO)
    }

    pub fn max_diff(&self, other: &FiberMatrix) -> f64 {
        (&self.0 - &other.0).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn approx_eq(&self, other: &FiberMatrix, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_diff(other) <= tol
    }

    pub fn anticommutator(&self, other: &FiberMatrix) -> Self {
        self * other + other * self
    }

    pub fn commutator(&self, other: &FiberMatrix) -> Self {
        self * other - other * self
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).fold(ZERO, |acc, j| acc + self.0[(i, j)] * v[j]))
            .collect()
    }
}

impl<'a> Mul<&'a FiberMatrix> for &'a FiberMatrix {
    type Output = FiberMatrix;
    fn mul(self, rhs: &FiberMatrix) -> FiberMatrix {
        FiberMatrix(&self.0 * &rhs.0)
    }
}

impl Mul for FiberMatrix {
    type Output = FiberMatrix;
    fn mul(self, rhs: FiberMatrix) -> FiberMatrix {
        FiberMatrix(self.0 * rhs.0)
    }
}

impl<'a> Add<&'a FiberMatrix> for &'a FiberMatrix {
    type Output = FiberMatrix;
    fn add(self, rhs: &FiberMatrix) -> FiberMatrix {
        FiberMatrix(&self.0 + &rhs.0)
    }
}

impl Add for FiberMatrix {
    type Output = FiberMatrix;
    fn add(self, rhs: FiberMatrix) -> FiberMatrix {
        FiberMatrix(self.0 + rhs.0)
    }
}

impl<'a> Sub<&'a FiberMatrix> for &'a FiberMatrix {
    type Output = FiberMatrix;
    fn sub(self, rhs: &FiberMatrix) -> FiberMatrix {
        FiberMatrix(&self.0 - &rhs.0)
    }
}

impl Sub for FiberMatrix {
    type Output = FiberMatrix;
    fn sub(self, rhs: FiberMatrix) -> FiberMatrix {
        FiberMatrix(self.0 - rhs.0)
    }
}

impl Neg for FiberMatrix {
    type Output = FiberMatrix;
    fn neg(self) -> FiberMatrix {
        FiberMatrix(-self.0)
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Pauli matrix σ_j, j ∈ {1, 2, 3}.
pub fn pauli(j: usize) -> Result<FiberMatrix> {
    let m = match j {
        1 => FiberMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        2 => FiberMatrix::from_rows(&[&[ZERO, c(0.0, -1.0)], &[I, ZERO]]),
        3 => FiberMatrix::from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
        _ => return Err(TwistError::IndexOutOfRange { what: "Pauli index", index: j }),
    };
    Ok(m)
}

fn pauli_unchecked(j: usize) -> FiberMatrix {
    pauli(j).expect("Pauli index in 1..=3")
}

fn check_mu(mu: usize) -> Result<()> {
    if mu < 4 {
        Ok(())
    } else {
        Err(TwistError::IndexOutOfRange { what: "spacetime index", index: mu })
    }
}

/// Euclidean σ^μ = (𝕀, −iσ_j).
pub fn sigma(mu: usize) -> Result<FiberMatrix> {
    check_mu(mu)?;
    Ok(if mu == 0 { FiberMatrix::identity(2) } else { pauli_unchecked(mu).scale(-I) })
}

/// Euclidean σ̃^μ = (𝕀, iσ_j).
pub fn sigma_tilde(mu: usize) -> Result<FiberMatrix> {
    check_mu(mu)?;
    Ok(if mu == 0 { FiberMatrix::identity(2) } else { pauli_unchecked(mu).scale(I) })
}

/// Minkowski σ^μ_M = (𝕀, σ_j).
pub fn sigma_m(mu: usize) -> Result<FiberMatrix> {
    check_mu(mu)?;
    Ok(if mu == 0 { FiberMatrix::identity(2) } else { pauli_unchecked(mu) })
}

/// Minkowski σ̄^μ_M = (𝕀, −σ_j), also written σ̃^μ_M.
pub fn sigma_bar_m(mu: usize) -> Result<FiberMatrix> {
    check_mu(mu)?;
    Ok(if mu == 0 { FiberMatrix::identity(2) } else { -pauli_unchecked(mu) })
}

fn chiral(upper: FiberMatrix, lower: FiberMatrix) -> FiberMatrix {
    let z = FiberMatrix::zeros(2);
    FiberMatrix::blocks2(&z, &upper, &lower, &z)
}

/// Euclidean Dirac matrix γ^μ in the chiral representation.
pub fn gamma_euclidean(mu: usize) -> Result<FiberMatrix> {
    Ok(chiral(sigma(mu)?, sigma_tilde(mu)?))
}

/// γ⁵ = γ¹γ²γ³γ⁰ = diag(𝕀₂, −𝕀₂).
pub fn gamma5() -> FiberMatrix {
    FiberMatrix::real_diagonal(&[1.0, 1.0, -1.0, -1.0])
}

/// Minkowski Dirac matrix γ^μ_M = [[0, σ^μ_M], [σ̄^μ_M, 0]].
pub fn gamma_minkowski(mu: usize) -> Result<FiberMatrix> {
    Ok(chiral(sigma_m(mu)?, sigma_bar_m(mu)?))
}

/// γ⁵_M = −iγ⁵.
pub fn gamma5_minkowski() -> FiberMatrix {
    gamma5().scale(-I)
}

/// All four Euclidean gammas.
pub fn gammas() -> [FiberMatrix; 4] {
    std::array::from_fn(|mu| gamma_euclidean(mu).expect("mu < 4"))
}

/// Linear part of the manifold real structure: 𝒥 = diag(−σ₂, σ₂)∘cc.
pub fn charge_conjugation() -> FiberMatrix {
    let s2 = pauli_unchecked(2);
    FiberMatrix::block_diag(&[&-s2.clone(), &s2])
}

/// `n·σ` for a real 3-vector.
pub fn n_dot_sigma(n: [f64; 3]) -> FiberMatrix {
    let mut m = FiberMatrix::zeros(2);
    for j in 0..3 {
        m.axpy(c(n[j], 0.0), &pauli_unchecked(j + 1));
    }
    m
}

/// Spinor representation of a boost.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinBoost {
    pub rapidity_half: f64,
    pub direction: [f64; 3],
    pub lambda_plus: FiberMatrix,
    pub lambda_minus: FiberMatrix,
    /// S[Λ] = diag(Λ−, Λ+).
    pub spin_matrix: FiberMatrix,
}

/// Builds Λ± = cosh|a| 𝕀 ± sinh|a| n·σ with a = b_half·n.
pub fn spin_boost(b_half: f64, n: [f64; 3]) -> Result<SpinBoost> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(TwistError::NonUnitDirection(norm));
    }
    let ns = n_dot_sigma(n);
    let id = FiberMatrix::identity(2);
    let (ch, sh) = (b_half.cosh(), b_half.sinh());
    let lambda_plus = id.scale(c(ch, 0.0)) + ns.scale(c(sh, 0.0));
    let lambda_minus = id.scale(c(ch, 0.0)) - ns.scale(c(sh, 0.0));
    let spin_matrix = FiberMatrix::block_diag(&[&lambda_minus, &lambda_plus]);
    Ok(SpinBoost { rapidity_half: b_half, direction: n, lambda_plus, lambda_minus, spin_matrix })
}

impl SpinBoost {
    pub fn identity() -> Self {
        spin_boost(0.0, [0.0, 0.0, 1.0]).expect("unit direction")
    }

    /// The boost with opposite rapidity; its spin matrix is S⁻¹.
    pub fn inverse(&self) -> Self {
        spin_boost(-self.rapidity_half, self.direction).expect("direction already validated")
    }

    pub fn spin_inverse(&self) -> FiberMatrix {
        FiberMatrix::block_diag(&[&self.lambda_plus, &self.lambda_minus])
    }

    /// Spin matrix in the block order diag(Λ+, Λ−); kept for comparison only.
    pub fn spin_matrix_block_order(&self) -> FiberMatrix {
        FiberMatrix::block_diag(&[&self.lambda_plus, &self.lambda_minus])
    }
}

/// Lorentz transformation Λ^μ_ν, stored as `entries[mu][nu]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzMatrix {
    pub entries: [[f64; 4]; 4],
}

impl LorentzMatrix {
    pub fn identity() -> Self {
        let mut entries = [[0.0; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { entries }
    }

    /// max |Λᵀ η Λ − η|.
    pub fn metric_defect(&self) -> f64 {
        let l = &self.entries;
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for m in 0..4 {
                    s += l[m][a] * ETA[m] * l[m][b];
                }
                let target = if a == b { ETA[a] } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }

    pub fn determinant(&self) -> f64 {
        let m = nalgebra::Matrix4::from_fn(|i, j| self.entries[i][j]);
        m.determinant()
    }

    pub fn compose(&self, other: &LorentzMatrix) -> LorentzMatrix {
        let mut entries = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                entries[i][j] = (0..4).map(|k| self.entries[i][k] * other.entries[k][j]).sum();
            }
        }
        LorentzMatrix { entries }
    }

    /// Boosted covector p'_ν = Λ^μ_ν p_μ.
    pub fn transform_covector(&self, p: [f64; 4]) -> [f64; 4] {
        std::array::from_fn(|nu| (0..4).map(|mu| self.entries[mu][nu] * p[mu]).sum())
    }

    /// Rapidity of the boost, acosh Λ⁰₀.
    pub fn rapidity(&self) -> f64 {
        self.entries[0][0].max(1.0).acosh()
    }

    pub fn max_diff(&self, other: &LorentzMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).abs());
            }
        }
        worst
    }
}

/// Threshold on the imaginary part of extracted Lorentz coefficients.
pub const LORENTZ_IMAG_TOL: f64 = 1e-10;

fn extract(conj_by: &FiberMatrix, basis: fn(usize) -> Result<FiberMatrix>) -> Result<LorentzMatrix> {
    let mut entries = [[0.0; 4]; 4];
    let mut imag: f64 = 0.0;
    for mu in 0..4 {
        let x = &(conj_by * &basis(mu)?) * conj_by;
        for nu in 0..4 {
            let coef = (&basis(nu)? * &x).trace() * 0.5;
            imag = imag.max(coef.im.abs());
            entries[mu][nu] = coef.re;
        }
    }
    if imag > LORENTZ_IMAG_TOL {
        return Err(TwistError::NonRealLorentz(imag));
    }
    Ok(LorentzMatrix { entries })
}

/// Λ^μ_ν from Λ+ σ̄^μ_M Λ+ = Λ^μ_ν σ̄^ν_M, expanded by trace pairing.
pub fn lorentz_from_spin(s: &SpinBoost) -> Result<LorentzMatrix> {
    lorentz_from_blocks(&s.lambda_plus, &s.lambda_minus)
}

/// Extraction from explicit blocks; also checks that the σ_M relation
/// Λ− σ^μ_M Λ− = Λ^μ_ν σ^ν_M yields the same matrix.
pub fn lorentz_from_blocks(lambda_plus: &FiberMatrix, lambda_minus: &FiberMatrix) -> Result<LorentzMatrix> {
    let from_tilde = extract(lambda_plus, sigma_bar_m)?;
    let from_sigma = extract(lambda_minus, sigma_m)?;
    let gap = from_tilde.max_diff(&from_sigma);
    if gap > LORENTZ_IMAG_TOL {
        return Err(TwistError::NonRealLorentz(gap));
    }
    Ok(from_tilde)
}

/// Lorentz matrix extracted from the σ_M relation alone.
pub fn lorentz_from_sigma_relation(s: &SpinBoost) -> Result<LorentzMatrix> {
    extract(&s.lambda_minus, sigma_m)
}

/// Lorentz matrix extracted from the σ̄_M relation alone.
pub fn lorentz_from_tilde_relation(s: &SpinBoost) -> Result<LorentzMatrix> {
    extract(&s.lambda_plus, sigma_bar_m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaKind {
    EuclideanUpper,
    EuclideanTilde,
}

/// σ^μ_Λ = Λ− σ^μ Λ− or σ̃^μ_Λ = Λ+ σ̃^μ Λ+, the blocks of S γ^μ S⁻¹.
pub fn boosted_sigma(s: &SpinBoost, mu: usize, kind: SigmaKind) -> Result<FiberMatrix> {
    Ok(match kind {
        SigmaKind::EuclideanUpper => &(&s.lambda_minus * &sigma(mu)?) * &s.lambda_minus,
        SigmaKind::EuclideanTilde => &(&s.lambda_plus * &sigma_tilde(mu)?) * &s.lambda_plus,
    })
}

/// Boosted Euclidean gamma S γ^μ S⁻¹.
pub fn boosted_gamma(s: &SpinBoost, mu: usize) -> Result<FiberMatrix> {
    Ok(&(&s.spin_matrix * &gamma_euclidean(mu)?) * &s.spin_inverse())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_products() {
        let p = |j| pauli(j).unwrap();
        assert!((&p(1) * &p(2)).approx_eq(&p(3).scale(I), 0.0));
        assert!((&p(2) * &p(2)).approx_eq(&FiberMatrix::identity(2), 0.0));
        assert!(pauli(4).is_err());
    }

    #[test]
    fn gamma5_is_product() {
        let g = gammas();
        let prod = &(&(&g[1] * &g[2]) * &g[3]) * &g[0];
        assert!(prod.approx_eq(&gamma5(), 1e-15));
    }

    #[test]
    fn z_boost_blocks_are_diagonal() {
        // cosh = 5/4, sinh = 3/4 gives e^{±b/2} = 2, 1/2
        let b_half = (2.0f64).ln();
        let s = spin_boost(b_half, [0.0, 0.0, 1.0]).unwrap();
        assert!(s.lambda_plus.approx_eq(&FiberMatrix::real_diagonal(&[2.0, 0.5]), 1e-14));
        assert!(s.lambda_minus.approx_eq(&FiberMatrix::real_diagonal(&[0.5, 2.0]), 1e-14));
    }
}
