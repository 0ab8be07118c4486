//! Plane-wave symbols of the field equations. A plane wave `ψ₀ e^{−ip_μx^μ}`
//! turns ∂_μ into −ip_μ, and the covariant 𝔇_μ = ∂_μ − ig_μ into −iP_μ with
//! P = p + g. Momenta are arbitrary reals here, not torus modes.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::clifford::{boosted_sigma, lorentz_from_spin, pauli, sigma_bar_m, sigma_m, SigmaKind, SpinBoost, C64, I, ONE, ZERO};
use crate::error::Result;

/// Singular values below this (relative to max(1, ‖M‖)) span the kernel.
pub const KERNEL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Handedness {
    Left,
    Right,
}

#[derive(Clone, Debug, Serialize)]
pub struct DispersionResult {
    /// Determinant of the square system built from the fluctuation data.
    pub determinant: C64,
    /// Orthonormal kernel basis of the full system (stacked with the
    /// Minkowski equation when the system carries one).
    pub kernel: Vec<Vec<C64>>,
    /// Real p₀ roots of the Minkowski dispersion relation at the given spatial momentum.
    pub p0_roots: Vec<f64>,
    /// Roots compatible with the identification of p₀ with ∓f₀.
    pub admissible_roots: Vec<f64>,
    /// Whether the given p satisfies the identification.
    pub identified: bool,
    /// ‖system − c·(Minkowski operator)‖ under the identification.
    pub reduction_residual: f64,
    /// max ‖M v‖ over the kernel basis.
    pub kernel_residual: f64,
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn mat2(m: &crate::clifford::FiberMatrix) -> DMatrix<C64> {
    m.matrix().clone()
}

fn eye(n: usize) -> DMatrix<C64> {
    DMatrix::identity(n, n)
}

/// Σ_j σ_j v_j.
pub fn sigma_dot(v: [f64; 3]) -> DMatrix<C64> {
    let mut out = DMatrix::zeros(2, 2);
    for j in 0..3 {
        out += mat2(&pauli(j + 1).expect("j in 1..=3")) * c(v[j]);
    }
    out
}

fn spatial(p: [f64; 4]) -> [f64; 3] {
    [p[1], p[2], p[3]]
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn block2(a: &DMatrix<C64>, b: &DMatrix<C64>, cc: &DMatrix<C64>, d: &DMatrix<C64>) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(4, 4);
    m.view_mut((0, 0), (2, 2)).copy_from(a);
    m.view_mut((0, 2), (2, 2)).copy_from(b);
    m.view_mut((2, 0), (2, 2)).copy_from(cc);
    m.view_mut((2, 2), (2, 2)).copy_from(d);
    m
}

fn stack(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(a.nrows() + b.nrows(), a.ncols());
    m.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    m.view_mut((a.nrows(), 0), (b.nrows(), b.ncols())).copy_from(b);
    m
}

fn op_norm_max(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Orthonormal kernel basis by SVD.
pub fn kernel(m: &DMatrix<C64>) -> Vec<Vec<C64>> {
    let n = m.ncols();
    // pad to square so that the SVD returns a full right basis
    let padded = if m.nrows() < n { stack(m, &DMatrix::zeros(n - m.nrows(), n)) } else { m.clone() };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let scale = op_norm_max(m).max(1.0);
    let mut out = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s <= KERNEL_TOL * scale {
            out.push(v_t.row(i).iter().map(|z| z.conj()).collect());
        }
    }
    out
}

fn kernel_residual(m: &DMatrix<C64>, basis: &[Vec<C64>]) -> f64 {
    basis
        .iter()
        .map(|v| (m * DVector::from_vec(v.clone())).iter().fold(0.0f64, |a, z| a.max(z.norm())))
        .fold(0.0, f64::max)
}

/// σ̃^μ_M p_μ = p₀ − σ·p.
pub fn minkowski_left(p: [f64; 4]) -> DMatrix<C64> {
    let mut out = DMatrix::zeros(2, 2);
    for mu in 0..4 {
        out += mat2(&sigma_bar_m(mu).expect("mu < 4")) * c(p[mu]);
    }
    out
}

/// σ^μ_M p_μ = p₀ + σ·p.
pub fn minkowski_right(p: [f64; 4]) -> DMatrix<C64> {
    let mut out = DMatrix::zeros(2, 2);
    for mu in 0..4 {
        out += mat2(&sigma_m(mu).expect("mu < 4")) * c(p[mu]);
    }
    out
}

/// Dirac operator in momentum space acting on (ψ_l, ψ_r):
/// (σ̃_M p ψ_l − μψ_r, σ_M p ψ_r − μψ_l).
pub fn minkowski_dirac(p: [f64; 4], mass: C64) -> DMatrix<C64> {
    let m = eye(2) * (-mass);
    block2(&minkowski_left(p), &m, &m, &minkowski_right(p))
}

fn weyl_p0_roots(p: [f64; 4]) -> Vec<f64> {
    let r = norm3(spatial(p));
    if r == 0.0 {
        vec![0.0]
    } else {
        vec![-r, r]
    }
}

/// f₀ + σ·p, the symbol of (if₀ − σ_j∂_j) divided by i.
pub fn weyl_symbol(f0: f64, p: [f64; 4]) -> DMatrix<C64> {
    eye(2) * c(f0) + sigma_dot(spatial(p))
}

/// Plane-wave system of the twisted Weyl equation stacked with the
/// Minkowski Weyl equation of the chosen handedness.
pub fn weyl_system(f0: f64, p: [f64; 4], handed: Handedness) -> DispersionResult {
    let e = weyl_symbol(f0, p);
    let (mink, sign, target) = match handed {
        Handedness::Left => (minkowski_left(p), -1.0, -f0),
        Handedness::Right => (minkowski_right(p), 1.0, f0),
    };
    let full = stack(&e, &mink);
    let basis = kernel(&full);
    let roots = weyl_p0_roots(p);
    let det_e = e.determinant();
    let admissible = if det_e.norm() <= KERNEL_TOL * (1.0 + f0 * f0) {
        roots.iter().copied().filter(|r| (r - target).abs() <= 1e-9 * (1.0 + target.abs())).collect()
    } else {
        Vec::new()
    };
    let at_identified = with_p0(p, target);
    let reduction = op_norm_max(&(&e - match handed {
        Handedness::Left => minkowski_left(at_identified) * c(sign),
        Handedness::Right => minkowski_right(at_identified) * c(sign),
    }));
    DispersionResult {
        determinant: det_e,
        kernel_residual: kernel_residual(&full, &basis),
        kernel: basis,
        p0_roots: roots,
        admissible_roots: admissible,
        identified: (p[0] - target).abs() <= 1e-12 * (1.0 + target.abs()),
        reduction_residual: reduction,
    }
}

fn with_p0(p: [f64; 4], p0: f64) -> [f64; 4] {
    [p0, p[1], p[2], p[3]]
}

/// Plane-wave symbol of the twisted Dirac equations on (ψ_l, ψ_r), or on
/// (ψ′_l, ψ′_r) when `primed`, from the electrodynamics lagrangian.
pub fn dirac_symbol(f0: f64, g: [f64; 3], d: C64, p: [f64; 4], primed: bool) -> DMatrix<C64> {
    let sp = sigma_dot(add3(spatial(p), g));
    let plus = -(eye(2) * c(f0) + &sp);
    let minus = -(eye(2) * c(f0) - &sp);
    if primed {
        block2(&minus, &(eye(2) * (-I * d)), &(eye(2) * (I * d.conj())), &plus)
    } else {
        block2(&plus, &(eye(2) * (I * d.conj())), &(eye(2) * (-I * d)), &minus)
    }
}

/// Twisted Dirac system. With d = im the unprimed system at p₀ = −f₀ is the
/// Minkowski Dirac operator of mass −m, the primed one at p₀ = f₀ minus the
/// operator of mass m.
pub fn dirac_system(f0: f64, g: [f64; 3], d: C64, p: [f64; 4], primed: bool) -> DispersionResult {
    let m = dirac_symbol(f0, g, d, p, primed);
    let basis = kernel(&m);
    let big_p = add3(spatial(p), g);
    let root = (norm3(big_p).powi(2) + d.norm_sqr()).sqrt();
    let roots = if root == 0.0 { vec![0.0] } else { vec![-root, root] };
    let target = if primed { f0 } else { -f0 };
    let admissible = roots.iter().copied().filter(|r| (r - target).abs() <= 1e-9 * (1.0 + root)).collect();
    let pp = [target, big_p[0], big_p[1], big_p[2]];
    let mass = d.im;
    let expected = if primed { -minkowski_dirac(pp, c(mass)) } else { minkowski_dirac(pp, c(-mass)) };
    DispersionResult {
        determinant: m.determinant(),
        kernel_residual: kernel_residual(&m, &basis),
        kernel: basis,
        p0_roots: roots,
        admissible_roots: admissible,
        identified: (p[0] - target).abs() <= 1e-12 * (1.0 + target.abs()),
        reduction_residual: if d.re == 0.0 { op_norm_max(&(&m - expected)) } else { f64::NAN },
    }
}

/// Σ_μ σ^μ_Λ v_μ for complex coefficients.
fn boosted_contract(s: &SpinBoost, kind: SigmaKind, v: [C64; 4]) -> Result<DMatrix<C64>> {
    let mut out = DMatrix::zeros(2, 2);
    for mu in 0..4 {
        out += mat2(&boosted_sigma(s, mu, kind)?) * v[mu];
    }
    Ok(out)
}

/// Momentum that makes the boosted left (right) system collapse:
/// p₀ = −f₀, p_j = f_j (left) or the opposite signs (right).
pub fn boosted_identification(f: [f64; 4], handed: Handedness) -> [f64; 4] {
    match handed {
        Handedness::Left => [-f[0], f[1], f[2], f[3]],
        Handedness::Right => [f[0], -f[1], -f[2], -f[3]],
    }
}

/// σ̃^μ_Λ(−ip_μ + f_μ) (left) or σ^μ_Λ(−ip_μ − f_μ) (right).
pub fn boosted_weyl_symbol(s: &SpinBoost, f: [f64; 4], p: [f64; 4], handed: Handedness) -> Result<DMatrix<C64>> {
    match handed {
        Handedness::Left => boosted_contract(s, SigmaKind::EuclideanTilde, std::array::from_fn(|mu| C64::new(f[mu], -p[mu]))),
        Handedness::Right => boosted_contract(s, SigmaKind::EuclideanUpper, std::array::from_fn(|mu| C64::new(-f[mu], -p[mu]))),
    }
}

/// Boosted Weyl system. Under the identification it equals −(1+i) times the
/// Minkowski Weyl operator at the boosted-frame momentum p′_ν = Λ^μ_ν p_μ.
pub fn boosted_weyl_system(s: &SpinBoost, f: [f64; 4], p: [f64; 4], handed: Handedness) -> Result<DispersionResult> {
    let m = boosted_weyl_symbol(s, f, p, handed)?;
    let lorentz = lorentz_from_spin(s)?;
    let pid = boosted_identification(f, handed);
    let p_prime = lorentz.transform_covector(pid);
    let mink = match handed {
        Handedness::Left => minkowski_left(p_prime),
        Handedness::Right => minkowski_right(p_prime),
    };
    let at_id = boosted_weyl_symbol(s, f, pid, handed)?;
    let reduction = op_norm_max(&(&at_id + &mink * C64::new(1.0, 1.0)));
    let basis = kernel(&m);
    let p_here = lorentz.transform_covector(p);
    let roots = weyl_p0_roots(p_here);
    Ok(DispersionResult {
        determinant: m.determinant(),
        kernel_residual: kernel_residual(&m, &basis),
        kernel: basis,
        admissible_roots: roots.iter().copied().filter(|r| (r - p_prime[0]).abs() <= 1e-9 * (1.0 + r.abs())).collect(),
        p0_roots: roots,
        identified: (0..4).all(|mu| (p[mu] - pid[mu]).abs() <= 1e-12 * (1.0 + pid[mu].abs())),
        reduction_residual: reduction,
    })
}

/// Extracted mass of the boosted Dirac system: −(1+i)d/2, or (1+i)d̄/2 when primed.
pub fn boosted_mass(d: C64, primed: bool) -> C64 {
    let h = C64::new(0.5, 0.5);
    if primed {
        h * d.conj()
    } else {
        -h * d
    }
}

/// Boosted Dirac symbol with 𝒟_μ → −iP_μ, P = p + g:
/// (σ̃_Λ(−iP ± f)ψ_l − (±i d̄ or i d)ψ_r, …).
pub fn boosted_dirac_symbol(s: &SpinBoost, f: [f64; 4], g: [f64; 4], d: C64, p: [f64; 4], primed: bool) -> Result<DMatrix<C64>> {
    let sign = if primed { -1.0 } else { 1.0 };
    let v: [C64; 4] = std::array::from_fn(|mu| C64::new(sign * f[mu], -(p[mu] + g[mu])));
    let l = boosted_contract(s, SigmaKind::EuclideanTilde, v)?;
    let r = boosted_contract(s, SigmaKind::EuclideanUpper, v)?;
    let coupling = if primed { I * d.conj() } else { -I * d };
    let off = eye(2) * coupling;
    Ok(block2(&l, &off, &off, &r))
}

/// Boosted Dirac system. Under P₀ = ∓f₀, P_j = ±f_j it equals −(1+i) times the
/// Minkowski Dirac operator at P′ with mass [`boosted_mass`].
pub fn boosted_dirac_system(
    s: &SpinBoost,
    f: [f64; 4],
    g: [f64; 4],
    d: C64,
    p: [f64; 4],
    primed: bool,
) -> Result<DispersionResult> {
    let m = boosted_dirac_symbol(s, f, g, d, p, primed)?;
    let lorentz = lorentz_from_spin(s)?;
    let handed = if primed { Handedness::Right } else { Handedness::Left };
    let big_id = boosted_identification(f, handed);
    let p_id: [f64; 4] = std::array::from_fn(|mu| big_id[mu] - g[mu]);
    let big_prime = lorentz.transform_covector(big_id);
    let mass = boosted_mass(d, primed);
    let at_id = boosted_dirac_symbol(s, f, g, d, p_id, primed)?;
    let reduction = op_norm_max(&(&at_id + minkowski_dirac(big_prime, mass) * C64::new(1.0, 1.0)));
    let basis = kernel(&m);
    let big_here = lorentz.transform_covector(std::array::from_fn(|mu| p[mu] + g[mu]));
    let r = (norm3(spatial(big_here)).powi(2) + mass.norm_sqr()).sqrt();
    let roots = if r == 0.0 { vec![0.0] } else { vec![-r, r] };
    Ok(DispersionResult {
        determinant: m.determinant(),
        kernel_residual: kernel_residual(&m, &basis),
        kernel: basis,
        admissible_roots: roots.iter().copied().filter(|x| (x - big_prime[0]).abs() <= 1e-9 * (1.0 + r)).collect(),
        p0_roots: roots,
        identified: (0..4).all(|mu| (p[mu] - p_id[mu]).abs() <= 1e-12 * (1.0 + p_id[mu].abs())),
        reduction_residual: reduction,
    })
}

/// Lagrangian densities whose plane-wave stationarity is checked.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Lagrangian {
    /// iψ†σ̃^μ_M∂_μψ.
    WeylLeft,
    /// iψ†σ^μ_M∂_μψ.
    WeylRight,
    /// iψ_l†σ̃_M∂ψ_l + iψ_r†σ_M∂ψ_r − m(ψ_l†ψ_r + ψ_r†ψ_l).
    Dirac { mass: f64 },
    /// ∓4iψ†(if₀ − σ_j∂_j)ψ.
    TwistedWeyl { f0: f64, plus: bool },
    /// iψ_l†(if₀ − σ·𝔇)ψ_l + iψ_r†(if₀ + σ·𝔇)ψ_r + i d̄ψ_l†ψ_r − i dψ_r†ψ_l,
    /// and the primed counterpart.
    TwistedDirac { f0: f64, g: [f64; 3], d: C64, primed: bool },
}

fn dims(l: &Lagrangian) -> usize {
    match l {
        Lagrangian::WeylLeft | Lagrangian::WeylRight | Lagrangian::TwistedWeyl { .. } => 2,
        _ => 4,
    }
}

/// Value of the density on constant amplitudes (row, col) at momentum p,
/// with ∂_μ acting on the plane wave `col e^{−ip·x}` and `row` conjugate-free.
pub fn density(l: &Lagrangian, row: &[C64], col: &[C64], p: [f64; 4]) -> C64 {
    let dot = |a: &[C64], m: &DMatrix<C64>, b: &[C64]| -> C64 {
        let v = m * DVector::from_column_slice(b);
        a.iter().zip(v.iter()).map(|(x, y)| x * y).sum()
    };
    let plain = |a: &[C64], b: &[C64]| -> C64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let partial = |mu: usize| C64::new(0.0, -p[mu]);
    let sigma_d = |tilde: bool| -> DMatrix<C64> {
        let mut out = DMatrix::zeros(2, 2);
        for mu in 0..4 {
            let s = if tilde { sigma_bar_m(mu) } else { sigma_m(mu) };
            out += mat2(&s.expect("mu < 4")) * partial(mu);
        }
        out
    };
    let spatial_d = |shift: [f64; 3]| -> DMatrix<C64> {
        let mut out = DMatrix::zeros(2, 2);
        for j in 1..4 {
            out += mat2(&pauli(j).expect("j in 1..=3")) * (partial(j) - I * shift[j - 1]);
        }
        out
    };
    match *l {
        Lagrangian::WeylLeft => I * dot(row, &sigma_d(true), col),
        Lagrangian::WeylRight => I * dot(row, &sigma_d(false), col),
        Lagrangian::Dirac { mass } => {
            I * dot(&row[..2], &sigma_d(true), &col[..2]) + I * dot(&row[2..], &sigma_d(false), &col[2..])
                - c(mass) * (plain(&row[..2], &col[2..]) + plain(&row[2..], &col[..2]))
        }
        Lagrangian::TwistedWeyl { f0, plus } => {
            let k = eye(2) * (I * f0) - spatial_d([0.0; 3]);
            let factor = if plus { C64::new(0.0, -4.0) } else { C64::new(0.0, 4.0) };
            factor * dot(row, &k, col)
        }
        Lagrangian::TwistedDirac { f0, g, d, primed } => {
            let minus = eye(2) * (I * f0) - spatial_d(g);
            let plus = eye(2) * (I * f0) + spatial_d(g);
            // unprimed order (l, r); primed order (l′, r′) with r′ carrying if₀ − σ·𝔇
            let (kl, kr) = if primed { (plus, minus) } else { (minus, plus) };
            let (a, b) = if primed { (-I * d, I * d.conj()) } else { (I * d.conj(), -I * d) };
            I * dot(&row[..2], &kl, &col[..2])
                + I * dot(&row[2..], &kr, &col[2..])
                + a * plain(&row[..2], &col[2..])
                + b * plain(&row[2..], &col[..2])
        }
    }
}

/// System matrix whose kernel the Euler–Lagrange equations describe.
pub fn stated_system(l: &Lagrangian, p: [f64; 4]) -> DMatrix<C64> {
    match *l {
        Lagrangian::WeylLeft => minkowski_left(p),
        Lagrangian::WeylRight => minkowski_right(p),
        Lagrangian::Dirac { mass } => minkowski_dirac(p, c(mass)),
        Lagrangian::TwistedWeyl { f0, plus } => {
            // ∓4i · i(f₀ + σ·p)
            let factor = if plus { c(4.0) } else { c(-4.0) };
            weyl_symbol(f0, p) * factor
        }
        Lagrangian::TwistedDirac { f0, g, d, primed } => dirac_symbol(f0, g, d, p, primed),
    }
}

/// max_a |∂ℒ/∂ψ†_a − (M ψ)_a| with ∂ℒ/∂ψ†_a = ℒ(e_a, ψ).
pub fn euler_lagrange_check(l: &Lagrangian, psi: &[C64], p: [f64; 4]) -> f64 {
    let n = dims(l);
    assert_eq!(psi.len(), n, "amplitude count must match the lagrangian");
    let m = stated_system(l, p);
    let mpsi = &m * DVector::from_column_slice(psi);
    (0..n)
        .map(|a| {
            let mut e = vec![ZERO; n];
            e[a] = ONE;
            (density(l, &e, psi, p) - mpsi[a]).norm()
        })
        .fold(0.0, f64::max)
}
