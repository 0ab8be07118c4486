//! Exterior algebra over formal anticommuting generators θ_i.
//!
//! Generators are self-conjugate: complex conjugation acts on amplitudes
//! only. A section is promoted by attaching a fresh generator to every
//! (field, mode, component) slot carrying a nonzero amplitude.

use std::collections::BTreeMap;

use crate::clifford::{C64, ONE, ZERO};
use crate::torus::{Coefficient, Mode, Section, SpinorSection};

#[derive(Clone, Debug, PartialEq, Default)]
pub struct GrassmannNumber {
    terms: BTreeMap<Vec<u32>, C64>,
}

pub type GrassmannSection = Section<GrassmannNumber>;

/// Sign and merged index list of θ_a θ_b, or `None` if an index repeats.
fn merge(a: &[u32], b: &[u32]) -> Option<(f64, Vec<u32>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut swaps = 0usize;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] passes the remaining a-indices
            swaps += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((if swaps % 2 == 0 { 1.0 } else { -1.0 }, out))
}

impl GrassmannNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: C64) -> Self {
        let mut g = Self::zero();
        g.add_term(Vec::new(), c);
        g
    }

    pub fn generator(i: u32) -> Self {
        Self::monomial(&[i], ONE)
    }

    /// `c θ_{i1} θ_{i2} …` for an arbitrary index order.
    pub fn monomial(indices: &[u32], c: C64) -> Self {
        let mut acc = Self::scalar(c);
        for &i in indices {
            let mut g = Self::zero();
            g.add_term(vec![i], ONE);
            acc = acc.gr_mul(&g);
        }
        acc
    }

    fn add_term(&mut self, key: Vec<u32>, c: C64) {
        if c == ZERO {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert(ZERO);
        *e += c;
        if *e == ZERO {
            self.terms.remove(&key);
        }
    }

    pub fn gr_mul(&self, other: &GrassmannNumber) -> GrassmannNumber {
        let mut out = GrassmannNumber::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if let Some((sign, key)) = merge(ka, kb) {
                    out.add_term(key, ca * cb * sign);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &GrassmannNumber) -> GrassmannNumber {
        let mut out = self.clone();
        out.add_scaled(other, ONE);
        out
    }

    pub fn sub(&self, other: &GrassmannNumber) -> GrassmannNumber {
        let mut out = self.clone();
        out.add_scaled(other, -ONE);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, indices: &[u32]) -> C64 {
        self.terms.get(indices).copied().unwrap_or(ZERO)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest degree present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.len()).max()
    }

    /// Degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.len());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_diff(&self, other: &GrassmannNumber) -> f64 {
        self.sub(other).max_abs()
    }

    /// Antisymmetric matrix `c_ij` with value = Σ_{i<j} c_ij θ_iθ_j, over
    /// generators `0..n`. Terms of other degrees are ignored.
    pub fn degree2_matrix(&self, n: usize) -> Vec<Vec<C64>> {
        let mut m = vec![vec![ZERO; n]; n];
        for (k, c) in &self.terms {
            if k.len() == 2 && (k[1] as usize) < n {
                let (i, j) = (k[0] as usize, k[1] as usize);
                m[i][j] = *c;
                m[j][i] = -c;
            }
        }
        m
    }

    /// Linear part split into generator coefficients (degree-1 terms only).
    pub fn linear_coefficients(&self) -> BTreeMap<u32, C64> {
        self.terms.iter().filter(|(k, _)| k.len() == 1).map(|(k, c)| (k[0], *c)).collect()
    }
}

impl Coefficient for GrassmannNumber {
    fn zero() -> Self {
        GrassmannNumber::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, c: C64) -> Self {
        let mut out = GrassmannNumber::zero();
        out.add_scaled(self, c);
        out
    }
    fn add_scaled(&mut self, other: &Self, c: C64) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }
    fn conj(&self) -> Self {
        GrassmannNumber { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.conj())).collect() }
    }
    fn mul(&self, other: &Self) -> Self {
        self.gr_mul(other)
    }
    fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.norm()))
    }
}

/// Label of a generator: which field, which mode, which fiber component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeneratorLabel {
    pub field: usize,
    pub mode: Mode,
    pub component: usize,
}

/// Per-evaluation allocator of generator indices.
#[derive(Clone, Debug, Default)]
pub struct GeneratorRegistry {
    labels: Vec<GeneratorLabel>,
    index: BTreeMap<GeneratorLabel, u32>,
}

impl GeneratorRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: u32) -> Option<GeneratorLabel> {
        self.labels.get(i as usize).copied()
    }

    pub fn lookup(&self, label: &GeneratorLabel) -> Option<u32> {
        self.index.get(label).copied()
    }

    /// Index of `label`, allocating a fresh generator on first use.
    pub fn allocate(&mut self, label: GeneratorLabel) -> u32 {
        if let Some(i) = self.index.get(&label) {
            return *i;
        }
        let i = self.labels.len() as u32;
        self.labels.push(label);
        self.index.insert(label, i);
        i
    }
}

/// Attaches generator θ_{(field, k, s)} to each nonzero amplitude of `psi`.
pub fn promote(psi: &SpinorSection, field: usize, registry: &mut GeneratorRegistry) -> GrassmannSection {
    let dim = psi.fiber_dim();
    let mut out = GrassmannSection::zeros(dim);
    for (k, v) in psi.modes() {
        let mut w = vec![GrassmannNumber::zero(); dim];
        for (s, c) in v.iter().enumerate() {
            if *c != ZERO {
                let g = registry.allocate(GeneratorLabel { field, mode: *k, component: s });
                w[s] = GrassmannNumber::monomial(&[g], *c);
            }
        }
        out.add_at(*k, &w, ONE);
    }
    out
}

/// Splits a degree-1 Grassmann section into Σ_i θ_i · (complex section).
pub fn decompose_linear(section: &GrassmannSection) -> BTreeMap<u32, SpinorSection> {
    let dim = section.fiber_dim();
    let mut out: BTreeMap<u32, SpinorSection> = BTreeMap::new();
    for (k, v) in section.modes() {
        for (s, g) in v.iter().enumerate() {
            for (i, c) in g.linear_coefficients() {
                let mut w = vec![ZERO; dim];
                w[s] = c;
                out.entry(i).or_insert_with(|| SpinorSection::zeros(dim)).add_at(*k, &w, ONE);
            }
        }
    }
    out
}

/// Evaluates a complex-bilinear form on degree-1 Grassmann sections:
/// `form(Σθ_i a_i, Σθ_j b_j) = Σ_{ij} form(a_i, b_j) θ_iθ_j`.
pub fn bilinear_grassmann<F>(form: F, a: &GrassmannSection, b: &GrassmannSection) -> GrassmannNumber
where
    F: Fn(&SpinorSection, &SpinorSection) -> C64,
{
    let da = decompose_linear(a);
    let db = decompose_linear(b);
    let mut out = GrassmannNumber::zero();
    for (i, ai) in &da {
        for (j, bj) in &db {
            if i == j {
                continue;
            }
            let v = form(ai, bj);
            out.add_scaled(&GrassmannNumber::monomial(&[*i, *j], ONE), v);
        }
    }
    out
}

/// Dense oracle: Σ_{i<j}(A_ij − A_ji) θ_iθ_j from the form matrix on the
/// generator basis.
pub fn dense_antisymmetrized(a: &[Vec<C64>]) -> GrassmannNumber {
    let n = a.len();
    let mut out = GrassmannNumber::zero();
    for i in 0..n {
        for j in i + 1..n {
            let c = a[i][j] - a[j][i];
            out.add_scaled(&GrassmannNumber::monomial(&[i as u32, j as u32], ONE), c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(i: u32) -> GrassmannNumber {
        GrassmannNumber::generator(i)
    }

    #[test]
    fn anticommutation_and_nilpotency() {
        let a = th(1).gr_mul(&th(2));
        let b = th(2).gr_mul(&th(1));
        assert_eq!(a.coefficient(&[1, 2]), ONE);
        assert_eq!(b.coefficient(&[1, 2]), -ONE);
        assert!(th(1).gr_mul(&th(1)).is_empty());
    }

    #[test]
    fn sum_times_difference() {
        let p = th(1).add(&th(2));
        let m = th(1).sub(&th(2));
        let r = p.gr_mul(&m);
        assert_eq!(r.coefficient(&[1, 2]), C64::new(-2.0, 0.0));
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn monomial_sorts_with_sign() {
        let m = GrassmannNumber::monomial(&[3, 1, 2], ONE);
        // θ3θ1θ2 = θ1θ2θ3 after two transpositions
        assert_eq!(m.coefficient(&[1, 2, 3]), ONE);
    }
}
