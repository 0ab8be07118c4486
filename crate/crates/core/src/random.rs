//! Seeded generators for test data. Every draw comes from a ChaCha stream
//! keyed by `(seed, label)` so independent checks never share state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{spin_boost, SpinBoost, C64};
use crate::operator::{AlgebraElement, Geometry};
use crate::torus::{add_modes, neg_mode, FourierScalar, Mode, SpinorSection};

/// Modes drawn per random scalar.
pub const MODES_PER_FIELD: usize = 3;

/// FNV-1a, used to turn a label into a stream number.
pub fn label_hash(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(label_hash(label));
    rng
}

pub fn complex(rng: &mut impl Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn real(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

pub fn mode(rng: &mut impl Rng, cutoff: i32) -> Mode {
    std::array::from_fn(|_| rng.random_range(-cutoff..=cutoff))
}

/// Complex scalar with `n` random modes in |k|∞ ≤ cutoff.
pub fn scalar(rng: &mut impl Rng, cutoff: i32, n: usize) -> FourierScalar {
    FourierScalar::from_pairs((0..n).map(|_| (mode(rng, cutoff), complex(rng))).collect::<Vec<_>>())
}

/// Real scalar `Σ (c e^{ik·x} + c̄ e^{−ik·x})`.
pub fn real_scalar(rng: &mut impl Rng, cutoff: i32, n: usize) -> FourierScalar {
    let s = scalar(rng, cutoff, n);
    s.real_part().scale(C64::new(2.0, 0.0))
}

pub fn real_fields(rng: &mut impl Rng, cutoff: i32) -> [FourierScalar; 4] {
    std::array::from_fn(|_| real_scalar(rng, cutoff, MODES_PER_FIELD))
}

pub fn algebra_element(rng: &mut impl Rng, geometry: Geometry, cutoff: i32) -> AlgebraElement {
    let comps = (0..geometry.algebra_components()).map(|_| scalar(rng, cutoff, MODES_PER_FIELD)).collect();
    AlgebraElement::new(geometry, comps).expect("component count matches geometry")
}

pub fn section(rng: &mut impl Rng, dim: usize, cutoff: i32, n: usize) -> SpinorSection {
    let modes: Vec<(Mode, Vec<C64>)> = (0..n).map(|_| (mode(rng, cutoff), (0..dim).map(|_| complex(rng)).collect())).collect();
    SpinorSection::from_modes(dim, modes).expect("dimension consistent")
}

/// Symmetric mode set {±k_1, …, ±k_n} in |k|∞ ≤ cutoff.
pub fn symmetric_support(rng: &mut impl Rng, cutoff: i32, n: usize) -> Vec<Mode> {
    let mut out: Vec<Mode> = Vec::new();
    for _ in 0..n {
        let k = mode(rng, cutoff);
        for m in [k, neg_mode(k)] {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// Section with independent amplitudes on every mode of `support`.
pub fn section_on(rng: &mut impl Rng, dim: usize, support: &[Mode]) -> SpinorSection {
    let modes: Vec<(Mode, Vec<C64>)> = support.iter().map(|k| (*k, (0..dim).map(|_| complex(rng)).collect())).collect();
    SpinorSection::from_modes(dim, modes).expect("dimension consistent")
}

/// Weyl data for `count` two-component fields on a shared symmetric
/// support, so that momenta k and −k both occur and bilinears are nonzero.
pub fn weyl_data(rng: &mut impl Rng, count: usize, cutoff: i32) -> Vec<SpinorSection> {
    let support = symmetric_support(rng, cutoff, MODES_PER_FIELD);
    (0..count).map(|_| section_on(rng, 2, &support)).collect()
}

/// Real fields whose modes are differences of modes in `weyl`, plus a
/// constant, so every field couples to the data.
pub fn coupled_real_fields(rng: &mut impl Rng, weyl: &[SpinorSection]) -> [FourierScalar; 4] {
    let support: Vec<Mode> = weyl.iter().flat_map(|w| w.modes().map(|(k, _)| *k)).collect();
    std::array::from_fn(|_| {
        let mut pairs = vec![([0; 4], complex(rng))];
        for _ in 0..MODES_PER_FIELD {
            let a = support[rng.random_range(0..support.len())];
            let b = support[rng.random_range(0..support.len())];
            pairs.push((add_modes(a, neg_mode(b)), complex(rng)));
        }
        FourierScalar::from_pairs(pairs).real_part().scale(C64::new(2.0, 0.0))
    })
}

pub fn direction(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Boost with extracted rapidity |b| ≤ rapidity_max.
pub fn boost(rng: &mut impl Rng, rapidity_max: f64) -> SpinBoost {
    let half = 0.5 * rapidity_max;
    let b_half = if half > 0.0 { rng.random_range(-half..=half) } else { 0.0 };
    spin_boost(b_half, direction(rng)).expect("unit direction")
}
