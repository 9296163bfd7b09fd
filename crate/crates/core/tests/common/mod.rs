//! Independent dense oracles shared by the integration tests.
//!
//! Nothing here goes through the sparse ladder operators or the polynomial
//! lift: annihilation matrices come straight from index arithmetic and the
//! Fock-space unitary is the matrix exponential of the lifted generator.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use multiport::scissors::{EprResource, ScissorsInput};
use multiport::{Complex64, ModeUnitary};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub type CMat = DMatrix<Complex64>;

/// All occupation vectors with total photons ≤ `max`, in any fixed order.
pub fn dense_basis(modes: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; modes];
    loop {
        if cur.iter().sum::<u32>() <= max {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == modes {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= max {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

pub fn index_of(basis: &[Vec<u32>]) -> HashMap<Vec<u32>, usize> {
    basis.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect()
}

/// Matrix of `a_mode` on `basis`: `⟨n−1|a|n⟩ = √n`.
pub fn annihilation(basis: &[Vec<u32>], mode: usize) -> CMat {
    let idx = index_of(basis);
    let mut m = CMat::zeros(basis.len(), basis.len());
    for (col, occ) in basis.iter().enumerate() {
        if occ[mode] == 0 {
            continue;
        }
        let mut lowered = occ.clone();
        lowered[mode] -= 1;
        let row = idx[&lowered];
        m[(row, col)] = Complex64::new((occ[mode] as f64).sqrt(), 0.0);
    }
    m
}

/// `Σ_ij h_ij a_i† a_j` on a number-closed basis.
pub fn dense_bilinear(h: &CMat, basis: &[Vec<u32>]) -> CMat {
    let modes = h.nrows();
    let a: Vec<CMat> = (0..modes).map(|k| annihilation(basis, k)).collect();
    let mut out = CMat::zeros(basis.len(), basis.len());
    for i in 0..modes {
        for j in 0..modes {
            out += a[i].adjoint() * &a[j] * h[(i, j)];
        }
    }
    out
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> CMat {
    let g = CMat::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn exp_i(h: &CMat) -> CMat {
    (h * Complex64::new(0.0, 1.0)).exp()
}

/// A unitary `U = exp(iH)` together with its generator.
pub fn random_generated_unitary<R: Rng>(dim: usize, rng: &mut R) -> (ModeUnitary, CMat) {
    let h = random_hermitian(dim, rng);
    let u = ModeUnitary::new(exp_i(&h)).expect("exponential of anti-Hermitian is unitary");
    (u, h)
}

/// Fock-space image of `exp(iH)` acting on the first `h.nrows()` of `modes`
/// modes: `exp(i Σ H_ij a_i† a_j)`.
pub fn dense_lift(h: &CMat, modes: usize, basis: &[Vec<u32>]) -> CMat {
    let mut full = CMat::zeros(modes, modes);
    full.view_mut((0, 0), (h.nrows(), h.ncols())).copy_from(h);
    exp_i(&dense_bilinear(&full, basis))
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Dense brute force: build the product state vector on the ≤4-photon
/// three-mode basis, apply `exp(i Σ H_ij a_i† a_j)` and project on every
/// detector pattern.
pub fn brute_force_scissors(input: &ScissorsInput, epr: &EprResource, h: &CMat) -> BTreeMap<(u32, u32), (f64, Vec<Complex64>)> {
    let basis = dense_basis(3, 4);
    let idx = index_of(&basis);
    let mut psi = DVector::<Complex64>::zeros(basis.len());
    let a = input.amplitudes();
    let c = epr.coefficients();
    for q in 0..3u32 {
        for (x, (n2, n3)) in [(2u32, 0u32), (1, 1), (0, 2)].into_iter().enumerate() {
            psi[idx[&vec![q, n2, n3]]] += a[q as usize] * c[x];
        }
    }
    let out = dense_lift(h, 3, &basis) * psi;
    let mut table = BTreeMap::new();
    for j in 0..=4u32 {
        for k in 0..=(4 - j) {
            let amps: Vec<Complex64> = (0..=4 - j - k).map(|m| out[idx[&vec![j, k, m]]]).collect();
            let p: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
            table.insert((j, k), (p, amps));
        }
    }
    table
}
