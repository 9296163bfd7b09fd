//! Dense matrices of number-conserving operators on truncated Fock bases.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::fock::{Occupation, PureState};
use crate::unitary::CMatrix;

/// Matrix of `Σ_ij h_ij a_i† a_j` on `basis`, assembled from the sparse
/// ladder operators. Every basis state must have `h.nrows()` modes.
///
/// The operator conserves photon number, so the result is exact whenever
/// `basis` is a union of complete photon-number sectors.
pub fn bilinear_matrix(h: &CMatrix, basis: &[Occupation]) -> CMatrix {
    let index: HashMap<&Occupation, usize> = basis.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let modes = h.nrows();
    let mut m = CMatrix::zeros(basis.len(), basis.len());
    for (col, occ) in basis.iter().enumerate() {
        let ket = PureState::basis(occ.clone()).expect("basis states have modes");
        for j in 0..modes {
            let lowered = ket.annihilate(j).expect("mode in range");
            if lowered.is_empty() {
                continue;
            }
            for i in 0..modes {
                let coeff = h[(i, j)];
                if coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let image = lowered.create(i).expect("mode in range");
                for (out, amp) in image.iter() {
                    let row = *index.get(out).expect("bilinear output stays in its sector");
                    m[(row, col)] += coeff * amp;
                }
            }
        }
    }
    m
}

/// Matrix of the single term `a_i† a_j`.
pub fn hop_matrix(modes: usize, i: usize, j: usize, basis: &[Occupation]) -> CMatrix {
    let mut h = CMatrix::zeros(modes, modes);
    h[(i, j)] = Complex64::new(1.0, 0.0);
    bilinear_matrix(&h, basis)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry modulus of `a − b`.
pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// `max |m_ij|` over off-diagonal entries.
pub fn off_diagonal_max(m: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::truncated_basis;

    #[test]
    fn number_operator_is_diagonal() {
        let basis = truncated_basis(2, 3);
        let n0 = hop_matrix(2, 0, 0, &basis);
        assert_eq!(off_diagonal_max(&n0), 0.0);
        for (k, occ) in basis.iter().enumerate() {
            assert!((n0[(k, k)] - Complex64::new(occ.get(0) as f64, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn hopping_coefficients() {
        let basis = truncated_basis(2, 3);
        let hop = hop_matrix(2, 0, 1, &basis);
        let pos = |o: [u32; 2]| basis.iter().position(|b| *b == Occupation::from(o)).unwrap();
        // a0† a1 |1,2⟩ = √2 √2 |2,1⟩
        assert!((hop[(pos([2, 1]), pos([1, 2]))].re - 2.0).abs() < 1e-14);
        assert_eq!(hop[(pos([1, 0]), pos([0, 1]))].re, 1.0);
    }
}
