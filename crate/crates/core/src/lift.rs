//! Lifting a mode unitary to the Fock space it acts on.
//!
//! Output modes satisfy `b_i = Σ_j U_ij a_j`. Inverting, the input creation
//! operators are `a_j† = Σ_i U_ij b_i†`, so every input basis term
//! `Π_j (a_j†)^{n_j} / √(n_j!) |0⟩` is rewritten as a polynomial in the
//! output creation operators and expanded. With this substitution the
//! single-photon sector matrix is `U` itself and the lift is a homomorphism:
//! `lift(U₁U₂) = lift(U₁)·lift(U₂)`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{sector_basis, Occupation, PureState};
use crate::unitary::{CMatrix, ModeUnitary};
use crate::MAX_SECTOR_PHOTONS;

fn sqrt_factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product::<f64>().sqrt()
}

/// Expands `Π_j (Σ_i U_ij x_i)^{n_j}` as a map from exponent vectors to
/// coefficients.
fn expand_product(u: &ModeUnitary, counts: &[u32]) -> BTreeMap<Vec<u32>, Complex64> {
    let dim = u.dim();
    let mut poly = BTreeMap::new();
    poly.insert(vec![0u32; dim], Complex64::new(1.0, 0.0));
    for (j, &n) in counts.iter().enumerate() {
        for _ in 0..n {
            let mut next: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
            for (exps, coeff) in &poly {
                for i in 0..dim {
                    let factor = u.entry(i, j);
                    if factor == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let mut e = exps.clone();
                    e[i] += 1;
                    *next.entry(e).or_default() += coeff * factor;
                }
            }
            poly = next;
        }
    }
    poly
}

fn check_cap(photons: u32) -> Result<()> {
    if photons > MAX_SECTOR_PHOTONS {
        return Err(Error::PhotonCapExceeded { photons, cap: MAX_SECTOR_PHOTONS });
    }
    Ok(())
}

/// Applies the lift without the normalization precondition.
pub(crate) fn transform(u: &ModeUnitary, state: &PureState, offset: usize) -> Result<PureState> {
    let dim = u.dim();
    if offset + dim > state.modes() {
        return Err(Error::OffsetOutOfRange { dim, offset, modes: state.modes() });
    }
    let mut out: BTreeMap<Occupation, Complex64> = BTreeMap::new();
    for (occ, amp) in state.iter() {
        check_cap(occ.total())?;
        let counts = &occ.counts()[offset..offset + dim];
        let input_norm: f64 = counts.iter().map(|&n| sqrt_factorial(n)).product();
        for (exps, coeff) in expand_product(u, counts) {
            let output_norm: f64 = exps.iter().map(|&k| sqrt_factorial(k)).product();
            let mut target = occ.counts().to_vec();
            target[offset..offset + dim].copy_from_slice(&exps);
            *out.entry(Occupation::new(target)).or_default() +=
                amp * coeff * (output_norm / input_norm);
        }
    }
    Ok(PureState::from_map_unchecked(state.modes(), out))
}

/// Applies `U` to modes `offset..offset + U.dim()` of a normalized state.
pub fn apply_mode_unitary(u: &ModeUnitary, state: &PureState, offset: usize) -> Result<PureState> {
    state.ensure_normalized()?;
    transform(u, state, offset)
}

/// Matrix of the lift on the `photons`-photon sector of `U.dim()` modes, in
/// [`sector_basis`] order. Column `c` is the image of basis state `c`.
pub fn lift_matrix(u: &ModeUnitary, photons: u32) -> Result<CMatrix> {
    check_cap(photons)?;
    let basis = sector_basis(u.dim(), photons);
    let index: BTreeMap<&Occupation, usize> = basis.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut m = CMatrix::zeros(basis.len(), basis.len());
    for (col, occ) in basis.iter().enumerate() {
        let image = transform(u, &PureState::basis(occ.clone())?, 0)?;
        for (out, amp) in image.iter() {
            m[(index[out], col)] = *amp;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::unitarity_deviation;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis<const N: usize>(occ: [u32; N]) -> PureState {
        PureState::basis(occ.into()).unwrap()
    }

    #[test]
    fn identity_is_trivial() {
        let s = PureState::from_terms(
            2,
            [([1u32, 1], c(0.6, 0.0)), ([2, 0], c(0.0, 0.8))],
        )
        .unwrap();
        let out = apply_mode_unitary(&ModeUnitary::identity(2), &s, 0).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn hong_ou_mandel() {
        let u = ModeUnitary::from_rows(&[
            vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
            vec![c(-FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
        ])
        .unwrap();
        let out = apply_mode_unitary(&u, &basis([1, 1]), 0).unwrap();
        // b1†b2† hand expansion: (b1† − b2†)(b1† + b2†)/2 = (b1†² − b2†²)/2
        assert!(out.amplitude(&[1, 1].into()).norm() < 1e-12);
        assert!((out.amplitude(&[2, 0].into()) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
        assert!((out.amplitude(&[0, 2].into()) - c(-FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn swap_with_phase() {
        let u = ModeUnitary::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap();
        assert!(u.is_special());
        let out = apply_mode_unitary(&u, &basis([2, 0]), 0).unwrap();
        assert_eq!(out.len(), 1);
        assert!((out.amplitude(&[0, 2].into()) - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn sector_dimensions_and_small_cases() {
        let u = ModeUnitary::beam_splitter(0.7, 0.2);
        let m0 = lift_matrix(&u, 0).unwrap();
        assert_eq!(m0.shape(), (1, 1));
        assert_eq!(m0[(0, 0)], c(1.0, 0.0));
        let m1 = lift_matrix(&u, 1).unwrap();
        assert!((m1 - u.matrix()).iter().all(|z| z.norm() < 1e-15));
        assert_eq!(lift_matrix(&u, 2).unwrap().shape(), (3, 3));
        let t = ModeUnitary::identity(3);
        assert_eq!(lift_matrix(&t, 2).unwrap().shape(), (6, 6));
    }

    #[test]
    fn sector_matrices_are_unitary() {
        let u = ModeUnitary::beam_splitter(1.1, -0.4);
        for n in 0..=6 {
            assert!(unitarity_deviation(&lift_matrix(&u, n).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn offset_leaves_other_modes() {
        let s = basis([1, 0, 2]);
        let u = ModeUnitary::beam_splitter(std::f64::consts::FRAC_PI_2, 0.0);
        let out = apply_mode_unitary(&u, &s, 1).unwrap();
        // both photons of mode 3 move to mode 2
        assert_eq!(out.len(), 1);
        assert!((out.amplitude(&[1, 2, 0].into()) - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn preconditions() {
        let u = ModeUnitary::identity(2);
        let s = basis([1, 0, 0]);
        assert_eq!(
            apply_mode_unitary(&u, &s, 2),
            Err(Error::OffsetOutOfRange { dim: 2, offset: 2, modes: 3 })
        );
        let unnorm = s.scaled(c(2.0, 0.0));
        assert!(matches!(apply_mode_unitary(&u, &unnorm, 0), Err(Error::NotNormalized { .. })));
        assert!(matches!(lift_matrix(&u, 13), Err(Error::PhotonCapExceeded { photons: 13, .. })));
        assert!(matches!(
            apply_mode_unitary(&u, &basis([13, 0]), 0),
            Err(Error::PhotonCapExceeded { .. })
        ));
    }
}
