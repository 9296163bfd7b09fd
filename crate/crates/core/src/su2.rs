//! Schwinger realization of su(2) on two-mode Fock space.
//!
//! `L_k = ½ (a₁†, a₂†) σ_k (a₁, a₂)ᵀ`. A two-mode number state `|n, m⟩` sits in
//! the multiplet `l = (n + m)/2` with `L₃` eigenvalue `l₃ = (n − m)/2`, and a
//! beam splitter maps each multiplet onto itself.

use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{truncated_basis, Occupation};
use crate::half::HalfInt;
use crate::operators::bilinear_matrix;
use crate::unitary::{CMatrix, ModeUnitary};

/// `(l, l₃)` of a two-mode number state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultipletLabel2 {
    pub l: HalfInt,
    pub l3: HalfInt,
}

impl MultipletLabel2 {
    pub fn new(l: HalfInt, l3: HalfInt) -> Result<Self> {
        if l.doubled() < 0 || l3.abs() > l || (l - l3).doubled() % 2 != 0 {
            return Err(Error::InvalidArgument(format!("invalid su(2) label l={l}, l3={l3}")));
        }
        Ok(MultipletLabel2 { l, l3 })
    }

    /// Inverse of [`multiplet_label`]: `n = l + l₃`, `m = l − l₃`.
    pub fn occupation(&self) -> Occupation {
        let n = (self.l + self.l3).doubled() / 2;
        let m = (self.l - self.l3).doubled() / 2;
        Occupation::new(vec![n as u32, m as u32])
    }
}

pub fn multiplet_label(occ: &Occupation) -> Result<MultipletLabel2> {
    let &[n, m] = occ.counts() else {
        return Err(Error::WrongLength { expected: 2, got: occ.modes() });
    };
    let (n, m) = (i64::from(n), i64::from(m));
    Ok(MultipletLabel2 { l: HalfInt::from_doubled(n + m), l3: HalfInt::from_doubled(n - m) })
}

/// Eigenvalue `l(l + 1)` of the Casimir operator, exactly.
pub fn casimir_eigenvalue(l: HalfInt) -> Result<Rational64> {
    if l.doubled() < 0 {
        return Err(Error::InvalidArgument(format!("negative multiplet index {l}")));
    }
    let l = l.to_rational();
    Ok(l * (l + 1))
}

/// The Pauli matrices `σ₁, σ₂, σ₃`.
pub fn pauli() -> [CMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    ]
}

/// Schwinger generators on all two-mode states with at most `max_photons`
/// photons. Basis order is [`truncated_basis`].
#[derive(Debug, Clone)]
pub struct Su2Generators {
    pub basis: Vec<Occupation>,
    /// `L₁, L₂, L₃`.
    pub l: [CMatrix; 3],
    /// `L₊ = a₁† a₂`.
    pub raise: CMatrix,
    /// `L₋ = a₂† a₁`.
    pub lower: CMatrix,
}

impl Su2Generators {
    /// `L₁² + L₂² + L₃²`.
    pub fn casimir(&self) -> CMatrix {
        self.l.iter().map(|g| g * g).fold(CMatrix::zeros(self.dim(), self.dim()), |acc, g| acc + g)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Realization `½ a† M a` of an arbitrary 2×2 matrix on this basis.
    pub fn realize(&self, m: &CMatrix) -> CMatrix {
        bilinear_matrix(&(m * Complex64::new(0.5, 0.0)), &self.basis)
    }
}

pub fn schwinger_generators(max_photons: u32) -> Result<Su2Generators> {
    if max_photons == 0 {
        return Err(Error::InvalidArgument("generator truncation must hold at least one photon".into()));
    }
    let basis = truncated_basis(2, max_photons);
    let half = Complex64::new(0.5, 0.0);
    let l = pauli().map(|s| bilinear_matrix(&(s * half), &basis));
    let i = Complex64::new(0.0, 1.0);
    let raise = &l[0] + &l[1] * i;
    let lower = &l[0] - &l[1] * i;
    Ok(Su2Generators { basis, l, raise, lower })
}

/// Adjoint (SO(3)) image of a 2×2 unitary: `O_kl = ½ Tr(U† σ_k U σ_l)`, so
/// that the output-mode generators satisfy `K_k = Σ_l O_kl L_l`.
///
/// A global phase of `U` cancels, so any unitary is accepted.
pub fn su2_adjoint(u: &ModeUnitary) -> Result<Matrix3<f64>> {
    if u.dim() != 2 {
        return Err(Error::BadDimension { rows: u.dim(), cols: u.dim() });
    }
    let o = adjoint_matrix(u.matrix(), &pauli());
    Ok(Matrix3::from_fn(|r, c| o[(r, c)]))
}

/// `R_ij = ½ Re Tr(U† g_i U g_j)` for a trace-orthonormal (`Tr g_i g_j = 2δ_ij`)
/// Hermitian generator set `g`. The imaginary part vanishes for such sets.
pub(crate) fn adjoint_matrix(u: &CMatrix, generators: &[CMatrix]) -> DMatrix<f64> {
    let n = generators.len();
    let ud = u.adjoint();
    let rotated: Vec<CMatrix> = generators.iter().map(|g| &ud * g * u).collect();
    DMatrix::from_fn(n, n, |i, j| 0.5 * (&rotated[i] * &generators[j]).trace().re)
}
