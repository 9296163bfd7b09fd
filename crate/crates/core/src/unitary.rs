//! Unitary matrices acting on mode annihilation operators.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::UNITARY_TOLERANCE;

pub type CMatrix = DMatrix<Complex64>;

/// A `dim × dim` unitary `U` with output modes `b = U a`.
///
/// `special` records whether `det U = 1`; a general unitary differs from an
/// SU(m) element only by a global phase, which never changes probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UnitaryRepr", into = "UnitaryRepr")]
pub struct ModeUnitary {
    matrix: CMatrix,
    special: bool,
}

/// Largest entry of `|U†U − I|`.
pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    let product = m.adjoint() * m;
    let identity = CMatrix::identity(m.nrows(), m.ncols());
    (product - identity).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl ModeUnitary {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols || rows == 0 {
            return Err(Error::BadDimension { rows, cols });
        }
        let deviation = unitarity_deviation(&matrix);
        if deviation.is_nan() || deviation > UNITARY_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        let det = matrix.clone().determinant();
        let special = (det - Complex64::new(1.0, 0.0)).norm() <= UNITARY_TOLERANCE;
        Ok(ModeUnitary { matrix, special })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::BadDimension { rows: n, cols: bad.len() });
        }
        Self::new(CMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(dim: usize) -> Self {
        ModeUnitary { matrix: CMatrix::identity(dim, dim), special: true }
    }

    /// The SU(2) beam splitter `[[cos θ, e^{iφ} sin θ], [−e^{−iφ} sin θ, cos θ]]`.
    ///
    /// Intensity transmission is `cos² θ`.
    pub fn beam_splitter(theta: f64, phi: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let phase = Complex64::from_polar(1.0, phi);
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(c, 0.0), phase * s, -phase.conj() * s, Complex64::new(c, 0.0)],
        );
        ModeUnitary { matrix: m, special: true }
    }

    /// Haar-random unitary from the QR decomposition of a complex Ginibre matrix.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let z = CMatrix::from_fn(dim, dim, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        });
        let qr = z.qr();
        let (mut q, r) = qr.unpack();
        for j in 0..dim {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
        Self::new(q).expect("QR factor is unitary")
    }

    /// Haar-random element of SU(dim).
    pub fn random_special<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let u = Self::random(dim, rng);
        let det = u.matrix.clone().determinant();
        let fix = Complex64::from_polar(1.0, -det.arg() / dim as f64);
        Self::new(u.matrix * fix).expect("phase change keeps unitarity")
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.clone().determinant()
    }

    pub fn adjoint(&self) -> Self {
        ModeUnitary { matrix: self.matrix.adjoint(), special: self.special }
    }

    /// `self · other`. Unitarity is re-validated, so accumulated rounding
    /// beyond tolerance surfaces as an error.
    pub fn compose(&self, other: &ModeUnitary) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::BadDimension { rows: self.dim(), cols: other.dim() });
        }
        Self::new(&self.matrix * &other.matrix)
    }

    /// `e^{iφ} U`.
    pub fn with_phase(&self, phi: f64) -> Self {
        Self::new(&self.matrix * Complex64::from_polar(1.0, phi)).expect("phase keeps unitarity")
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct UnitaryRepr {
    dim: usize,
    rows: Vec<Vec<EntryRepr>>,
}

impl TryFrom<UnitaryRepr> for ModeUnitary {
    type Error = Error;

    fn try_from(repr: UnitaryRepr) -> Result<Self> {
        if repr.rows.len() != repr.dim {
            return Err(Error::BadDimension { rows: repr.rows.len(), cols: repr.dim });
        }
        let rows: Vec<Vec<Complex64>> = repr
            .rows
            .into_iter()
            .map(|r| r.into_iter().map(|e| Complex64::new(e.re, e.im)).collect())
            .collect();
        Self::from_rows(&rows)
    }
}

impl From<ModeUnitary> for UnitaryRepr {
    fn from(u: ModeUnitary) -> Self {
        let dim = u.dim();
        UnitaryRepr {
            dim,
            rows: (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| {
                            let z = u.matrix[(i, j)];
                            EntryRepr { re: z.re, im: z.im }
                        })
                        .collect()
                })
                .collect(),
        }
    }
}
