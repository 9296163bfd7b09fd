//! Bosonic su(3) on three-mode Fock space, tritter parameterization and the
//! SO(8) adjoint map.

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::fock::{sector_basis, truncated_basis, Occupation};
use crate::half::HalfInt;
use crate::operators::bilinear_matrix;
use crate::su2::adjoint_matrix;
use crate::unitary::{CMatrix, ModeUnitary};

type GaussInt = Complex<i64>;

/// One Gell-Mann matrix in exact form: an integer-Gaussian matrix, scaled by
/// `1/√3` when `inv_sqrt3` is set (only `λ₈`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactGellMann {
    pub entries: [[GaussInt; 3]; 3],
    pub inv_sqrt3: bool,
}

impl ExactGellMann {
    fn product(&self, other: &ExactGellMann) -> [[GaussInt; 3]; 3] {
        let mut out = [[GaussInt::new(0, 0); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.entries[i][k] * other.entries[k][j]).sum();
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.entries[i][j] == self.entries[j][i].conj()))
    }

    pub fn trace(&self) -> GaussInt {
        (0..3).map(|i| self.entries[i][i]).sum()
    }

    /// `Tr(λ_a λ_b)` when it is a rational number, `None` otherwise.
    pub fn trace_product(&self, other: &ExactGellMann) -> Option<Rational64> {
        let p = self.product(other);
        let t: GaussInt = (0..3).map(|i| p[i][i]).sum();
        if t.im != 0 {
            return None;
        }
        match (self.inv_sqrt3, other.inv_sqrt3) {
            (false, false) => Some(Rational64::from_integer(t.re)),
            (true, true) => Some(Rational64::new(t.re, 3)),
            _ if t.re == 0 => Some(Rational64::from_integer(0)),
            _ => None,
        }
    }

    /// Integer part of `[λ_a, λ_b]` for unscaled pairs.
    pub fn commutator(&self, other: &ExactGellMann) -> Option<[[GaussInt; 3]; 3]> {
        if self.inv_sqrt3 || other.inv_sqrt3 {
            return None;
        }
        let ab = self.product(other);
        let ba = other.product(self);
        let mut out = ab;
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = ab[i][j] - ba[i][j];
            }
        }
        Some(out)
    }

    pub fn to_matrix(&self) -> CMatrix {
        let scale = if self.inv_sqrt3 { 1.0 / 3f64.sqrt() } else { 1.0 };
        CMatrix::from_fn(3, 3, |i, j| {
            let z = self.entries[i][j];
            Complex64::new(z.re as f64 * scale, z.im as f64 * scale)
        })
    }
}

pub fn gell_mann_exact() -> [ExactGellMann; 8] {
    let o = GaussInt::new(0, 0);
    let l = GaussInt::new(1, 0);
    let i = GaussInt::new(0, 1);
    let plain = |entries| ExactGellMann { entries, inv_sqrt3: false };
    [
        plain([[o, l, o], [l, o, o], [o, o, o]]),
        plain([[o, -i, o], [i, o, o], [o, o, o]]),
        plain([[l, o, o], [o, -l, o], [o, o, o]]),
        plain([[o, o, l], [o, o, o], [l, o, o]]),
        plain([[o, o, -i], [o, o, o], [i, o, o]]),
        plain([[o, o, o], [o, o, l], [o, l, o]]),
        plain([[o, o, o], [o, o, -i], [o, i, o]]),
        ExactGellMann { entries: [[l, o, o], [o, l, o], [o, o, -l - l]], inv_sqrt3: true },
    ]
}

/// The Gell-Mann matrices `λ₁ … λ₈` (index 0 holds `λ₁`).
pub fn gell_mann() -> [CMatrix; 8] {
    gell_mann_exact().map(|g| g.to_matrix())
}

/// `f_abc` from `[λ_a, λ_b] = 2i Σ_c f_abc λ_c`, read off as
/// `f_abc = Tr([λ_a, λ_b] λ_c) / 4i`.
pub fn structure_constants() -> [[[f64; 8]; 8]; 8] {
    let g = gell_mann();
    let mut f = [[[0.0; 8]; 8]; 8];
    let four_i = Complex64::new(0.0, 4.0);
    for a in 0..8 {
        for b in 0..8 {
            let comm = &g[a] * &g[b] - &g[b] * &g[a];
            for c in 0..8 {
                f[a][b][c] = ((&comm * &g[c]).trace() / four_i).re;
            }
        }
    }
    f
}

/// Labels of a three-mode number state `|n, l, m⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultipletLabel3 {
    /// `T₃ = (n − l)/2`.
    pub t3: HalfInt,
    /// `Y = (n + l − 2m)/3`.
    pub y: Rational64,
    /// `(λ, μ)`; always `(n + l + m, 0)` for bosons.
    pub multiplet: (u32, u32),
}

pub fn t3_y_label(occ: &Occupation) -> Result<MultipletLabel3> {
    let &[n, l, m] = occ.counts() else {
        return Err(Error::WrongLength { expected: 3, got: occ.modes() });
    };
    let (ni, li, mi) = (i64::from(n), i64::from(l), i64::from(m));
    Ok(MultipletLabel3 {
        t3: HalfInt::from_doubled(ni - li),
        y: Rational64::new(ni + li - 2 * mi, 3),
        multiplet: (n + l + m, 0),
    })
}

/// The `(n, 0)` multiplet, sorted by `Y` descending then `T₃` ascending.
pub fn enumerate_multiplet(n: u32) -> Vec<(Occupation, MultipletLabel3)> {
    let mut rows: Vec<_> = sector_basis(3, n)
        .into_iter()
        .map(|occ| {
            let label = t3_y_label(&occ).expect("three modes");
            (occ, label)
        })
        .collect();
    rows.sort_by(|(_, a), (_, b)| b.y.cmp(&a.y).then(a.t3.cmp(&b.t3)));
    rows
}

/// `F_i = ½ a† λ_i a` and the derived ladder and diagonal operators on all
/// three-mode states with at most `max_photons` photons.
#[derive(Debug, Clone)]
pub struct Su3Generators {
    pub basis: Vec<Occupation>,
    pub f: [CMatrix; 8],
    pub t_plus: CMatrix,
    pub t_minus: CMatrix,
    pub u_plus: CMatrix,
    pub u_minus: CMatrix,
    pub v_plus: CMatrix,
    pub v_minus: CMatrix,
    pub t3: CMatrix,
    pub y: CMatrix,
}

impl Su3Generators {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `½ a† M a` for an arbitrary 3×3 matrix.
    pub fn realize(&self, m: &CMatrix) -> CMatrix {
        bilinear_matrix(&(m * Complex64::new(0.5, 0.0)), &self.basis)
    }
}

pub fn su3_generators(max_photons: u32) -> Result<Su3Generators> {
    if max_photons == 0 {
        return Err(Error::InvalidArgument("generator truncation must hold at least one photon".into()));
    }
    let basis = truncated_basis(3, max_photons);
    let half = Complex64::new(0.5, 0.0);
    let f = gell_mann().map(|l| bilinear_matrix(&(l * half), &basis));
    let i = Complex64::new(0.0, 1.0);
    Ok(Su3Generators {
        t_plus: &f[0] + &f[1] * i,
        t_minus: &f[0] - &f[1] * i,
        u_plus: &f[5] + &f[6] * i,
        u_minus: &f[5] - &f[6] * i,
        v_plus: &f[3] + &f[4] * i,
        v_minus: &f[3] - &f[4] * i,
        t3: f[2].clone(),
        y: &f[7] * Complex64::new(2.0 / 3f64.sqrt(), 0.0),
        basis,
        f,
    })
}

/// The eight angles of `e^{iλ₃α} e^{iλ₂β} e^{iλ₃γ} e^{iλ₅θ} e^{iλ₃a} e^{iλ₂b} e^{iλ₃c} e^{iλ₈φ}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub phi: f64,
}

impl EulerAngles {
    pub fn from_array(v: [f64; 8]) -> Self {
        let [alpha, beta, gamma, theta, a, b, c, phi] = v;
        EulerAngles { alpha, beta, gamma, theta, a, b, c, phi }
    }

    pub fn to_array(self) -> [f64; 8] {
        [self.alpha, self.beta, self.gamma, self.theta, self.a, self.b, self.c, self.phi]
    }
}

fn diag(d: [Complex64; 3]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&d))
}

/// `e^{iλ₃x} = diag(e^{ix}, e^{−ix}, 1)`.
fn exp_lambda3(x: f64) -> CMatrix {
    diag([Complex64::from_polar(1.0, x), Complex64::from_polar(1.0, -x), Complex64::new(1.0, 0.0)])
}

/// `e^{iλ₂x}`: rotation `[[cos, sin], [−sin, cos]]` on modes 1–2.
fn exp_lambda2(x: f64) -> CMatrix {
    let (s, c) = x.sin_cos();
    let mut m = CMatrix::identity(3, 3);
    m[(0, 0)] = Complex64::new(c, 0.0);
    m[(0, 1)] = Complex64::new(s, 0.0);
    m[(1, 0)] = Complex64::new(-s, 0.0);
    m[(1, 1)] = Complex64::new(c, 0.0);
    m
}

/// `e^{iλ₅x}`: rotation on modes 1–3.
fn exp_lambda5(x: f64) -> CMatrix {
    let (s, c) = x.sin_cos();
    let mut m = CMatrix::identity(3, 3);
    m[(0, 0)] = Complex64::new(c, 0.0);
    m[(0, 2)] = Complex64::new(s, 0.0);
    m[(2, 0)] = Complex64::new(-s, 0.0);
    m[(2, 2)] = Complex64::new(c, 0.0);
    m
}

/// `e^{iλ₈x} = diag(e^{ix/√3}, e^{ix/√3}, e^{−2ix/√3})`.
fn exp_lambda8(x: f64) -> CMatrix {
    let p = x / 3f64.sqrt();
    diag([Complex64::from_polar(1.0, p), Complex64::from_polar(1.0, p), Complex64::from_polar(1.0, -2.0 * p)])
}

pub fn su3_euler(angles: &EulerAngles) -> Result<ModeUnitary> {
    let m = exp_lambda3(angles.alpha)
        * exp_lambda2(angles.beta)
        * exp_lambda3(angles.gamma)
        * exp_lambda5(angles.theta)
        * exp_lambda3(angles.a)
        * exp_lambda2(angles.b)
        * exp_lambda3(angles.c)
        * exp_lambda8(angles.phi);
    ModeUnitary::new(m)
}

/// Adjoint image `R_ij = ½ Tr(U† λ_i U λ_j)`, so that output generators
/// satisfy `G_i = Σ_j R_ij F_j`.
pub fn su3_adjoint(u: &ModeUnitary) -> Result<DMatrix<f64>> {
    if u.dim() != 3 {
        return Err(Error::BadDimension { rows: u.dim(), cols: u.dim() });
    }
    Ok(adjoint_matrix(u.matrix(), &gell_mann()))
}
