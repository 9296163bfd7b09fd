//! Runtime invariant suite, exposed through the CLI `selfcheck` command.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::fock::{truncated_basis, PureState};
use crate::lift::lift_matrix;
use crate::operators::{commutator, max_abs, max_diff, off_diagonal_max};
use crate::scissors::{run_scissors, solve_balanced, ScissorsInput};
use crate::su2::{casimir_eigenvalue, multiplet_label, schwinger_generators, su2_adjoint};
use crate::su3::{
    gell_mann_exact, structure_constants, su3_adjoint, su3_euler, su3_generators, EulerAngles,
};
use crate::unitary::{unitarity_deviation, CMatrix, ModeUnitary};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, tolerance: f64) -> Check {
    Check { name, passed: worst <= tolerance, detail: format!("max deviation {:.3e} (tolerance {tolerance:e})", worst.abs()) }
}

fn orthogonality(r: &DMatrix<f64>) -> f64 {
    let n = r.nrows();
    let gram = r.transpose() * r - DMatrix::<f64>::identity(n, n);
    let ortho = gram.abs().max();
    ortho.max((r.determinant() - 1.0).abs())
}

const SEED: u64 = 0x5eed;

/// Runs every check with a fixed seed. Deterministic.
pub fn run_all() -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut checks = Vec::new();

    // a a† − a† a = 1 on every basis state
    let mut worst: f64 = 0.0;
    for occ in truncated_basis(3, 6) {
        let ket = PureState::basis(occ).expect("nonempty");
        for mode in 0..3 {
            let ac = ket.create(mode).and_then(|s| s.annihilate(mode)).expect("mode in range");
            let ca = ket.annihilate(mode).and_then(|s| s.create(mode)).expect("mode in range");
            let diff = ac.add(&ca.scaled(Complex64::new(-1.0, 0.0))).expect("same modes");
            worst = worst.max((diff.add(&ket.scaled(Complex64::new(-1.0, 0.0))).expect("same modes")).norm_sqr().sqrt());
        }
    }
    checks.push(check("fock.commutator", worst, 1e-12));

    let mut unitary = 0.0f64;
    let mut homomorphism = 0.0f64;
    let mut fundamental = 0.0f64;
    for _ in 0..10 {
        for dim in [2, 3] {
            let u1 = ModeUnitary::random(dim, &mut rng);
            let u2 = ModeUnitary::random(dim, &mut rng);
            let u12 = u1.compose(&u2).expect("product of unitaries");
            fundamental = fundamental.max(max_diff(&lift_matrix(&u1, 1).expect("small"), u1.matrix()));
            for n in 0..=4 {
                let m1 = lift_matrix(&u1, n).expect("small");
                let m2 = lift_matrix(&u2, n).expect("small");
                let m12 = lift_matrix(&u12, n).expect("small");
                unitary = unitary.max(unitarity_deviation(&m1));
                homomorphism = homomorphism.max(max_diff(&m12, &(m1 * m2)));
            }
        }
    }
    checks.push(check("lift.unitary", unitary, 1e-10));
    checks.push(check("lift.homomorphism", homomorphism, 1e-10));
    checks.push(check("lift.fundamental_sector", fundamental, 1e-12));

    let g2 = schwinger_generators(4).expect("nonzero truncation");
    let i = Complex64::new(0.0, 1.0);
    let mut worst: f64 = 0.0;
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        worst = worst.max(max_diff(&commutator(&g2.l[a], &g2.l[b]), &(&g2.l[c] * i)));
    }
    worst = worst.max(max_diff(&commutator(&g2.raise, &g2.lower), &(&g2.l[2] * Complex64::new(2.0, 0.0))));
    checks.push(check("su2.commutators", worst, 1e-12));

    let casimir = g2.casimir();
    let mut worst = off_diagonal_max(&casimir);
    for (k, occ) in g2.basis.iter().enumerate() {
        let exact = casimir_eigenvalue(multiplet_label(occ).expect("two modes").l).expect("l ≥ 0");
        worst = worst.max((casimir[(k, k)] - *exact.numer() as f64 / *exact.denom() as f64).norm());
    }
    checks.push(check("su2.casimir", worst, 1e-12));

    let pauli = crate::su2::pauli();
    let mut so3 = 0.0f64;
    let mut relation = 0.0f64;
    for _ in 0..10 {
        let u = ModeUnitary::random(2, &mut rng);
        let o = su2_adjoint(&u).expect("dim 2");
        let od = DMatrix::from_fn(3, 3, |r, c| o[(r, c)]);
        so3 = so3.max(orthogonality(&od));
        for (k, s) in pauli.iter().enumerate() {
            let k_out = g2.realize(&(u.matrix().adjoint() * s * u.matrix()));
            let combo = (0..3).fold(CMatrix::zeros(g2.dim(), g2.dim()), |acc, l| {
                acc + &g2.l[l] * Complex64::new(o[(k, l)], 0.0)
            });
            relation = relation.max(max_abs(&(k_out - combo)));
        }
    }
    checks.push(check("su2.adjoint_so3", so3, 1e-10));
    checks.push(check("su2.adjoint_relation", relation, 1e-10));

    let exact = gell_mann_exact();
    let identities = exact.iter().enumerate().all(|(a, ga)| {
        ga.is_hermitian()
            && ga.trace() == num_complex::Complex::new(0, 0)
            && exact.iter().enumerate().all(|(b, gb)| {
                ga.trace_product(gb) == Some(num_rational::Rational64::from_integer(if a == b { 2 } else { 0 }))
            })
    });
    checks.push(Check {
        name: "su3.gell_mann_identities",
        passed: identities,
        detail: "Hermitian, traceless, Tr(λaλb) = 2δab in exact arithmetic".into(),
    });

    let g3 = su3_generators(4).expect("nonzero truncation");
    let f = structure_constants();
    let mut worst: f64 = 0.0;
    for a in 0..8 {
        for b in 0..8 {
            let rhs = (0..8).fold(CMatrix::zeros(g3.dim(), g3.dim()), |acc, c| acc + &g3.f[c] * (i * f[a][b][c]));
            worst = worst.max(max_diff(&commutator(&g3.f[a], &g3.f[b]), &rhs));
        }
    }
    checks.push(check("su3.bosonic_commutators", worst, 1e-12));

    let mut so8 = 0.0f64;
    let mut relation = 0.0f64;
    let mut hom = 0.0f64;
    let gm = crate::su3::gell_mann();
    for _ in 0..5 {
        let u1 = ModeUnitary::random(3, &mut rng);
        let u2 = ModeUnitary::random(3, &mut rng);
        let r1 = su3_adjoint(&u1).expect("dim 3");
        let r2 = su3_adjoint(&u2).expect("dim 3");
        let r12 = su3_adjoint(&u1.compose(&u2).expect("unitary")).expect("dim 3");
        so8 = so8.max(orthogonality(&r1));
        hom = hom.max((r12 - &r1 * r2).abs().max());
        for (k, l) in gm.iter().enumerate() {
            let g_out = g3.realize(&(u1.matrix().adjoint() * l * u1.matrix()));
            let combo = (0..8).fold(CMatrix::zeros(g3.dim(), g3.dim()), |acc, j| {
                acc + &g3.f[j] * Complex64::new(r1[(k, j)], 0.0)
            });
            relation = relation.max(max_abs(&(g_out - combo)));
        }
    }
    checks.push(check("su3.adjoint_so8", so8, 1e-10));
    checks.push(check("su3.adjoint_relation", relation, 1e-10));
    checks.push(check("su3.adjoint_homomorphism", hom, 1e-10));

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let angles = EulerAngles::from_array(std::array::from_fn(|_| rng.random_range(-10.0..10.0)));
        match su3_euler(&angles) {
            Ok(u) => worst = worst.max((u.determinant() - Complex64::new(1.0, 0.0)).norm()),
            Err(_) => worst = f64::INFINITY,
        }
    }
    checks.push(check("su3.euler_special_unitary", worst, 1e-12));

    match solve_balanced(1.0 / 3.0) {
        Ok(config) => {
            let mut p_dev = 0.0f64;
            let mut f_dev = 0.0f64;
            for _ in 0..20 {
                let a: [Complex64; 3] = std::array::from_fn(|_| {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                });
                let input = ScissorsInput::new(a[0], a[1], a[2]).expect("nonzero");
                let records = run_scissors(&input, &config.epr, &config.bs).expect("valid configuration");
                let coinc = records.iter().find(|r| r.is_coincidence()).expect("always reported");
                p_dev = p_dev.max((coinc.probability - 1.0 / 9.0).abs());
                let fid = crate::scissors::fidelity(&input.state(), &coinc.conditional).unwrap_or(0.0);
                f_dev = f_dev.max(1.0 - fid);
            }
            checks.push(check("scissors.success_probability", p_dev, 1e-6));
            checks.push(check("scissors.teleportation_fidelity", f_dev, 1e-8));
        }
        Err(e) => checks.push(Check { name: "scissors.solve", passed: false, detail: e.to_string() }),
    }

    checks
}
