mod common;

use common::{annihilation, dense_basis, dense_bilinear, max_abs, CMat};
use multiport::fock::sector_basis;
use multiport::lift::lift_matrix;
use multiport::operators::{commutator, max_diff};
use multiport::su2::{pauli, schwinger_generators, su2_adjoint};
use multiport::su3::{
    enumerate_multiplet, gell_mann, su3_adjoint, su3_euler, su3_generators, t3_y_label, EulerAngles,
};
use multiport::{Complex64, HalfInt, ModeUnitary};
use nalgebra::DMatrix;
use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const HALF: Complex64 = Complex64::new(0.5, 0.0);

/// `½ Σ_ij g_ij b_i† b_j` with `b = U a`, assembled from dense annihilation
/// matrices.
fn output_generator(u: &ModeUnitary, g: &CMat, basis: &[Vec<u32>]) -> CMat {
    let dim = u.dim();
    let a: Vec<CMat> = (0..dim).map(|k| annihilation(basis, k)).collect();
    let b: Vec<CMat> = (0..dim)
        .map(|i| (0..dim).fold(CMat::zeros(basis.len(), basis.len()), |acc, j| acc + &a[j] * u.entry(i, j)))
        .collect();
    let mut out = CMat::zeros(basis.len(), basis.len());
    for i in 0..dim {
        for j in 0..dim {
            out += b[i].adjoint() * &b[j] * (g[(i, j)] * HALF);
        }
    }
    out
}

fn so_deviation(r: &DMatrix<f64>) -> f64 {
    let n = r.nrows();
    let ortho = (r.transpose() * r - DMatrix::<f64>::identity(n, n)).abs().max();
    ortho.max((r.determinant() - 1.0).abs())
}

#[test]
fn su2_adjoint_matches_lifted_output_generators() {
    let mut rng = StdRng::seed_from_u64(21);
    let basis = dense_basis(2, 4);
    let input: Vec<CMat> = pauli().iter().map(|s| dense_bilinear(&(s * HALF), &basis)).collect();
    for _ in 0..20 {
        let u = ModeUnitary::random(2, &mut rng);
        let o = su2_adjoint(&u).unwrap();
        let od = DMatrix::from_fn(3, 3, |r, c| o[(r, c)]);
        assert!(so_deviation(&od) < 1e-10);
        for (k, s) in pauli().iter().enumerate() {
            let lhs = output_generator(&u, s, &basis);
            let rhs = (0..3).fold(CMat::zeros(basis.len(), basis.len()), |acc, l| {
                acc + &input[l] * Complex64::new(o[(k, l)], 0.0)
            });
            assert!(max_abs(&(lhs - rhs)) < 1e-10);
        }
    }
}

#[test]
fn su2_adjoint_is_conjugation_by_the_lift() {
    // K_k = M† L_k M on each sector, M the Fock lift of U
    let mut rng = StdRng::seed_from_u64(22);
    let g = schwinger_generators(4).unwrap();
    for _ in 0..10 {
        let u = ModeUnitary::random(2, &mut rng);
        let o = su2_adjoint(&u).unwrap();
        let mut start = 0;
        for n in 0..=4u32 {
            let size = n as usize + 1;
            let m = lift_matrix(&u, n).unwrap();
            for k in 0..3 {
                let block = |l: usize| g.l[l].view((start, start), (size, size)).into_owned();
                let lhs = m.adjoint() * block(k) * &m;
                let rhs = (0..3).fold(CMat::zeros(size, size), |acc, l| acc + block(l) * Complex64::new(o[(k, l)], 0.0));
                assert!(max_abs(&(lhs - rhs)) < 1e-10);
            }
            start += size;
        }
    }
}

#[test]
fn su2_adjoint_homomorphism_and_phase_blindness() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..50 {
        let u1 = ModeUnitary::random_special(2, &mut rng);
        let u2 = ModeUnitary::random_special(2, &mut rng);
        let o12 = su2_adjoint(&u1.compose(&u2).unwrap()).unwrap();
        let prod = su2_adjoint(&u1).unwrap() * su2_adjoint(&u2).unwrap();
        assert!((o12 - prod).abs().max() < 1e-10);
        let shifted = su2_adjoint(&u1.with_phase(1.234)).unwrap();
        assert!((shifted - su2_adjoint(&u1).unwrap()).abs().max() < 1e-12);
    }
}

#[test]
fn su3_adjoint_matches_lifted_output_generators() {
    let mut rng = StdRng::seed_from_u64(24);
    let basis = dense_basis(3, 4);
    let lambdas = gell_mann();
    let input: Vec<CMat> = lambdas.iter().map(|l| dense_bilinear(&(l * HALF), &basis)).collect();
    for _ in 0..10 {
        let u = ModeUnitary::random(3, &mut rng);
        let r = su3_adjoint(&u).unwrap();
        assert!(so_deviation(&r) < 1e-10);
        for (i, l) in lambdas.iter().enumerate() {
            let lhs = output_generator(&u, l, &basis);
            let rhs = (0..8).fold(CMat::zeros(basis.len(), basis.len()), |acc, j| {
                acc + &input[j] * Complex64::new(r[(i, j)], 0.0)
            });
            assert!(max_abs(&(lhs - rhs)) < 1e-10);
        }
    }
}

#[test]
fn su3_adjoint_homomorphism() {
    let mut rng = StdRng::seed_from_u64(25);
    for _ in 0..50 {
        let u1 = ModeUnitary::random(3, &mut rng);
        let u2 = ModeUnitary::random(3, &mut rng);
        let r12 = su3_adjoint(&u1.compose(&u2).unwrap()).unwrap();
        let prod = su3_adjoint(&u1).unwrap() * su3_adjoint(&u2).unwrap();
        assert!((r12 - prod).abs().max() < 1e-10);
    }
}

#[test]
fn ladder_operators_move_labels_as_drawn() {
    let g = su3_generators(4).unwrap();
    let moves: [(&CMat, (i64, Rational64)); 6] = [
        (&g.t_plus, (2, Rational64::from_integer(0))),
        (&g.t_minus, (-2, Rational64::from_integer(0))),
        (&g.u_plus, (-1, Rational64::from_integer(1))),
        (&g.u_minus, (1, Rational64::from_integer(-1))),
        (&g.v_plus, (1, Rational64::from_integer(1))),
        (&g.v_minus, (-1, Rational64::from_integer(-1))),
    ];
    for (op, (dt3_doubled, dy)) in moves {
        for col in 0..g.dim() {
            let from = t3_y_label(&g.basis[col]).unwrap();
            for row in 0..g.dim() {
                if op[(row, col)].norm() < 1e-14 {
                    continue;
                }
                let to = t3_y_label(&g.basis[row]).unwrap();
                assert_eq!(to.t3 - from.t3, HalfInt::from_doubled(dt3_doubled));
                assert_eq!(to.y - from.y, dy);
                assert_eq!(to.multiplet, from.multiplet);
            }
        }
    }
}

#[test]
fn three_embedded_su2_subalgebras() {
    let g = su3_generators(4).unwrap();
    let two = Complex64::new(2.0, 0.0);
    let (q, h) = (Complex64::new(0.75, 0.0), Complex64::new(0.5, 0.0));
    let u3 = &g.y * q - &g.t3 * h;
    let v3 = &g.y * q + &g.t3 * h;
    for (plus, minus, third) in [(&g.t_plus, &g.t_minus, &g.t3), (&g.u_plus, &g.u_minus, &u3), (&g.v_plus, &g.v_minus, &v3)] {
        assert!(max_diff(&commutator(plus, minus), &(third * two)) < 1e-12);
        assert!(max_diff(&commutator(third, plus), plus) < 1e-12);
        assert!(max_diff(&commutator(third, minus), &(-minus)) < 1e-12);
    }
}

#[test]
fn multiplet_sizes_and_tritter_invariance() {
    let mut rng = StdRng::seed_from_u64(26);
    for n in 0..=6u32 {
        let rows = enumerate_multiplet(n);
        assert_eq!(rows.len(), ((n + 1) * (n + 2) / 2) as usize);
        assert!(rows.iter().all(|(o, l)| o.total() == n && l.multiplet == (n, 0)));
        for w in rows.windows(2) {
            let (a, b) = (&w[0].1, &w[1].1);
            assert!(a.y > b.y || (a.y == b.y && a.t3 < b.t3));
        }
    }
    let angles = EulerAngles::from_array(std::array::from_fn(|_| rng.random_range(-3.0..3.0)));
    let u = su3_euler(&angles).unwrap();
    for n in 0..=4u32 {
        let m = lift_matrix(&u, n).unwrap();
        assert_eq!(m.nrows(), sector_basis(3, n).len());
    }
}

#[test]
fn euler_parameterization_is_special_unitary() {
    let mut rng = StdRng::seed_from_u64(27);
    for _ in 0..1000 {
        let angles = EulerAngles::from_array(std::array::from_fn(|_| rng.random_range(-7.0..7.0)));
        let u = su3_euler(&angles).unwrap();
        assert!((u.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(u.is_special());
    }
}
