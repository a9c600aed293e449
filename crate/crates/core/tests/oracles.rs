// Sanity checks on the oracles themselves.

mod common;

use common::*;
use jointrange::model::pauli;
use jointrange::ComplexMatrix;

#[test]
fn jacobi_matches_known_spectra() {
    let [x, y, _] = pauli();
    assert!(jacobi_eigvals(&y).iter().zip([1.0, -1.0]).all(|(a, b)| (a - b).abs() < 1e-14));
    let h = combine(&[x, ComplexMatrix::from_real_diag(&[3.0, 0.0])], &[1.0, 1.0]);
    let disc = (9.0f64 / 4.0 + 1.0).sqrt();
    let e = jacobi_eigvals(&h);
    assert!((e[0] - (1.5 + disc)).abs() < 1e-13 && (e[1] - (1.5 - disc)).abs() < 1e-13);
}

#[test]
fn subset_sums_count() {
    assert_eq!(subset_sums(&[vec![1.0, 2.0, 3.0, 4.0]], 2).len(), 6);
}

// Off-diagonal residual of (X, Z) after conjugation by
// Q = [[cos t, −e^{ia} sin t], [e^{ib} sin t, e^{i(a+b)} cos t]], minimized
// over a grid. Every 2×2 unitary is such a Q up to phases that do not change
// the residual.
fn xz_grid_minimum(steps: usize) -> f64 {
    use jointrange::linalg::C64;
    let [x, _, z] = pauli();
    let mut best = f64::INFINITY;
    let tau = std::f64::consts::TAU;
    for i in 0..steps {
        let t = std::f64::consts::FRAC_PI_2 * i as f64 / steps as f64;
        for j in 0..steps {
            let a = tau * j as f64 / steps as f64;
            for l in 0..steps {
                let b = tau * l as f64 / steps as f64;
                let (c, s) = (t.cos(), t.sin());
                let q = ComplexMatrix::new(
                    2,
                    2,
                    vec![C64::new(c, 0.0), -C64::from_polar(s, a), C64::from_polar(s, b), C64::from_polar(c, a + b)],
                )
                .unwrap();
                let off: f64 = [&x, &z].iter().map(|m| q.adjoint().matmul(m).matmul(&q).off_diagonal_norm().powi(2)).sum();
                best = best.min(off.sqrt());
            }
        }
    }
    best
}

#[test]
fn pauli_pair_cannot_be_diagonalized() {
    use jointrange::structure::{joint_diagonalize, DEFAULT_SWEEPS};
    let grid = xz_grid_minimum(48);
    assert!((grid - 2f64.sqrt()).abs() < 1e-9, "grid minimum {grid}");
    let [x, _, z] = pauli();
    let jd = joint_diagonalize(&[x, z], DEFAULT_SWEEPS).unwrap();
    assert!(jd.offdiag_residual >= 0.5);
    assert!(jd.offdiag_residual >= grid - 1e-9, "{} below the grid minimum {grid}", jd.offdiag_residual);
}
