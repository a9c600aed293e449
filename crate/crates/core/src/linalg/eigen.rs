//! Hermitian eigensolver: complex Householder reduction to a real symmetric
//! tridiagonal matrix, then implicit QL with Wilkinson-style shifts.

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Relative Hermiticity tolerance applied when callers have no better value.
pub const DEFAULT_HERMITIAN_TOL: f64 = 1e-12;

const MAX_QL_ITERATIONS: usize = 60;

/// Eigenvalues in non-increasing order with the matching unit eigenvectors
/// stored as columns. Each column's first nonzero component is real positive.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Sum of the `k` largest eigenvalues (`0` for `k = 0`).
    pub fn top_sum(&self, k: usize) -> f64 {
        self.values[..k].iter().sum()
    }

    /// `λ_k − λ_{k+1}` (1-based), `+∞` when `k` is the dimension.
    pub fn gap(&self, k: usize) -> f64 {
        if k >= self.values.len() || k == 0 {
            f64::INFINITY
        } else {
            self.values[k - 1] - self.values[k]
        }
    }
}

fn checked_symmetrized(h: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    if !h.is_square() {
        return Err(Error::NonSquare { rows: h.rows(), cols: h.cols() });
    }
    let asymmetry = h.hermitian_defect();
    let allowed = tol * h.frobenius_norm();
    if asymmetry > allowed {
        return Err(Error::NotHermitian { asymmetry, allowed });
    }
    Ok(h.symmetrized())
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The input must satisfy `‖H − H*‖_F ≤ tol·‖H‖_F`; it is symmetrized before
/// the reduction. Output is bit-for-bit deterministic for identical input.
pub fn hermitian_eigh(h: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition> {
    let n = h.rows();
    let sym = checked_symmetrized(h, tol)?;
    let mut a = sym.into_data();
    let mut q = ComplexMatrix::identity(n).into_data();
    let (mut d, offdiag) = tridiagonalize(&mut a, n, Some(&mut q));
    let mut e = offdiag;
    e.push(0.0);
    ql_implicit(&mut d, &mut e, Some(&mut q), n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].total_cmp(&d[i]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let lead = (0..n).find(|&i| q[i * n + src].norm() > 1e-12);
        let phase = lead.map_or(C64::new(1.0, 0.0), |i| {
            let z = q[i * n + src];
            z.conj() / z.norm()
        });
        for i in 0..n {
            vectors[(i, col)] = q[i * n + src] * phase;
        }
        if let Some(i) = lead {
            vectors[(i, col)] = C64::new(q[i * n + src].norm(), 0.0);
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues only, in non-increasing order.
pub fn hermitian_eigvals(h: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    let n = h.rows();
    let sym = checked_symmetrized(h, tol)?;
    let mut a = sym.into_data();
    let (mut d, offdiag) = tridiagonalize(&mut a, n, None);
    let mut e = offdiag;
    e.push(0.0);
    ql_implicit(&mut d, &mut e, None, n)?;
    d.sort_by(|a, b| b.total_cmp(a));
    Ok(d)
}

/// Reduces the Hermitian matrix stored row-major in `a` to real symmetric
/// tridiagonal form. Returns the diagonal and the `n − 1` subdiagonal
/// magnitudes. When `q` is given (row-major, initialised to the identity) it
/// receives the unitary `Q` with `A = Q T Q*`.
///
/// Columns that are already zero below the subdiagonal are skipped, so an
/// already diagonal input costs `O(n²)`.
pub fn tridiagonalize(a: &mut [C64], n: usize, mut q: Option<&mut [C64]>) -> (Vec<f64>, Vec<f64>) {
    let zero = C64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut p = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let below: f64 = (k + 2..n).map(|i| a[i * n + k].norm_sqr()).sum();
        if below == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = (below + x0.norm_sqr()).sqrt();
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..len {
            v[i] = a[(k + 1 + i) * n + k];
        }
        v[0] += phase * alpha;
        let vnorm2: f64 = v[..len].iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm2;

        // p = β A₂₂ v
        for i in 0..len {
            let row = (k + 1 + i) * n + k + 1;
            let mut s = zero;
            for j in 0..len {
                s += a[row + j] * v[j];
            }
            p[i] = s * beta;
        }
        let vp: C64 = (0..len).map(|i| v[i].conj() * p[i]).sum();
        let c = 0.5 * beta * vp.re;
        for i in 0..len {
            p[i] -= v[i] * c;
        }
        // A₂₂ ← A₂₂ − v w* − w v*
        for i in 0..len {
            let row = (k + 1 + i) * n + k + 1;
            for j in 0..len {
                a[row + j] -= v[i] * p[j].conj() + p[i] * v[j].conj();
            }
        }
        let sub = -phase * alpha;
        a[(k + 1) * n + k] = sub;
        a[k * n + k + 1] = sub.conj();
        for i in k + 2..n {
            a[i * n + k] = zero;
            a[k * n + i] = zero;
        }
        if let Some(q) = q.as_deref_mut() {
            for r in 0..n {
                let row = r * n + k + 1;
                let s: C64 = (0..len).map(|j| q[row + j] * v[j]).sum::<C64>() * beta;
                for j in 0..len {
                    q[row + j] -= s * v[j].conj();
                }
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    let mut phase = C64::new(1.0, 0.0);
    for i in 0..n.saturating_sub(1) {
        let t = a[(i + 1) * n + i];
        let mag = t.norm();
        offdiag.push(mag);
        if mag > 0.0 {
            phase *= t / mag;
        }
        if let Some(q) = q.as_deref_mut() {
            for r in 0..n {
                q[r * n + i + 1] *= phase;
            }
        }
    }
    (diag, offdiag)
}

/// Implicit QL on a real symmetric tridiagonal matrix with diagonal `d` and
/// subdiagonal `e` (`e[i]` couples `i` and `i + 1`, `e[n − 1] = 0`).
/// Rotations are accumulated into the columns of `z` when present.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [C64]>, n: usize) -> Result<()> {
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m == n {
            m = n - 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::NoConvergence(MAX_QL_ITERATIONS));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        for k in 0..n {
                            let zk1 = z[k * n + i + 1];
                            let zk = z[k * n + i];
                            z[k * n + i + 1] = zk * s + zk1 * c;
                            z[k * n + i] = zk * c - zk1 * s;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_hermitian, random_unitary, task_rng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn check_decomposition(h: &ComplexMatrix, eig: &EigenDecomposition) {
        let n = h.rows() as f64;
        let v = &eig.vectors;
        let gram = v.adjoint().matmul(v);
        assert!((&gram - &ComplexMatrix::identity(h.rows())).frobenius_norm() <= 1e-10 * n);
        let lam = ComplexMatrix::from_real_diag(&eig.values);
        let resid = (&h.matmul(v) - &v.matmul(&lam)).frobenius_norm();
        assert!(resid <= 1e-10 * n * h.frobenius_norm().max(1.0), "residual {resid}");
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    /// Sturm-count bisection on the real tridiagonal form.
    fn bisection_eigenvalues(d: &[f64], e: &[f64]) -> Vec<f64> {
        let n = d.len();
        let bound = d.iter().zip(e.iter().chain(std::iter::once(&0.0))).map(|(a, b)| a.abs() + 2.0 * b.abs()).fold(0.0, f64::max) + 1.0;
        let count_below = |x: f64| {
            let mut count = 0;
            let mut q = d[0] - x;
            if q < 0.0 {
                count += 1;
            }
            for i in 1..n {
                let qq = if q == 0.0 { f64::EPSILON } else { q };
                q = d[i] - x - e[i - 1] * e[i - 1] / qq;
                if q < 0.0 {
                    count += 1;
                }
            }
            count
        };
        (0..n)
            .map(|j| {
                // j-th largest: the point where count_below crosses n − j
                let target = n - j;
                let (mut lo, mut hi) = (-bound, bound);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if count_below(mid) >= target {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }

    #[test]
    fn diagonal_input_is_returned_as_is() {
        let h = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let eig = hermitian_eigh(&h, DEFAULT_HERMITIAN_TOL).unwrap();
        assert_eq!(eig.values, vec![1.0, -1.0]);
        assert_eq!(eig.vectors, ComplexMatrix::identity(2));
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let eig = hermitian_eigh(&x, DEFAULT_HERMITIAN_TOL).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-15);
        assert!((eig.values[1] + 1.0).abs() < 1e-15);
        check_decomposition(&x, &eig);
    }

    #[test]
    fn random_hermitian_matches_bisection_oracle() {
        for seed in 0..5 {
            let mut rng = task_rng(seed, 0);
            let h = random_hermitian(6, &mut rng);
            let eig = hermitian_eigh(&h, DEFAULT_HERMITIAN_TOL).unwrap();
            check_decomposition(&h, &eig);
            let mut a = h.clone().into_data();
            let (d, e) = tridiagonalize(&mut a, 6, None);
            let oracle = bisection_eigenvalues(&d, &e);
            for (x, y) in eig.values.iter().zip(&oracle) {
                assert!((x - y).abs() < 1e-9, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn values_only_path_agrees() {
        let mut rng = task_rng(11, 0);
        let h = random_hermitian(9, &mut rng);
        let full = hermitian_eigh(&h, DEFAULT_HERMITIAN_TOL).unwrap();
        let vals = hermitian_eigvals(&h, DEFAULT_HERMITIAN_TOL).unwrap();
        for (a, b) in full.values.iter().zip(&vals) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_and_unitary_invariance() {
        for seed in 0..5 {
            let mut rng = task_rng(seed, 1);
            let h = random_hermitian(7, &mut rng);
            let u = random_unitary(7, &mut rng);
            let vals = hermitian_eigvals(&h, DEFAULT_HERMITIAN_TOL).unwrap();
            let sum: f64 = vals.iter().sum();
            assert!((sum - h.trace().re).abs() <= 1e-10 * 7.0 * h.frobenius_norm());
            let conj = hermitian_eigvals(&h.compress(&u), 1e-10).unwrap();
            for (a, b) in vals.iter().zip(&conj) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let h = ComplexMatrix::from_real_diag(&[2.0, 2.0, 2.0, -1.0]);
        let mut rng = task_rng(3, 0);
        let u = random_unitary(4, &mut rng);
        let g = h.compress(&u);
        let eig = hermitian_eigh(&g, 1e-10).unwrap();
        check_decomposition(&g, &eig);
        assert!((eig.values[2] - 2.0).abs() < 1e-12 && (eig.values[3] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_convention_first_component_real_positive() {
        let mut rng = task_rng(5, 0);
        let h = random_hermitian(5, &mut rng);
        let eig = hermitian_eigh(&h, DEFAULT_HERMITIAN_TOL).unwrap();
        for j in 0..5 {
            let lead = (0..5).map(|i| eig.vectors[(i, j)]).find(|z| z.norm() > 1e-12).unwrap();
            assert_eq!(lead.im, 0.0);
            assert!(lead.re > 0.0);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eigh(&a, DEFAULT_HERMITIAN_TOL), Err(Error::NotHermitian { .. })));
        assert!(matches!(hermitian_eigh(&ComplexMatrix::zeros(2, 3), 1e-12), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn deterministic_bits() {
        let mut rng = task_rng(8, 0);
        let h = random_hermitian(8, &mut rng);
        let a = hermitian_eigh(&h, DEFAULT_HERMITIAN_TOL).unwrap();
        let b = hermitian_eigh(&h, DEFAULT_HERMITIAN_TOL).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }

    #[test]
    fn large_diagonal_is_cheap_and_exact() {
        let diag: Vec<f64> = (1..=1200).map(|l| 1.0 / l as f64).collect();
        let h = ComplexMatrix::from_real_diag(&diag);
        let vals = hermitian_eigvals(&h, DEFAULT_HERMITIAN_TOL).unwrap();
        assert_eq!(vals, diag);
    }

    #[test]
    fn complex_tridiagonal_phases() {
        let h = ComplexMatrix::new(
            3,
            3,
            vec![c(1.0, 0.0), c(0.0, 2.0), c(1.0, 1.0), c(0.0, -2.0), c(0.5, 0.0), c(0.0, 3.0), c(1.0, -1.0), c(0.0, -3.0), c(-2.0, 0.0)],
        )
        .unwrap();
        let eig = hermitian_eigh(&h, DEFAULT_HERMITIAN_TOL).unwrap();
        check_decomposition(&h, &eig);
    }
}
