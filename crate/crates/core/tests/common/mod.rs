// Independent oracles shared by the integration tests. Nothing here goes
// through the library eigensolver.
#![allow(dead_code)]

use jointrange::linalg::random::{random_hermitian, task_rng};
use jointrange::linalg::C64;
use jointrange::model::pauli;
use jointrange::{ComplexMatrix, HermitianTuple, MatrixTuple, OperatorSpec, TailGenerator};
use rand::Rng;

/// Eigenvalues of a Hermitian matrix in decreasing order, by cyclic Jacobi on
/// the real symmetric embedding `[[Re, −Im], [Im, Re]]`, whose spectrum is
/// the original one with every eigenvalue doubled.
pub fn jacobi_eigvals(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.rows();
    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            s[i * m + j] = z.re;
            s[(i + n) * m + j + n] = z.re;
            s[(i + n) * m + j] = z.im;
            s[i * m + j + n] = -z.im;
        }
    }
    for _ in 0..100 {
        let off: f64 = (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| s[i * m + j].powi(2)).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = s[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (s[q * m + q] - s[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..m {
                    let (akp, akq) = (s[k * m + p], s[k * m + q]);
                    s[k * m + p] = c * akp - sn * akq;
                    s[k * m + q] = sn * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (s[p * m + k], s[q * m + k]);
                    s[p * m + k] = c * apk - sn * aqk;
                    s[q * m + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..m).map(|i| s[i * m + i]).collect();
    d.sort_by(|a, b| b.total_cmp(a));
    d.into_iter().step_by(2).collect()
}

pub fn top_k_sum(vals: &[f64], k: usize) -> f64 {
    vals[..k].iter().sum()
}

/// `Σ u_j A_j` for Hermitian `A_j`.
pub fn combine(mats: &[ComplexMatrix], u: &[f64]) -> ComplexMatrix {
    let n = mats[0].rows();
    ComplexMatrix::from_fn(n, n, |i, j| mats.iter().zip(u).map(|(a, w)| a[(i, j)] * *w).sum())
}

pub fn oracle_support(mats: &[ComplexMatrix], k: usize, u: &[f64]) -> f64 {
    top_k_sum(&jacobi_eigvals(&combine(mats, u)), k)
}

/// All sums of `k` coordinates of the joint diagonal, by bitmask enumeration.
pub fn subset_sums(diag: &[Vec<f64>], k: usize) -> Vec<Vec<f64>> {
    let n = diag[0].len();
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| diag.iter().map(|d| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| d[i]).sum()).collect())
        .collect()
}

pub fn diagonal_tuple(diag: &[Vec<f64>]) -> HermitianTuple {
    HermitianTuple::new(diag.iter().map(|d| ComplexMatrix::from_real_diag(d)).collect()).unwrap()
}

pub fn random_diagonal(m: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = task_rng(seed, 11);
    (0..m).map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).collect()
}

pub fn random_tuple(m: usize, n: usize, seed: u64) -> HermitianTuple {
    let mut rng = task_rng(seed, 12);
    HermitianTuple::new((0..m).map(|_| random_hermitian(n, &mut rng)).collect()).unwrap()
}

/// Largest eigenvalue magnitude, for normalizing perturbations.
pub fn spectral_norm(h: &ComplexMatrix) -> f64 {
    let e = jacobi_eigvals(h);
    e[0].abs().max(e[e.len() - 1].abs())
}

/// `(X ⊕ 0, Y ⊕ 0, Z ⊕ 0, 0_2 ⊕ I_k ⊕ −I_{N−k−2})`.
pub fn padded_pauli(k: usize, n: usize) -> HermitianTuple {
    let pad = |m: &ComplexMatrix| m.block_diag(&ComplexMatrix::zeros(n - 2, n - 2));
    let signs: Vec<f64> = (0..n).map(|i| if i < 2 { 0.0 } else if i < 2 + k { 1.0 } else { -1.0 }).collect();
    let mut mats: Vec<ComplexMatrix> = pauli().iter().map(pad).collect();
    mats.push(ComplexMatrix::from_real_diag(&signs));
    HermitianTuple::new(mats).unwrap()
}

/// Disk head `[[1, i], [i, −1]]` followed by the four corners `±1 ± i` in turn.
pub fn square_spec() -> OperatorSpec {
    let c = C64::new;
    let head = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-1.0, 0.0)]).unwrap();
    let corners = vec![c(1.0, 1.0), c(1.0, -1.0), c(-1.0, 1.0), c(-1.0, -1.0)];
    let accumulation = corners.iter().map(|z| vec![*z]).collect();
    OperatorSpec::new(MatrixTuple::new(vec![head]).unwrap(), vec![TailGenerator::Cyclic(corners)], accumulation).unwrap()
}

/// `I_k ⊕ 0_k ⊕ diag(1, 1/2, 1/3, …)`.
pub fn staircase_spec(k: usize) -> OperatorSpec {
    let zero = C64::new(0.0, 0.0);
    let head: Vec<f64> = (0..2 * k).map(|i| if i < k { 1.0 } else { 0.0 }).collect();
    OperatorSpec::new(
        MatrixTuple::new(vec![ComplexMatrix::from_real_diag(&head)]).unwrap(),
        vec![TailGenerator::Harmonic { offset: zero, scale: C64::new(1.0, 0.0) }],
        vec![vec![zero]],
    )
    .unwrap()
}
