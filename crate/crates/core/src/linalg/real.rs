//! Small dense real solvers for the optimizers (systems of size ≤ ~20).

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// `a` is row-major `n×n`. Returns `None` when a pivot underflows.
pub fn solve(a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(f64::MIN_POSITIVE);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i * n + col].abs().total_cmp(&m[j * n + col].abs()))?;
        if m[piv * n + col].abs() <= 1e-300_f64.max(1e-15 * scale * f64::EPSILON) {
            return None;
        }
        if piv != col {
            for j in 0..n {
                m.swap(col * n + j, piv * n + j);
            }
            x.swap(col, piv);
        }
        let p = m[col * n + col];
        for i in col + 1..n {
            let f = m[i * n + col] / p;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                m[i * n + j] -= f * m[col * n + j];
            }
            x[i] -= f * x[col];
        }
    }
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i * n + j] * x[j]).sum();
        x[i] = (x[i] - s) / m[i * n + i];
    }
    Some(x)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Numerical rank of a set of real vectors: singular values above
/// `rel_cutoff · σ_max`.
pub fn rank(vectors: &[Vec<f64>], rel_cutoff: f64) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let d = first.len();
    let gram = super::ComplexMatrix::from_fn(d, d, |i, j| {
        super::C64::new(vectors.iter().map(|v| v[i] * v[j]).sum(), 0.0)
    });
    let vals = super::hermitian_eigvals(&gram, 1e-10).expect("Gram matrix is symmetric");
    let smax = vals[0].max(0.0).sqrt();
    if smax == 0.0 {
        return 0;
    }
    vals.iter().filter(|&&l| l.max(0.0).sqrt() > rel_cutoff * smax).count()
}
