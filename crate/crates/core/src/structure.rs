//! Algebraic structure read off the geometry: reducing subspaces at boundary
//! points, simultaneous diagonalization, commuting-normal certification and
//! joint eigenvalue subset sums.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::random::{random_unit_vector, task_rng};
use crate::linalg::{
    algebra_defects, hermitian_eigh, AlgebraDefects, ComplexMatrix, C64, DEFAULT_HERMITIAN_TOL,
};
use crate::model::{real_form, HermitianTuple, MatrixTuple, Provenance, RangePoint};
use crate::polyhedral::{detect_polyhedral, PolyhedralCertificate, POLY_TOL};

pub const STRUCT_TOL: f64 = 1e-8;
pub const SUBSET_CAP: u128 = 1_000_000;
pub const DEFAULT_SWEEPS: usize = 100;

/// Isometry onto the top-k eigenspace of `A_u` and its off-diagonal coupling
/// to the complement.
#[derive(Clone, Debug)]
pub struct ReducingCertificate {
    pub basis: ComplexMatrix,
    pub residual: f64,
    pub compressions: Vec<ComplexMatrix>,
    pub vertex: RangePoint,
    pub direction: Vec<f64>,
    /// `residual ≤ STRUCT_TOL·scale`.
    pub reducing: bool,
}

pub fn reducing_subspace_at(a: &HermitianTuple, k: usize, u: &[f64], gap_tol: f64) -> Result<ReducingCertificate> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }
    if u.len() != a.len() {
        return Err(Error::ShapeMismatch(format!("direction of dimension {} for a {}-component tuple", u.len(), a.len())));
    }
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0) {
        return Err(Error::InvalidArgument("direction must be nonzero".into()));
    }
    let direction: Vec<f64> = u.iter().map(|x| x / norm).collect();
    let eig = hermitian_eigh(&a.combination(&direction), DEFAULT_HERMITIAN_TOL)?;
    let gap = eig.gap(k);
    if gap <= gap_tol {
        return Err(Error::DegenerateGap { gap, tol: gap_tol });
    }
    let x = eig.vectors.columns(0, k);
    let rest = eig.vectors.columns(k, n);
    let residual = if k == n {
        0.0
    } else {
        a.mats().iter().map(|h| rest.adjoint().matmul(&h.matmul(&x)).frobenius_norm().powi(2)).sum::<f64>().sqrt()
    };
    let compressions: Vec<ComplexMatrix> = a.mats().iter().map(|h| h.compress(&x)).collect();
    let vertex = RangePoint::new(compressions.iter().map(|c| c.trace().re).collect(), Provenance::Vertex);
    Ok(ReducingCertificate {
        basis: x,
        residual,
        compressions,
        vertex,
        direction,
        reducing: residual <= STRUCT_TOL * a.scale(),
    })
}

/// `Q` with `Q* B_j Q` as diagonal as a common unitary allows.
#[derive(Clone, Debug)]
pub struct JointDiagonalization {
    pub unitary: ComplexMatrix,
    /// `diagonals[j]` is the real diagonal of `Q* B_j Q`.
    pub diagonals: Vec<Vec<f64>>,
    /// `√(Σ_j off(Q* B_j Q)²)`.
    pub offdiag_residual: f64,
}

/// Complex Jacobi sweeps. Each plane rotation maximizes the total squared
/// diagonal spread, which is the top eigenvector of a 3×3 real Gram matrix.
pub fn joint_diagonalize(compressions: &[ComplexMatrix], sweeps: usize) -> Result<JointDiagonalization> {
    let first = compressions.first().ok_or(Error::EmptyTuple)?;
    let k = first.rows();
    let mut bs = Vec::with_capacity(compressions.len());
    for (j, b) in compressions.iter().enumerate() {
        if !b.is_square() || b.rows() != k {
            return Err(Error::DimensionMismatch(format!("component {j} is {}x{}, expected {k}x{k}", b.rows(), b.cols())));
        }
        let defect = b.hermitian_defect();
        let allowed = DEFAULT_HERMITIAN_TOL * b.frobenius_norm().max(1.0);
        if defect > allowed {
            return Err(Error::NotHermitian { asymmetry: defect, allowed });
        }
        bs.push(b.symmetrized());
    }
    let mut q = ComplexMatrix::identity(k);
    for _ in 0..sweeps {
        let mut rotated = false;
        for p in 0..k {
            for r in p + 1..k {
                let mut g = [[0.0; 3]; 3];
                for b in &bs {
                    let (bpp, brr, bpr) = (b[(p, p)].re, b[(r, r)].re, b[(p, r)]);
                    let h = [bpp - brr, 2.0 * bpr.re, 2.0 * bpr.im];
                    for (i, row) in g.iter_mut().enumerate() {
                        for (l, x) in row.iter_mut().enumerate() {
                            *x += h[i] * h[l];
                        }
                    }
                }
                let v = top_eigenvector_3(&g);
                let v = if v[0] < 0.0 { [-v[0], -v[1], -v[2]] } else { v };
                let c = ((1.0 + v[0]) / 2.0).sqrt();
                let s_abs = v[1].hypot(v[2]) / (2.0 * c);
                if s_abs <= 1e-15 {
                    continue;
                }
                rotated = true;
                let s = C64::from_polar(s_abs, (-v[2]).atan2(v[1]));
                // U acts on coordinates (p, r) with columns (c, s) and (−s̄, c)
                let cc = C64::new(c, 0.0);
                for b in bs.iter_mut() {
                    for i in 0..k {
                        let (bp, br) = (b[(i, p)], b[(i, r)]);
                        b[(i, p)] = bp * cc + br * s;
                        b[(i, r)] = -bp * s.conj() + br * cc;
                    }
                    for i in 0..k {
                        let (bp, br) = (b[(p, i)], b[(r, i)]);
                        b[(p, i)] = bp * cc + br * s.conj();
                        b[(r, i)] = -bp * s + br * cc;
                    }
                }
                for i in 0..k {
                    let (qp, qr) = (q[(i, p)], q[(i, r)]);
                    q[(i, p)] = qp * cc + qr * s;
                    q[(i, r)] = -qp * s.conj() + qr * cc;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let offdiag_residual = bs.iter().map(|b| b.off_diagonal_norm().powi(2)).sum::<f64>().sqrt();
    let diagonals = bs.iter().map(|b| b.diagonal().iter().map(|z| z.re).collect()).collect();
    Ok(JointDiagonalization { unitary: q, diagonals, offdiag_residual })
}

fn top_eigenvector_3(g: &[[f64; 3]; 3]) -> [f64; 3] {
    let m = ComplexMatrix::from_fn(3, 3, |i, j| C64::new(g[i][j], 0.0));
    let eig = hermitian_eigh(&m, 1e-10).expect("Gram matrix is symmetric");
    let v = eig.vectors.column(0);
    [v[0].re, v[1].re, v[2].re]
}

/// Joint eigenvalue tuples `v(ℓ)` with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct JointSpectrum {
    pub vectors: Vec<Vec<C64>>,
    pub multiplicities: Vec<usize>,
}

impl JointSpectrum {
    /// Joint spectrum of diagonal matrices given by their diagonals, one list
    /// per component.
    pub fn from_diagonals(diagonals: &[Vec<C64>]) -> Result<Self> {
        let first = diagonals.first().ok_or(Error::EmptyTuple)?;
        let n = first.len();
        if let Some(d) = diagonals.iter().find(|d| d.len() != n) {
            return Err(Error::DimensionMismatch(format!("diagonal of length {} next to one of length {n}", d.len())));
        }
        let vectors: Vec<Vec<C64>> = (0..n).map(|l| diagonals.iter().map(|d| d[l]).collect()).collect();
        Ok(Self::merged(vectors, 0.0))
    }

    fn merged(vectors: Vec<Vec<C64>>, radius: f64) -> Self {
        let mut out: Vec<Vec<C64>> = Vec::new();
        let mut mult: Vec<usize> = Vec::new();
        for v in vectors {
            match out.iter().position(|w| cdist(w, &v) <= radius) {
                Some(i) => mult[i] += 1,
                None => {
                    out.push(v);
                    mult.push(1);
                }
            }
        }
        Self { vectors: out, multiplicities: mult }
    }

    /// Number of joint eigenvalues counted with multiplicity.
    pub fn count(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

fn cdist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    c
}

/// All sums of `k` joint eigenvalues with distinct indices, deduplicated to
/// within `1e-12`.
pub fn joint_subset_sums(j: &JointSpectrum, k: usize) -> Result<Vec<Vec<C64>>> {
    let n = j.count();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }
    let count = binomial(n, k);
    if count > SUBSET_CAP {
        return Err(Error::TooManySubsets { count, cap: SUBSET_CAP });
    }
    let m = j.vectors[0].len();
    let mut out: Vec<Vec<C64>> = Vec::new();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let key = |s: &[C64]| s.iter().flat_map(|z| [(z.re * 1e12).round() as i64, (z.im * 1e12).round() as i64]).collect::<Vec<_>>();
    let mut take = vec![0usize; j.vectors.len()];
    fn walk(
        j: &JointSpectrum,
        i: usize,
        left: usize,
        take: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if left == 0 {
            emit(take);
            return;
        }
        if i == j.vectors.len() {
            return;
        }
        let rest: usize = j.multiplicities[i + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for c in (lo..=j.multiplicities[i].min(left)).rev() {
            take[i] = c;
            walk(j, i + 1, left - c, take, emit);
        }
        take[i] = 0;
    }
    walk(j, 0, k, &mut take, &mut |take| {
        let mut s = vec![C64::new(0.0, 0.0); m];
        for (v, &c) in j.vectors.iter().zip(take) {
            for (x, y) in s.iter_mut().zip(v) {
                *x += y * c as f64;
            }
        }
        if seen.insert(key(&s), ()).is_none() {
            out.push(s);
        }
    });
    Ok(out)
}

/// Options for [`certify_commuting_normal_with`].
#[derive(Clone, Copy, Debug)]
pub struct CommuteOptions {
    /// Defect tolerance relative to `scale²`.
    pub tol: f64,
    pub dirs: usize,
    pub seed: u64,
    /// Test every `k = 1..n−1` instead of the central window.
    pub full_sweep: bool,
}

impl CommuteOptions {
    pub fn new(tol: f64, dirs: usize, seed: u64) -> Self {
        Self { tol, dirs, seed, full_sweep: false }
    }
}

#[derive(Clone, Debug)]
pub struct CommutingNormalVerdict {
    pub algebraic: bool,
    pub geometric: bool,
    pub agree: bool,
    pub defects: AlgebraDefects,
    pub certificates: Vec<PolyhedralCertificate>,
    pub joint_spectrum: Option<JointSpectrum>,
}

pub fn certify_commuting_normal(a: &MatrixTuple, tol: f64, dirs: usize, seed: u64) -> Result<CommutingNormalVerdict> {
    certify_commuting_normal_with(a, CommuteOptions::new(tol, dirs, seed))
}

/// Commutator and normality defects against the polyhedrality of
/// `conv W_k` at `k = ⌊n/2⌋, ⌈n/2⌉`.
pub fn certify_commuting_normal_with(a: &MatrixTuple, opts: CommuteOptions) -> Result<CommutingNormalVerdict> {
    let n = a.dim();
    let scale = a.scale();
    let defects = algebra_defects(a.mats())?;
    let algebraic = defects.max_defect() <= opts.tol * scale * scale;
    let h = real_form(a, true)?;
    let ks: Vec<usize> = if opts.full_sweep && n > 1 {
        (1..n).collect()
    } else {
        let mut ks = vec![(n / 2).max(1), n.div_ceil(2)];
        ks.dedup();
        ks
    };
    let mut certificates = Vec::new();
    let mut geometric = opts.full_sweep;
    for k in ks {
        let cert = detect_polyhedral(&h, k, opts.dirs, POLY_TOL, opts.seed)?;
        let poly = cert.is_polyhedral;
        certificates.push(cert);
        if opts.full_sweep {
            geometric &= poly;
        } else if poly {
            geometric = true;
            break;
        }
    }
    let joint_spectrum = if algebraic && geometric { Some(joint_spectrum(a, opts.seed)?) } else { None };
    Ok(CommutingNormalVerdict { algebraic, geometric, agree: algebraic == geometric, defects, certificates, joint_spectrum })
}

/// Joint eigenvalues of a commuting normal tuple from the eigenvectors of a
/// generic real combination of the Hermitian parts, sorted lexicographically.
pub fn joint_spectrum(a: &MatrixTuple, seed: u64) -> Result<JointSpectrum> {
    let h = real_form(a, false)?;
    let u = random_unit_vector(h.len(), &mut task_rng(seed, u64::MAX - 1));
    let eig = hermitian_eigh(&h.combination(&u), DEFAULT_HERMITIAN_TOL)?;
    let n = a.dim();
    let mut vectors: Vec<Vec<C64>> = (0..n)
        .map(|l| {
            let v = eig.vectors.column(l);
            a.mats()
                .iter()
                .map(|m| v.iter().zip(m.mul_vec(&v)).map(|(x, y)| x.conj() * y).sum())
                .collect()
        })
        .collect();
    vectors.sort_by(|x: &Vec<C64>, y| {
        x.iter().flat_map(|z| [z.re, z.im]).partial_cmp(y.iter().flat_map(|z| [z.re, z.im])).unwrap()
    });
    Ok(JointSpectrum::merged(vectors, 1e-8 * a.scale()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_hermitian, random_unitary};
    use crate::model::pauli;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eigenspace_reduces_a_single_hermitian() {
        let t = HermitianTuple::new(vec![ComplexMatrix::from_real_diag(&[2.0, 1.0, 0.0])]).unwrap();
        let r = reducing_subspace_at(&t, 1, &[1.0], 1e-8).unwrap();
        assert!(r.residual <= 1e-12);
        assert!(r.reducing);
        assert!((r.basis[(0, 0)].norm() - 1.0).abs() < 1e-14);
        assert_eq!(r.vertex.coords, vec![2.0]);
    }

    #[test]
    fn block_vertex_is_reducing() {
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        let d = ComplexMatrix::from_diag(&[c(1.0, 0.0), w, w * w]);
        let j = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let h = real_form(&MatrixTuple::new(vec![d.block_diag(&j)]).unwrap(), true).unwrap();
        let r = reducing_subspace_at(&h, 1, &[1.0, 0.0], 1e-8).unwrap();
        assert!(r.residual <= 1e-10);
        assert!((r.compressions[0][(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(r.compressions[1][(0, 0)].norm() < 1e-12);
    }

    #[test]
    fn jordan_point_is_not_reducing() {
        let j = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let h = real_form(&MatrixTuple::new(vec![j]).unwrap(), true).unwrap();
        let r = reducing_subspace_at(&h, 1, &[1.0, 0.0], 1e-8).unwrap();
        assert!((r.residual - 0.5).abs() < 1e-12);
        assert!(!r.reducing);
        assert!((r.vertex.coords[0] - 0.5).abs() < 1e-12 && r.vertex.coords[1].abs() < 1e-12);
    }

    #[test]
    fn degenerate_gap_is_an_error() {
        let t = HermitianTuple::new(vec![ComplexMatrix::identity(2)]).unwrap();
        assert!(matches!(reducing_subspace_at(&t, 1, &[1.0], 1e-8), Err(Error::DegenerateGap { .. })));
    }

    #[test]
    fn diagonal_pair_needs_no_rotation() {
        let b = vec![ComplexMatrix::from_real_diag(&[1.0, 2.0]), ComplexMatrix::from_real_diag(&[3.0, -1.0])];
        let jd = joint_diagonalize(&b, 10).unwrap();
        assert_eq!(jd.offdiag_residual, 0.0);
        assert_eq!(jd.unitary, ComplexMatrix::identity(2));
        assert_eq!(jd.diagonals, vec![vec![1.0, 2.0], vec![3.0, -1.0]]);
    }

    #[test]
    fn commuting_conjugated_pair_is_diagonalized() {
        let mut rng = task_rng(4, 0);
        let u = random_unitary(4, &mut rng);
        let d1 = ComplexMatrix::from_real_diag(&[2.0, 0.0, 1.0, -1.0]);
        let d2 = ComplexMatrix::from_real_diag(&[2.0, 0.0, 0.0, 3.0]);
        let b: Vec<ComplexMatrix> = [d1, d2].iter().map(|d| u.matmul(d).matmul(&u.adjoint())).collect();
        let jd = joint_diagonalize(&b, DEFAULT_SWEEPS).unwrap();
        assert!(jd.offdiag_residual <= 1e-10, "{}", jd.offdiag_residual);
        let mut pairs: Vec<(f64, f64)> = (0..4).map(|i| (jd.diagonals[0][i], jd.diagonals[1][i])).collect();
        pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let want = [(-1.0, 3.0), (0.0, 0.0), (1.0, 0.0), (2.0, 2.0)];
        for (p, w) in pairs.iter().zip(want) {
            assert!((p.0 - w.0).abs() < 1e-10 && (p.1 - w.1).abs() < 1e-10, "{pairs:?}");
        }
    }

    #[test]
    fn jacobi_never_increases_offdiagonal_mass() {
        let mut rng = task_rng(8, 0);
        let b: Vec<ComplexMatrix> = (0..3).map(|_| random_hermitian(5, &mut rng)).collect();
        let before = b.iter().map(|m| m.off_diagonal_norm().powi(2)).sum::<f64>().sqrt();
        let jd = joint_diagonalize(&b, DEFAULT_SWEEPS).unwrap();
        assert!(jd.offdiag_residual <= before);
        let q = &jd.unitary;
        assert!((&q.adjoint().matmul(q) - &ComplexMatrix::identity(5)).frobenius_norm() < 1e-12);
        for (m, d) in b.iter().zip(&jd.diagonals) {
            let r = q.adjoint().matmul(m).matmul(q);
            for i in 0..5 {
                assert!((r[(i, i)].re - d[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn subset_sums() {
        let line = |v: &[f64]| JointSpectrum::from_diagonals(&[v.iter().map(|&x| c(x, 0.0)).collect()]).unwrap();
        let mut s: Vec<f64> = joint_subset_sums(&line(&[1.0, 2.0, 4.0]), 2).unwrap().iter().map(|v| v[0].re).collect();
        s.sort_by(f64::total_cmp);
        assert_eq!(s, vec![3.0, 5.0, 6.0]);
        assert_eq!(joint_subset_sums(&line(&[1.0, 2.0, 4.0]), 3).unwrap(), vec![vec![c(7.0, 0.0)]]);
        let mut z: Vec<f64> = joint_subset_sums(&line(&[1.0, -1.0]), 1).unwrap().iter().map(|v| v[0].re).collect();
        z.sort_by(f64::total_cmp);
        assert_eq!(z, vec![-1.0, 1.0]);
        let repeated = line(&[1.0, 1.0, 0.0]);
        assert_eq!(repeated.multiplicities, vec![2, 1]);
        assert_eq!(joint_subset_sums(&repeated, 2).unwrap().len(), 2);
        assert!(matches!(joint_subset_sums(&line(&[0.0; 40]), 20), Err(Error::TooManySubsets { .. })));
        assert!(matches!(joint_subset_sums(&line(&[0.0; 3]), 4), Err(Error::KOutOfRange { .. })));
    }

    #[test]
    fn commuting_diagonal_tuple_is_certified() {
        let a = MatrixTuple::new(vec![
            ComplexMatrix::from_real_diag(&[1.0, 2.0, -1.0, 0.5]),
            ComplexMatrix::from_diag(&[c(0.0, 1.0), c(1.0, 0.0), c(2.0, -1.0), c(0.0, 0.0)]),
        ])
        .unwrap();
        let v = certify_commuting_normal(&a, 1e-10, 128, 0).unwrap();
        assert!(v.algebraic && v.geometric && v.agree);
        let js = v.joint_spectrum.unwrap();
        assert_eq!(js.count(), 4);
        assert!(js.vectors.iter().any(|p| cdist(p, &[c(2.0, 0.0), c(1.0, 0.0)]) < 1e-10));
    }

    #[test]
    fn pauli_pair_is_rejected_twice() {
        let p = pauli();
        let a = MatrixTuple::new(vec![p[0].clone(), p[2].clone()]).unwrap();
        let v = certify_commuting_normal(&a, 1e-10, 128, 0).unwrap();
        assert!(!v.algebraic && !v.geometric && v.agree);
        assert!(v.joint_spectrum.is_none());
    }

    #[test]
    fn jordan_corner_breaks_central_polyhedrality() {
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        let j = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let tail: Vec<C64> = (0..3).flat_map(|_| [c(1.0, 0.0), w, w * w]).collect();
        let a = MatrixTuple::new(vec![j.block_diag(&ComplexMatrix::from_diag(&tail))]).unwrap();
        let v = certify_commuting_normal(&a, 1e-10, 128, 0).unwrap();
        assert!(!v.algebraic && !v.geometric && v.agree);
        let h = real_form(&a, true).unwrap();
        assert!(detect_polyhedral(&h, 1, 128, POLY_TOL, 0).unwrap().is_polyhedral);
    }
}
