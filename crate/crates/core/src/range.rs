//! Evaluation of `W_k`: support values, boundary points, inner samples and
//! outer half-space hulls.
//!
//! For a Hermitian tuple `H` and a unit direction `u` the support function of
//! `conv W_k(H)` is `h_k(u) = λ_1(H_u) + … + λ_k(H_u)` with `H_u = Σ u_j H_j`,
//! and the projection onto the top-k eigenvectors of `H_u` realizes it.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::random::{haar_isometry, random_unit_vector, task_rng};
use crate::linalg::{hermitian_eigh, hermitian_eigvals, ComplexMatrix, C64, DEFAULT_HERMITIAN_TOL};
use crate::model::{HermitianTuple, Provenance, RangePoint};

/// Relative spectral gap below which a support point is treated as a face.
pub const GAP_TOL: f64 = 1e-8;
/// Size of the tie-break perturbation inside a degenerate eigenspace.
pub const TIEBREAK_EPS: f64 = 1e-6;

/// One evaluation of the support function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupportSample {
    pub u: Vec<f64>,
    pub value: f64,
    pub point: Option<RangePoint>,
    /// `λ_k(H_u) − λ_{k+1}(H_u)`, infinite when `k = n`.
    pub gap: f64,
    /// Dimension of the set of maximizing projections; zero for an exposed point.
    pub face_dim: usize,
}

/// Half-space `{x : ⟨u, x⟩ ≤ h}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub u: Vec<f64>,
    pub h: f64,
}

impl HalfSpace {
    /// Signed amount by which `x` lies outside.
    pub fn violation(&self, x: &[f64]) -> f64 {
        self.u.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - self.h
    }
}

/// Points of `W_k` drawn from random isometries and boundary directions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InnerCloud {
    pub k: usize,
    pub points: Vec<RangePoint>,
    pub seed: u64,
}

impl InnerCloud {
    pub fn coords(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.coords.clone()).collect()
    }
}

fn check_k(a: &HermitianTuple, k: usize) -> Result<()> {
    if k == 0 || k > a.dim() {
        return Err(Error::KOutOfRange { k, max: a.dim() });
    }
    Ok(())
}

fn unit(a: &HermitianTuple, u: &[f64]) -> Result<Vec<f64>> {
    if u.len() != a.len() {
        return Err(Error::ShapeMismatch(format!("direction of dimension {} for a {}-component tuple", u.len(), a.len())));
    }
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::InvalidArgument("direction must be a nonzero finite vector".into()));
    }
    Ok(u.iter().map(|x| x / norm).collect())
}

/// `h_k(u)` together with the spectral gap. A boundary point is attached when
/// the gap exceeds `GAP_TOL·scale`.
pub fn support_value(a: &HermitianTuple, k: usize, u: &[f64]) -> Result<SupportSample> {
    check_k(a, k)?;
    let u = unit(a, u)?;
    let gap_tol = GAP_TOL * a.scale();
    let eig = hermitian_eigh(&a.combination(&u), DEFAULT_HERMITIAN_TOL)?;
    let gap = eig.gap(k);
    let value = eig.top_sum(k);
    let point = (gap > gap_tol).then(|| {
        let x = eig.vectors.columns(0, k);
        RangePoint::new(a.coords_of(&x), Provenance::Boundary)
    });
    Ok(SupportSample { u, value, point, gap, face_dim: 0 })
}

/// Boundary point maximizing `⟨u, ·⟩` over `W_k`.
///
/// When the gap at position k is at most `gap_tol` the maximizers form a
/// face. The representative is then chosen inside the degenerate eigenspace
/// by maximizing a fixed sequence of tie-break directions: the normalized
/// all-ones vector followed by the coordinate axes.
pub fn boundary_face(a: &HermitianTuple, k: usize, u: &[f64], gap_tol: f64) -> Result<SupportSample> {
    face_isometry(a, k, u, gap_tol).map(|(s, _)| s)
}

/// [`boundary_face`] together with the isometry realizing the point.
pub(crate) fn face_isometry(a: &HermitianTuple, k: usize, u: &[f64], gap_tol: f64) -> Result<(SupportSample, ComplexMatrix)> {
    check_k(a, k)?;
    let u = unit(a, u)?;
    let eig = hermitian_eigh(&a.combination(&u), DEFAULT_HERMITIAN_TOL)?;
    let n = a.dim();
    let gap = eig.gap(k);
    let value = eig.top_sum(k);
    if gap > gap_tol {
        let x = eig.vectors.columns(0, k);
        let point = RangePoint::new(a.coords_of(&x), Provenance::Boundary);
        return Ok((SupportSample { u, value, point: Some(point), gap, face_dim: 0 }, x));
    }
    let vals = &eig.values;
    let mut lo = k - 1;
    while lo > 0 && vals[lo - 1] - vals[lo] <= gap_tol {
        lo -= 1;
    }
    let mut hi = k;
    while hi < n && vals[hi - 1] - vals[hi] <= gap_tol {
        hi += 1;
    }
    let need = k - lo;
    let face_dim = need * (hi - k);
    let settled = eig.vectors.columns(0, lo);
    let cluster = eig.vectors.columns(lo, hi);
    let chosen = tiebreak(a, &cluster, need, gap_tol);
    let x = hstack(&settled, &chosen);
    let point = RangePoint::new(a.coords_of(&x), Provenance::Boundary);
    Ok((SupportSample { u, value, point: Some(point), gap, face_dim }, x))
}

fn tiebreak(a: &HermitianTuple, cluster: &ComplexMatrix, need: usize, gap_tol: f64) -> ComplexMatrix {
    let d = a.len();
    let ones = vec![1.0 / (d as f64).sqrt(); d];
    let axes = (0..d).map(|i| {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        e
    });
    let mut basis = cluster.clone();
    let mut settled = ComplexMatrix::zeros(cluster.rows(), 0);
    let mut need = need;
    for t in std::iter::once(ones).chain(axes) {
        if need == 0 || need == basis.cols() {
            break;
        }
        let c = a.combination(&t).scale_real(TIEBREAK_EPS).compress(&basis).symmetrized();
        let Ok(eig) = hermitian_eigh(&c, DEFAULT_HERMITIAN_TOL) else { break };
        let sub = &eig.values;
        let tol = gap_tol * TIEBREAK_EPS;
        let mut lo = need - 1;
        while lo > 0 && sub[lo - 1] - sub[lo] <= tol {
            lo -= 1;
        }
        let mut hi = need;
        while hi < sub.len() && sub[hi - 1] - sub[hi] <= tol {
            hi += 1;
        }
        let rotated = basis.matmul(&eig.vectors);
        settled = hstack(&settled, &rotated.columns(0, lo));
        basis = rotated.columns(lo, hi);
        need -= lo;
    }
    hstack(&settled, &basis.columns(0, need))
}

fn hstack(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let ca = a.cols();
    ComplexMatrix::from_fn(a.rows(), ca + b.cols(), |i, j| if j < ca { a[(i, j)] } else { b[(i, j - ca)] })
}

/// `h_k(u)` for every direction, evaluated in parallel.
pub fn support_function(a: &HermitianTuple, k: usize, dirs: &[Vec<f64>]) -> Result<Vec<f64>> {
    check_k(a, k)?;
    dirs.par_iter().map(|u| Ok(top_sums(a, u)?[k])).collect()
}

/// All partial sums `h_0(u) = 0, h_1(u), …, h_n(u)` in one eigenvalue solve.
pub fn top_sums(a: &HermitianTuple, u: &[f64]) -> Result<Vec<f64>> {
    let u = unit(a, u)?;
    let vals = hermitian_eigvals(&a.combination(&u), DEFAULT_HERMITIAN_TOL)?;
    let mut out = Vec::with_capacity(vals.len() + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for v in vals {
        acc += v;
        out.push(acc);
    }
    Ok(out)
}

/// Inner sample of `W_k`: `count − count/10` Haar isometries plus boundary
/// points from `count/10` random directions.
pub fn sample_inner(a: &HermitianTuple, k: usize, count: usize, seed: u64) -> Result<InnerCloud> {
    let points = sample_isometries(a, k, count, seed)?.into_iter().map(|(p, _)| p).collect();
    Ok(InnerCloud { k, points, seed })
}

/// Inner sample with the isometry behind every point.
pub(crate) fn sample_isometries(a: &HermitianTuple, k: usize, count: usize, seed: u64) -> Result<Vec<(RangePoint, ComplexMatrix)>> {
    check_k(a, k)?;
    let n_boundary = count / 10;
    let n_haar = count - n_boundary;
    let gap_tol = GAP_TOL * a.scale();
    let mut points: Vec<(RangePoint, ComplexMatrix)> = (0..n_haar)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(seed, i as u64);
            let x = haar_isometry(a.dim(), k, &mut rng);
            (RangePoint::new(a.coords_of(&x), Provenance::InnerSample), x)
        })
        .collect();
    let dirs = directions(a.len(), n_boundary, seed ^ 0x5eed_b0da);
    let faces: Vec<(RangePoint, ComplexMatrix)> = dirs
        .par_iter()
        .map(|u| face_isometry(a, k, u, gap_tol).map(|(s, x)| (s.point.expect("faces always carry a point"), x)))
        .collect::<Result<_>>()?;
    points.extend(faces);
    Ok(points)
}

/// Realizes the trace point of one explicit isometry.
pub fn point_of_isometry(a: &HermitianTuple, x: &ComplexMatrix) -> RangePoint {
    RangePoint::new(a.coords_of(x), Provenance::InnerSample)
}

/// One supporting half-space of `conv W_k` per direction.
pub fn outer_polytope(a: &HermitianTuple, k: usize, dirs: &[Vec<f64>]) -> Result<Vec<HalfSpace>> {
    if dirs.is_empty() {
        return Err(Error::InvalidArgument("outer polytope needs at least one direction".into()));
    }
    let values = support_function(a, k, dirs)?;
    dirs.iter()
        .zip(values)
        .map(|(u, h)| Ok(HalfSpace { u: unit(a, u)?, h }))
        .collect()
}

/// `count` unit directions in real d-space.
///
/// d = 1 gives `+1, −1` and nothing more; d = 2 uses equally spaced angles with a seeded
/// offset; d = 3 a Fibonacci lattice under a seeded rotation; d ≥ 4 normalized
/// Gaussians.
pub fn directions(d: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = task_rng(seed, u64::MAX);
    match d {
        0 => Vec::new(),
        1 => [1.0, -1.0].into_iter().take(count).map(|x| vec![x]).collect(),
        2 => {
            let offset: f64 = rng.random::<f64>() * 2.0 * PI / count.max(1) as f64;
            (0..count)
                .map(|i| {
                    let t = offset + 2.0 * PI * i as f64 / count as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect()
        }
        3 => {
            let r = random_rotation3(&mut rng);
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|i| {
                    let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    let t = golden * i as f64;
                    let p = [rho * t.cos(), rho * t.sin(), z];
                    (0..3).map(|row| (0..3).map(|c| r[row][c] * p[c]).sum()).collect()
                })
                .collect()
        }
        _ => (0..count).map(|_| random_unit_vector(d, &mut rng)).collect(),
    }
}

fn random_rotation3<R: Rng + ?Sized>(rng: &mut R) -> [[f64; 3]; 3] {
    let a = random_unit_vector(3, rng);
    let mut b = random_unit_vector(3, rng);
    let p: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    b.iter_mut().zip(&a).for_each(|(y, x)| *y -= p * x);
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nb < 1e-8 {
        return [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    }
    b.iter_mut().for_each(|x| *x /= nb);
    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    [[a[0], b[0], c[0]], [a[1], b[1], c[1]], [a[2], b[2], c[2]]]
}

/// Spectral norm bound `k·Σ_j ‖H_j‖_2` on every point of `W_k`.
pub fn norm_bound(a: &HermitianTuple, k: usize) -> Result<f64> {
    let mut total = 0.0;
    for h in a.mats() {
        let vals = hermitian_eigvals(h, DEFAULT_HERMITIAN_TOL)?;
        total += vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    }
    Ok(k as f64 * total)
}

/// Complex point of a tuple from real coordinates in its layout.
pub fn complex_point(a: &HermitianTuple, p: &RangePoint) -> Vec<C64> {
    a.complex_coords(&p.coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{pauli, real_form, MatrixTuple};

    fn pauli3() -> HermitianTuple {
        HermitianTuple::new(pauli().to_vec()).unwrap()
    }

    fn diag(v: &[f64]) -> HermitianTuple {
        HermitianTuple::new(vec![ComplexMatrix::from_real_diag(v)]).unwrap()
    }

    #[test]
    fn support_values_of_diagonals() {
        let z = HermitianTuple::new(vec![pauli()[2].clone()]).unwrap();
        assert_eq!(support_value(&z, 1, &[1.0]).unwrap().value, 1.0);
        assert_eq!(support_value(&z, 2, &[1.0]).unwrap().value, 0.0);
        let d = diag(&[3.0, 1.0, 0.0]);
        assert_eq!(support_value(&d, 2, &[1.0]).unwrap().value, 4.0);
        assert_eq!(support_value(&d, 2, &[-1.0]).unwrap().value, -1.0);
        assert!(matches!(support_value(&d, 4, &[1.0]), Err(Error::KOutOfRange { k: 4, max: 3 })));
        assert!(matches!(support_value(&d, 0, &[1.0]), Err(Error::KOutOfRange { .. })));
    }

    #[test]
    fn pauli_pole() {
        let s = boundary_face(&pauli3(), 1, &[0.0, 0.0, 1.0], 1e-8).unwrap();
        let p = s.point.unwrap().coords;
        assert!(p.iter().zip([0.0, 0.0, 1.0]).all(|(a, b)| (a - b).abs() < 1e-14));
        assert!((s.gap - 2.0).abs() < 1e-14);
        assert_eq!(s.face_dim, 0);
    }

    #[test]
    fn degenerate_face_is_flagged() {
        let s = boundary_face(&diag(&[1.0, 1.0, 0.0]), 1, &[1.0], 1e-8).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.gap, 0.0);
        assert!(s.face_dim > 0);
        assert!((s.point.unwrap().coords[0] - 1.0).abs() < 1e-15);
        assert!(support_value(&diag(&[1.0, 1.0, 0.0]), 1, &[1.0]).unwrap().point.is_none());
    }

    #[test]
    fn jordan_block_boundary_point() {
        let j = MatrixTuple::new(vec![ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])]).unwrap();
        let h = real_form(&j, true).unwrap();
        let s = boundary_face(&h, 1, &[1.0, 0.0], 1e-8).unwrap();
        let p = s.point.unwrap().coords;
        assert!((p[0] - 0.5).abs() < 1e-15 && p[1].abs() < 1e-15);
        assert!((s.gap - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tiebreak_picks_a_face_point_on_the_plane() {
        // the top eigenspace of the first component is two-dimensional and the
        // second component separates it
        let a = HermitianTuple::new(vec![
            ComplexMatrix::from_real_diag(&[1.0, 1.0, 0.0]),
            ComplexMatrix::from_real_diag(&[0.0, 2.0, 5.0]),
        ])
        .unwrap();
        let s = boundary_face(&a, 1, &[1.0, 0.0], 1e-8).unwrap();
        assert_eq!(s.point.unwrap().coords, vec![1.0, 2.0]);
    }

    #[test]
    fn sphere_samples() {
        let cloud = sample_inner(&pauli3(), 1, 500, 7).unwrap();
        assert_eq!(cloud.points.len(), 500);
        for p in &cloud.points {
            let r = p.coords.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((r - 1.0).abs() < 1e-12);
        }
        let again = sample_inner(&pauli3(), 1, 500, 7).unwrap();
        assert_eq!(cloud.coords(), again.coords());
    }

    #[test]
    fn zero_tuple_samples_are_zero() {
        let z = HermitianTuple::new(vec![ComplexMatrix::zeros(3, 3); 2]).unwrap();
        let cloud = sample_inner(&z, 2, 50, 1).unwrap();
        assert!(cloud.points.iter().all(|p| p.coords.iter().all(|&x| x == 0.0)));
    }

    #[test]
    fn interval_samples_reach_both_ends() {
        let cloud = sample_inner(&diag(&[3.0, 1.0, 0.0]), 2, 2000, 3).unwrap();
        let xs: Vec<f64> = cloud.points.iter().map(|p| p.coords[0]).collect();
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(lo >= 1.0 - 1e-12 && hi <= 4.0 + 1e-12);
        assert!(lo < 1.05 && hi > 3.95);
    }

    #[test]
    fn outer_polytopes() {
        let xy = HermitianTuple::new(pauli()[..2].to_vec()).unwrap();
        let axes = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]];
        let square = outer_polytope(&xy, 1, &axes).unwrap();
        assert!(square.iter().all(|hs| (hs.h - 1.0).abs() < 1e-14));
        let slab = outer_polytope(&diag(&[1.0, 2.0, 4.0]), 2, &[vec![1.0], vec![-1.0]]).unwrap();
        assert_eq!(slab[0].h, 6.0);
        assert_eq!(slab[1].h, -3.0);
        assert!(outer_polytope(&xy, 1, &[]).is_err());
    }

    #[test]
    fn direction_sets_are_unit_and_reproducible() {
        for d in 1..6 {
            let dirs = directions(d, 37, 11);
            assert_eq!(dirs.len(), if d == 1 { 2 } else { 37 });
            for u in &dirs {
                assert!((u.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() < 1e-12);
            }
            assert_eq!(dirs, directions(d, 37, 11));
        }
    }

    #[test]
    fn top_sums_are_partial_sums() {
        let s = top_sums(&diag(&[1.0, 2.0, 4.0]), &[1.0]).unwrap();
        assert_eq!(s, vec![0.0, 4.0, 6.0, 7.0]);
    }
}
