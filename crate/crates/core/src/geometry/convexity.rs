//! Numerical convexity probe for `W_k`.
//!
//! Certifies convexity where the affine dimension forces it. Otherwise it
//! searches for a pair of range points whose midpoint cannot be realized as
//! `(tr X*H_1X, …)` by any isometry `X`. Realization is a damped least-squares
//! solve on the Grassmannian started from nearby sample isometries.

use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::random::{haar_isometry, task_rng};
use crate::linalg::real::{distance, solve};
use crate::linalg::{orthogonal_complement, orthonormalize_columns, ComplexMatrix, C64};
use crate::model::{affine_dimension, HermitianTuple, Provenance};
use crate::range::sample_isometries;

use super::MEMBERSHIP_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvexityStatus {
    CertifiedConvex,
    EmpiricallyConvex,
    Nonconvex,
}

/// Two range points whose midpoint stays `margin` away from every realized point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvexityWitness {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub midpoint: Vec<f64>,
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvexityVerdict {
    pub status: ConvexityStatus,
    pub witness: Option<ConvexityWitness>,
    pub affine_dim: usize,
    pub reason: String,
    pub pairs_tested: usize,
}

/// Tuning knobs of [`convexity_probe_with`].
#[derive(Clone, Debug)]
pub struct ProbeOptions {
    pub samples: usize,
    pub seed: u64,
    /// Midpoints handed to the realization solver.
    pub pairs: usize,
    /// Fresh random starts per midpoint, on top of the nearest samples.
    pub starts: usize,
    pub nearest_starts: usize,
    pub max_boundary: usize,
    pub random_pairs: usize,
    pub iterations: usize,
    /// Nonconvexity threshold relative to the tuple scale.
    pub margin_tol: f64,
}

impl ProbeOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            pairs: 24,
            starts: 6,
            nearest_starts: 4,
            max_boundary: 150,
            random_pairs: 2000,
            iterations: 200,
            margin_tol: 10.0 * MEMBERSHIP_TOL,
        }
    }
}

pub fn convexity_probe(a: &HermitianTuple, k: usize, samples: usize, seed: u64) -> Result<ConvexityVerdict> {
    convexity_probe_with(a, k, &ProbeOptions::new(samples, seed))
}

pub fn convexity_probe_with(a: &HermitianTuple, k: usize, opts: &ProbeOptions) -> Result<ConvexityVerdict> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }
    let q = affine_dimension(&a.as_matrix_tuple())?.q;
    let certified = |reason: &str| ConvexityVerdict {
        status: ConvexityStatus::CertifiedConvex,
        witness: None,
        affine_dim: q,
        reason: reason.to_string(),
        pairs_tested: 0,
    };
    if k == n {
        return Ok(certified("k = n: the range is the single trace point"));
    }
    if q <= 2 {
        return Ok(certified("affine dimension at most 2: the range is the k-numerical range of one matrix"));
    }
    if q == 3 && n >= 3 {
        return Ok(certified("affine dimension 3 on a space of dimension at least 3"));
    }

    let threshold = opts.margin_tol * a.scale();
    let cloud = sample_isometries(a, k, opts.samples, opts.seed)?;
    let coords: Vec<Vec<f64>> = cloud.iter().map(|(p, _)| p.coords.clone()).collect();
    let boundary: Vec<usize> = {
        let all: Vec<usize> = (0..cloud.len()).filter(|&i| cloud[i].0.provenance == Provenance::Boundary).collect();
        let stride = all.len().div_ceil(opts.max_boundary.max(1)).max(1);
        all.into_iter().step_by(stride).collect()
    };
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (x, &i) in boundary.iter().enumerate() {
        for &j in &boundary[x + 1..] {
            pairs.push((i, j));
        }
    }
    let mut rng = task_rng(opts.seed, 1 << 40);
    if coords.len() >= 2 {
        for _ in 0..opts.random_pairs {
            let ij = sample(&mut rng, coords.len(), 2);
            pairs.push((ij.index(0), ij.index(1)));
        }
    }
    let midpoint = |(i, j): (usize, usize)| -> Vec<f64> { coords[i].iter().zip(&coords[j]).map(|(x, y)| 0.5 * (x + y)).collect() };
    // rank midpoints by how far they sit from the cloud
    let mut ranked: Vec<((usize, usize), f64)> = pairs
        .par_iter()
        .map(|&pq| {
            let m = midpoint(pq);
            (pq, coords.iter().map(|c| distance(c, &m)).fold(f64::INFINITY, f64::min))
        })
        .filter(|(_, d)| *d > threshold)
        .collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for (pq, _) in ranked {
        if chosen.len() >= opts.pairs {
            break;
        }
        let m = midpoint(pq);
        if chosen.iter().all(|&c| distance(&midpoint(c), &m) > threshold) {
            chosen.push(pq);
        }
    }

    let margin_of = |pq: (usize, usize), tag: u64, fresh: usize, near: usize| -> f64 {
        let target = midpoint(pq);
        let mut order: Vec<usize> = (0..coords.len()).collect();
        order.sort_by(|&x, &y| distance(&coords[x], &target).total_cmp(&distance(&coords[y], &target)));
        let mut starts: Vec<ComplexMatrix> = order.iter().take(near).map(|&i| cloud[i].1.clone()).collect();
        starts.push(cloud[pq.0].1.clone());
        starts.push(cloud[pq.1].1.clone());
        let mut rng = task_rng(opts.seed ^ tag, (pq.0 * coords.len() + pq.1) as u64);
        starts.extend((0..fresh).map(|_| haar_isometry(n, k, &mut rng)));
        realize_point(a, &target, &starts, opts.iterations, threshold / 10.0).0
    };
    let mut margins: Vec<((usize, usize), f64)> =
        chosen.par_iter().map(|&pq| (pq, margin_of(pq, 0x1, opts.starts, opts.nearest_starts))).collect();
    margins.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let tested = margins.len();
    for &(pq, margin) in margins.iter().take(3) {
        if margin <= threshold {
            break;
        }
        let again = margin_of(pq, 0x2, 2 * opts.starts, 2 * opts.nearest_starts);
        if again > threshold && again >= 0.5 * margin {
            let witness = ConvexityWitness {
                p: coords[pq.0].clone(),
                q: coords[pq.1].clone(),
                midpoint: midpoint(pq),
                margin: again.min(margin),
            };
            return Ok(ConvexityVerdict {
                status: ConvexityStatus::Nonconvex,
                witness: Some(witness),
                affine_dim: q,
                reason: "a midpoint of two range points could not be realized".into(),
                pairs_tested: tested,
            });
        }
    }
    Ok(ConvexityVerdict {
        status: ConvexityStatus::EmpiricallyConvex,
        witness: None,
        affine_dim: q,
        reason: format!("all {tested} tested midpoints were realized"),
        pairs_tested: tested,
    })
}

/// Closest realized point to `target` found by damped Gauss–Newton from
/// each start. Returns the distance and the best isometry.
pub fn realize_point(
    a: &HermitianTuple,
    target: &[f64],
    starts: &[ComplexMatrix],
    iterations: usize,
    stop: f64,
) -> (f64, ComplexMatrix) {
    let mut best = (f64::INFINITY, starts[0].clone());
    for x0 in starts {
        let (d, x) = refine(a, target, x0, iterations, stop);
        if d < best.0 {
            best = (d, x);
        }
        if best.0 <= stop {
            break;
        }
    }
    best
}

fn residual(a: &HermitianTuple, x: &ComplexMatrix, target: &[f64]) -> (Vec<f64>, f64) {
    let r: Vec<f64> = a.coords_of(x).iter().zip(target).map(|(p, t)| p - t).collect();
    let f = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    (r, f)
}

fn refine(a: &HermitianTuple, target: &[f64], x0: &ComplexMatrix, iterations: usize, stop: f64) -> (f64, ComplexMatrix) {
    let (n, k, d) = (x0.rows(), x0.cols(), a.len());
    let mut x = x0.clone();
    let (mut r, mut f) = residual(a, &x, target);
    if n == k {
        return (f, x);
    }
    let p = 2 * k * (n - k);
    let mut mu = 1e-3 * a.scale() * a.scale();
    for _ in 0..iterations {
        if f <= stop {
            break;
        }
        let xp = orthogonal_complement(&x);
        let xa = x.adjoint();
        // J[j][2(b k + c)] = 2 Re M_j[c, b], J[j][2(b k + c) + 1] = −2 Im M_j[c, b], M_j = X* H_j X⊥
        let jac: Vec<Vec<f64>> = a
            .mats()
            .iter()
            .map(|h| {
                let m = xa.matmul(&h.matmul(&xp));
                let mut row = vec![0.0; p];
                for b in 0..n - k {
                    for c in 0..k {
                        let z = m[(c, b)];
                        row[2 * (b * k + c)] = 2.0 * z.re;
                        row[2 * (b * k + c) + 1] = -2.0 * z.im;
                    }
                }
                row
            })
            .collect();
        let jjt: Vec<f64> = (0..d * d).map(|e| jac[e / d].iter().zip(&jac[e % d]).map(|(s, t)| s * t).sum()).collect();
        let mut accepted = false;
        for _ in 0..12 {
            let mut sys = jjt.clone();
            for i in 0..d {
                sys[i * d + i] += mu;
            }
            let Some(y) = solve(&sys, &r) else {
                mu *= 10.0;
                continue;
            };
            let delta: Vec<f64> = (0..p).map(|c| -(0..d).map(|j| jac[j][c] * y[j]).sum::<f64>()).collect();
            let z = ComplexMatrix::from_fn(n - k, k, |b, c| C64::new(delta[2 * (b * k + c)], delta[2 * (b * k + c) + 1]));
            let cand = orthonormalize_columns(&(&x + &xp.matmul(&z)));
            let (rc, fc) = residual(a, &cand, target);
            if fc < f && (0..k).all(|c| cand.column(c).iter().any(|v| v.norm() > 0.0)) {
                x = cand;
                r = rc;
                f = fc;
                mu = (mu / 3.0).max(1e-14 * a.scale() * a.scale());
                accepted = true;
                break;
            }
            mu *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    (f, x)
}
