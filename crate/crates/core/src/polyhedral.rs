//! Polyhedrality of `conv W_k` from support data, with vertex and conical
//! point extraction.
//!
//! Vertices are collected as exposed boundary points over a direction sweep
//! and checked against the true support function on a fresh sweep. A polytope
//! that merely lost a vertex with a thin normal cone shows violations in few
//! directions, and the violating boundary points are added and rechecked. A
//! curved boundary violates almost everywhere, and even once the sweeps are
//! dense enough to hide the violations, every fresh direction still exposes a
//! point not seen before.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{extreme_points, hull_2d, hull_3d, HullKind};
use crate::linalg::real::{distance, dot, norm, rank};
use crate::model::{HermitianTuple, Provenance, RangePoint};
use crate::range::{boundary_face, directions, GAP_TOL};

pub const POLY_TOL: f64 = 1e-6;
pub const CLUSTER_RADIUS: f64 = 1e-7;
pub const NORMAL_RANK_CUTOFF: f64 = 1e-8;
const MAX_ROUNDS: usize = 8;
const MAX_COMPLETION_PASSES: usize = 64;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyhedralCertificate {
    pub k: usize,
    pub vertices: Vec<RangePoint>,
    /// `max_u (h_k(u) − max_v ⟨u, v⟩)` over the final test sweep.
    pub support_gap: f64,
    pub is_polyhedral: bool,
    pub normals_per_vertex: Vec<Vec<Vec<f64>>>,
    /// Absolute thresholds used for the verdict and the clustering.
    pub tol: f64,
    pub cluster_radius: f64,
    pub dirs: usize,
    pub rounds: usize,
    /// Points of the final sweep farther than `cluster_radius` from all earlier ones.
    pub fresh_points: usize,
}

/// Sweeps `dirs` directions, clusters boundary points into candidate
/// vertices and tests the candidates on fresh sweeps. `tol` is relative to
/// the tuple scale.
pub fn detect_polyhedral(a: &HermitianTuple, k: usize, dirs: usize, tol: f64, seed: u64) -> Result<PolyhedralCertificate> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }
    if dirs == 0 {
        return Err(Error::InvalidArgument("polyhedrality needs at least one direction".into()));
    }
    let scale = a.scale();
    let abs_tol = tol * scale;
    let radius = CLUSTER_RADIUS * scale;
    let gap_tol = GAP_TOL * scale;
    let d = a.len();

    let faces = |dirs: &[Vec<f64>]| -> Result<Vec<(Vec<f64>, f64, Vec<f64>)>> {
        dirs.par_iter()
            .map(|u| {
                let s = boundary_face(a, k, u, gap_tol)?;
                Ok((s.u, s.value, s.point.expect("faces always carry a point").coords))
            })
            .collect()
    };

    let mut clusters: Vec<(Vec<f64>, Vec<Vec<f64>>)> = Vec::new();
    let absorb = |clusters: &mut Vec<(Vec<f64>, Vec<Vec<f64>>)>, u: Vec<f64>, p: Vec<f64>| {
        match clusters.iter_mut().find(|(c, _)| distance(c, &p) <= radius) {
            Some((_, normals)) => normals.push(u),
            None => clusters.push((p, vec![u])),
        }
    };
    for (u, _, p) in faces(&directions(d, dirs, seed))? {
        absorb(&mut clusters, u, p);
    }

    let mut rounds = 0;
    let mut support_gap;
    let mut new_points;
    loop {
        rounds += 1;
        let test = faces(&directions(d, dirs, seed.wrapping_add(rounds as u64)))?;
        let gaps: Vec<f64> = test
            .iter()
            .map(|(u, h, _)| h - clusters.iter().map(|(c, _)| dot(u, c)).fold(f64::NEG_INFINITY, f64::max))
            .collect();
        support_gap = gaps.iter().cloned().fold(0.0, f64::max);
        let violating: Vec<usize> = (0..gaps.len()).filter(|&i| gaps[i] > abs_tol).collect();
        let curved = 2 * violating.len() > gaps.len();
        let before = clusters.len();
        for (u, _, p) in test {
            absorb(&mut clusters, u, p);
        }
        new_points = clusters.len() - before;
        if (violating.is_empty() && new_points == 0) || curved || rounds >= MAX_ROUNDS {
            break;
        }
    }

    // Sweeps can miss vertices with thin normal cones. In low dimension, test
    // every facet normal of the current hull until none exposes a new point.
    if support_gap <= abs_tol && new_points == 0 && d <= 3 {
        let mut unresolved = 0.0f64;
        for _ in 0..MAX_COMPLETION_PASSES {
            let centers: Vec<Vec<f64>> = clusters.iter().map(|(c, _)| c.clone()).collect();
            let normals = facet_normals(&centers, d);
            let mut worst = 0.0f64;
            let mut found = 0;
            for (u, h, p) in faces(&normals)? {
                let gap = h - centers.iter().map(|c| dot(&u, c)).fold(f64::NEG_INFINITY, f64::max);
                if gap > abs_tol {
                    worst = worst.max(gap);
                    found += 1;
                    absorb(&mut clusters, u, p);
                }
            }
            unresolved = worst;
            if found == 0 {
                break;
            }
        }
        support_gap = support_gap.max(unresolved);
    }

    let centers: Vec<Vec<f64>> = clusters.iter().map(|(c, _)| c.clone()).collect();
    let keep = if centers.len() > 1 { extreme_points(&centers, tol * 1e-3) } else { vec![0] };
    let is_polyhedral = support_gap <= abs_tol && new_points == 0;
    let (vertices, normals_per_vertex) = keep
        .into_iter()
        .map(|i| {
            let (c, normals) = &clusters[i];
            (RangePoint::new(c.clone(), Provenance::Vertex), normals.clone())
        })
        .unzip();
    Ok(PolyhedralCertificate {
        k,
        vertices,
        support_gap,
        is_polyhedral,
        normals_per_vertex,
        tol: abs_tol,
        cluster_radius: radius,
        dirs,
        rounds,
        fresh_points: new_points,
    })
}

/// Outward unit normals of the hull of `points` in dimension `d ≤ 3`. A flat
/// hull contributes its in-plane edge normals and both sides of its plane.
fn facet_normals(points: &[Vec<f64>], d: usize) -> Vec<Vec<f64>> {
    let unit = |v: Vec<f64>| {
        let n = norm(&v);
        (n > 0.0).then(|| v.into_iter().map(|x| x / n).collect::<Vec<f64>>())
    };
    let sub = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<f64>>();
    let cross = |a: &[f64], b: &[f64]| vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let axes = || (0..d).flat_map(|i| [1.0, -1.0].map(|s| (0..d).map(|j| if i == j { s } else { 0.0 }).collect())).collect();
    match d {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => {
            let h = hull_2d(points);
            if h.kind != HullKind::Polygon {
                return axes();
            }
            let v = &h.vertices;
            (0..v.len())
                .filter_map(|i| {
                    let e = sub(&points[v[(i + 1) % v.len()]], &points[v[i]]);
                    unit(vec![e[1], -e[0]])
                })
                .collect()
        }
        _ => {
            let h = hull_3d(points);
            match h.kind {
                HullKind::Polytope => h
                    .facets
                    .iter()
                    .filter_map(|f| unit(cross(&sub(&points[f[1]], &points[f[0]]), &sub(&points[f[2]], &points[f[0]]))))
                    .collect(),
                HullKind::Polygon => {
                    let v = &h.vertices;
                    let Some(plane) = unit(cross(&sub(&points[v[1]], &points[v[0]]), &sub(&points[v[2]], &points[v[0]]))) else {
                        return axes();
                    };
                    let centroid: Vec<f64> = (0..3).map(|j| v.iter().map(|&i| points[i][j]).sum::<f64>() / v.len() as f64).collect();
                    let mut out: Vec<Vec<f64>> = (0..v.len())
                        .filter_map(|i| {
                            let e = sub(&points[v[(i + 1) % v.len()]], &points[v[i]]);
                            let mut n = unit(cross(&e, &plane))?;
                            if dot(&n, &sub(&points[v[i]], &centroid)) < 0.0 {
                                n.iter_mut().for_each(|x| *x = -*x);
                            }
                            Some(n)
                        })
                        .collect();
                    out.push(plane.clone());
                    out.push(plane.iter().map(|x| -x).collect());
                    out
                }
                _ => axes(),
            }
        }
    }
}

/// Indices of vertices whose supporting directions span real d-space.
pub fn conical_points(cert: &PolyhedralCertificate, d: usize) -> Vec<usize> {
    cert.normals_per_vertex
        .iter()
        .enumerate()
        .filter(|(_, normals)| normals.len() >= d && rank(normals, NORMAL_RANK_CUTOFF) >= d)
        .map(|(i, _)| i)
        .collect()
}
