//! Convex hulls in two and three dimensions with exact orientation tests on
//! coordinates snapped to a grid of `1e-12·scale`.

use robust::{orient2d, orient3d, Coord, Coord3D};
use serde::{Deserialize, Serialize};

/// Affine dimension of a hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullKind {
    Point,
    Segment,
    Polygon,
    Polytope,
}

/// Planar hull: vertex indices into the input, counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Hull2d {
    pub vertices: Vec<usize>,
    pub kind: HullKind,
}

/// Spatial hull. `facets` are index triples counterclockwise seen from
/// outside; empty unless `kind` is `Polytope`. `vertices` lists the extreme
/// input indices (in planar order for a flat hull).
#[derive(Clone, Debug, PartialEq)]
pub struct Hull3d {
    pub facets: Vec<[usize; 3]>,
    pub vertices: Vec<usize>,
    pub kind: HullKind,
}

pub const SNAP: f64 = 1e-12;

fn snapper(points: &[Vec<f64>]) -> impl Fn(f64) -> f64 {
    let scale = points.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    // power-of-two quantum keeps dyadic inputs exact
    let q = (SNAP * scale).max(f64::MIN_POSITIVE).log2().ceil().exp2();
    move |x| (x / q).round() * q
}

fn dedup_sorted(idx: &mut Vec<usize>, pts: &[[f64; 3]]) {
    idx.sort_by(|&a, &b| pts[a].partial_cmp(&pts[b]).unwrap().then(a.cmp(&b)));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
}

/// Andrew's monotone chain. Points on hull edges are dropped.
pub fn hull_2d(points: &[Vec<f64>]) -> Hull2d {
    assert!(!points.is_empty(), "hull of an empty point set");
    let snap = snapper(points);
    let pts: Vec<[f64; 3]> = points.iter().map(|p| [snap(p[0]), snap(p[1]), 0.0]).collect();
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    dedup_sorted(&mut idx, &pts);
    hull_2d_snapped(&idx, |i| Coord { x: pts[i][0], y: pts[i][1] })
}

fn hull_2d_snapped(idx: &[usize], at: impl Fn(usize) -> Coord<f64>) -> Hull2d {
    if idx.len() == 1 {
        return Hull2d { vertices: idx.to_vec(), kind: HullKind::Point };
    }
    let cross = |o: usize, a: usize, b: usize| orient2d(at(o), at(a), at(b));
    let mut lower: Vec<usize> = Vec::new();
    for &i in idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let kind = if lower.len() <= 2 { HullKind::Segment } else { HullKind::Polygon };
    if kind == HullKind::Segment {
        lower.dedup();
    }
    Hull2d { vertices: lower, kind }
}

/// Incremental hull with horizon stitching.
pub fn hull_3d(points: &[Vec<f64>]) -> Hull3d {
    assert!(!points.is_empty(), "hull of an empty point set");
    let snap = snapper(points);
    let pts: Vec<[f64; 3]> = points.iter().map(|p| [snap(p[0]), snap(p[1]), snap(p[2])]).collect();
    let c3 = |i: usize| Coord3D { x: pts[i][0], y: pts[i][1], z: pts[i][2] };
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    dedup_sorted(&mut idx, &pts);
    if idx.len() == 1 {
        return Hull3d { facets: vec![], vertices: idx, kind: HullKind::Point };
    }
    let a = idx[0];
    let b = *idx.last().unwrap();
    // exact collinearity: all three coordinate-plane shadows are degenerate
    let shadow = |i: usize, u: usize, v: usize| Coord { x: pts[i][u], y: pts[i][v] };
    let collinear = |c: usize| {
        [(0, 1), (1, 2), (0, 2)].iter().all(|&(u, v)| orient2d(shadow(a, u, v), shadow(b, u, v), shadow(c, u, v)) == 0.0)
    };
    let Some(&c) = idx.iter().find(|&&c| !collinear(c)) else {
        return Hull3d { facets: vec![], vertices: vec![a, b], kind: HullKind::Segment };
    };
    let Some(&d) = idx.iter().find(|&&d| orient3d(c3(a), c3(b), c3(c), c3(d)) != 0.0) else {
        // coplanar: drop the coordinate along which the plane's normal is largest
        let (u, v) = (sub(pts[b], pts[a]), sub(pts[c], pts[a]));
        let n = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
        let drop = (0..3).max_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs())).unwrap();
        let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
        let mut flat = idx.clone();
        flat.sort_by(|&p, &q| {
            (pts[p][keep[0]], pts[p][keep[1]]).partial_cmp(&(pts[q][keep[0]], pts[q][keep[1]])).unwrap()
        });
        let h = hull_2d_snapped(&flat, |i| Coord { x: pts[i][keep[0]], y: pts[i][keep[1]] });
        return Hull3d { facets: vec![], vertices: h.vertices, kind: HullKind::Polygon };
    };
    // orient the seed tetrahedron so that d is inside every face
    let (a, b) = if orient3d(c3(a), c3(b), c3(c), c3(d)) > 0.0 { (a, b) } else { (b, a) };
    let mut faces: Vec<[usize; 3]> = vec![[a, b, c], [a, c, d], [a, d, b], [b, d, c]];
    for &p in &idx {
        if p == a || p == b || p == c || p == d {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|f| orient3d(c3(f[0]), c3(f[1]), c3(f[2]), c3(p)) < 0.0).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            edges.extend([(f[0], f[1]), (f[1], f[2]), (f[2], f[0])]);
        }
        let horizon: Vec<(usize, usize)> = edges.iter().copied().filter(|&(x, y)| !edges.contains(&(y, x))).collect();
        let mut kept: Vec<[usize; 3]> = faces.iter().zip(&visible).filter(|(_, &v)| !v).map(|(f, _)| *f).collect();
        kept.extend(horizon.into_iter().map(|(x, y)| [x, y, p]));
        faces = kept;
    }
    let mut vertices: Vec<usize> = faces.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    Hull3d { facets: faces, vertices, kind: HullKind::Polytope }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
