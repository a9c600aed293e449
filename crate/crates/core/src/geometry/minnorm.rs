//! Wolfe's minimum-norm-point algorithm for the distance from a point to the
//! convex hull of a finite set.

use crate::linalg::real::{dot, solve};

/// Nearest point of the hull and its convex weights.
#[derive(Clone, Debug)]
pub struct NearestPoint {
    pub distance: f64,
    pub point: Vec<f64>,
    /// `(index, weight)` pairs with positive weight.
    pub weights: Vec<(usize, f64)>,
}

const MAX_MAJOR: usize = 2000;

/// Euclidean distance from `target` to `conv(points)`.
pub fn nearest_in_hull(points: &[Vec<f64>], target: &[f64]) -> NearestPoint {
    assert!(!points.is_empty(), "hull of an empty point set");
    let shifted: Vec<Vec<f64>> = points.iter().map(|p| p.iter().zip(target).map(|(a, b)| a - b).collect()).collect();
    let big = shifted.iter().map(|p| dot(p, p)).fold(0.0, f64::max);
    let eps = 1e-14 * big.max(f64::MIN_POSITIVE);
    let start = (0..shifted.len()).min_by(|&i, &j| dot(&shifted[i], &shifted[i]).total_cmp(&dot(&shifted[j], &shifted[j]))).unwrap();
    let mut set = vec![start];
    let mut w = vec![1.0];
    let combine = |set: &[usize], w: &[f64]| -> Vec<f64> {
        let mut x = vec![0.0; target.len()];
        for (&i, &wi) in set.iter().zip(w) {
            x.iter_mut().zip(&shifted[i]).for_each(|(a, b)| *a += wi * b);
        }
        x
    };
    for _ in 0..MAX_MAJOR {
        let x = combine(&set, &w);
        let xx = dot(&x, &x);
        let (j, xj) = (0..shifted.len())
            .map(|i| (i, dot(&x, &shifted[i])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if xx - xj <= eps || set.contains(&j) {
            break;
        }
        set.push(j);
        w.push(0.0);
        let mut stuck = false;
        loop {
            let Some(v) = affine_min_norm(&set, &shifted) else {
                set.pop();
                w.pop();
                stuck = true;
                break;
            };
            if v.iter().all(|&vi| vi > 1e-15) {
                w = v;
                break;
            }
            let theta = w
                .iter()
                .zip(&v)
                .filter(|(_, &vi)| vi <= 1e-15)
                .map(|(&wi, &vi)| wi / (wi - vi))
                .fold(1.0f64, f64::min)
                .clamp(0.0, 1.0);
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi += theta * (vi - *wi);
            }
            let keep: Vec<bool> = w.iter().map(|&wi| wi > 1e-15).collect();
            set = set.iter().zip(&keep).filter(|(_, &k)| k).map(|(&i, _)| i).collect();
            w = w.iter().zip(&keep).filter(|(_, &k)| k).map(|(&wi, _)| wi).collect();
            let total: f64 = w.iter().sum();
            w.iter_mut().for_each(|wi| *wi /= total);
        }
        if set.is_empty() {
            set = vec![start];
            w = vec![1.0];
            break;
        }
        if stuck {
            break;
        }
    }
    let x = combine(&set, &w);
    let point = x.iter().zip(target).map(|(a, b)| a + b).collect();
    NearestPoint { distance: dot(&x, &x).sqrt(), point, weights: set.into_iter().zip(w).collect() }
}

/// Minimizes `‖Σ v_i p_i‖` subject to `Σ v_i = 1` over the active set.
fn affine_min_norm(set: &[usize], pts: &[Vec<f64>]) -> Option<Vec<f64>> {
    let s = set.len();
    let m = s + 1;
    let mut a = vec![0.0; m * m];
    let mut b = vec![0.0; m];
    for r in 0..s {
        for c in 0..s {
            a[r * m + c] = dot(&pts[set[r]], &pts[set[c]]);
        }
        a[r * m + s] = 1.0;
        a[s * m + r] = 1.0;
    }
    b[s] = 1.0;
    let sol = solve(&a, &b)?;
    let v = sol[..s].to_vec();
    v.iter().all(|x| x.is_finite()).then_some(v)
}

/// Indices of points that are not in the convex hull of the others, up to
/// `tol` times the largest coordinate magnitude (at least 1).
pub fn extreme_points(points: &[Vec<f64>], tol: f64) -> Vec<usize> {
    let scale = points.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut alive: Vec<usize> = (0..points.len()).collect();
    // remove one dominated point at a time so duplicates keep one representative
    let mut i = 0;
    while i < alive.len() {
        let others: Vec<Vec<f64>> = alive.iter().filter(|&&j| j != alive[i]).map(|&j| points[j].clone()).collect();
        if !others.is_empty() && nearest_in_hull(&others, &points[alive[i]]).distance <= tol * scale {
            alive.remove(i);
        } else {
            i += 1;
        }
    }
    alive
}
