//! Convex-body bookkeeping on sampled range data: hulls, membership,
//! Hausdorff gaps between support functions, and the convexity probe.

mod convexity;
pub mod hull;
mod minnorm;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::real::dot;
use crate::model::{HermitianTuple, RangePoint};
use crate::range::{directions, outer_polytope, sample_inner, HalfSpace};

pub use convexity::{
    convexity_probe, convexity_probe_with, realize_point, ConvexityStatus, ConvexityVerdict, ConvexityWitness, ProbeOptions,
};
pub use hull::{hull_2d, hull_3d, Hull2d, Hull3d, HullKind};
pub use minnorm::{extreme_points, nearest_in_hull, NearestPoint};

/// Default membership tolerance relative to the body scale.
pub const MEMBERSHIP_TOL: f64 = 1e-6;

/// A convex body seen from inside (sample points) and outside (supporting
/// half-spaces).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvexBodyApprox {
    pub dim: usize,
    pub inner: Vec<RangePoint>,
    pub outer: Vec<HalfSpace>,
    pub scale: f64,
}

impl ConvexBodyApprox {
    /// Checks dimensions and that every inner point satisfies every
    /// half-space to `1e-9·scale`.
    pub fn new(dim: usize, inner: Vec<RangePoint>, outer: Vec<HalfSpace>, scale: f64) -> Result<Self> {
        if let Some(p) = inner.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch(format!("inner point of dimension {} in a {dim}-dimensional body", p.dim())));
        }
        if let Some(h) = outer.iter().find(|h| h.u.len() != dim) {
            return Err(Error::DimensionMismatch(format!("half-space of dimension {} in a {dim}-dimensional body", h.u.len())));
        }
        let tol = 1e-9 * scale;
        for h in &outer {
            if let Some(p) = inner.iter().find(|p| h.violation(&p.coords) > tol) {
                return Err(Error::InvalidArgument(format!(
                    "inner point violates a half-space by {:.3e}",
                    h.violation(&p.coords)
                )));
            }
        }
        Ok(Self { dim, inner, outer, scale })
    }

    /// Inner cloud and outer polytope of `conv W_k(a)`.
    pub fn from_tuple(a: &HermitianTuple, k: usize, samples: usize, dirs: usize, seed: u64) -> Result<Self> {
        let cloud = sample_inner(a, k, samples, seed)?;
        let outer = outer_polytope(a, k, &directions(a.len(), dirs, seed.wrapping_add(1)))?;
        Self::new(a.len(), cloud.points, outer, a.scale())
    }

    pub fn inner_coords(&self) -> Vec<Vec<f64>> {
        self.inner.iter().map(|p| p.coords.clone()).collect()
    }

    /// Largest amount by which `x` violates an outer half-space.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        self.outer.iter().map(|h| h.violation(x)).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Outcome of [`convex_membership`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Membership {
    /// Within `tol` of the hull of the inner points.
    Inside { distance: f64 },
    /// Violates an outer half-space by more than `tol`.
    Outside { violation: f64 },
    Uncertain { violation: f64, distance: f64 },
}

/// Half-space test against the outer representation, then a least-distance
/// test against the convex hull of the inner points.
pub fn convex_membership(p: &RangePoint, body: &ConvexBodyApprox, tol: f64) -> Result<Membership> {
    if p.dim() != body.dim {
        return Err(Error::DimensionMismatch(format!("point of dimension {} for a {}-dimensional body", p.dim(), body.dim)));
    }
    let violation = body.max_violation(&p.coords);
    if violation > tol {
        return Ok(Membership::Outside { violation });
    }
    if body.inner.is_empty() {
        return Ok(Membership::Uncertain { violation, distance: f64::INFINITY });
    }
    let distance = nearest_in_hull(&body.inner_coords(), &p.coords).distance;
    if distance <= tol {
        Ok(Membership::Inside { distance })
    } else {
        Ok(Membership::Uncertain { violation, distance })
    }
}

/// The support function of a body, from whichever representation is at hand.
pub enum BodyView<'a> {
    /// Empirical support: maximum over the points.
    Points(&'a [Vec<f64>]),
    /// Stored support values; queried directions must be among the normals.
    HalfSpaces(&'a [HalfSpace]),
    /// An exact support function.
    Support(usize, &'a (dyn Fn(&[f64]) -> f64 + Sync)),
}

impl BodyView<'_> {
    fn dim(&self) -> Option<usize> {
        match self {
            Self::Points(p) => p.first().map(|x| x.len()),
            Self::HalfSpaces(h) => h.first().map(|x| x.u.len()),
            Self::Support(d, _) => Some(*d),
        }
    }

    pub fn support(&self, u: &[f64]) -> Result<f64> {
        match self {
            Self::Points(p) => Ok(p.iter().map(|x| dot(x, u)).fold(f64::NEG_INFINITY, f64::max)),
            Self::HalfSpaces(hs) => hs
                .iter()
                .find(|h| h.u.iter().zip(u).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt() <= 1e-9)
                .map(|h| h.h)
                .ok_or_else(|| Error::InvalidArgument("direction is not among the stored half-space normals".into())),
            Self::Support(_, f) => Ok(f(u)),
        }
    }
}

/// `max_u |h_A(u) − h_B(u)|` over the given unit directions.
pub fn hausdorff_gap(a: &BodyView, b: &BodyView, dirs: &[Vec<f64>]) -> Result<f64> {
    let (da, db) = (a.dim(), b.dim());
    if let (Some(x), Some(y)) = (da, db) {
        if x != y {
            return Err(Error::DimensionMismatch(format!("bodies of dimension {x} and {y}")));
        }
    }
    if let Some(u) = dirs.iter().find(|u| Some(u.len()) != da.or(db)) {
        return Err(Error::DimensionMismatch(format!("direction of dimension {}", u.len())));
    }
    let gaps: Vec<f64> = dirs.par_iter().map(|u| Ok((a.support(u)? - b.support(u)?).abs())).collect::<Result<_>>()?;
    Ok(gaps.into_iter().fold(0.0, f64::max))
}
