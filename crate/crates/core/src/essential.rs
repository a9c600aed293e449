//! Essential range of head ⊕ diagonal-tail specs, the closure of
//! `conv W_k` through support functions, and a heuristic attainment probe.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConvexBodyApprox;
use crate::linalg::{hermitian_eigh, C64, DEFAULT_HERMITIAN_TOL};
use crate::model::{real_form, real_form_with, HermitianTuple, OperatorSpec, RealPart};
use crate::range::{boundary_face, directions, top_sums, HalfSpace, GAP_TOL};

/// Agreement required between the Minkowski support formula and the
/// augmented tuple, relative to scale.
pub const CROSS_CHECK_TOL: f64 = 1e-9;
/// Constant of the `C/N` convergence window, relative to scale.
pub const RATE_CONSTANT: f64 = 10.0;
pub const ATTAINED_MASS: f64 = 0.1;
pub const ESCAPING_MASS: f64 = 0.5;
const CLOSURE_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq)]
pub struct EssentialRange {
    pub points: Vec<Vec<C64>>,
    pub is_singleton: bool,
}

pub fn essential_range(spec: &OperatorSpec) -> Result<EssentialRange> {
    let points = spec.essential_points()?;
    Ok(EssentialRange { is_singleton: points.len() == 1, points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Attainment {
    Attained,
    UnattainedSuspected,
    Unknown,
}

/// Attainment evidence for the exposed point in direction `u`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndpointFlag {
    pub u: Vec<f64>,
    pub attainment: Attainment,
    /// Closure support value at the largest truncation.
    pub closure_value: f64,
    /// `h_k(truncate(N), u)` per truncation size.
    pub truncation_values: Vec<f64>,
    /// Closure support minus truncation support per truncation size.
    pub deficits: Vec<f64>,
    /// Weight of the maximizing isometry on the far half of the tail.
    pub far_mass: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosureReport {
    pub k: usize,
    pub hull: ConvexBodyApprox,
    /// Filled by [`closedness_probe`]; empty from [`closure_hull`].
    pub flags: Vec<EndpointFlag>,
    pub truncation_sizes: Vec<usize>,
    /// `max_u |h_closure(u) − h_k(augmented, u)|`.
    pub cross_check_error: f64,
    pub consistent: bool,
}

impl ClosureReport {
    /// `[−h(−1), h(1)]` for one real coordinate.
    pub fn interval(&self) -> Option<(f64, f64)> {
        if self.hull.dim != 1 {
            return None;
        }
        let up = self.hull.outer.iter().filter(|h| h.u[0] > 0.0).map(|h| h.h).fold(f64::INFINITY, f64::min);
        let down = self.hull.outer.iter().filter(|h| h.u[0] < 0.0).map(|h| h.h).fold(f64::INFINITY, f64::min);
        (up.is_finite() && down.is_finite()).then_some((0.0 - down, up))
    }
}

struct Layout {
    parts: Vec<RealPart>,
    ess: Vec<Vec<f64>>,
}

fn layout(spec: &OperatorSpec, k: usize, n: usize) -> Result<Layout> {
    let aug = real_form(&spec.augment_with_essential(k, n)?, true)?;
    let ess = spec.essential_points()?.iter().map(|p| aug.real_coords(p)).collect();
    Ok(Layout { parts: aug.parts().to_vec(), ess })
}

fn h_ess(l: &Layout, u: &[f64]) -> f64 {
    l.ess.iter().map(|p| p.iter().zip(u).map(|(a, b)| a * b).sum::<f64>()).fold(f64::NEG_INFINITY, f64::max)
}

/// `max_{0≤ℓ≤k} [h_ℓ(A_N, u) + (k−ℓ)·h_ess(u)]`.
fn closure_support(t: &HermitianTuple, l: &Layout, k: usize, u: &[f64]) -> Result<f64> {
    let sums = top_sums(t, u)?;
    let e = h_ess(l, u);
    Ok((0..=k.min(t.dim())).map(|j| sums[j] + (k - j) as f64 * e).fold(f64::NEG_INFINITY, f64::max))
}

/// Support data of `cl conv W_k` from the truncation of size `n`, cross-checked
/// against `W_k` of the augmented tuple.
pub fn closure_hull(spec: &OperatorSpec, k: usize, n: usize, dirs: usize) -> Result<ClosureReport> {
    if k == 0 {
        return Err(Error::KOutOfRange { k, max: usize::MAX });
    }
    let l = layout(spec, k, n)?;
    let trunc = real_form_with(&spec.truncate(n), &l.parts)?;
    let aug = real_form_with(&spec.augment_with_essential(k, n)?, &l.parts)?;
    let scale = aug.scale();
    let us = directions(l.parts.len(), dirs.max(2), CLOSURE_SEED);
    let rows: Vec<(HalfSpace, Option<crate::model::RangePoint>, f64)> = us
        .par_iter()
        .map(|u| {
            let c = closure_support(&trunc, &l, k, u)?;
            let face = boundary_face(&aug, k, u, GAP_TOL * scale)?;
            let err = (c - face.value).abs();
            Ok((HalfSpace { u: face.u.clone(), h: c.max(face.value) }, face.point, err))
        })
        .collect::<Result<_>>()?;
    let cross_check_error = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let mut outer = Vec::with_capacity(rows.len());
    let mut inner = Vec::with_capacity(rows.len());
    for (h, p, _) in rows {
        outer.push(h);
        inner.extend(p);
    }
    let hull = ConvexBodyApprox::new(l.parts.len(), inner, outer, scale)?;
    Ok(ClosureReport {
        k,
        hull,
        flags: Vec::new(),
        truncation_sizes: vec![n],
        cross_check_error,
        consistent: cross_check_error <= CROSS_CHECK_TOL * scale,
    })
}

/// Closure hull at the largest truncation, with attainment flags per sampled
/// direction from the whole schedule.
pub fn closedness_probe(spec: &OperatorSpec, k: usize, schedule: &[usize], dirs: usize) -> Result<ClosureReport> {
    let Some(&n_max) = schedule.last() else {
        return Err(Error::InvalidArgument("truncation schedule is empty".into()));
    };
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("truncation schedule must be increasing".into()));
    }
    let mut report = closure_hull(spec, k, n_max, dirs)?;
    let l = layout(spec, k, n_max)?;
    let head = spec.head().dim();
    let truncs: Vec<HermitianTuple> =
        schedule.iter().map(|&n| real_form_with(&spec.truncate(n), &l.parts)).collect::<Result<_>>()?;
    let scale = report.hull.scale;
    let us: Vec<Vec<f64>> = report.hull.outer.iter().map(|h| h.u.clone()).collect();
    report.flags = us
        .par_iter()
        .map(|u| {
            let mut flag = EndpointFlag {
                u: u.clone(),
                attainment: Attainment::Unknown,
                closure_value: 0.0,
                truncation_values: Vec::new(),
                deficits: Vec::new(),
                far_mass: Vec::new(),
            };
            for (t, &n) in truncs.iter().zip(schedule) {
                let c = closure_support(t, &l, k, u)?;
                let kk = k.min(t.dim());
                let eig = hermitian_eigh(&t.combination(u), DEFAULT_HERMITIAN_TOL)?;
                let value = eig.top_sum(kk);
                let far: f64 = (0..kk)
                    .map(|col| (head + n / 2..head + n).map(|row| eig.vectors[(row, col)].norm_sqr()).sum::<f64>())
                    .sum();
                flag.closure_value = c;
                flag.truncation_values.push(value);
                flag.deficits.push((c - value).max(0.0));
                flag.far_mass.push(far);
            }
            flag.attainment = classify(&flag, schedule, scale);
            Ok(flag)
        })
        .collect::<Result<_>>()?;
    report.truncation_sizes = schedule.to_vec();
    Ok(report)
}

fn classify(flag: &EndpointFlag, schedule: &[usize], scale: f64) -> Attainment {
    let exact = CROSS_CHECK_TOL * scale;
    if flag.deficits.iter().any(|&d| d <= exact) {
        return Attainment::Attained;
    }
    let last = flag.deficits.len() - 1;
    let n = schedule[last] as f64;
    if flag.deficits[last] <= RATE_CONSTANT * scale / n && flag.far_mass[last] <= ATTAINED_MASS {
        return Attainment::Attained;
    }
    if flag.far_mass.iter().all(|&m| m >= ESCAPING_MASS) {
        return Attainment::UnattainedSuspected;
    }
    Attainment::Unknown
}

/// Cross-level diagnostic: all-attained at `k+1` must not coexist with an
/// unattained-suspected flag at `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosednessConsistency {
    pub k: usize,
    pub all_attained_next: bool,
    pub suspected_here: bool,
    pub consistent: bool,
}

pub fn closedness_consistency(spec: &OperatorSpec, k: usize, schedule: &[usize], dirs: usize) -> Result<ClosednessConsistency> {
    let here = closedness_probe(spec, k, schedule, dirs)?;
    let next = closedness_probe(spec, k + 1, schedule, dirs)?;
    let all_attained_next = next.flags.iter().all(|f| f.attainment == Attainment::Attained);
    let suspected_here = here.flags.iter().any(|f| f.attainment == Attainment::UnattainedSuspected);
    Ok(ClosednessConsistency { k, all_attained_next, suspected_here, consistent: !(all_attained_next && suspected_here) })
}
