use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::extreme_points;
use crate::linalg::{ComplexMatrix, C64};

use super::{direct_sum, MatrixTuple};

/// Tail length at which declared accumulation points are validated.
pub const ACCUMULATION_CHECK_N: usize = 1000;

/// Closed-form rule `ℓ ↦ d(ℓ)` for the diagonal tail of one component, `ℓ ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum TailGenerator {
    Constant(C64),
    /// `offset + scale/ℓ`.
    Harmonic { offset: C64, scale: C64 },
    /// `offset + scale·(−1)^(ℓ+1)/ℓ`.
    SignedHarmonic { offset: C64, scale: C64 },
    /// `scale·e^(2πi(ℓ−1)/order)`.
    RootCycle { order: usize, scale: C64 },
    /// `values[(ℓ−1) mod len]`.
    Cyclic(Vec<C64>),
}

impl TailGenerator {
    pub fn eval(&self, l: usize) -> C64 {
        assert!(l >= 1, "tail index starts at 1");
        match self {
            Self::Constant(c) => *c,
            Self::Harmonic { offset, scale } => offset + scale / l as f64,
            Self::SignedHarmonic { offset, scale } => {
                let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
                offset + scale * (sign / l as f64)
            }
            Self::RootCycle { order, scale } => {
                let k = (l - 1) % order;
                scale * C64::from_polar(1.0, 2.0 * PI * k as f64 / *order as f64)
            }
            Self::Cyclic(values) => values[(l - 1) % values.len()],
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = |z: &C64| z.re.is_finite() && z.im.is_finite();
        let ok = match self {
            Self::Constant(c) => finite(c),
            Self::Harmonic { offset, scale } | Self::SignedHarmonic { offset, scale } => finite(offset) && finite(scale),
            Self::RootCycle { order, scale } => *order >= 1 && finite(scale),
            Self::Cyclic(values) => !values.is_empty() && values.iter().all(finite),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("malformed tail generator {self:?}")))
        }
    }
}

/// Finite head ⊕ diagonal tail, with the tail's accumulation points declared.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpec {
    head: MatrixTuple,
    tail: Vec<TailGenerator>,
    accumulation: Vec<Vec<C64>>,
}

impl OperatorSpec {
    /// Validates shapes and checks every declared point against the tail:
    /// some `ℓ ∈ [N, 2N]` must come within `10/N` of it at `N = 1000`.
    pub fn new(head: MatrixTuple, tail: Vec<TailGenerator>, accumulation: Vec<Vec<C64>>) -> Result<Self> {
        if tail.len() != head.len() {
            return Err(Error::ComponentCountMismatch { left: head.len(), right: tail.len() });
        }
        for g in &tail {
            g.validate()?;
        }
        for (i, p) in accumulation.iter().enumerate() {
            if p.len() != head.len() {
                return Err(Error::ShapeMismatch(format!(
                    "accumulation point {i} has {} coordinates, expected {}",
                    p.len(),
                    head.len()
                )));
            }
        }
        let spec = Self { head, tail, accumulation };
        let n = ACCUMULATION_CHECK_N;
        for (index, p) in spec.accumulation.iter().enumerate() {
            let distance = (n..=2 * n)
                .map(|l| {
                    spec.entry(l).iter().zip(p).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
                })
                .fold(f64::INFINITY, f64::min);
            if !(distance < 10.0 / n as f64) {
                return Err(Error::InvalidAccumulation { index, distance, n });
            }
        }
        Ok(spec)
    }

    pub fn head(&self) -> &MatrixTuple {
        &self.head
    }

    pub fn tail(&self) -> &[TailGenerator] {
        &self.tail
    }

    pub fn accumulation(&self) -> &[Vec<C64>] {
        &self.accumulation
    }

    /// Number of components m.
    pub fn len(&self) -> usize {
        self.head.len()
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_empty()
    }

    /// Joint tail entry `(d_1(ℓ), …, d_m(ℓ))`.
    pub fn entry(&self, l: usize) -> Vec<C64> {
        self.tail.iter().map(|g| g.eval(l)).collect()
    }

    /// True when the only accumulation point is the origin.
    pub fn is_compact(&self) -> bool {
        !self.accumulation.is_empty()
            && self.accumulation.iter().all(|p| p.iter().all(|z| *z == C64::new(0.0, 0.0)))
    }

    /// `head ⊕ diag(d(1), …, d(N))` in every component.
    pub fn truncate(&self, n: usize) -> MatrixTuple {
        let entries: Vec<Vec<C64>> = (1..=n).map(|l| self.entry(l)).collect();
        let tail = (0..self.len())
            .map(|j| ComplexMatrix::from_diag(&entries.iter().map(|e| e[j]).collect::<Vec<_>>()))
            .collect();
        let tail = MatrixTuple::new(tail).expect("tail blocks share one dimension");
        direct_sum(&self.head, &tail).expect("tail has one block per component")
    }

    /// Extreme points of the convex hull of the declared accumulation set,
    /// duplicates within `1e-12` merged.
    pub fn essential_points(&self) -> Result<Vec<Vec<C64>>> {
        if self.accumulation.is_empty() {
            return Err(Error::EmptyAccumulation);
        }
        let mut unique: Vec<&Vec<C64>> = Vec::new();
        for p in &self.accumulation {
            let dup = unique.iter().any(|q| q.iter().zip(p).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt() <= 1e-12);
            if !dup {
                unique.push(p);
            }
        }
        let real: Vec<Vec<f64>> = unique.iter().map(|p| p.iter().flat_map(|z| [z.re, z.im]).collect()).collect();
        Ok(extreme_points(&real, 1e-12).into_iter().map(|i| unique[i].clone()).collect())
    }

    /// `truncate(N) ⊕ (ξ I_k for each extreme point ξ of the essential range)`.
    pub fn augment_with_essential(&self, k: usize, n: usize) -> Result<MatrixTuple> {
        let base = self.truncate(n);
        let extra: Vec<Vec<C64>> = self.essential_points()?.into_iter().flat_map(|p| std::iter::repeat_n(p, k)).collect();
        if extra.is_empty() {
            return Ok(base);
        }
        let blocks = (0..self.len())
            .map(|j| ComplexMatrix::from_diag(&extra.iter().map(|e| e[j]).collect::<Vec<_>>()))
            .collect();
        direct_sum(&base, &MatrixTuple::new(blocks)?)
    }
}

/// Free-function form of [`OperatorSpec::truncate`].
pub fn truncate(spec: &OperatorSpec, n: usize) -> MatrixTuple {
    spec.truncate(n)
}

/// Free-function form of [`OperatorSpec::augment_with_essential`].
pub fn augment_with_essential(spec: &OperatorSpec, k: usize, n: usize) -> Result<MatrixTuple> {
    spec.augment_with_essential(k, n)
}
