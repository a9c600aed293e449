//! Operator tuples and the transformation calculus on them.
//!
//! A [`MatrixTuple`] is the finite operator tuple `A = (A_1, …, A_m)`. Its
//! real form is a [`HermitianTuple`] whose trace coordinates identify complex
//! m-space with real d-space. [`OperatorSpec`] models an infinite operator as
//! a finite head plus a diagonal tail given by closed-form generators.

mod spec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{split_hermitian, ComplexMatrix, C64, DEFAULT_HERMITIAN_TOL};

pub use spec::{augment_with_essential, truncate, OperatorSpec, TailGenerator, ACCUMULATION_CHECK_N};

/// An m-tuple of n×n complex matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTuple {
    dim: usize,
    mats: Vec<ComplexMatrix>,
    labels: Option<Vec<String>>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<ComplexMatrix>) -> Result<Self> {
        let first = mats.first().ok_or(Error::EmptyTuple)?;
        let dim = first.rows();
        for (j, a) in mats.iter().enumerate() {
            if !a.is_square() {
                return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
            }
            if a.rows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "component {j} is {}x{}, expected {dim}x{dim}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        Ok(Self { dim, mats, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.mats.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} components",
                labels.len(),
                self.mats.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The tuple of n×n zero matrices.
    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        Self::new(vec![ComplexMatrix::zeros(n, n); m])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of components m.
    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn mats(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `max_j ‖A_j‖_F`, floored at the smallest positive double.
    pub fn scale(&self) -> f64 {
        tuple_scale(&self.mats)
    }

    pub fn traces(&self) -> Vec<C64> {
        self.mats.iter().map(|a| a.trace()).collect()
    }

    pub fn is_hermitian(&self) -> bool {
        self.mats.iter().all(|a| a.is_hermitian(DEFAULT_HERMITIAN_TOL))
    }

    /// `(X*A_1X, …, X*A_mX)`.
    pub fn compress(&self, x: &ComplexMatrix) -> Self {
        let mats = self.mats.iter().map(|a| a.compress(x)).collect();
        Self { dim: x.cols(), mats, labels: self.labels.clone() }
    }

    /// Leading or interior principal block `start..end` of every component.
    pub fn principal(&self, start: usize, end: usize) -> Self {
        let mats = self.mats.iter().map(|a| a.principal(start, end)).collect();
        Self { dim: end - start, mats, labels: self.labels.clone() }
    }
}

/// Which part of which source component a Hermitian component carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealPart {
    pub source: usize,
    pub imaginary: bool,
}

/// A tuple of Hermitian matrices together with the layout that ties each
/// component back to the complex tuple it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianTuple {
    dim: usize,
    mats: Vec<ComplexMatrix>,
    parts: Vec<RealPart>,
    sources: usize,
}

impl HermitianTuple {
    /// Accepts components that are Hermitian to `1e-12` relative and
    /// symmetrizes them.
    pub fn new(mats: Vec<ComplexMatrix>) -> Result<Self> {
        let t = MatrixTuple::new(mats)?;
        let parts = (0..t.len()).map(|source| RealPart { source, imaginary: false }).collect();
        let sources = t.len();
        Self::from_parts(t.mats, parts, sources)
    }

    fn from_parts(mats: Vec<ComplexMatrix>, parts: Vec<RealPart>, sources: usize) -> Result<Self> {
        let dim = mats.first().ok_or(Error::EmptyTuple)?.rows();
        let mut out = Vec::with_capacity(mats.len());
        for a in mats {
            let allowed = DEFAULT_HERMITIAN_TOL * a.frobenius_norm();
            let asym = a.hermitian_defect();
            if asym > allowed {
                return Err(Error::NotHermitian { asymmetry: asym, allowed });
            }
            if a.rows() != dim {
                return Err(Error::DimensionMismatch(format!("{}x{} component in a dim-{dim} tuple", a.rows(), a.cols())));
            }
            out.push(a.symmetrized());
        }
        Ok(Self { dim, mats: out, parts, sources })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of real coordinates d.
    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn mats(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    pub fn parts(&self) -> &[RealPart] {
        &self.parts
    }

    /// Number of components of the complex tuple this was built from.
    pub fn sources(&self) -> usize {
        self.sources
    }

    pub fn scale(&self) -> f64 {
        tuple_scale(&self.mats)
    }

    /// `A_u = Σ u_j H_j`.
    pub fn combination(&self, u: &[f64]) -> ComplexMatrix {
        assert_eq!(u.len(), self.mats.len(), "direction has wrong dimension");
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for (w, a) in u.iter().zip(&self.mats) {
            if *w != 0.0 {
                acc.add_scaled(*w, a);
            }
        }
        acc
    }

    /// `(tr H_1, …, tr H_d)`, the single point of `W_n`.
    pub fn trace_vector(&self) -> Vec<f64> {
        self.mats.iter().map(|a| a.trace().re).collect()
    }

    /// `(tr X*H_1X, …)` for an isometry `X`.
    pub fn coords_of(&self, x: &ComplexMatrix) -> Vec<f64> {
        self.mats.iter().map(|a| a.trace_compression(x)).collect()
    }

    /// Real coordinates of a complex m-vector in this tuple's layout.
    pub fn real_coords(&self, z: &[C64]) -> Vec<f64> {
        self.parts.iter().map(|p| if p.imaginary { z[p.source].im } else { z[p.source].re }).collect()
    }

    /// Inverse of [`HermitianTuple::real_coords`] for the components present.
    pub fn complex_coords(&self, x: &[f64]) -> Vec<C64> {
        let mut z = vec![C64::new(0.0, 0.0); self.sources];
        for (p, &v) in self.parts.iter().zip(x) {
            if p.imaginary {
                z[p.source].im = v;
            } else {
                z[p.source].re = v;
            }
        }
        z
    }

    pub fn compress(&self, x: &ComplexMatrix) -> Self {
        let mats = self.mats.iter().map(|a| a.compress(x).symmetrized()).collect();
        Self { dim: x.cols(), mats, parts: self.parts.clone(), sources: self.sources }
    }

    /// `(U*H_1U, …)`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Self {
        self.compress(u)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.parts != other.parts {
            return Err(Error::ComponentCountMismatch { left: self.len(), right: other.len() });
        }
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Self { dim: self.dim + other.dim, mats, parts: self.parts.clone(), sources: self.sources })
    }

    pub fn as_matrix_tuple(&self) -> MatrixTuple {
        MatrixTuple { dim: self.dim, mats: self.mats.clone(), labels: None }
    }
}

fn tuple_scale(mats: &[ComplexMatrix]) -> f64 {
    mats.iter().map(|a| a.frobenius_norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE)
}

/// Where a point of a range came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    InnerSample,
    Boundary,
    Vertex,
    Formula,
}

/// A point in real d-space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RangePoint {
    pub coords: Vec<f64>,
    pub provenance: Provenance,
}

impl RangePoint {
    pub fn new(coords: Vec<f64>, provenance: Provenance) -> Self {
        debug_assert!(coords.iter().all(|x| x.is_finite()), "non-finite range point");
        Self { coords, provenance }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// `(B_1, …, B_p) = (A_1, …, A_m)·T + (s_1 I, …, s_p I)` with `T` m×p.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    pub t: ComplexMatrix,
    pub s: Vec<C64>,
}

impl AffineMap {
    pub fn new(t: ComplexMatrix, s: Vec<C64>) -> Result<Self> {
        if s.len() != t.cols() {
            return Err(Error::ShapeMismatch(format!("shift of length {} for a {}x{} map", s.len(), t.rows(), t.cols())));
        }
        Ok(Self { t, s })
    }

    /// Real linear map without shift.
    pub fn linear(t: ComplexMatrix) -> Self {
        let p = t.cols();
        Self { t, s: vec![C64::new(0.0, 0.0); p] }
    }

    /// Keeps coordinates `i` and `j` of a d-dimensional point.
    pub fn coordinate_projection(d: usize, i: usize, j: usize) -> Result<Self> {
        if i >= d || j >= d {
            return Err(Error::InvalidArgument(format!("projection {i},{j} out of range for dimension {d}")));
        }
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Ok(Self::linear(ComplexMatrix::from_fn(d, 2, |r, c| if (c == 0 && r == i) || (c == 1 && r == j) { one } else { zero })))
    }

    pub fn inputs(&self) -> usize {
        self.t.rows()
    }

    pub fn outputs(&self) -> usize {
        self.t.cols()
    }

    fn is_real(&self) -> bool {
        self.t.data().iter().chain(&self.s).all(|z| z.im == 0.0)
    }
}

/// `B_j = Σ_i T_ij A_i + s_j I`.
pub fn affine_push(a: &MatrixTuple, f: &AffineMap) -> Result<MatrixTuple> {
    if f.inputs() != a.len() {
        return Err(Error::ShapeMismatch(format!("map expects {} components, tuple has {}", f.inputs(), a.len())));
    }
    let n = a.dim();
    let mats = (0..f.outputs())
        .map(|j| {
            let mut b = ComplexMatrix::identity(n).scale(f.s[j]);
            for (i, ai) in a.mats().iter().enumerate() {
                let t = f.t[(i, j)];
                if t != C64::new(0.0, 0.0) {
                    b = &b + &ai.scale(t);
                }
            }
            b
        })
        .collect();
    MatrixTuple::new(mats)
}

/// Image `pT + k·s` of a range point under an affine map.
///
/// Coordinates of length m are read as real values; length 2m as interleaved
/// `(re, im)` pairs. The result is real when both the input and the map are.
pub fn point_push(p: &RangePoint, f: &AffineMap, k: usize) -> Result<RangePoint> {
    let m = f.inputs();
    let z: Vec<C64> = if p.dim() == m {
        p.coords.iter().map(|&x| C64::new(x, 0.0)).collect()
    } else if p.dim() == 2 * m {
        p.coords.chunks(2).map(|c| C64::new(c[0], c[1])).collect()
    } else {
        return Err(Error::ShapeMismatch(format!("point of dimension {} for a map on {m} components", p.dim())));
    };
    let out: Vec<C64> = (0..f.outputs())
        .map(|j| (0..m).map(|i| z[i] * f.t[(i, j)]).sum::<C64>() + f.s[j] * k as f64)
        .collect();
    let coords = if p.dim() == m && f.is_real() {
        out.iter().map(|w| w.re).collect()
    } else {
        out.iter().flat_map(|w| [w.re, w.im]).collect()
    };
    Ok(RangePoint::new(coords, p.provenance))
}

/// Hermitian real form `(H_1, G_1, …, H_m, G_m)` of `A_j = H_j + iG_j`.
///
/// With `compact` set, `G_j` is omitted for components that are already
/// Hermitian.
pub fn real_form(a: &MatrixTuple, compact: bool) -> Result<HermitianTuple> {
    let mut mats = Vec::with_capacity(2 * a.len());
    let mut parts = Vec::with_capacity(2 * a.len());
    for (source, aj) in a.mats().iter().enumerate() {
        let (h, g) = split_hermitian(aj)?;
        mats.push(h);
        parts.push(RealPart { source, imaginary: false });
        if !(compact && aj.is_hermitian(DEFAULT_HERMITIAN_TOL)) {
            mats.push(g);
            parts.push(RealPart { source, imaginary: true });
        }
    }
    HermitianTuple::from_parts(mats, parts, a.len())
}

/// Real form with a prescribed layout, so that related tuples share coordinates.
pub fn real_form_with(a: &MatrixTuple, layout: &[RealPart]) -> Result<HermitianTuple> {
    let mut mats = Vec::with_capacity(layout.len());
    for p in layout {
        let aj = a.mats().get(p.source).ok_or_else(|| {
            Error::ShapeMismatch(format!("layout refers to component {} of a {}-tuple", p.source, a.len()))
        })?;
        let (h, g) = split_hermitian(aj)?;
        mats.push(if p.imaginary { g } else { h });
    }
    for j in 0..a.len() {
        let has_imag = layout.iter().any(|p| p.source == j && p.imaginary);
        if !has_imag && !a.mats()[j].is_hermitian(DEFAULT_HERMITIAN_TOL) {
            let a = &a.mats()[j];
            return Err(Error::NotHermitian {
                asymmetry: a.hermitian_defect(),
                allowed: DEFAULT_HERMITIAN_TOL * a.frobenius_norm(),
            });
        }
    }
    HermitianTuple::from_parts(mats, layout.to_vec(), a.len())
}

/// Result of [`affine_dimension`].
#[derive(Clone, Debug)]
pub struct AffineReduction {
    /// Affine dimension q of `span{I, H_1, G_1, …}` modulo `I`.
    pub q: usize,
    /// Trace-orthonormal Hermitian `C_1, …, C_q`; absent when `q = 0`.
    pub basis: Option<MatrixTuple>,
    /// Reconstructs `A` from `C` via [`affine_push`].
    pub map: AffineMap,
}

pub const AFFINE_RANK_CUTOFF: f64 = 1e-10;

/// Affine dimension of a tuple together with a reduced basis and the map
/// rebuilding the tuple from it.
pub fn affine_dimension(a: &MatrixTuple) -> Result<AffineReduction> {
    let n = a.dim();
    let m = a.len();
    let scalar: Vec<C64> = a.traces().iter().map(|t| t / n.max(1) as f64).collect();
    // centred real-form components E_{2j} = H_j − c I, E_{2j+1} = G_j − c' I
    let mut centred = Vec::with_capacity(2 * m);
    for (aj, c) in a.mats().iter().zip(&scalar) {
        let (mut h, mut g) = split_hermitian(aj)?;
        for i in 0..n {
            h[(i, i)] -= c.re;
            g[(i, i)] -= c.im;
        }
        centred.push(h);
        centred.push(g);
    }
    // pivoted modified Gram–Schmidt under Re tr(XY), with one re-orthogonalization
    let vecs: Vec<Vec<f64>> = centred.iter().map(|e| e.data().iter().flat_map(|z| [z.re, z.im]).collect()).collect();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let top = vecs.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let cutoff = (AFFINE_RANK_CUTOFF * top).max(1e-13 * a.scale());
    let mut resid = vecs.clone();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    let mut used = vec![false; resid.len()];
    loop {
        let Some((e, len)) = (0..resid.len())
            .filter(|&e| !used[e])
            .map(|e| (e, norm(&resid[e])))
            .max_by(|x, y| x.1.total_cmp(&y.1).then(y.0.cmp(&x.0)))
        else {
            break;
        };
        if len <= cutoff {
            break;
        }
        used[e] = true;
        let c: Vec<f64> = resid[e].iter().map(|x| x / len).collect();
        for (f, r) in resid.iter_mut().enumerate() {
            if used[f] {
                continue;
            }
            for _pass in 0..2 {
                let p: f64 = r.iter().zip(&c).map(|(x, y)| x * y).sum();
                r.iter_mut().zip(&c).for_each(|(x, y)| *x -= p * y);
            }
        }
        ortho.push(c);
    }
    let q = ortho.len();
    let basis = if q == 0 {
        None
    } else {
        let mats = ortho
            .iter()
            .map(|c| ComplexMatrix::new(n, n, c.chunks(2).map(|z| C64::new(z[0], z[1])).collect()).map(|m| m.symmetrized()))
            .collect::<Result<Vec<_>>>()?;
        Some(MatrixTuple::new(mats)?)
    };
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let t = ComplexMatrix::from_fn(q, m, |r, j| C64::new(dot(&vecs[2 * j], &ortho[r]), dot(&vecs[2 * j + 1], &ortho[r])));
    Ok(AffineReduction { q, basis, map: AffineMap { t, s: scalar } })
}

/// Componentwise block-diagonal sum.
pub fn direct_sum(a: &MatrixTuple, b: &MatrixTuple) -> Result<MatrixTuple> {
    if a.len() != b.len() {
        return Err(Error::ComponentCountMismatch { left: a.len(), right: b.len() });
    }
    let mats = a.mats().iter().zip(b.mats()).map(|(x, y)| x.block_diag(y)).collect();
    Ok(MatrixTuple { dim: a.dim() + b.dim(), mats, labels: a.labels.clone() })
}

/// The Pauli matrices `X`, `Y`, `Z`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        ComplexMatrix::new(2, 2, vec![o, one, one, o]).unwrap(),
        ComplexMatrix::new(2, 2, vec![o, -i, i, o]).unwrap(),
        ComplexMatrix::new(2, 2, vec![one, o, o, -one]).unwrap(),
    ]
}
