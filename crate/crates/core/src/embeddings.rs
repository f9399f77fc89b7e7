//! Explicit embedding constructions and 1-jet evaluation.
//!
//! The built-in maps are the moment curve on the line, the trigonometric
//! curve on the circle, the complex moment curve on the plane, and a
//! tensor-product combinator over product domains. Two wrapper kinds extend
//! these: coordinate truncation (keep a prefix of the output) and central
//! projection to a hyperplane (the dimension-reduction step). Arbitrary maps
//! enter through rectangular-grid CSV samples with finite-difference
//! derivatives.

use std::f64::consts::TAU;
use std::io::Read as IoRead;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::rational_from_f64;

/// Threshold on `|1 - <center, x>|` below which a central projection is
/// treated as singular.
pub const PROJECTION_SINGULARITY_EPS: f64 = 1e-9;

/// Default minimum pairwise chart distance between configuration points.
pub const DEFAULT_DELTA_MIN: f64 = 1e-6;

/// How a domain coordinate behaves under perturbation and sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoordKind {
    /// Plain real coordinate, clamped to its sampling box.
    Linear,
    /// Angle in radians, wrapped modulo the full turn.
    Angular,
}

/// Parameter domain of a map, with just enough metric structure to state
/// distinctness of configuration points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainChart {
    RealLine,
    Circle,
    RealPlane,
    Product(Box<DomainChart>, Box<DomainChart>),
}

impl DomainChart {
    pub fn dim(&self) -> usize {
        match self {
            DomainChart::RealLine | DomainChart::Circle => 1,
            DomainChart::RealPlane => 2,
            DomainChart::Product(l, r) => l.dim() + r.dim(),
        }
    }

    pub fn coord_kinds(&self) -> Vec<CoordKind> {
        match self {
            DomainChart::RealLine => vec![CoordKind::Linear],
            DomainChart::Circle => vec![CoordKind::Angular],
            DomainChart::RealPlane => vec![CoordKind::Linear, CoordKind::Linear],
            DomainChart::Product(l, r) => {
                let mut k = l.coord_kinds();
                k.extend(r.coord_kinds());
                k
            }
        }
    }

    /// Reduces angular coordinates to `[0, 2pi)` in place.
    pub fn normalize(&self, point: &mut [f64]) {
        for (x, kind) in point.iter_mut().zip(self.coord_kinds()) {
            if kind == CoordKind::Angular {
                *x = x.rem_euclid(TAU);
                if *x >= TAU {
                    *x = 0.0; // rem_euclid can return the modulus itself
                }
            }
        }
    }

    /// Chart distance: Euclidean on linear coordinates, arc distance on
    /// angular ones, combined as the square root of the sum of squares.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut sum = 0.0;
        for ((x, y), kind) in a.iter().zip(b).zip(self.coord_kinds()) {
            let d = match kind {
                CoordKind::Linear => x - y,
                CoordKind::Angular => {
                    let raw = (x - y).rem_euclid(TAU);
                    raw.min(TAU - raw)
                }
            };
            sum += d * d;
        }
        sum.sqrt()
    }

    /// Per-coordinate sampling box: `[-half_width, half_width]` on linear
    /// coordinates, the full turn on angular ones.
    pub fn sampling_box(&self, half_width: f64) -> Vec<(f64, f64)> {
        self.coord_kinds()
            .iter()
            .map(|k| match k {
                CoordKind::Linear => (-half_width, half_width),
                CoordKind::Angular => (0.0, TAU),
            })
            .collect()
    }
}

/// The concrete map behind an [`EmbeddingSpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    /// `t -> (t, t^2, ..., t^m)` on the line.
    Moment { degree: usize },
    /// `a -> (cos a, sin a, ..., cos ha, sin ha)` on the circle.
    Trig { harmonics: usize },
    /// `z -> (z, z^2, ..., z^m)` on the plane, complex coordinates stored
    /// as (real, imaginary) pairs.
    ComplexMoment { degree: usize },
    /// `(x, y) -> (f(x) ⊗ g(y), f(x), g(y))`, outer product flattened
    /// row-major.
    Tensor(Box<EmbeddingSpec>, Box<EmbeddingSpec>),
    /// User-supplied map on a rectangular parameter grid.
    Sampled(SampledTable),
    /// First `keep` output coordinates of the inner map.
    Truncated { inner: Box<EmbeddingSpec>, keep: usize },
    /// Central projection of the inner map from `center` (unit vector) onto
    /// the hyperplane through the origin orthogonal to `center`, expressed
    /// in hyperplane coordinates (one dimension lower).
    Projected { inner: Box<EmbeddingSpec>, center: Vec<f64> },
}

/// A map from a chart domain into `R^N`, evaluatable to first order.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSpec {
    kind: MapKind,
    domain: DomainChart,
    ambient_dim: usize,
}

/// Value and directional derivatives of a map at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Jet {
    pub value: Vec<f64>,
    /// One derivative vector per requested direction.
    pub directional_derivatives: Vec<Vec<f64>>,
}

/// The moment curve `t -> (t, t^2, ..., t^m)`.
pub fn moment_curve(m: usize) -> Result<EmbeddingSpec> {
    if m < 1 {
        return Err(Error::InvalidParameter("moment curve needs degree >= 1".into()));
    }
    Ok(EmbeddingSpec { kind: MapKind::Moment { degree: m }, domain: DomainChart::RealLine, ambient_dim: m })
}

/// The trigonometric curve `a -> (cos a, sin a, ..., cos ha, sin ha)`.
pub fn trig_curve(h: usize) -> Result<EmbeddingSpec> {
    if h < 1 {
        return Err(Error::InvalidParameter("trigonometric curve needs harmonics >= 1".into()));
    }
    Ok(EmbeddingSpec { kind: MapKind::Trig { harmonics: h }, domain: DomainChart::Circle, ambient_dim: 2 * h })
}

/// The complex moment curve `z -> (z, z^2, ..., z^m)` on `R^2 = C`.
pub fn complex_moment_curve(m: usize) -> Result<EmbeddingSpec> {
    if m < 1 {
        return Err(Error::InvalidParameter("complex moment curve needs degree >= 1".into()));
    }
    Ok(EmbeddingSpec { kind: MapKind::ComplexMoment { degree: m }, domain: DomainChart::RealPlane, ambient_dim: 2 * m })
}

/// Tensor product `(x, y) -> (f(x) ⊗ g(y), f(x), g(y))` over the product
/// chart; ambient dimension `Nf*Ng + Nf + Ng`.
pub fn tensor_product(f: EmbeddingSpec, g: EmbeddingSpec) -> EmbeddingSpec {
    let ambient_dim = f.ambient_dim * g.ambient_dim + f.ambient_dim + g.ambient_dim;
    let domain = DomainChart::Product(Box::new(f.domain.clone()), Box::new(g.domain.clone()));
    EmbeddingSpec { kind: MapKind::Tensor(Box::new(f), Box::new(g)), domain, ambient_dim }
}

/// Keeps the first `keep` output coordinates of `spec`.
pub fn truncate(spec: EmbeddingSpec, keep: usize) -> Result<EmbeddingSpec> {
    if keep < 1 || keep > spec.ambient_dim {
        return Err(Error::InvalidParameter(format!(
            "truncation must keep between 1 and {} coordinates, got {keep}",
            spec.ambient_dim
        )));
    }
    let domain = spec.domain.clone();
    Ok(EmbeddingSpec { kind: MapKind::Truncated { inner: Box::new(spec), keep }, domain, ambient_dim: keep })
}

/// Central projection of `spec` from `center` onto the hyperplane through
/// the origin orthogonal to `center` (in hyperplane coordinates). The center
/// is normalized to unit length, so it sits at distance 1 from the target
/// hyperplane along its normal.
pub fn project(spec: EmbeddingSpec, center: &[f64]) -> Result<EmbeddingSpec> {
    if center.len() != spec.ambient_dim {
        return Err(Error::DimensionMismatch { expected: spec.ambient_dim, got: center.len() });
    }
    if spec.ambient_dim < 2 {
        return Err(Error::InvalidParameter("cannot project below ambient dimension 1".into()));
    }
    let norm = center.iter().map(|c| c * c).sum::<f64>().sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return Err(Error::InvalidParameter("projection center must be a nonzero finite vector".into()));
    }
    let unit: Vec<f64> = center.iter().map(|c| c / norm).collect();
    let domain = spec.domain.clone();
    let ambient_dim = spec.ambient_dim - 1;
    Ok(EmbeddingSpec { kind: MapKind::Projected { inner: Box::new(spec), center: unit }, domain, ambient_dim })
}

/// Builds a sampled spec from CSV text with header
/// `param_1..param_n, out_1..out_N` and one grid sample per row. The
/// parameter values must form a full rectangular grid.
pub fn sampled_from_csv<R: IoRead>(reader: R) -> Result<EmbeddingSpec> {
    let table = SampledTable::from_csv(reader)?;
    let domain = chart_for_dim(table.n);
    let ambient_dim = table.ambient;
    Ok(EmbeddingSpec { kind: MapKind::Sampled(table), domain, ambient_dim })
}

fn chart_for_dim(n: usize) -> DomainChart {
    match n {
        1 => DomainChart::RealLine,
        2 => DomainChart::RealPlane,
        _ => DomainChart::Product(Box::new(DomainChart::RealLine), Box::new(chart_for_dim(n - 1))),
    }
}

impl EmbeddingSpec {
    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn domain(&self) -> &DomainChart {
        &self.domain
    }

    pub fn domain_dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Compact human-readable descriptor used in reports.
    pub fn describe(&self) -> String {
        match &self.kind {
            MapKind::Moment { degree } => format!("moment:{degree}"),
            MapKind::Trig { harmonics } => format!("trig:{harmonics}"),
            MapKind::ComplexMoment { degree } => format!("cmoment:{degree}"),
            MapKind::Tensor(f, g) => format!("tensor({},{})", f.describe(), g.describe()),
            MapKind::Sampled(t) => format!("sampled[n={},N={},cells={}]", t.n, t.ambient, t.values.len()),
            MapKind::Truncated { inner, keep } => format!("trunc:{keep}({})", inner.describe()),
            MapKind::Projected { inner, .. } => {
                format!("proj({})->dim{}", inner.describe(), self.ambient_dim)
            }
        }
    }

    /// Per-coordinate sampling box; sampled specs use their grid extent,
    /// everything else the chart default with the given half-width.
    pub fn sampling_box(&self, half_width: f64) -> Vec<(f64, f64)> {
        match &self.kind {
            MapKind::Sampled(t) => t
                .axes
                .iter()
                .map(|axis| (axis[0], *axis.last().unwrap()))
                .collect(),
            MapKind::Truncated { inner, .. } | MapKind::Projected { inner, .. } => {
                inner.sampling_box(half_width)
            }
            _ => self.domain.sampling_box(half_width),
        }
    }

    /// True when the jet is a polynomial with rational coefficients, so the
    /// exact evaluation path applies.
    pub fn supports_exact(&self) -> bool {
        match &self.kind {
            MapKind::Moment { .. } | MapKind::ComplexMoment { .. } => true,
            MapKind::Tensor(f, g) => f.supports_exact() && g.supports_exact(),
            MapKind::Truncated { inner, .. } => inner.supports_exact(),
            MapKind::Trig { .. } | MapKind::Sampled(_) | MapKind::Projected { .. } => false,
        }
    }
}

/// Evaluates value and directional derivatives of `spec` at a chart point.
pub fn evaluate_jet(spec: &EmbeddingSpec, point: &[f64], directions: &[Vec<f64>]) -> Result<Jet> {
    let n = spec.domain_dim();
    if point.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: point.len() });
    }
    for u in directions {
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: u.len() });
        }
        if u.iter().all(|x| *x == 0.0) {
            return Err(Error::DegenerateDirection);
        }
    }
    let mut p = point.to_vec();
    spec.domain.normalize(&mut p);
    jet_impl(spec, &p, directions)
}

fn jet_impl(spec: &EmbeddingSpec, point: &[f64], directions: &[Vec<f64>]) -> Result<Jet> {
    match &spec.kind {
        MapKind::Moment { degree } => {
            let t = point[0];
            let m = *degree;
            // powers by iterated multiplication
            let mut value = Vec::with_capacity(m);
            let mut grad = Vec::with_capacity(m);
            let mut tp = 1.0; // t^(j-1)
            for j in 1..=m {
                grad.push(j as f64 * tp);
                tp *= t;
                value.push(tp);
            }
            let derivs = directions
                .iter()
                .map(|u| grad.iter().map(|g| g * u[0]).collect())
                .collect();
            Ok(Jet { value, directional_derivatives: derivs })
        }
        MapKind::Trig { harmonics } => {
            let a = point[0];
            let h = *harmonics;
            let mut value = Vec::with_capacity(2 * h);
            let mut grad = Vec::with_capacity(2 * h);
            for i in 1..=h {
                let (s, c) = (i as f64 * a).sin_cos();
                value.push(c);
                value.push(s);
                grad.push(-(i as f64) * s);
                grad.push(i as f64 * c);
            }
            let derivs = directions
                .iter()
                .map(|u| grad.iter().map(|g| g * u[0]).collect())
                .collect();
            Ok(Jet { value, directional_derivatives: derivs })
        }
        MapKind::ComplexMoment { degree } => {
            let m = *degree;
            let z = (point[0], point[1]);
            // w_j = z^j for j = 0..=m
            let mut w = vec![(1.0, 0.0)];
            for j in 1..=m {
                w.push(cmul(w[j - 1], z));
            }
            let mut value = Vec::with_capacity(2 * m);
            for wj in w.iter().skip(1) {
                value.push(wj.0);
                value.push(wj.1);
            }
            let derivs = directions
                .iter()
                .map(|u| {
                    let xi = (u[0], u[1]);
                    let mut d = Vec::with_capacity(2 * m);
                    for j in 1..=m {
                        // d/dz z^j = j z^(j-1), applied to xi
                        let c = cmul(w[j - 1], xi);
                        d.push(j as f64 * c.0);
                        d.push(j as f64 * c.1);
                    }
                    d
                })
                .collect();
            Ok(Jet { value, directional_derivatives: derivs })
        }
        MapKind::Tensor(f, g) => {
            let nf = f.domain_dim();
            let (px, py) = point.split_at(nf);
            let (ux, uy): (Vec<Vec<f64>>, Vec<Vec<f64>>) = directions
                .iter()
                .map(|u| {
                    let (a, b) = u.split_at(nf);
                    (a.to_vec(), b.to_vec())
                })
                .unzip();
            let jf = jet_impl(f, px, &ux)?;
            let jg = jet_impl(g, py, &uy)?;
            let x = &jf.value;
            let y = &jg.value;
            let mut value = outer_flatten(x, y);
            value.extend_from_slice(x);
            value.extend_from_slice(y);
            let derivs = (0..directions.len())
                .map(|i| {
                    let u = &jf.directional_derivatives[i];
                    let v = &jg.directional_derivatives[i];
                    // (u ⊗ y + x ⊗ v, u, v)
                    let mut d = outer_flatten(u, y);
                    for (slot, extra) in d.iter_mut().zip(outer_flatten(x, v)) {
                        *slot += extra;
                    }
                    d.extend_from_slice(u);
                    d.extend_from_slice(v);
                    d
                })
                .collect();
            Ok(Jet { value, directional_derivatives: derivs })
        }
        MapKind::Sampled(table) => table.jet(point, directions),
        MapKind::Truncated { inner, keep } => {
            let mut jet = jet_impl(inner, point, directions)?;
            jet.value.truncate(*keep);
            for d in &mut jet.directional_derivatives {
                d.truncate(*keep);
            }
            Ok(jet)
        }
        MapKind::Projected { inner, center } => {
            let jet = jet_impl(inner, point, directions)?;
            project_jet(&jet, center)
        }
    }
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Row-major flattening of the outer product `x ⊗ y`.
fn outer_flatten(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for xi in x {
        for yj in y {
            out.push(xi * yj);
        }
    }
    out
}

/// Applies the central projection with unit center `a` to a jet in `R^N` and
/// expresses the result in coordinates on the target hyperplane
/// `{x : <a, x> = 0}` (dimension `N - 1`).
fn project_jet(jet: &Jet, a: &[f64]) -> Result<Jet> {
    let n = a.len();
    let y = &jet.value;
    let denom = 1.0 - dot(a, y);
    if denom.abs() < PROJECTION_SINGULARITY_EPS {
        return Err(Error::ProjectionSingularity);
    }
    // pi(y) = a + (y - a) / (1 - <a, y>) lands on the hyperplane
    let image: Vec<f64> = (0..n).map(|i| a[i] + (y[i] - a[i]) / denom).collect();
    // d pi_y(w) = w / denom + (y - a) <a, w> / denom^2, tangent to the hyperplane
    let dimages: Vec<Vec<f64>> = jet
        .directional_derivatives
        .iter()
        .map(|w| {
            let aw = dot(a, w);
            (0..n).map(|i| w[i] / denom + (y[i] - a[i]) * aw / (denom * denom)).collect()
        })
        .collect();

    // Householder coordinates: reflect so the center maps to +-e_N, then the
    // hyperplane maps to the span of e_1..e_{N-1} and the last coordinate of
    // every projected vector vanishes.
    let sign = if a[n - 1] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = a.to_vec();
    v[n - 1] += sign;
    let vv = dot(&v, &v);
    let reflect = |x: &[f64]| -> Vec<f64> {
        let factor = 2.0 * dot(&v, x) / vv;
        let mut out: Vec<f64> = x.iter().zip(&v).map(|(xi, vi)| xi - factor * vi).collect();
        out.truncate(n - 1);
        out
    };
    Ok(Jet {
        value: reflect(&image),
        directional_derivatives: dimages.iter().map(|d| reflect(d)).collect(),
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact jet over the rationals for polynomial map kinds. Returns
/// `NotRational` for kinds with transcendental or tabulated coordinates.
pub fn evaluate_jet_exact(
    spec: &EmbeddingSpec,
    point: &[BigRational],
    directions: &[Vec<BigRational>],
) -> Result<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = spec.domain_dim();
    if point.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: point.len() });
    }
    for u in directions {
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: u.len() });
        }
        if u.iter().all(Zero::is_zero) {
            return Err(Error::DegenerateDirection);
        }
    }
    exact_jet_impl(spec, point, directions)
}

fn exact_jet_impl(
    spec: &EmbeddingSpec,
    point: &[BigRational],
    directions: &[Vec<BigRational>],
) -> Result<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    match &spec.kind {
        MapKind::Moment { degree } => {
            let m = *degree;
            let t = &point[0];
            let mut value = Vec::with_capacity(m);
            let mut grad = Vec::with_capacity(m);
            let mut tp = BigRational::one();
            for j in 1..=m {
                grad.push(BigRational::from_integer(BigInt::from(j)) * &tp);
                tp *= t;
                value.push(tp.clone());
            }
            let derivs = directions
                .iter()
                .map(|u| grad.iter().map(|g| g * &u[0]).collect())
                .collect();
            Ok((value, derivs))
        }
        MapKind::ComplexMoment { degree } => {
            let m = *degree;
            let z = (point[0].clone(), point[1].clone());
            let mut w = vec![(BigRational::one(), BigRational::zero())];
            for j in 1..=m {
                let prev = &w[j - 1];
                w.push((
                    &prev.0 * &z.0 - &prev.1 * &z.1,
                    &prev.0 * &z.1 + &prev.1 * &z.0,
                ));
            }
            let mut value = Vec::with_capacity(2 * m);
            for wj in w.iter().skip(1) {
                value.push(wj.0.clone());
                value.push(wj.1.clone());
            }
            let derivs = directions
                .iter()
                .map(|u| {
                    let xi = (&u[0], &u[1]);
                    let mut d = Vec::with_capacity(2 * m);
                    for j in 1..=m {
                        let jf = BigRational::from_integer(BigInt::from(j));
                        let re = &w[j - 1].0 * xi.0 - &w[j - 1].1 * xi.1;
                        let im = &w[j - 1].0 * xi.1 + &w[j - 1].1 * xi.0;
                        d.push(&jf * re);
                        d.push(&jf * im);
                    }
                    d
                })
                .collect();
            Ok((value, derivs))
        }
        MapKind::Tensor(f, g) => {
            let nf = f.domain_dim();
            let (px, py) = point.split_at(nf);
            let (ux, uy): (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) = directions
                .iter()
                .map(|u| {
                    let (a, b) = u.split_at(nf);
                    (a.to_vec(), b.to_vec())
                })
                .unzip();
            let (x, dx) = exact_jet_impl(f, px, &ux)?;
            let (y, dy) = exact_jet_impl(g, py, &uy)?;
            let mut value = outer_flatten_exact(&x, &y);
            value.extend_from_slice(&x);
            value.extend_from_slice(&y);
            let derivs = (0..directions.len())
                .map(|i| {
                    let u = &dx[i];
                    let v = &dy[i];
                    let mut d = outer_flatten_exact(u, &y);
                    for (slot, extra) in d.iter_mut().zip(outer_flatten_exact(&x, v)) {
                        *slot += extra;
                    }
                    d.extend_from_slice(u);
                    d.extend_from_slice(v);
                    d
                })
                .collect();
            Ok((value, derivs))
        }
        MapKind::Truncated { inner, keep } => {
            let (mut value, mut derivs) = exact_jet_impl(inner, point, directions)?;
            value.truncate(*keep);
            for d in &mut derivs {
                d.truncate(*keep);
            }
            Ok((value, derivs))
        }
        MapKind::Trig { .. } | MapKind::Sampled(_) | MapKind::Projected { .. } => {
            Err(Error::NotRational)
        }
    }
}

fn outer_flatten_exact(x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for xi in x {
        for yj in y {
            out.push(xi * yj);
        }
    }
    out
}

/// A choice of `k` through points and `l` tangency points with direction
/// sets, the object regularity quantifies over.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Configuration {
    pub through_points: Vec<Vec<f64>>,
    pub tangency_points: Vec<Vec<f64>>,
    /// `directions[i]` is the direction set at `tangency_points[i]`: a single
    /// vector for a tangent line, or several for a tangent subspace.
    pub directions: Vec<Vec<Vec<f64>>>,
}

impl Configuration {
    pub fn new(
        through_points: Vec<Vec<f64>>,
        tangency_points: Vec<Vec<f64>>,
        directions: Vec<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        if tangency_points.len() != directions.len() {
            return Err(Error::DimensionMismatch {
                expected: tangency_points.len(),
                got: directions.len(),
            });
        }
        Ok(Self { through_points, tangency_points, directions })
    }

    pub fn k(&self) -> usize {
        self.through_points.len()
    }

    pub fn l(&self) -> usize {
        self.tangency_points.len()
    }

    /// All `k + l` chart points in configuration order.
    pub fn all_points(&self) -> impl Iterator<Item = &Vec<f64>> {
        self.through_points.iter().chain(self.tangency_points.iter())
    }

    /// Wraps angular coordinates into their canonical range.
    pub fn normalize(&mut self, chart: &DomainChart) {
        for p in self.through_points.iter_mut().chain(self.tangency_points.iter_mut()) {
            chart.normalize(p);
        }
    }

    /// Checks emptiness, coordinate dimensions, pairwise distinctness at
    /// `delta_min` in chart distance, and nonzero direction sets.
    pub fn validate(&self, chart: &DomainChart, delta_min: f64) -> Result<()> {
        if self.k() == 0 && self.l() == 0 {
            return Err(Error::EmptyConfiguration);
        }
        let n = chart.dim();
        for p in self.all_points() {
            if p.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: p.len() });
            }
        }
        for group in &self.directions {
            if group.is_empty() {
                return Err(Error::DegenerateDirection);
            }
            for u in group {
                if u.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: u.len() });
                }
                if u.iter().all(|x| *x == 0.0) {
                    return Err(Error::DegenerateDirection);
                }
            }
            if group.len() > n {
                return Err(Error::InvalidParameter(format!(
                    "direction set of size {} exceeds chart dimension {n}",
                    group.len()
                )));
            }
        }
        let pts: Vec<&Vec<f64>> = self.all_points().collect();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let d = chart.distance(pts[i], pts[j]);
                if d < delta_min {
                    return Err(Error::DistinctnessViolation { distance: d, min_required: delta_min });
                }
            }
        }
        Ok(())
    }

    /// Reads a configuration from CSV rows `role, p_1..p_n[, u_1..u_n]` where
    /// role is `x` (through point, n fields) or `y` (tangency point with one
    /// direction, 2n fields). Consecutive `y` rows with identical point
    /// coordinates merge into one tangency point with a direction set.
    pub fn from_csv<R: IoRead>(reader: R, n: usize) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let mut through = Vec::new();
        let mut tangency: Vec<Vec<f64>> = Vec::new();
        let mut directions: Vec<Vec<Vec<f64>>> = Vec::new();
        for (idx, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Csv(format!("row {}: {e}", idx + 1)))?;
            if record.is_empty() || (record.len() == 1 && record[0].is_empty()) {
                continue;
            }
            let role = &record[0];
            let nums: Vec<f64> = record
                .iter()
                .skip(1)
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| Error::Csv(format!("row {}: bad number {s:?}", idx + 1)))
                })
                .collect::<Result<_>>()?;
            match role {
                "x" => {
                    if nums.len() != n {
                        return Err(Error::Csv(format!(
                            "row {}: through point needs {n} coordinates, got {}",
                            idx + 1,
                            nums.len()
                        )));
                    }
                    through.push(nums);
                }
                "y" => {
                    if nums.len() != 2 * n {
                        return Err(Error::Csv(format!(
                            "row {}: tangency row needs {} fields (point then direction), got {}",
                            idx + 1,
                            2 * n,
                            nums.len()
                        )));
                    }
                    let (p, u) = nums.split_at(n);
                    if tangency.last().map(Vec::as_slice) == Some(p) {
                        directions.last_mut().unwrap().push(u.to_vec());
                    } else {
                        tangency.push(p.to_vec());
                        directions.push(vec![u.to_vec()]);
                    }
                }
                other => {
                    return Err(Error::Csv(format!("row {}: unknown role {other:?}", idx + 1)));
                }
            }
        }
        Configuration::new(through, tangency, directions)
    }
}

/// Configuration with exact rational coordinates, for certificate-grade
/// checks.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactConfiguration {
    pub through_points: Vec<Vec<BigRational>>,
    pub tangency_points: Vec<Vec<BigRational>>,
    pub directions: Vec<Vec<Vec<BigRational>>>,
}

impl ExactConfiguration {
    /// Exact rationalization of a float configuration (always possible:
    /// every finite float is rational).
    pub fn from_configuration(config: &Configuration) -> Result<Self> {
        let conv = |pts: &[Vec<f64>]| -> Result<Vec<Vec<BigRational>>> {
            pts.iter()
                .map(|p| p.iter().map(|x| rational_from_f64(*x)).collect())
                .collect()
        };
        Ok(Self {
            through_points: conv(&config.through_points)?,
            tangency_points: conv(&config.tangency_points)?,
            directions: config
                .directions
                .iter()
                .map(|group| conv(group))
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_configuration(&self) -> Configuration {
        let conv = |pts: &[Vec<BigRational>]| -> Vec<Vec<f64>> {
            pts.iter()
                .map(|p| p.iter().map(crate::rational::rational_to_f64).collect())
                .collect()
        };
        Configuration {
            through_points: conv(&self.through_points),
            tangency_points: conv(&self.tangency_points),
            directions: self.directions.iter().map(|g| conv(g)).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.through_points.len()
    }

    pub fn l(&self) -> usize {
        self.tangency_points.len()
    }
}

/// Map values tabulated on a rectangular parameter grid, evaluated by
/// multilinear interpolation with finite-difference derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledTable {
    /// Sorted distinct values per parameter axis.
    axes: Vec<Vec<f64>>,
    /// Output vectors in row-major grid order (last axis fastest).
    values: Vec<Vec<f64>>,
    n: usize,
    ambient: usize,
    fd_step: f64,
}

/// Default finite-difference step for sampled-map derivatives.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

impl SampledTable {
    pub fn from_csv<R: IoRead>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Csv(e.to_string()))?.clone();
        let mut n = 0;
        let mut ambient = 0;
        for (i, h) in headers.iter().enumerate() {
            if h == format!("param_{}", i + 1) {
                if ambient > 0 {
                    return Err(Error::Csv("parameter columns must precede output columns".into()));
                }
                n += 1;
            } else if h == format!("out_{}", i - n + 1) {
                ambient += 1;
            } else {
                return Err(Error::Csv(format!("unexpected header column {h:?}")));
            }
        }
        if n == 0 || ambient == 0 {
            return Err(Error::Csv("need at least one param_* and one out_* column".into()));
        }

        let mut rows: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
        for (idx, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Csv(format!("row {}: {e}", idx + 2)))?;
            if record.len() != n + ambient {
                return Err(Error::Csv(format!(
                    "row {}: expected {} fields, got {}",
                    idx + 2,
                    n + ambient,
                    record.len()
                )));
            }
            let nums: Vec<f64> = record
                .iter()
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| Error::Csv(format!("row {}: bad number {s:?}", idx + 2)))
                })
                .collect::<Result<_>>()?;
            let (p, out) = nums.split_at(n);
            rows.push((p.to_vec(), out.to_vec()));
        }
        if rows.is_empty() {
            return Err(Error::Csv("no data rows".into()));
        }

        // distinct sorted values per axis (exact float identity: grid files
        // are generated, not measured)
        let mut axes: Vec<Vec<f64>> = vec![Vec::new(); n];
        for (p, _) in &rows {
            for (axis, x) in axes.iter_mut().zip(p) {
                if !axis.contains(x) {
                    axis.push(*x);
                }
            }
        }
        for axis in &mut axes {
            axis.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if axis.len() < 2 {
                return Err(Error::Csv("each parameter axis needs at least 2 grid values".into()));
            }
        }
        let total: usize = axes.iter().map(Vec::len).product();
        if rows.len() != total {
            return Err(Error::Csv(format!(
                "non-rectangular grid: {} rows but axes imply {total}",
                rows.len()
            )));
        }

        let mut values = vec![Vec::new(); total];
        for (p, out) in rows {
            let mut flat = 0;
            for (axis, x) in axes.iter().zip(&p) {
                let pos = axis
                    .iter()
                    .position(|v| v == x)
                    .expect("axis values were collected from the rows");
                flat = flat * axis.len() + pos;
            }
            if !values[flat].is_empty() {
                return Err(Error::Csv(format!("duplicate grid sample at {p:?}")));
            }
            values[flat] = out;
        }
        if let Some(missing) = values.iter().position(Vec::is_empty) {
            return Err(Error::Csv(format!("missing grid sample (flat index {missing})")));
        }

        Ok(Self { axes, values, n, ambient, fd_step: DEFAULT_FD_STEP })
    }

    pub fn with_fd_step(mut self, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidParameter(format!("fd step must be positive, got {step}")));
        }
        self.fd_step = step;
        Ok(self)
    }

    fn in_domain(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(&self.axes)
            .all(|(x, axis)| *x >= axis[0] && *x <= *axis.last().unwrap())
    }

    /// Multilinear interpolation at an in-domain point.
    fn interpolate(&self, p: &[f64]) -> Result<Vec<f64>> {
        if !self.in_domain(p) {
            return Err(Error::OutOfDomain(format!("{p:?} outside sampled grid")));
        }
        // cell index and fractional coordinate per axis
        let mut cell = Vec::with_capacity(self.n);
        let mut frac = Vec::with_capacity(self.n);
        for (x, axis) in p.iter().zip(&self.axes) {
            let hi = axis.partition_point(|v| v <= x).min(axis.len() - 1).max(1);
            let lo = hi - 1;
            cell.push(lo);
            frac.push((x - axis[lo]) / (axis[hi] - axis[lo]));
        }
        let mut acc = vec![0.0; self.ambient];
        for corner in 0..(1usize << self.n) {
            let mut weight = 1.0;
            let mut flat = 0;
            for axis_idx in 0..self.n {
                let up = (corner >> axis_idx) & 1 == 1;
                weight *= if up { frac[axis_idx] } else { 1.0 - frac[axis_idx] };
                flat = flat * self.axes[axis_idx].len() + cell[axis_idx] + usize::from(up);
            }
            if weight == 0.0 {
                continue;
            }
            for (a, v) in acc.iter_mut().zip(&self.values[flat]) {
                *a += weight * v;
            }
        }
        Ok(acc)
    }

    /// Value plus centered finite-difference directional derivatives,
    /// degrading to one-sided stencils at the grid boundary.
    fn jet(&self, point: &[f64], directions: &[Vec<f64>]) -> Result<Jet> {
        let value = self.interpolate(point)?;
        let h = self.fd_step;
        let shift = |sign: f64, u: &[f64]| -> Vec<f64> {
            point.iter().zip(u).map(|(x, ui)| x + sign * h * ui).collect()
        };
        let mut derivs = Vec::with_capacity(directions.len());
        for u in directions {
            let plus = shift(1.0, u);
            let minus = shift(-1.0, u);
            let d = match (self.in_domain(&plus), self.in_domain(&minus)) {
                (true, true) => {
                    let fp = self.interpolate(&plus)?;
                    let fm = self.interpolate(&minus)?;
                    fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * h)).collect()
                }
                (true, false) => {
                    let fp = self.interpolate(&plus)?;
                    fp.iter().zip(&value).map(|(a, b)| (a - b) / h).collect()
                }
                (false, true) => {
                    let fm = self.interpolate(&minus)?;
                    value.iter().zip(&fm).map(|(a, b)| (a - b) / h).collect()
                }
                (false, false) => {
                    return Err(Error::OutOfDomain(
                        "finite-difference stencil does not fit in the sampled grid".into(),
                    ))
                }
            };
            derivs.push(d);
        }
        Ok(Jet { value, directional_derivatives: derivs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn assert_vec_eq(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len(), "length mismatch: {got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{got:?} != {want:?}");
        }
    }

    #[test]
    fn moment_curve_jets() {
        let spec = moment_curve(3).unwrap();
        assert_eq!((spec.domain_dim(), spec.ambient_dim()), (1, 3));
        let jet = evaluate_jet(&spec, &[1.0], &[vec![1.0]]).unwrap();
        assert_vec_eq(&jet.value, &[1.0, 1.0, 1.0], 0.0);
        assert_vec_eq(&jet.directional_derivatives[0], &[1.0, 2.0, 3.0], 0.0);

        let spec = moment_curve(2).unwrap();
        let jet = evaluate_jet(&spec, &[0.0], &[vec![1.0]]).unwrap();
        assert_vec_eq(&jet.value, &[0.0, 0.0], 0.0);
        assert_vec_eq(&jet.directional_derivatives[0], &[1.0, 0.0], 0.0);

        let spec = moment_curve(1).unwrap();
        let jet = evaluate_jet(&spec, &[5.0], &[vec![1.0]]).unwrap();
        assert_vec_eq(&jet.value, &[5.0], 0.0);
        assert_vec_eq(&jet.directional_derivatives[0], &[1.0], 0.0);

        assert!(moment_curve(0).is_err());
        assert!(matches!(
            evaluate_jet(&spec, &[1.0], &[vec![0.0]]),
            Err(Error::DegenerateDirection)
        ));
    }

    #[test]
    fn trig_curve_jets() {
        let spec = trig_curve(1).unwrap();
        assert_eq!(spec.ambient_dim(), 2);
        let jet = evaluate_jet(&spec, &[0.0], &[vec![1.0]]).unwrap();
        assert_vec_eq(&jet.value, &[1.0, 0.0], 0.0);
        assert_vec_eq(&jet.directional_derivatives[0], &[0.0, 1.0], 0.0);

        let spec = trig_curve(2).unwrap();
        let jet = evaluate_jet(&spec, &[FRAC_PI_2], &[vec![1.0]]).unwrap();
        assert_vec_eq(&jet.value, &[0.0, 1.0, -1.0, 0.0], 1e-15);
        assert_vec_eq(&jet.directional_derivatives[0], &[-1.0, 0.0, 0.0, -2.0], 1e-15);

        // periodicity: 2*pi wraps to 0
        let a = evaluate_jet(&spec, &[TAU], &[vec![1.0]]).unwrap();
        let b = evaluate_jet(&spec, &[0.0], &[vec![1.0]]).unwrap();
        assert_vec_eq(&a.value, &b.value, 1e-15);
        assert_vec_eq(
            &a.directional_derivatives[0],
            &b.directional_derivatives[0],
            1e-15,
        );

        let jet = evaluate_jet(&trig_curve(1).unwrap(), &[PI], &[vec![1.0]]).unwrap();
        assert_vec_eq(&jet.value, &[-1.0, 0.0], 1e-15);
        assert_vec_eq(&jet.directional_derivatives[0], &[0.0, -1.0], 1e-15);
    }

    #[test]
    fn complex_moment_jets() {
        let spec = complex_moment_curve(1).unwrap();
        let jet = evaluate_jet(&spec, &[3.0, 4.0], &[vec![1.0, 0.0]]).unwrap();
        assert_vec_eq(&jet.value, &[3.0, 4.0], 0.0);
        assert_vec_eq(&jet.directional_derivatives[0], &[1.0, 0.0], 0.0);

        let spec = complex_moment_curve(2).unwrap();
        let jet = evaluate_jet(&spec, &[0.0, 1.0], &[vec![1.0, 0.0]]).unwrap();
        assert_vec_eq(&jet.value, &[0.0, 1.0, -1.0, 0.0], 0.0);
        // derivative of (z, z^2) at z=i along 1 is (1, 2i)
        assert_vec_eq(&jet.directional_derivatives[0], &[1.0, 0.0, 0.0, 2.0], 0.0);
    }

    #[test]
    fn cauchy_riemann_rotation() {
        // derivative along i*xi equals i times derivative along xi
        let spec = complex_moment_curve(3).unwrap();
        let jet = evaluate_jet(
            &spec,
            &[0.3, -0.7],
            &[vec![1.0, 0.0], vec![0.0, 1.0]],
        )
        .unwrap();
        let d1 = &jet.directional_derivatives[0];
        let di = &jet.directional_derivatives[1];
        for j in 0..3 {
            // multiplication by i: (re, im) -> (-im, re)
            assert_relative_eq!(di[2 * j], -d1[2 * j + 1], max_relative = 1e-12);
            assert_relative_eq!(di[2 * j + 1], d1[2 * j], max_relative = 1e-12);
        }
    }

    #[test]
    fn tensor_product_jets() {
        let f = moment_curve(1).unwrap();
        let g = moment_curve(1).unwrap();
        let spec = tensor_product(f, g);
        assert_eq!(spec.ambient_dim(), 3);
        assert_eq!(spec.domain_dim(), 2);

        let jet = evaluate_jet(&spec, &[2.0, 3.0], &[vec![1.0, 0.0]]).unwrap();
        assert_vec_eq(&jet.value, &[6.0, 2.0, 3.0], 0.0);
        assert_vec_eq(&jet.directional_derivatives[0], &[3.0, 1.0, 0.0], 0.0);

        let jet = evaluate_jet(&spec, &[0.0, 0.0], &[vec![1.0, 1.0]]).unwrap();
        assert_vec_eq(&jet.value, &[0.0, 0.0, 0.0], 0.0);

        // nested tensor dimension bookkeeping: N = Nf*Ng + Nf + Ng
        let inner = tensor_product(moment_curve(2).unwrap(), moment_curve(2).unwrap());
        assert_eq!(inner.ambient_dim(), 8);
        let nested = tensor_product(inner, moment_curve(3).unwrap());
        assert_eq!(nested.ambient_dim(), 8 * 3 + 8 + 3);
        assert_eq!(nested.domain_dim(), 3);
    }

    #[test]
    fn tensor_jet_matches_explicit_formula() {
        let spec = tensor_product(moment_curve(2).unwrap(), moment_curve(3).unwrap());
        let (s, t) = (0.4, -0.8);
        let (us, ut) = (0.9, 0.3);
        let jet = evaluate_jet(&spec, &[s, t], &[vec![us, ut]]).unwrap();

        let x = [s, s * s];
        let y = [t, t * t, t * t * t];
        let u = [us, 2.0 * s * us];
        let v = [ut, 2.0 * t * ut, 3.0 * t * t * ut];
        let mut want_val = outer_flatten(&x, &y);
        want_val.extend_from_slice(&x);
        want_val.extend_from_slice(&y);
        let mut want_der = outer_flatten(&u, &y);
        for (slot, extra) in want_der.iter_mut().zip(outer_flatten(&x, &v)) {
            *slot += extra;
        }
        want_der.extend_from_slice(&u);
        want_der.extend_from_slice(&v);

        assert_vec_eq(&jet.value, &want_val, 1e-14);
        assert_vec_eq(&jet.directional_derivatives[0], &want_der, 1e-14);
    }

    #[test]
    fn truncation_keeps_prefix() {
        let spec = truncate(trig_curve(2).unwrap(), 3).unwrap();
        assert_eq!(spec.ambient_dim(), 3);
        let jet = evaluate_jet(&spec, &[FRAC_PI_2], &[vec![1.0]]).unwrap();
        assert_vec_eq(&jet.value, &[0.0, 1.0, -1.0], 1e-15);
        assert_vec_eq(&jet.directional_derivatives[0], &[-1.0, 0.0, 0.0], 1e-15);
        assert!(truncate(trig_curve(2).unwrap(), 0).is_err());
        assert!(truncate(trig_curve(2).unwrap(), 5).is_err());
    }

    #[test]
    fn projection_from_axis_center_deletes_flat_coordinate() {
        // map with constant zero last coordinate, supplied as a sampled grid
        let csv = "\
param_1,out_1,out_2,out_3
-1,-1,1,0
-0.5,-0.5,0.25,0
0,0,0,0
0.5,0.5,0.25,0
1,1,1,0
";
        let spec = sampled_from_csv(csv.as_bytes()).unwrap();
        let projected = project(spec, &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(projected.ambient_dim(), 2);
        for t in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let jet = evaluate_jet(&projected, &[t], &[vec![1.0]]).unwrap();
            assert_vec_eq(&jet.value, &[t, t * t], 1e-12);
        }
    }

    #[test]
    fn projection_singularity_detected() {
        // moment value at t = 1 is (1, 1); center along (1, 1)/sqrt(2) has
        // <a, f(t)> = sqrt(2) != 1, so pick the center so that <a, f(1)> = 1:
        // a = (1, 1)/2 is not unit; instead use a = (1, 0) and t = 1 where
        // f(t) = (1, 1) gives <a, f> = 1 exactly.
        let spec = moment_curve(2).unwrap();
        let projected = project(spec, &[1.0, 0.0]).unwrap();
        assert!(matches!(
            evaluate_jet(&projected, &[1.0], &[vec![1.0]]),
            Err(Error::ProjectionSingularity)
        ));
        // away from the singular locus everything is finite
        let jet = evaluate_jet(&projected, &[0.5], &[vec![1.0]]).unwrap();
        assert!(jet.value.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn projected_jet_matches_finite_differences() {
        let spec = project(moment_curve(3).unwrap(), &[0.2, -0.4, 0.7]).unwrap();
        let h = 1e-6;
        for t in [-0.9, -0.3, 0.2, 0.8] {
            let jet = evaluate_jet(&spec, &[t], &[vec![1.0]]).unwrap();
            let plus = evaluate_jet(&spec, &[t + h], &[vec![1.0]]).unwrap();
            let minus = evaluate_jet(&spec, &[t - h], &[vec![1.0]]).unwrap();
            for i in 0..spec.ambient_dim() {
                let fd = (plus.value[i] - minus.value[i]) / (2.0 * h);
                assert!(
                    (jet.directional_derivatives[0][i] - fd).abs()
                        <= 1e-6 * (1.0 + fd.abs()),
                    "t={t}, coord {i}: analytic {} vs fd {fd}",
                    jet.directional_derivatives[0][i]
                );
            }
        }
    }

    #[test]
    fn chart_distances() {
        let line = DomainChart::RealLine;
        assert_relative_eq!(line.distance(&[1.0], &[-2.0]), 3.0);

        let circle = DomainChart::Circle;
        assert_relative_eq!(circle.distance(&[0.1], &[TAU - 0.1]), 0.2, epsilon = 1e-12);
        assert_relative_eq!(circle.distance(&[0.0], &[PI]), PI);

        let plane = DomainChart::RealPlane;
        assert_relative_eq!(plane.distance(&[0.0, 0.0], &[3.0, 4.0]), 5.0);

        let prod = DomainChart::Product(
            Box::new(DomainChart::RealLine),
            Box::new(DomainChart::Circle),
        );
        assert_eq!(prod.dim(), 2);
        assert_relative_eq!(
            prod.distance(&[0.0, 0.1], &[3.0, TAU - 0.1]),
            (9.0f64 + 0.04).sqrt(),
            epsilon = 1e-12
        );

        let mut p = vec![TAU + 1.0];
        DomainChart::Circle.normalize(&mut p);
        assert_relative_eq!(p[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn configuration_validation() {
        let chart = DomainChart::RealLine;
        let good = Configuration::new(
            vec![vec![0.0], vec![1.0]],
            vec![vec![0.5]],
            vec![vec![vec![1.0]]],
        )
        .unwrap();
        good.validate(&chart, 1e-6).unwrap();

        let empty = Configuration::new(vec![], vec![], vec![]).unwrap();
        assert!(matches!(empty.validate(&chart, 1e-6), Err(Error::EmptyConfiguration)));

        let close = Configuration::new(vec![vec![0.0], vec![1e-9]], vec![], vec![]).unwrap();
        assert!(matches!(
            close.validate(&chart, 1e-6),
            Err(Error::DistinctnessViolation { .. })
        ));

        // circle wrap-around distance counts
        let circle = DomainChart::Circle;
        let wrapped =
            Configuration::new(vec![vec![0.0], vec![TAU - 1e-9]], vec![], vec![]).unwrap();
        assert!(matches!(
            wrapped.validate(&circle, 1e-6),
            Err(Error::DistinctnessViolation { .. })
        ));

        let zero_dir = Configuration::new(
            vec![],
            vec![vec![0.0], vec![1.0]],
            vec![vec![vec![0.0]], vec![vec![1.0]]],
        )
        .unwrap();
        assert!(matches!(
            zero_dir.validate(&chart, 1e-6),
            Err(Error::DegenerateDirection)
        ));

        let too_many = Configuration::new(
            vec![],
            vec![vec![0.0]],
            vec![vec![vec![1.0], vec![-1.0]]],
        )
        .unwrap();
        assert!(matches!(too_many.validate(&chart, 1e-6), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn configuration_csv_round_trip() {
        let csv = "\
x,0.5
y,0,1
x,-0.25
";
        let config = Configuration::from_csv(csv.as_bytes(), 1).unwrap();
        assert_eq!(config.k(), 2);
        assert_eq!(config.l(), 1);
        assert_eq!(config.through_points, vec![vec![0.5], vec![-0.25]]);
        assert_eq!(config.tangency_points, vec![vec![0.0]]);
        assert_eq!(config.directions, vec![vec![vec![1.0]]]);

        // repeated y point merges into a direction set (plane chart)
        let csv = "\
y,0,0,1,0
y,0,0,0,1
";
        let config = Configuration::from_csv(csv.as_bytes(), 2).unwrap();
        assert_eq!(config.l(), 1);
        assert_eq!(config.directions[0].len(), 2);

        assert!(Configuration::from_csv("z,1".as_bytes(), 1).is_err());
        assert!(Configuration::from_csv("x,not_a_number".as_bytes(), 1).is_err());
        assert!(Configuration::from_csv("x,1,2".as_bytes(), 1).is_err());
    }

    #[test]
    fn sampled_table_ingestion_and_interpolation() {
        let csv = "\
param_1,param_2,out_1
0,0,0
0,1,1
1,0,2
1,1,3
";
        let spec = sampled_from_csv(csv.as_bytes()).unwrap();
        assert_eq!(spec.domain_dim(), 2);
        assert_eq!(spec.ambient_dim(), 1);
        // bilinear: f(x, y) = 2x + y on this grid
        let jet = evaluate_jet(&spec, &[0.5, 0.5], &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_relative_eq!(jet.value[0], 1.5);
        assert_relative_eq!(jet.directional_derivatives[0][0], 2.0, epsilon = 1e-9);
        assert_relative_eq!(jet.directional_derivatives[1][0], 1.0, epsilon = 1e-9);

        // boundary jet falls back to one-sided differences
        let jet = evaluate_jet(&spec, &[0.0, 0.0], &[vec![1.0, 0.0]]).unwrap();
        assert_relative_eq!(jet.directional_derivatives[0][0], 2.0, epsilon = 1e-9);

        assert!(matches!(
            evaluate_jet(&spec, &[2.0, 0.0], &[vec![1.0, 0.0]]),
            Err(Error::OutOfDomain(_))
        ));

        // non-rectangular grid is rejected
        let bad = "\
param_1,param_2,out_1
0,0,0
0,1,1
1,0,2
";
        assert!(SampledTable::from_csv(bad.as_bytes()).is_err());

        // duplicate sample is rejected
        let dup = "\
param_1,out_1
0,0
0,1
";
        assert!(SampledTable::from_csv(dup.as_bytes()).is_err());

        // bad header is rejected
        let bad_header = "\
t,out_1
0,0
1,1
";
        assert!(SampledTable::from_csv(bad_header.as_bytes()).is_err());
    }

    #[test]
    fn sampling_boxes() {
        assert_eq!(moment_curve(2).unwrap().sampling_box(1.0), vec![(-1.0, 1.0)]);
        assert_eq!(trig_curve(1).unwrap().sampling_box(1.0), vec![(0.0, TAU)]);
        let tensor = tensor_product(moment_curve(1).unwrap(), trig_curve(1).unwrap());
        assert_eq!(tensor.sampling_box(2.0), vec![(-2.0, 2.0), (0.0, TAU)]);

        let csv = "\
param_1,out_1
-3,9
0,0
2,4
";
        let spec = sampled_from_csv(csv.as_bytes()).unwrap();
        assert_eq!(spec.sampling_box(1.0), vec![(-3.0, 2.0)]);
    }

    #[test]
    fn exact_jets_match_float_jets() {
        use crate::rational::{rational_from_f64, rational_to_f64};

        let specs = [
            moment_curve(4).unwrap(),
            complex_moment_curve(3).unwrap(),
            tensor_product(moment_curve(2).unwrap(), moment_curve(2).unwrap()),
            truncate(moment_curve(4).unwrap(), 2).unwrap(),
        ];
        for spec in &specs {
            assert!(spec.supports_exact(), "{}", spec.describe());
            let n = spec.domain_dim();
            let point: Vec<f64> = (0..n).map(|i| 0.5 - 0.25 * i as f64).collect();
            let dir: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * i as f64).collect();
            let jet = evaluate_jet(spec, &point, &[dir.clone()]).unwrap();
            let point_q: Vec<_> = point.iter().map(|x| rational_from_f64(*x).unwrap()).collect();
            let dir_q: Vec<_> = dir.iter().map(|x| rational_from_f64(*x).unwrap()).collect();
            let (val, ders) = evaluate_jet_exact(spec, &point_q, &[dir_q]).unwrap();
            for (e, f) in val.iter().zip(&jet.value) {
                assert_relative_eq!(rational_to_f64(e), *f, max_relative = 1e-12);
            }
            for (e, f) in ders[0].iter().zip(&jet.directional_derivatives[0]) {
                assert_relative_eq!(rational_to_f64(e), *f, max_relative = 1e-12);
            }
        }

        let trig = trig_curve(1).unwrap();
        assert!(!trig.supports_exact());
        let q = rational_from_f64(0.5).unwrap();
        assert!(matches!(
            evaluate_jet_exact(&trig, &[q.clone()], &[vec![q]]),
            Err(Error::NotRational)
        ));
    }

    #[test]
    fn describe_strings() {
        assert_eq!(moment_curve(3).unwrap().describe(), "moment:3");
        assert_eq!(
            tensor_product(moment_curve(2).unwrap(), trig_curve(1).unwrap()).describe(),
            "tensor(moment:2,trig:1)"
        );
        assert_eq!(
            truncate(trig_curve(2).unwrap(), 3).unwrap().describe(),
            "trunc:3(trig:2)"
        );
    }
}
