//! Regularity decisions: direct configuration checks, randomized sampling,
//! adversarial margin minimization, hyperplane witnesses, and the exact
//! certificates (confluent Vandermonde determinants and root counts).

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::embeddings::{
    evaluate_jet, evaluate_jet_exact, Configuration, CoordKind, EmbeddingSpec,
    ExactConfiguration, MapKind, DEFAULT_DELTA_MIN,
};
use crate::error::{Error, Result};
use crate::lift::{
    assemble_lifted_matrix, assemble_lifted_matrix_exact, exact_rank, rank_and_margin,
    LiftedMatrix, RankReport, DEFAULT_TOLERANCE,
};
use crate::poly::{self, RatPoly, TrigPoly};
use crate::rational::{exact_determinant, rational_from_f64};

/// Affine hyperplane `{x : <normal, x> + offset = 0}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Hyperplane {
    /// Scales so the normal has unit length.
    pub fn normalized(&self) -> Result<Hyperplane> {
        let norm = self.normal.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParameter("hyperplane normal must be nonzero".into()));
        }
        Ok(Hyperplane {
            normal: self.normal.iter().map(|x| x / norm).collect(),
            offset: self.offset / norm,
        })
    }

    /// Signed incidence value `<normal, x> + offset`.
    pub fn incidence(&self, x: &[f64]) -> f64 {
        self.normal.iter().zip(x).map(|(n, v)| n * v).sum::<f64>() + self.offset
    }
}

/// Outcome of a regularity check on one configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub rank_report: RankReport,
    pub configuration: Configuration,
    /// A hyperplane through all through points, tangent at all tangency
    /// points; present when the verdict is not regular and the lifted
    /// columns fail to span (no such hyperplane exists when they span).
    pub hyperplane_witness: Option<Hyperplane>,
}

/// Affine flat cut out by lifted null covectors; an empty covector set means
/// the flat is the whole ambient space.
#[derive(Debug, Clone, Serialize)]
pub struct FlatWitness {
    pub covectors: Vec<Hyperplane>,
    /// Dimension of the flat: ambient dimension minus the covector count.
    pub flat_dim: usize,
}

/// Result of a randomized or adversarial margin minimization.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub best_margin: f64,
    pub best_configuration: Configuration,
    pub iterations_used: usize,
    pub restarts: usize,
    pub seed: u64,
    /// True when the best configuration is rank-deficient at the working
    /// tolerance, i.e. a violation candidate was found.
    pub converged: bool,
}

/// Scalar incidence function of a hyperplane along a curve, in the basis
/// matching the curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncidencePolynomial {
    pub basis: PolynomialBasis,
    /// Monomial basis: `[a_0, a_1, ..., a_m]` for `a_0 + sum a_i t^i`.
    /// Trigonometric basis: `[a_0, a_1, b_1, ..., a_h, b_h]` for
    /// `a_0 + sum (a_i cos it + b_i sin it)`.
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolynomialBasis {
    Monomial { degree: usize },
    Trigonometric { harmonics: usize },
}

/// Where to count roots of an incidence polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootDomain {
    RealLine,
    Interval(f64, f64),
    Circle,
}

/// Builds the lifted matrix of a configuration under a spec: jet values for
/// points, directional-derivative images for directions.
pub fn lifted_matrix_for(spec: &EmbeddingSpec, config: &Configuration) -> Result<LiftedMatrix<f64>> {
    let mut points = Vec::with_capacity(config.k());
    for p in &config.through_points {
        points.push(evaluate_jet(spec, p, &[])?.value);
    }
    let mut tangency = Vec::with_capacity(config.l());
    let mut directions = Vec::with_capacity(config.l());
    for (y, group) in config.tangency_points.iter().zip(&config.directions) {
        let jet = evaluate_jet(spec, y, group)?;
        tangency.push(jet.value);
        directions.push(jet.directional_derivatives);
    }
    assemble_lifted_matrix(&points, &tangency, &directions)
}

fn lifted_matrix_for_exact(
    spec: &EmbeddingSpec,
    config: &ExactConfiguration,
) -> Result<LiftedMatrix<BigRational>> {
    let mut points = Vec::with_capacity(config.k());
    for p in &config.through_points {
        points.push(evaluate_jet_exact(spec, p, &[])?.0);
    }
    let mut tangency = Vec::with_capacity(config.l());
    let mut directions = Vec::with_capacity(config.l());
    for (y, group) in config.tangency_points.iter().zip(&config.directions) {
        let (value, derivs) = evaluate_jet_exact(spec, y, group)?;
        tangency.push(value);
        directions.push(derivs);
    }
    assemble_lifted_matrix_exact(&points, &tangency, &directions)
}

/// Decides regularity of one configuration numerically, with the default
/// distinctness threshold.
pub fn check_configuration(
    spec: &EmbeddingSpec,
    config: &Configuration,
    tol: f64,
) -> Result<RegularityVerdict> {
    check_configuration_with_delta(spec, config, tol, DEFAULT_DELTA_MIN)
}

/// As [`check_configuration`] with an explicit distinctness threshold.
pub fn check_configuration_with_delta(
    spec: &EmbeddingSpec,
    config: &Configuration,
    tol: f64,
    delta_min: f64,
) -> Result<RegularityVerdict> {
    let mut config = config.clone();
    config.normalize(spec.domain());
    config.validate(spec.domain(), delta_min)?;
    let matrix = lifted_matrix_for(spec, &config)?;
    let mut report = rank_and_margin(&matrix, tol)?;
    let mut regular = report.full_column_rank(matrix.num_columns());
    // Floating-point filter with exact fallback: tightly clustered tangency
    // points can push the true margin below what double precision resolves,
    // so a deficiency verdict on a map with a rational jet is re-decided in
    // exact arithmetic before it is reported.
    if !regular && spec.supports_exact() {
        if let Ok(exact) = ExactConfiguration::from_configuration(&config) {
            if let Ok(exact_matrix) = lifted_matrix_for_exact(spec, &exact) {
                let exact_report = exact_rank(&exact_matrix);
                if exact_report.full_column_rank(exact_matrix.num_columns()) {
                    report = exact_report;
                    regular = true;
                }
            }
        }
    }
    let hyperplane_witness = if regular {
        None
    } else {
        left_null_covectors(&matrix, 1, tol).into_iter().next()
    };
    Ok(RegularityVerdict { regular, rank_report: report, configuration: config, hyperplane_witness })
}

/// Certificate-grade check over exact rational arithmetic. The map must
/// have a polynomial jet (`supports_exact`); otherwise `NotRational`.
pub fn check_configuration_exact(
    spec: &EmbeddingSpec,
    config: &ExactConfiguration,
) -> Result<RegularityVerdict> {
    let float_config = config.to_configuration();
    float_config.validate(spec.domain(), DEFAULT_DELTA_MIN)?;
    let matrix = lifted_matrix_for_exact(spec, config)?;
    let report = exact_rank(&matrix);
    let regular = report.full_column_rank(matrix.num_columns());
    let hyperplane_witness = if regular {
        None
    } else {
        left_null_covectors(&matrix.to_f64(), 1, DEFAULT_TOLERANCE).into_iter().next()
    };
    Ok(RegularityVerdict {
        regular,
        rank_report: report,
        configuration: float_config,
        hyperplane_witness,
    })
}

/// Checks a configuration whose tangency points carry orthonormal direction
/// sets spanning tangent subspaces. Single-vector sets reduce to
/// [`check_configuration`] on identical inputs.
pub fn check_subspace_configuration(
    spec: &EmbeddingSpec,
    config: &Configuration,
    tol: f64,
) -> Result<RegularityVerdict> {
    for group in &config.directions {
        for (i, u) in group.iter().enumerate() {
            for (j, v) in group.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                let got: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
                if (got - want).abs() > 1e-8 {
                    return Err(Error::InvalidParameter(format!(
                        "direction sets must be orthonormal: <u_{i}, u_{j}> = {got}"
                    )));
                }
            }
        }
    }
    check_configuration(spec, config, tol)
}

/// Left null covectors of the lifted matrix, each scaled to a unit normal,
/// ordered by increasing residual. Only eigenvectors whose residual
/// `|w^T M|` is below `tol` times the largest singular value qualify — a
/// configuration whose columns span the lifted space has none. At most
/// `count` are returned.
fn left_null_covectors(matrix: &LiftedMatrix<f64>, count: usize, tol: f64) -> Vec<Hyperplane> {
    let rows = matrix.rows();
    if count == 0 || rows == 0 || matrix.num_columns() == 0 {
        return Vec::new();
    }
    let mat = DMatrix::from_fn(rows, matrix.num_columns(), |i, j| matrix.columns()[j][i]);
    let gram = &mat * mat.transpose();
    let eig = gram.symmetric_eigen();
    // Gram eigenvalues are squared singular values
    let sigma_max = eig.eigenvalues.iter().fold(0.0f64, |a, b| a.max(*b)).max(0.0).sqrt();
    let threshold = tol * if sigma_max > 0.0 { sigma_max } else { 1.0 };
    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by(|a, b| eig.eigenvalues[*a].partial_cmp(&eig.eigenvalues[*b]).unwrap());
    let mut out = Vec::new();
    for &i in &order {
        if out.len() == count {
            break;
        }
        if eig.eigenvalues[i].max(0.0).sqrt() > threshold {
            break;
        }
        let w = eig.eigenvectors.column(i);
        let normal: Vec<f64> = w.iter().take(rows - 1).copied().collect();
        let norm = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
        // a covector with zero normal part annihilates no point column;
        // it cannot occur for genuine null covectors but guard anyway
        if norm < 1e-12 {
            continue;
        }
        out.push(Hyperplane {
            normal: normal.iter().map(|x| x / norm).collect(),
            offset: w[rows - 1] / norm,
        });
    }
    out
}

/// When the configuration is dependent, returns the affine flat of the
/// violation: dimension `k + (n+1)l - 2`, cut out by lifted null covectors.
/// An empty covector list means the flat is the whole ambient space.
/// Regular configurations return `None`.
pub fn find_violating_hyperplane(
    spec: &EmbeddingSpec,
    config: &Configuration,
    tol: f64,
) -> Result<Option<FlatWitness>> {
    let mut config = config.clone();
    config.normalize(spec.domain());
    config.validate(spec.domain(), DEFAULT_DELTA_MIN)?;
    let matrix = lifted_matrix_for(spec, &config)?;
    let report = rank_and_margin(&matrix, tol)?;
    if report.full_column_rank(matrix.num_columns()) {
        return Ok(None);
    }
    // a dependent configuration spans an affine flat of dimension at most
    // k + (n+1)l - 2; cut that flat out with ambient_dim - flat_dim covectors
    let ambient = spec.ambient_dim();
    let n = spec.domain_dim();
    let need = (ambient as i64 + 2 - (config.k() as i64 + (n as i64 + 1) * config.l() as i64))
        .max(0) as usize;
    let covectors = left_null_covectors(&matrix, need, tol);
    let flat_dim = ambient - covectors.len();
    Ok(Some(FlatWitness { covectors, flat_dim }))
}

fn unit_sphere_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    loop {
        // Box-Muller normal deviates, normalized
        let v: Vec<f64> = (0..n)
            .map(|_| {
                let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
                let u2: f64 = rng.random_range(0.0..1.0);
                (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
            })
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

/// Draws one valid random configuration: points uniform in the per-coordinate
/// boxes with rejection for distinctness, directions uniform on the unit
/// sphere of the chart.
pub fn random_configuration(
    spec: &EmbeddingSpec,
    k: usize,
    l: usize,
    delta_min: f64,
    boxes: &[(f64, f64)],
    rng: &mut ChaCha8Rng,
) -> Result<Configuration> {
    if k == 0 && l == 0 {
        return Err(Error::EmptyConfiguration);
    }
    let n = spec.domain_dim();
    if boxes.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: boxes.len() });
    }
    let chart = spec.domain();
    let max_attempts = 1000 + 200 * (k + l);
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(k + l);
    let mut attempts = 0;
    while points.len() < k + l {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::InvalidParameter(format!(
                "cannot place {} points with pairwise distance {delta_min} in the sampling box",
                k + l
            )));
        }
        let mut p: Vec<f64> = boxes.iter().map(|(lo, hi)| rng.random_range(*lo..*hi)).collect();
        chart.normalize(&mut p);
        if points.iter().all(|q| chart.distance(q, &p) >= delta_min) {
            points.push(p);
        }
    }
    let tangency = points.split_off(k);
    let directions = (0..l).map(|_| vec![unit_sphere_direction(rng, n)]).collect();
    Configuration::new(points, tangency, directions)
}

fn rng_for_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Margin of one configuration: `+inf` encodes "infeasible or evaluation
/// failed", used as a rejection value by the searches.
fn margin_objective(
    spec: &EmbeddingSpec,
    config: &Configuration,
    delta_min: f64,
    tol: f64,
) -> (f64, Option<RankReport>) {
    if config.validate(spec.domain(), delta_min).is_err() {
        return (f64::INFINITY, None);
    }
    let matrix = match lifted_matrix_for(spec, config) {
        Ok(m) => m,
        Err(_) => return (f64::INFINITY, None),
    };
    match rank_and_margin(&matrix, tol) {
        Ok(report) => (report.margin, Some(report)),
        Err(_) => (f64::INFINITY, None),
    }
}

/// Verifies `num_samples` random configurations and reports the minimum
/// margin seen. Deterministic for a given seed: sample `i` uses stream `i+1`
/// of a counter-based generator, and the minimum is tie-broken by sample
/// index, so the result is independent of thread interleaving.
pub fn sample_verify(
    spec: &EmbeddingSpec,
    k: usize,
    l: usize,
    num_samples: usize,
    delta_min: f64,
    seed: u64,
    tol: f64,
) -> Result<SearchReport> {
    if num_samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    if k == 0 && l == 0 {
        return Err(Error::EmptyConfiguration);
    }
    let boxes = spec.sampling_box(1.0);
    let evaluated: Result<Vec<(usize, f64, Configuration)>> = (0..num_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for_stream(seed, i as u64 + 1);
            // redraw on evaluation failure (e.g. a projection singularity):
            // the failure set has measure zero, so a few retries suffice
            for _ in 0..32 {
                let config = random_configuration(spec, k, l, delta_min, &boxes, &mut rng)?;
                let (margin, _) = margin_objective(spec, &config, delta_min, tol);
                if margin.is_finite() {
                    return Ok((i, margin, config));
                }
            }
            Err(Error::InvalidParameter(
                "configuration evaluation failed repeatedly".into(),
            ))
        })
        .collect();
    let evaluated = evaluated?;
    let (_, best_margin, best_configuration) = evaluated
        .into_iter()
        .min_by(|(ia, ma, _), (ib, mb, _)| ma.partial_cmp(mb).unwrap().then(ia.cmp(ib)))
        .unwrap();
    let (_, report) = margin_objective(spec, &best_configuration, delta_min, tol);
    let converged = report
        .map(|r| !r.full_column_rank(count_columns(&best_configuration)))
        .unwrap_or(false);
    Ok(SearchReport {
        best_margin,
        best_configuration,
        iterations_used: num_samples,
        restarts: 0,
        seed,
        converged,
    })
}

fn count_columns(config: &Configuration) -> usize {
    config.k() + config.l() + config.directions.iter().map(Vec::len).sum::<usize>()
}

/// Minimizes the margin over configuration space by coordinate-wise descent
/// with step halving, from `restarts` random starting configurations.
/// `box_half_width` scales the linear-coordinate sampling box. Deterministic
/// for a given seed (restart `r` uses stream `r+1`; ties broken by restart
/// index).
pub fn adversarial_search(
    spec: &EmbeddingSpec,
    k: usize,
    l: usize,
    restarts: usize,
    iters: usize,
    delta_min: f64,
    box_half_width: f64,
    seed: u64,
) -> Result<SearchReport> {
    if restarts == 0 || iters == 0 {
        return Err(Error::InvalidParameter("restarts and iterations must be >= 1".into()));
    }
    if k == 0 && l == 0 {
        return Err(Error::EmptyConfiguration);
    }
    if !(box_half_width > 0.0) {
        return Err(Error::InvalidParameter("box half-width must be positive".into()));
    }
    let boxes = spec.sampling_box(box_half_width);
    let tol = DEFAULT_TOLERANCE;

    let runs: Result<Vec<(usize, f64, Configuration, usize)>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_for_stream(seed, r as u64 + 1);
            let start = random_configuration(spec, k, l, delta_min, &boxes, &mut rng)?;
            let (margin, config, sweeps) =
                descend(spec, start, iters, delta_min, &boxes, tol);
            Ok((r, margin, config, sweeps))
        })
        .collect();
    let runs = runs?;
    let iterations_used = runs.iter().map(|(_, _, _, s)| s).sum();
    let (_, best_margin, best_configuration, _) = runs
        .into_iter()
        .min_by(|(ra, ma, _, _), (rb, mb, _, _)| ma.partial_cmp(mb).unwrap().then(ra.cmp(rb)))
        .unwrap();
    let (_, report) = margin_objective(spec, &best_configuration, delta_min, tol);
    let converged = report
        .map(|rep| !rep.full_column_rank(count_columns(&best_configuration)))
        .unwrap_or(false);
    Ok(SearchReport {
        best_margin,
        best_configuration,
        iterations_used,
        restarts,
        seed,
        converged,
    })
}

/// Relative-improvement window for the stall criterion.
const STALL_WINDOW: usize = 50;
const STALL_RELATIVE: f64 = 1e-12;

fn descend(
    spec: &EmbeddingSpec,
    start: Configuration,
    iters: usize,
    delta_min: f64,
    boxes: &[(f64, f64)],
    tol: f64,
) -> (f64, Configuration, usize) {
    let n = spec.domain_dim();
    let kinds = spec.domain().coord_kinds();
    let k = start.k();
    let l = start.l();
    // base step per point coordinate: 5% of the box extent
    let base_steps: Vec<f64> = boxes.iter().map(|(lo, hi)| 0.05 * (hi - lo)).collect();

    let mut best = start;
    let (mut best_margin, _) = margin_objective(spec, &best, delta_min, tol);
    let mut scale = 1.0f64;
    let mut sweeps = 0;
    let mut window_start_margin = best_margin;
    let mut window_len = 0;

    for _ in 0..iters {
        sweeps += 1;
        let mut improved = false;

        // point coordinates (through points then tangency points)
        for pt in 0..(k + l) {
            for coord in 0..n {
                for sign in [1.0f64, -1.0] {
                    let mut cand = best.clone();
                    let slot = if pt < k {
                        &mut cand.through_points[pt][coord]
                    } else {
                        &mut cand.tangency_points[pt - k][coord]
                    };
                    *slot += sign * base_steps[coord] * scale;
                    match kinds[coord] {
                        CoordKind::Angular => {
                            *slot = slot.rem_euclid(std::f64::consts::TAU);
                        }
                        CoordKind::Linear => {
                            *slot = slot.clamp(boxes[coord].0, boxes[coord].1);
                        }
                    }
                    let (m, _) = margin_objective(spec, &cand, delta_min, tol);
                    if m < best_margin {
                        best_margin = m;
                        best = cand;
                        improved = true;
                    }
                }
            }
        }

        // direction coordinates (only meaningful for chart dimension >= 2;
        // in dimension 1 the margin is invariant under direction sign)
        if n >= 2 {
            for t in 0..l {
                for coord in 0..n {
                    for sign in [1.0f64, -1.0] {
                        let mut cand = best.clone();
                        let dir = &mut cand.directions[t][0];
                        dir[coord] += sign * 0.1 * scale;
                        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
                        if norm < 1e-9 {
                            continue;
                        }
                        for x in dir.iter_mut() {
                            *x /= norm;
                        }
                        let (m, _) = margin_objective(spec, &cand, delta_min, tol);
                        if m < best_margin {
                            best_margin = m;
                            best = cand;
                            improved = true;
                        }
                    }
                }
            }
        }

        if !improved {
            scale *= 0.5;
        }
        if best_margin <= 1e-16 || scale < 1e-13 {
            break;
        }
        window_len += 1;
        if window_len >= STALL_WINDOW {
            let drop = window_start_margin - best_margin;
            if drop <= STALL_RELATIVE * window_start_margin.abs().max(f64::MIN_POSITIVE) {
                break;
            }
            window_start_margin = best_margin;
            window_len = 0;
        }
    }
    (best_margin, best, sweeps)
}

/// Incidence function of a hyperplane along a curve spec, in the matching
/// polynomial basis. Supports the moment and trigonometric curves and their
/// truncations (a truncated curve is the full curve against a zero-padded
/// normal).
pub fn incidence_polynomial(
    spec: &EmbeddingSpec,
    hyperplane: &Hyperplane,
) -> Result<IncidencePolynomial> {
    if hyperplane.normal.iter().all(|x| *x == 0.0) {
        return Err(Error::InvalidParameter("hyperplane normal must be nonzero".into()));
    }
    if hyperplane.normal.len() != spec.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.ambient_dim(),
            got: hyperplane.normal.len(),
        });
    }
    match spec.kind() {
        MapKind::Moment { degree } => {
            let mut coefficients = Vec::with_capacity(degree + 1);
            coefficients.push(hyperplane.offset);
            coefficients.extend_from_slice(&hyperplane.normal);
            Ok(IncidencePolynomial {
                basis: PolynomialBasis::Monomial { degree: *degree },
                coefficients,
            })
        }
        MapKind::Trig { harmonics } => {
            let mut coefficients = Vec::with_capacity(2 * harmonics + 1);
            coefficients.push(hyperplane.offset);
            coefficients.extend_from_slice(&hyperplane.normal);
            Ok(IncidencePolynomial {
                basis: PolynomialBasis::Trigonometric { harmonics: *harmonics },
                coefficients,
            })
        }
        MapKind::Truncated { inner, .. } => {
            let mut padded = hyperplane.normal.clone();
            padded.resize(inner.ambient_dim(), 0.0);
            incidence_polynomial(inner, &Hyperplane { normal: padded, offset: hyperplane.offset })
        }
        _ => Err(Error::InvalidParameter(format!(
            "incidence polynomials are defined for curve specs, not {}",
            spec.describe()
        ))),
    }
}

impl IncidencePolynomial {
    pub fn eval(&self, t: f64) -> f64 {
        match self.basis {
            PolynomialBasis::Monomial { .. } => {
                let mut acc = 0.0;
                for c in self.coefficients.iter().rev() {
                    acc = acc * t + c;
                }
                acc
            }
            PolynomialBasis::Trigonometric { harmonics } => {
                let mut acc = self.coefficients[0];
                for i in 1..=harmonics {
                    let (s, c) = (i as f64 * t).sin_cos();
                    acc += self.coefficients[2 * i - 1] * c + self.coefficients[2 * i] * s;
                }
                acc
            }
        }
    }

    /// Exact rationalization in the monomial basis.
    pub fn to_rat_poly(&self) -> Result<RatPoly> {
        match self.basis {
            PolynomialBasis::Monomial { .. } => RatPoly::from_f64_coeffs(&self.coefficients),
            _ => Err(Error::InvalidParameter("not a monomial-basis polynomial".into())),
        }
    }

    /// Exact rationalization in the trigonometric basis.
    pub fn to_trig_poly(&self) -> Result<TrigPoly> {
        match self.basis {
            PolynomialBasis::Trigonometric { harmonics } => {
                let mut cos_c = Vec::with_capacity(harmonics + 1);
                let mut sin_c = Vec::with_capacity(harmonics + 1);
                cos_c.push(self.coefficients[0]);
                sin_c.push(0.0);
                for i in 1..=harmonics {
                    cos_c.push(self.coefficients[2 * i - 1]);
                    sin_c.push(self.coefficients[2 * i]);
                }
                TrigPoly::from_f64(&cos_c, &sin_c)
            }
            _ => Err(Error::InvalidParameter("not a trigonometric-basis polynomial".into())),
        }
    }
}

/// Exact count of real roots with multiplicity over the given domain. The
/// domain must match the basis: line or interval for monomial, circle for
/// trigonometric. Coefficients are rationalized losslessly first.
pub fn count_roots_with_multiplicity(
    p: &IncidencePolynomial,
    domain: RootDomain,
) -> Result<usize> {
    match (&p.basis, domain) {
        (PolynomialBasis::Monomial { .. }, RootDomain::RealLine) => {
            poly::count_roots_with_multiplicity(&p.to_rat_poly()?)
        }
        (PolynomialBasis::Monomial { .. }, RootDomain::Interval(a, b)) => {
            let a = rational_from_f64(a)?;
            let b = rational_from_f64(b)?;
            poly::count_roots_with_multiplicity_in(&p.to_rat_poly()?, &a, &b)
        }
        (PolynomialBasis::Trigonometric { .. }, RootDomain::Circle) => {
            poly::count_circle_roots_with_multiplicity(&p.to_trig_poly()?)
        }
        _ => Err(Error::InvalidParameter(
            "root-count domain does not match the polynomial basis".into(),
        )),
    }
}

/// Exact determinant of the lifted moment-curve matrix at `k` simple nodes
/// and `l` tangency (double) nodes, in ambient dimension `k + 2l - 1`.
/// Column order: simple nodes, then per double node its point column
/// followed by its derivative column.
///
/// The absolute value always equals the confluent node-difference product
/// `prod_{i<j} |t_i - t_j|^{mu_i mu_j}` with `mu = 1` for simple and `2` for
/// double nodes; the function asserts this identity on every call.
pub fn confluent_vandermonde_certificate(
    simple_nodes: &[BigRational],
    double_nodes: &[BigRational],
) -> Result<BigRational> {
    let k = simple_nodes.len();
    let l = double_nodes.len();
    if k == 0 && l == 0 {
        return Err(Error::EmptyConfiguration);
    }
    let all: Vec<(&BigRational, u32)> = simple_nodes
        .iter()
        .map(|t| (t, 1u32))
        .chain(double_nodes.iter().map(|t| (t, 2u32)))
        .collect();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            if all[i].0 == all[j].0 {
                return Err(Error::DistinctnessViolation { distance: 0.0, min_required: f64::MIN_POSITIVE });
            }
        }
    }

    let m = k + 2 * l - 1; // ambient dimension; matrix is (m+1) x (m+1)
    let size = m + 1;
    let one = BigRational::one();
    let zero = BigRational::zero();

    // columns: lifted point (t, t^2, ..., t^m, 1) or derivative (1, 2t, ..., m t^{m-1}, 0)
    let point_column = |t: &BigRational| -> Vec<BigRational> {
        let mut col = Vec::with_capacity(size);
        let mut tp = one.clone();
        for _ in 0..m {
            tp *= t;
            col.push(tp.clone());
        }
        col.push(one.clone());
        col
    };
    let derivative_column = |t: &BigRational| -> Vec<BigRational> {
        let mut col = Vec::with_capacity(size);
        let mut tp = one.clone();
        for j in 1..=m {
            col.push(BigRational::from_integer(j.into()) * &tp);
            tp *= t;
        }
        col.push(zero.clone());
        col
    };

    let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(size);
    for t in simple_nodes {
        columns.push(point_column(t));
    }
    for t in double_nodes {
        columns.push(point_column(t));
        columns.push(derivative_column(t));
    }
    debug_assert_eq!(columns.len(), size);

    // row-major matrix
    let rows: Vec<Vec<BigRational>> = (0..size)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let det = exact_determinant(&rows);

    // confluent node-difference product
    let mut product = one.clone();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            let diff = all[i].0 - all[j].0;
            for _ in 0..(all[i].1 * all[j].1) {
                product *= &diff;
            }
        }
    }
    assert_eq!(
        det.abs(),
        product.abs(),
        "confluent determinant must equal the node-difference product"
    );
    Ok(det)
}

/// Signs of the hyperplane incidence along the curve near a tangency:
/// samples `t = -steps*h, ..., -h, h, ..., steps*h` (`h = 1e-3`) along the
/// chart direction and returns the signs. Preconditions: the hyperplane
/// passes through the image point tangentially (else `NotATangency`) and the
/// second-order term is nonzero (else `DegenerateCurvature`). Under these the
/// pattern is one-sided.
pub fn tangency_crossing_probe(
    spec: &EmbeddingSpec,
    point: &[f64],
    direction: &[f64],
    hyperplane: &Hyperplane,
    steps: usize,
) -> Result<Vec<i8>> {
    if steps == 0 {
        return Err(Error::InvalidParameter("need at least one probe step".into()));
    }
    let hp = hyperplane.normalized()?;
    if hp.normal.len() != spec.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.ambient_dim(),
            got: hp.normal.len(),
        });
    }
    let jet = evaluate_jet(spec, point, std::slice::from_ref(&direction.to_vec()))?;
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = 1.0 + norm(&jet.value) + norm(&jet.directional_derivatives[0]);

    let g = |t: f64| -> Result<f64> {
        let p: Vec<f64> = point.iter().zip(direction).map(|(x, u)| x + t * u).collect();
        Ok(hp.incidence(&evaluate_jet(spec, &p, &[])?.value))
    };

    let g0 = hp.incidence(&jet.value);
    if g0.abs() > 1e-8 * scale {
        return Err(Error::NotATangency);
    }
    let g1: f64 = hp.normal.iter().zip(&jet.directional_derivatives[0]).map(|(n, d)| n * d).sum();
    if g1.abs() > 1e-8 * scale {
        return Err(Error::NotATangency);
    }
    let h = 1e-3;
    let g2 = (g(h)? - 2.0 * g0 + g(-h)?) / (h * h);
    if g2.abs() <= 1e-6 * scale {
        return Err(Error::DegenerateCurvature);
    }

    let sign_of = |v: f64| -> i8 {
        if v.abs() <= 1e-14 * scale {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };
    let mut signs = Vec::with_capacity(2 * steps);
    for j in (1..=steps).rev() {
        signs.push(sign_of(g(-(j as f64) * h)?));
    }
    for j in 1..=steps {
        signs.push(sign_of(g(j as f64 * h)?));
    }
    Ok(signs)
}

/// True when all nonzero entries of a sign pattern agree.
pub fn one_sided(signs: &[i8]) -> bool {
    let mut seen = 0i8;
    for s in signs {
        if *s == 0 {
            continue;
        }
        if seen == 0 {
            seen = *s;
        } else if *s != seen {
            return false;
        }
    }
    true
}
