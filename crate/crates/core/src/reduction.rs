//! Dimension reduction by central projection: draw a unit center, project
//! onto the hyperplane through the origin orthogonal to it, re-verify
//! regularity probabilistically, and repeat until the target dimension is
//! reached.
//!
//! Validation is probabilistic (sampling plus a short adversarial search),
//! not a proof: the bad centers form a measure-zero union of affine spans,
//! so a random unit center works with probability one when the ambient
//! dimension exceeds the span-union dimension. The input must be an
//! embedding (no self-intersections); for self-intersecting sampled data
//! the span-union count understates the bad set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embeddings::{evaluate_jet, project, EmbeddingSpec, MapKind};
use crate::error::{Error, Result};
use crate::lift::DEFAULT_TOLERANCE;
use crate::verifier::{adversarial_search, sample_verify, Hyperplane, SearchReport};

/// Centers tried per projection step before giving up.
pub const DEFAULT_MAX_RETRIES: usize = 32;

/// Distinctness floor for validation configurations.
const VALIDATION_DELTA_MIN: f64 = 1e-3;
/// Short adversarial polish appended to the sampling validation.
const VALIDATION_RESTARTS: usize = 4;
const VALIDATION_ITERS: usize = 150;

/// One accepted central projection.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionStep {
    /// Unit vector; the projection center sits at distance 1 from the
    /// target hyperplane along its normal.
    pub center: Vec<f64>,
    /// The hyperplane projected onto: through the origin, normal = center.
    pub target_hyperplane: Hyperplane,
    pub input_dim: usize,
    pub output_dim: usize,
    /// Re-verification outcome for the projected map.
    pub validation: SearchReport,
}

/// A full chain of accepted projections.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionPlan {
    pub steps: Vec<ProjectionStep>,
    /// Descriptor of the starting map.
    pub start_spec: String,
    pub final_dim: usize,
    /// Validation samples per step.
    pub budget: usize,
}

/// Dimension of the union of affine spans of all k-point tuples together
/// with l tangent spaces on an n-manifold: `k(n+1) + l(2n+1) - 1`. Generic
/// central projection preserves regularity while the ambient dimension
/// exceeds this.
pub fn span_union_dimension(n: usize, k: usize, l: usize) -> Result<i64> {
    if k == 0 && l == 0 {
        return Err(Error::EmptyConfiguration);
    }
    let n = n as i64;
    Ok(k as i64 * (n + 1) + l as i64 * (2 * n + 1) - 1)
}

fn draw_unit_center(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim)
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

/// Deterministic per-step, per-retry seed derivation.
fn derive_seed(seed: u64, step: usize, retry: usize) -> u64 {
    seed.wrapping_mul(6364136223846793005)
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul((step as u64) << 8 | retry as u64))
}

/// Evaluates the projected spec at a deterministic batch of parameters so a
/// center sitting on (or numerically at) the manifold surfaces as
/// `ProjectionSingularity` instead of poisoning the validation.
fn probe_for_singularity(projected: &EmbeddingSpec, seed: u64) -> Result<()> {
    let boxes = projected.sampling_box(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    for _ in 0..16 {
        let p: Vec<f64> = boxes.iter().map(|(lo, hi)| rng.random_range(*lo..*hi)).collect();
        match evaluate_jet(projected, &p, &[]) {
            Ok(_) => {}
            Err(Error::ProjectionSingularity) => return Err(Error::ProjectionSingularity),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

/// Projects `spec` centrally from `center` (normalized to unit length) onto
/// the hyperplane through the origin orthogonal to it, then re-verifies
/// (k,l)-regularity of the projected map with `budget` samples plus a short
/// adversarial search. Rejected steps leave the input untouched.
pub fn project_step(
    spec: &EmbeddingSpec,
    k: usize,
    l: usize,
    center: &[f64],
    seed: u64,
    budget: usize,
) -> Result<(EmbeddingSpec, ProjectionStep)> {
    if budget == 0 {
        return Err(Error::InvalidParameter("validation budget must be >= 1".into()));
    }
    let input_dim = spec.ambient_dim();
    let projected = project(spec.clone(), center)?;
    let unit_center = match projected.kind() {
        MapKind::Projected { center, .. } => center.clone(),
        _ => unreachable!("project always yields a projected spec"),
    };
    probe_for_singularity(&projected, seed)?;

    let sampled = sample_verify(&projected, k, l, budget, VALIDATION_DELTA_MIN, seed, DEFAULT_TOLERANCE)?;
    let searched = adversarial_search(
        &projected,
        k,
        l,
        VALIDATION_RESTARTS,
        VALIDATION_ITERS,
        VALIDATION_DELTA_MIN,
        1.0,
        seed,
    )?;
    let validation = if searched.best_margin < sampled.best_margin { searched } else { sampled };
    if validation.converged || !(validation.best_margin > 0.0) {
        return Err(Error::StepRejected { margin: validation.best_margin });
    }

    let step = ProjectionStep {
        target_hyperplane: Hyperplane { normal: unit_center.clone(), offset: 0.0 },
        center: unit_center,
        input_dim,
        output_dim: projected.ambient_dim(),
        validation,
    };
    Ok((projected, step))
}

/// Chains projection steps until `target_dim` is reached, drawing centers
/// uniformly on the unit sphere and retrying rejected steps up to
/// `max_retries` fresh centers per step. A start dimension at or below the
/// target yields an empty plan. Deterministic for fixed
/// (spec, seed, budget).
pub fn reduce_dimension(
    spec: &EmbeddingSpec,
    k: usize,
    l: usize,
    target_dim: usize,
    max_retries: usize,
    seed: u64,
    budget: usize,
) -> Result<ReductionPlan> {
    let floor = span_union_dimension(spec.domain_dim(), k, l)?;
    if (target_dim as i64) < floor {
        return Err(Error::InvalidParameter(format!(
            "target dimension {target_dim} is below the generic floor {floor}"
        )));
    }
    if max_retries == 0 {
        return Err(Error::InvalidParameter("need at least one retry per step".into()));
    }
    if budget == 0 {
        return Err(Error::InvalidParameter("validation budget must be positive".into()));
    }

    let start_descriptor = spec.describe();
    let mut current = spec.clone();
    let mut steps = Vec::new();
    let mut step_index = 0;
    while current.ambient_dim() > target_dim {
        let dim = current.ambient_dim();
        let mut last_err: Option<Error> = None;
        let mut accepted = None;
        for retry in 0..max_retries {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(((step_index as u64) << 32) | (retry as u64 + 1));
            let center = draw_unit_center(&mut rng, dim);
            match project_step(&current, k, l, &center, derive_seed(seed, step_index, retry), budget) {
                Ok(pair) => {
                    accepted = Some(pair);
                    break;
                }
                Err(e @ (Error::StepRejected { .. } | Error::ProjectionSingularity)) => {
                    last_err = Some(e);
                }
                Err(e) => return Err(e),
            }
        }
        match accepted {
            Some((next, step)) => {
                current = next;
                steps.push(step);
                step_index += 1;
            }
            None => {
                let last_margin = match last_err {
                    Some(Error::StepRejected { margin }) => margin,
                    _ => f64::NAN,
                };
                return Err(Error::ReductionFailed {
                    step: step_index,
                    retries: max_retries,
                    last_margin,
                });
            }
        }
    }
    Ok(ReductionPlan {
        steps,
        start_spec: start_descriptor,
        final_dim: current.ambient_dim(),
        budget,
    })
}
