//! Regularity toolkit for embedded curves and surfaces.
//!
//! A map `f` of an n-manifold into `R^N` is (k,l)-regular when, for every
//! choice of k points and l further points with tangent directions, the k+l
//! image points together with the tangent lines at the last l are affinely
//! independent. Appending a homogeneous coordinate (1 for points, 0 for
//! directions) turns that condition into linear independence of lifted
//! vectors in `R^{N+1}`, which is what everything here computes with.
//!
//! The crate provides:
//! - explicit regular maps (moment, trigonometric, and complex moment
//!   curves, tensor-product surfaces) plus truncations, central projections,
//!   and sampled maps loaded from CSV ([`embeddings`]);
//! - rank/margin verdicts for configurations, in floating point or exact
//!   rational arithmetic, with hyperplane witnesses for violations
//!   ([`lift`], [`verifier`]);
//! - randomized and adversarial searches for near-violations ([`verifier`]);
//! - exact certificates: confluent Vandermonde determinants and root counts
//!   of hyperplane incidence functions ([`verifier`], [`poly`]);
//! - dimension bounds for (k,l)-regular maps ([`bounds`]);
//! - dimension reduction by validated central projection ([`reduction`]).

pub mod bounds;
pub mod embeddings;
pub mod error;
pub mod lift;
pub mod poly;
pub mod rational;
pub mod reduction;
pub mod verifier;

pub use bounds::{bounds_table, BoundsResult, ExactValue};
pub use embeddings::{
    complex_moment_curve, evaluate_jet, moment_curve, project, sampled_from_csv, tensor_product,
    trig_curve, truncate, Configuration, DomainChart, EmbeddingSpec, ExactConfiguration, Jet,
    MapKind,
};
pub use error::{Error, Result};
pub use lift::{
    assemble_lifted_matrix, exact_rank, lift_direction, lift_point, rank_and_margin, LiftedMatrix,
    RankReport, DEFAULT_TOLERANCE,
};
pub use reduction::{
    project_step, reduce_dimension, span_union_dimension, ProjectionStep, ReductionPlan,
};
pub use verifier::{
    adversarial_search, check_configuration, check_configuration_exact,
    check_subspace_configuration, confluent_vandermonde_certificate, count_roots_with_multiplicity,
    find_violating_hyperplane, incidence_polynomial, sample_verify, tangency_crossing_probe,
    FlatWitness, Hyperplane, IncidencePolynomial, PolynomialBasis, RegularityVerdict, RootDomain,
    SearchReport,
};
