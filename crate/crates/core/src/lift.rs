//! Lifting affine data to linear data, and the rank/margin computations that
//! decide affine independence.
//!
//! A point `x` lifts to `(x, 1)` and a tangent vector `u` lifts to `(u, 0)`.
//! A family of points and tangent lines is affinely independent exactly when
//! the lifted vectors are linearly independent, so every regularity question
//! in this crate reduces to a column-rank decision on a lifted matrix.

use nalgebra::DMatrix;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{bareiss_rank, rational_to_f64};

/// Default relative rank tolerance against the largest singular value.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Sentinel margin reported by the exact path for a full-rank matrix.
pub const EXACT_FULL_RANK_MARGIN: f64 = f64::INFINITY;

/// Role of a column in a lifted matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColumnRole {
    ThroughPoint,
    TangencyPoint,
    Direction,
}

/// Column matrix of lifted points `(f(x), 1)` and lifted directions `(df(u), 0)`.
///
/// `rows` is `N + 1` for ambient dimension `N`. Columns are ordered: through
/// points, then tangency points, then direction vectors grouped by their
/// tangency point. The fixed order keeps determinant signs reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedMatrix<T> {
    rows: usize,
    columns: Vec<Vec<T>>,
    labels: Vec<ColumnRole>,
}

impl<T: Clone> LiftedMatrix<T> {
    /// Builds a matrix from raw lifted columns. Every column must already
    /// have its homogeneous coordinate appended.
    pub fn from_columns(columns: Vec<Vec<T>>, labels: Vec<ColumnRole>) -> Result<Self> {
        assert_eq!(columns.len(), labels.len(), "one label per column");
        let rows = columns.first().map_or(0, Vec::len);
        for col in &columns {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: col.len() });
            }
        }
        Ok(Self { rows, columns, labels })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    pub fn labels(&self) -> &[ColumnRole] {
        &self.labels
    }

    /// Row-major copy of the entries, for elimination-style algorithms.
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows)
            .map(|i| self.columns.iter().map(|c| c[i].clone()).collect())
            .collect()
    }
}

impl LiftedMatrix<BigRational> {
    /// Lossy conversion for reporting and for cross-checks against the
    /// floating-point path.
    pub fn to_f64(&self) -> LiftedMatrix<f64> {
        LiftedMatrix {
            rows: self.rows,
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(rational_to_f64).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }
}

/// Outcome of a rank decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    /// Number of singular values above the relative threshold (or the exact
    /// rank when `exact` is set).
    pub rank: usize,
    /// Smallest singular value of the column matrix; 0 when there are more
    /// columns than rows. The exact path reports [`EXACT_FULL_RANK_MARGIN`]
    /// for full rank and 0 otherwise.
    pub margin: f64,
    /// Relative tolerance used by the numerical path.
    pub tolerance: f64,
    /// True when the rank was decided in rational arithmetic.
    pub exact: bool,
}

impl RankReport {
    /// Whether the matrix has full column rank.
    pub fn full_column_rank(&self, num_columns: usize) -> bool {
        self.rank == num_columns
    }
}

/// Appends the homogeneous coordinate 1 to a point.
pub fn lift_point(p: &[f64]) -> Result<Vec<f64>> {
    if let Some(bad) = p.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite coordinate {bad}")));
    }
    let mut v = p.to_vec();
    v.push(1.0);
    Ok(v)
}

/// Appends the homogeneous coordinate 0 to a tangent vector.
pub fn lift_direction(u: &[f64]) -> Result<Vec<f64>> {
    if let Some(bad) = u.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite coordinate {bad}")));
    }
    if u.iter().all(|x| *x == 0.0) {
        return Err(Error::DegenerateDirection);
    }
    let mut v = u.to_vec();
    v.push(0.0);
    Ok(v)
}

fn lift_point_exact(p: &[BigRational]) -> Vec<BigRational> {
    let mut v = p.to_vec();
    v.push(BigRational::from_integer(1.into()));
    v
}

fn lift_direction_exact(u: &[BigRational]) -> Result<Vec<BigRational>> {
    use num_traits::Zero;
    if u.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateDirection);
    }
    let mut v = u.to_vec();
    v.push(BigRational::from_integer(0.into()));
    Ok(v)
}

/// Assembles the lifted matrix of a configuration in ambient dimension `N`:
/// through points, tangency points, then direction vectors grouped per
/// tangency point. `directions[i]` holds the vectors attached to
/// `tangency_points[i]`.
pub fn assemble_lifted_matrix(
    points: &[Vec<f64>],
    tangency_points: &[Vec<f64>],
    directions: &[Vec<Vec<f64>>],
) -> Result<LiftedMatrix<f64>> {
    if points.is_empty() && tangency_points.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    assert_eq!(
        tangency_points.len(),
        directions.len(),
        "one direction group per tangency point"
    );
    let ambient = points.first().or_else(|| tangency_points.first()).map_or(0, Vec::len);
    let check_dim = |v: &[f64]| -> Result<()> {
        if v.len() != ambient {
            Err(Error::DimensionMismatch { expected: ambient, got: v.len() })
        } else {
            Ok(())
        }
    };

    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for p in points {
        check_dim(p)?;
        columns.push(lift_point(p)?);
        labels.push(ColumnRole::ThroughPoint);
    }
    for y in tangency_points {
        check_dim(y)?;
        columns.push(lift_point(y)?);
        labels.push(ColumnRole::TangencyPoint);
    }
    for group in directions {
        for u in group {
            check_dim(u)?;
            columns.push(lift_direction(u)?);
            labels.push(ColumnRole::Direction);
        }
    }
    LiftedMatrix::from_columns(columns, labels)
}

/// Exact counterpart of [`assemble_lifted_matrix`].
pub fn assemble_lifted_matrix_exact(
    points: &[Vec<BigRational>],
    tangency_points: &[Vec<BigRational>],
    directions: &[Vec<Vec<BigRational>>],
) -> Result<LiftedMatrix<BigRational>> {
    if points.is_empty() && tangency_points.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    assert_eq!(tangency_points.len(), directions.len());
    let ambient = points.first().or_else(|| tangency_points.first()).map_or(0, Vec::len);
    let check_dim = |v: &[BigRational]| -> Result<()> {
        if v.len() != ambient {
            Err(Error::DimensionMismatch { expected: ambient, got: v.len() })
        } else {
            Ok(())
        }
    };

    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for p in points {
        check_dim(p)?;
        columns.push(lift_point_exact(p));
        labels.push(ColumnRole::ThroughPoint);
    }
    for y in tangency_points {
        check_dim(y)?;
        columns.push(lift_point_exact(y));
        labels.push(ColumnRole::TangencyPoint);
    }
    for group in directions {
        for u in group {
            check_dim(u)?;
            columns.push(lift_direction_exact(u)?);
            labels.push(ColumnRole::Direction);
        }
    }
    LiftedMatrix::from_columns(columns, labels)
}

/// Singular values of the column matrix, descending.
fn singular_values(m: &LiftedMatrix<f64>) -> Vec<f64> {
    if m.num_columns() == 0 || m.rows == 0 {
        return Vec::new();
    }
    let mat = DMatrix::from_fn(m.rows, m.num_columns(), |i, j| m.columns[j][i]);
    let mut sv: Vec<f64> = mat.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Numerical rank and margin of the column matrix.
///
/// The rank counts singular values above `tol` times the largest singular
/// value (or above `tol` itself when the matrix is zero). The margin is the
/// smallest singular value when there are at most as many columns as rows,
/// and 0 otherwise.
pub fn rank_and_margin(m: &LiftedMatrix<f64>, tol: f64) -> Result<RankReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let sv = singular_values(m);
    let largest = sv.first().copied().unwrap_or(0.0);
    let threshold = tol * if largest > 0.0 { largest } else { 1.0 };
    let rank = sv.iter().filter(|s| **s > threshold).count();
    let margin = if m.num_columns() == 0 || m.num_columns() > m.rows {
        0.0
    } else {
        sv.last().copied().unwrap_or(0.0)
    };
    Ok(RankReport { rank, margin, tolerance: tol, exact: false })
}

/// Exact rank by fraction-free elimination over arbitrary-precision integers.
/// The verdict is independent of column order.
pub fn exact_rank(m: &LiftedMatrix<BigRational>) -> RankReport {
    let rank = bareiss_rank(&m.to_rows());
    let full = rank == m.num_columns() && m.num_columns() > 0;
    RankReport {
        rank,
        margin: if full { EXACT_FULL_RANK_MARGIN } else { 0.0 },
        tolerance: 0.0,
        exact: true,
    }
}

/// Dimension of the affine hull of a family of affine pieces, each given as a
/// base point plus spanning vectors. The pieces are affinely independent
/// exactly when the result is `sum(dim_i + 1) - 1`.
pub fn affine_span_dim(pieces: &[(Vec<f64>, Vec<Vec<f64>>)], tol: f64) -> Result<usize> {
    if pieces.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let ambient = pieces[0].0.len();
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for (base, spanning) in pieces {
        if base.len() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, got: base.len() });
        }
        columns.push(lift_point(base)?);
        labels.push(ColumnRole::ThroughPoint);
        for v in spanning {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: v.len() });
            }
            columns.push(lift_direction(v)?);
            labels.push(ColumnRole::Direction);
        }
    }
    let m = LiftedMatrix::from_columns(columns, labels)?;
    let report = rank_and_margin(&m, tol)?;
    // The lifted linear span is one dimension larger than the affine span.
    Ok(report.rank - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn lift_point_appends_one() {
        assert_eq!(lift_point(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0, 1.0]);
        assert_eq!(lift_point(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0, 1.0]);
        // moment curve at t = 2
        let t = 2.0f64;
        assert_eq!(lift_point(&[t, t * t]).unwrap(), vec![2.0, 4.0, 1.0]);
        assert!(matches!(lift_point(&[f64::NAN]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn lift_direction_appends_zero_and_rejects_zero_vector() {
        assert_eq!(lift_direction(&[1.0, 0.0]).unwrap(), vec![1.0, 0.0, 0.0]);
        assert_eq!(lift_direction(&[0.0, 3.0]).unwrap(), vec![0.0, 3.0, 0.0]);
        assert!(matches!(lift_direction(&[0.0, 0.0]), Err(Error::DegenerateDirection)));
    }

    #[test]
    fn assemble_orders_columns_and_checks_dims() {
        let m = assemble_lifted_matrix(
            &[vec![1.0, 1.0]],
            &[vec![0.0, 0.0]],
            &[vec![vec![1.0, 0.0]]],
        )
        .unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(
            m.columns(),
            &[vec![1.0, 1.0, 1.0], vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]]
        );
        assert_eq!(
            m.labels(),
            &[ColumnRole::ThroughPoint, ColumnRole::TangencyPoint, ColumnRole::Direction]
        );

        assert!(matches!(
            assemble_lifted_matrix(&[], &[], &[]),
            Err(Error::EmptyConfiguration)
        ));
        assert!(matches!(
            assemble_lifted_matrix(&[vec![0.0], vec![1.0, 2.0]], &[], &[]),
            Err(Error::DimensionMismatch { .. })
        ));

        let two_points = assemble_lifted_matrix(&[vec![0.0], vec![1.0]], &[], &[]).unwrap();
        assert_eq!(two_points.columns(), &[vec![0.0, 1.0], vec![1.0, 1.0]]);
    }

    #[test]
    fn rank_and_margin_basics() {
        let id = LiftedMatrix::from_columns(
            vec![
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
            vec![ColumnRole::ThroughPoint; 3],
        )
        .unwrap();
        let r = rank_and_margin(&id, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.rank, 3);
        assert!((r.margin - 1.0).abs() < 1e-12);

        // duplicated column
        let dup = LiftedMatrix::from_columns(
            vec![vec![1.0, 2.0], vec![1.0, 2.0]],
            vec![ColumnRole::ThroughPoint; 2],
        )
        .unwrap();
        let r = rank_and_margin(&dup, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.rank, 1);
        let scale = (1.0f64 + 4.0).sqrt() * 2.0f64.sqrt();
        assert!(r.margin <= DEFAULT_TOLERANCE * scale);

        // the hand-assembled moment-curve configuration has determinant 1
        let m = LiftedMatrix::from_columns(
            vec![
                vec![1.0, 1.0, 1.0],
                vec![0.0, 0.0, 1.0],
                vec![1.0, 0.0, 0.0],
            ],
            vec![ColumnRole::ThroughPoint; 3],
        )
        .unwrap();
        let r = rank_and_margin(&m, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.rank, 3);
        assert!(r.margin > 0.0);

        // empty matrix
        let empty = LiftedMatrix::<f64>::from_columns(vec![], vec![]).unwrap();
        let r = rank_and_margin(&empty, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((r.rank, r.margin), (0, 0.0));

        assert!(rank_and_margin(&id, 0.0).is_err());
    }

    #[test]
    fn margin_is_zero_for_wide_matrices() {
        let wide = LiftedMatrix::from_columns(
            vec![vec![0.0, 1.0], vec![1.0, 1.0], vec![2.0, 1.0]],
            vec![ColumnRole::ThroughPoint; 3],
        )
        .unwrap();
        let r = rank_and_margin(&wide, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.margin, 0.0);
    }

    #[test]
    fn exact_rank_cases() {
        let m = LiftedMatrix::from_columns(
            vec![vec![q(1), q(1), q(1)], vec![q(0), q(0), q(1)], vec![q(1), q(0), q(0)]],
            vec![ColumnRole::ThroughPoint; 3],
        )
        .unwrap();
        let r = exact_rank(&m);
        assert_eq!(r.rank, 3);
        assert!(r.exact);
        assert_eq!(r.margin, EXACT_FULL_RANK_MARGIN);

        // three lifted collinear parameters in ambient R^1: rank capped by rows
        let wide = LiftedMatrix::from_columns(
            vec![vec![q(0), q(1)], vec![q(1), q(1)], vec![q(2), q(1)]],
            vec![ColumnRole::ThroughPoint; 3],
        )
        .unwrap();
        assert_eq!(exact_rank(&wide).rank, 2);

        let zero = LiftedMatrix::from_columns(
            vec![vec![q(0), q(0), q(0)]],
            vec![ColumnRole::Direction],
        )
        .unwrap();
        let r = exact_rank(&zero);
        assert_eq!(r.rank, 0);
        assert_eq!(r.margin, 0.0);
    }

    #[test]
    fn affine_span_dims() {
        // two distinct points span a line
        let d = affine_span_dim(
            &[(vec![0.0, 0.0, 0.0], vec![]), (vec![1.0, 0.0, 0.0], vec![])],
            DEFAULT_TOLERANCE,
        )
        .unwrap();
        assert_eq!(d, 1);

        // two skew lines in R^3 are affinely independent: span dim 3
        let d = affine_span_dim(
            &[
                (vec![0.0, 0.0, 0.0], vec![vec![1.0, 0.0, 0.0]]),
                (vec![0.0, 0.0, 1.0], vec![vec![0.0, 1.0, 0.0]]),
            ],
            DEFAULT_TOLERANCE,
        )
        .unwrap();
        assert_eq!(d, 3);

        // no two lines in the plane ever reach span dim 3
        for (b2, v2) in [
            (vec![0.0, 1.0], vec![1.0, 0.0]),  // parallel
            (vec![1.0, 0.0], vec![0.0, 1.0]),  // crossing
            (vec![0.0, 0.0], vec![1.0, 1.0]),  // crossing at origin
        ] {
            let d = affine_span_dim(
                &[
                    (vec![0.0, 0.0], vec![vec![1.0, 0.0]]),
                    (b2.clone(), vec![v2.clone()]),
                ],
                DEFAULT_TOLERANCE,
            )
            .unwrap();
            assert!(d <= 2, "lines {b2:?}+{v2:?} gave affine span {d}");
        }

        assert!(matches!(
            affine_span_dim(&[], DEFAULT_TOLERANCE),
            Err(Error::EmptyConfiguration)
        ));
    }
}
