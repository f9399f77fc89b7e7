//! Brute-force reference implementations shared by the integration tests.
//! Everything here is deliberately naive and independent of the library's
//! own linear algebra.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use klreg::LiftedMatrix;

/// Dimension of the affine hull of a point set, by Gaussian elimination on
/// difference vectors against the first point.
#[allow(dead_code)]
pub fn affine_hull_dim(points: &[Vec<f64>], tol: f64) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let mut rows: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let cols = base.len();
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, b| a.max(b.abs()))
        .max(1.0);
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows.len())
            .max_by(|a, b| rows[*a][col].abs().partial_cmp(&rows[*b][col].abs()).unwrap());
        let Some(pivot) = pivot else { break };
        if rows[pivot][col].abs() <= tol * scale {
            continue;
        }
        rows.swap(rank, pivot);
        for r in (rank + 1)..rows.len() {
            let factor = rows[r][col] / rows[rank][col];
            for c in col..cols {
                rows[r][c] -= factor * rows[rank][c];
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exact determinant by cofactor expansion along the first row.
pub fn cofactor_det(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    if n == 0 {
        return BigRational::one();
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut det = BigRational::zero();
    for (j, entry) in rows[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry * cofactor_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Exact rank as the size of the largest nonzero minor, searched from the
/// largest size downward with early exit.
#[allow(dead_code)]
pub fn minor_rank(rows: &[Vec<BigRational>]) -> usize {
    let nr = rows.len();
    if nr == 0 {
        return 0;
    }
    let nc = rows[0].len();
    for size in (1..=nr.min(nc)).rev() {
        for row_set in subsets(nr, size) {
            for col_set in subsets(nc, size) {
                let minor: Vec<Vec<BigRational>> = row_set
                    .iter()
                    .map(|&r| col_set.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                if !cofactor_det(&minor).is_zero() {
                    return size;
                }
            }
        }
    }
    0
}

#[allow(dead_code)]
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}

/// Largest and smallest singular value of a lifted matrix.
#[allow(dead_code)]
pub fn sigma_extremes(matrix: &LiftedMatrix<f64>) -> (f64, f64) {
    let rows = matrix.rows();
    let cols = matrix.num_columns();
    if rows == 0 || cols == 0 {
        return (0.0, 0.0);
    }
    let m = DMatrix::from_fn(rows, cols, |i, j| matrix.columns()[j][i]);
    let sv = m.singular_values();
    let max = sv.iter().fold(0.0f64, |a, b| a.max(*b));
    let min = sv.iter().fold(f64::INFINITY, |a, b| a.min(*b));
    (max, min)
}

/// Random rational with numerator in [-max_num, max_num] and denominator in
/// [1, max_den].
pub fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> BigRational {
    let num = rng.random_range(-max_num..=max_num);
    let den = rng.random_range(1..=max_den);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Draws `count` pairwise-distinct random rationals.
#[allow(dead_code)]
pub fn distinct_rationals(
    rng: &mut ChaCha8Rng,
    count: usize,
    max_num: i64,
    max_den: i64,
) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(count);
    while out.len() < count {
        let r = random_rational(rng, max_num, max_den);
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Exact full-column-rank certificate for a configuration on the closed
/// curve with `h` harmonics, built independently of the library's jet code:
/// the curve's coordinates at angle `a` are Chebyshev polynomials in
/// `(c, s) = (cos a, sin a)`, so rationalizing the computed cosine/sine
/// yields an exact matrix whose Bareiss rank certifies independence even
/// when the double-precision margin underflows.
#[allow(dead_code)]
pub fn trig_exact_full_rank(h: usize, config: &klreg::Configuration) -> bool {
    use klreg::lift::ColumnRole;
    use klreg::rational::rational_from_f64;

    // first-kind (T) and second-kind (U) Chebyshev values at c, both up to
    // index h, by the shared recurrence p[i+1] = 2c p[i] - p[i-1]
    let chebyshev = |c: &BigRational| -> (Vec<BigRational>, Vec<BigRational>) {
        let two_c = BigRational::from_integer(2.into()) * c;
        let mut t = vec![BigRational::one(), c.clone()];
        let mut u = vec![BigRational::one(), two_c.clone()];
        for i in 1..h {
            t.push(&two_c * &t[i] - &t[i - 1]);
            u.push(&two_c * &u[i] - &u[i - 1]);
        }
        (t, u)
    };
    let point_col = |alpha: f64| -> Vec<BigRational> {
        let c = rational_from_f64(alpha.cos()).unwrap();
        let s = rational_from_f64(alpha.sin()).unwrap();
        let (t, u) = chebyshev(&c);
        let mut col = Vec::with_capacity(2 * h + 1);
        for i in 1..=h {
            col.push(t[i].clone());
            col.push(&s * &u[i - 1]);
        }
        col.push(BigRational::one());
        col
    };
    // d/da cos(ia) = -i sin(ia) = -i s U_{i-1}(c);  d/da sin(ia) = i T_i(c)
    let direction_col = |alpha: f64, scale: f64| -> Vec<BigRational> {
        let c = rational_from_f64(alpha.cos()).unwrap();
        let s = rational_from_f64(alpha.sin()).unwrap();
        let w = rational_from_f64(scale).unwrap();
        let (t, u) = chebyshev(&c);
        let mut col = Vec::with_capacity(2 * h + 1);
        for i in 1..=h {
            let i_q = BigRational::from_integer((i as i64).into());
            col.push(-&i_q * &s * &u[i - 1] * &w);
            col.push(&i_q * &t[i] * &w);
        }
        col.push(BigRational::zero());
        col
    };

    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for p in &config.through_points {
        columns.push(point_col(p[0]));
        labels.push(ColumnRole::ThroughPoint);
    }
    for (p, dirs) in config.tangency_points.iter().zip(&config.directions) {
        columns.push(point_col(p[0]));
        labels.push(ColumnRole::TangencyPoint);
        for d in dirs {
            columns.push(direction_col(p[0], d[0]));
            labels.push(ColumnRole::Direction);
        }
    }
    let count = columns.len();
    let matrix = klreg::LiftedMatrix::from_columns(columns, labels).unwrap();
    klreg::exact_rank(&matrix).full_column_rank(count)
}
