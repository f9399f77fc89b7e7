//! Exact rational scalars used by the certificate-grade code paths.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Parses a rational literal: `p/q`, an integer, or a plain decimal such as
/// `-0.125`. Scientific notation is rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse `{s}` as a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigUint = frac_part.parse().map_err(|_| bad())?;
        let scale = BigUint::from(10u32).pow(frac_part.len() as u32);
        let mut frac = BigRational::new(BigInt::from(digits), BigInt::from(scale));
        if negative {
            frac = -frac;
        }
        return Ok(BigRational::from(int_part) + frac);
    }
    let int: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from(int))
}

/// Exact conversion of a finite `f64` (every finite double is rational).
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite value {x}")))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Rank of a rational matrix by fraction-free (Bareiss) elimination on the
/// denominator-cleared integer matrix. `rows[i][j]` is row-major.
pub fn bareiss_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = clear_denominators(rows);
    bareiss_rank_int(&mut m)
}

/// Exact determinant of a square rational matrix via Bareiss elimination.
pub fn exact_determinant(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    if n == 0 {
        return BigRational::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in rows {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        m.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        scale *= lcm;
    }
    let det_int = bareiss_determinant_int(&mut m);
    BigRational::new(det_int, scale)
}

fn clear_denominators(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Bareiss elimination over the integers; returns the rank. The two-step
/// division `(pivot*a - b*c) / prev` is exact by the Sylvester identity.
fn bareiss_rank_int(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row_vals = &top[rank];
        let pivot = pivot_row_vals[col].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::replace(&mut row[col], BigInt::zero());
            for j in (col + 1)..cols {
                let t = &pivot * &row[j] - &factor * &pivot_row_vals[j];
                row[j] = t / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn bareiss_determinant_int(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if pivot_row != col {
            m.swap(col, pivot_row);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row_vals = &top[col];
        let pivot = pivot_row_vals[col].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::replace(&mut row[col], BigInt::zero());
            for j in (col + 1)..n {
                let t = &pivot * &row[j] - &factor * &pivot_row_vals[j];
                row[j] = t / &prev;
            }
        }
        prev = pivot;
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 { -det } else { det }
}

/// |x| as a rational.
pub fn rational_abs(x: &BigRational) -> BigRational {
    x.abs()
}
