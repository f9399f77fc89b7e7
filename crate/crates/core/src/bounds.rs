//! Dimension bounds for (k,l)-regular maps of an n-manifold, and the known
//! exact values for curves and the plane.
//!
//! All bracket expressions use floor semantics, including
//! `floor((k-1)/2) = -1` at `k = 0`; that is the only reading under which
//! the general lower bound degenerates to the counting bound `(n+1)l - 1`
//! at `k = 0`.

use serde::Serialize;

use crate::error::{Error, Result};

/// An exact minimal ambient dimension together with where it comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    pub value: i64,
    pub source: String,
}

/// Every bound for one `(n, k, l, closed)` query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsResult {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub closed: bool,
    /// Counting bound `k + (n+1)l - 1`.
    pub lower_count: i64,
    /// General lower bound `floor(k/2) n + floor((k-1)/2) + (n+1)l`.
    pub lower_main: i64,
    /// Closed-manifold bound `(n+1)l`, defined for `k = 0, l >= 1` only.
    pub lower_closed: Option<i64>,
    /// Generic upper bound `(n+1)k + (2n+1)l - 1`.
    pub upper_main: i64,
    /// Reference lower bound for plain k-point regularity of `R^n`:
    /// `floor(k/2) n + floor((k+1)/2)`.
    pub brs_lower: Option<i64>,
    /// Known exact value when one exists (curves, and the plane for two
    /// tangent lines).
    pub exact: Option<ExactValue>,
}

fn require_nonempty(k: u32, l: u32) -> Result<()> {
    if k == 0 && l == 0 {
        Err(Error::EmptyConfiguration)
    } else {
        Ok(())
    }
}

/// Counting bound: `k + (n+1)l - 1`.
pub fn lower_bound_count(n: u32, k: u32, l: u32) -> Result<i64> {
    require_nonempty(k, l)?;
    let (n, k, l) = (n as i64, k as i64, l as i64);
    Ok(k + (n + 1) * l - 1)
}

/// General lower bound: `floor(k/2) n + floor((k-1)/2) + (n+1)l`.
pub fn lower_bound_main(n: u32, k: u32, l: u32) -> Result<i64> {
    require_nonempty(k, l)?;
    let (n, k, l) = (n as i64, k as i64, l as i64);
    Ok(k.div_euclid(2) * n + (k - 1).div_euclid(2) + (n + 1) * l)
}

/// Generic upper bound: `(n+1)k + (2n+1)l - 1`.
pub fn upper_bound_main(n: u32, k: u32, l: u32) -> Result<i64> {
    require_nonempty(k, l)?;
    let (n, k, l) = (n as i64, k as i64, l as i64);
    Ok((n + 1) * k + (2 * n + 1) * l - 1)
}

/// Lower bound for closed manifolds with tangency conditions only:
/// `(n+1)l`, valid for `k = 0`.
pub fn lower_bound_closed(n: u32, l: u32) -> Result<i64> {
    if l == 0 {
        return Err(Error::InvalidParameter(
            "closed-manifold bound needs at least one tangency point".into(),
        ));
    }
    Ok((n as i64 + 1) * l as i64)
}

/// Classical lower bound for k-point regular maps of `R^n`:
/// `floor(k/2) n + floor((k+1)/2)`.
pub fn brs_bound(n: u32, k: u32) -> Result<i64> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "k-point regularity bound needs k >= 1".into(),
        ));
    }
    let (n, k) = (n as i64, k as i64);
    Ok(k.div_euclid(2) * n + (k + 1).div_euclid(2))
}

/// Exact minimal dimension for curves: `k + 2l - 1` on the line; on the
/// circle `k + 2l` for even `k` and `k + 2l - 1` for odd `k`.
pub fn exact_curve(k: u32, l: u32, closed: bool) -> Result<i64> {
    require_nonempty(k, l)?;
    let (k, l) = (k as i64, l as i64);
    let open_value = k + 2 * l - 1;
    if closed && k % 2 == 0 {
        Ok(open_value + 1)
    } else {
        Ok(open_value)
    }
}

/// Source tags for the exact values table.
const SOURCE_CURVE_OPEN: &str = "optimal curve in the line (k+2l-1)";
const SOURCE_CURVE_CLOSED: &str = "optimal curve on the circle (k+2l even k, k+2l-1 odd k)";
const SOURCE_PLANE_SKEW: &str = "classical totally-skew value for the plane";

/// Known exact values outside the curve formulas, keyed by
/// `(n, k, l, closed)`.
const KNOWN_EXACT: &[((u32, u32, u32, bool), i64, &str)] =
    &[((2, 0, 2, false), 6, SOURCE_PLANE_SKEW)];

/// Aggregates every applicable bound and exact value for one query.
pub fn bounds_table(n: u32, k: u32, l: u32, closed: bool) -> Result<BoundsResult> {
    require_nonempty(k, l)?;
    let lower_count = lower_bound_count(n, k, l)?;
    let lower_main = lower_bound_main(n, k, l)?;
    let upper_main = upper_bound_main(n, k, l)?;
    let lower_closed = if closed && k == 0 && l >= 1 {
        Some(lower_bound_closed(n, l)?)
    } else {
        None
    };
    let brs_lower = if k >= 1 { Some(brs_bound(n, k)?) } else { None };

    let exact = if n == 1 {
        let source = if closed { SOURCE_CURVE_CLOSED } else { SOURCE_CURVE_OPEN };
        Some(ExactValue { value: exact_curve(k, l, closed)?, source: source.into() })
    } else {
        KNOWN_EXACT
            .iter()
            .find(|(key, _, _)| *key == (n, k, l, closed))
            .map(|(_, value, source)| ExactValue { value: *value, source: (*source).into() })
    };

    Ok(BoundsResult {
        n,
        k,
        l,
        closed,
        lower_count,
        lower_main,
        lower_closed,
        upper_main,
        brs_lower,
        exact,
    })
}

impl BoundsResult {
    /// Largest applicable lower bound.
    pub fn best_lower(&self) -> i64 {
        let mut best = self.lower_count.max(self.lower_main);
        if let Some(c) = self.lower_closed {
            best = best.max(c);
        }
        best
    }
}
