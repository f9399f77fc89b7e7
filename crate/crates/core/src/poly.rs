//! Exact univariate polynomials over the rationals, Sturm-chain root
//! counting, and trigonometric polynomials on the circle.
//!
//! Root counts here are exact: coefficients coming from `f64` data are
//! rationalized losslessly, and all elimination happens in arbitrary
//! precision. Multiplicities are recovered from the chain
//! `g_0 = p, g_{i+1} = gcd(g_i, g_i')`: the number of distinct real roots of
//! `g_i` equals the number of roots of `p` with multiplicity at least `i+1`,
//! so summing distinct-root counts over the chain counts with multiplicity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::rational_from_f64;

/// Dense univariate polynomial over `BigRational`, coefficients low to high,
/// normalized so the leading coefficient is nonzero. The zero polynomial has
/// no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// Rationalizes `f64` coefficients exactly (every finite float is
    /// rational). Errors on non-finite input.
    pub fn from_f64_coeffs(coeffs: &[f64]) -> Result<Self> {
        let rat: Result<Vec<BigRational>> = coeffs.iter().map(|c| rational_from_f64(*c)).collect();
        Ok(Self::new(rat?))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::rational::rational_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        Self::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    /// Panics on division by the zero polynomial.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() / &lead;
            q[rd - dd] = factor.clone();
            // subtract factor * x^(rd-dd) * div
            let mut shifted = vec![BigRational::zero(); rd - dd];
            shifted.extend(div.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&Self::new(shifted));
        }
        (Self::new(q), rem)
    }

    /// Monic greatest common divisor (constant 1 for coprime inputs).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lead) => a.scale(&lead.recip()),
            None => a,
        }
    }

    /// Sign of the polynomial as `x -> +inf`.
    fn sign_at_pos_inf(&self) -> i32 {
        self.leading().map_or(0, |c| rational_sign(c))
    }

    /// Sign of the polynomial as `x -> -inf`.
    fn sign_at_neg_inf(&self) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_inf();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Evaluation point for Sturm sign counting.
enum Place<'a> {
    NegInf,
    At(&'a BigRational),
    PosInf,
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
        chain.push(r.neg());
    }
    chain.pop(); // drop the zero terminator
    chain
}

fn sign_changes(chain: &[RatPoly], at: Place<'_>) -> usize {
    let mut changes = 0;
    let mut prev = 0;
    for p in chain {
        let s = match at {
            Place::NegInf => p.sign_at_neg_inf(),
            Place::PosInf => p.sign_at_pos_inf(),
            Place::At(x) => rational_sign(&p.eval(x)),
        };
        if s != 0 {
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
    }
    changes
}

/// Number of distinct real roots. Correct for non-square-free input: the
/// chain then terminates at a multiple of `gcd(p, p')`, which divides every
/// entry and cannot flip the sign-change count.
pub fn count_real_roots(p: &RatPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    Ok(sign_changes(&chain, Place::NegInf) - sign_changes(&chain, Place::PosInf))
}

/// Number of distinct real roots in the closed interval `[a, b]`.
pub fn count_real_roots_in(p: &RatPoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if a > b {
        return Err(Error::InvalidParameter(format!("empty interval: {a} > {b}")));
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    // Sturm counts roots in (a, b]; add the left endpoint separately.
    let inner = sign_changes(&chain, Place::At(a)) - sign_changes(&chain, Place::At(b));
    let at_a = usize::from(p.eval(a).is_zero());
    Ok(inner + at_a)
}

fn multiplicity_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone()];
    loop {
        let last = chain.last().unwrap();
        if last.degree().map_or(true, |d| d == 0) {
            break;
        }
        let next = last.gcd(&last.derivative());
        chain.push(next);
    }
    chain
}

/// Number of real roots counted with multiplicity, over the whole line.
pub fn count_roots_with_multiplicity(p: &RatPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut total = 0;
    for g in multiplicity_chain(p) {
        if g.degree().map_or(true, |d| d == 0) {
            break;
        }
        total += count_real_roots(&g)?;
    }
    Ok(total)
}

/// Number of real roots in `[a, b]` counted with multiplicity.
pub fn count_roots_with_multiplicity_in(
    p: &RatPoly,
    a: &BigRational,
    b: &BigRational,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut total = 0;
    for g in multiplicity_chain(p) {
        if g.degree().map_or(true, |d| d == 0) {
            break;
        }
        total += count_real_roots_in(&g, a, b)?;
    }
    Ok(total)
}

/// Multiplicity of `x0` as a root of `p` (0 when `p(x0) != 0`).
pub fn multiplicity_at(p: &RatPoly, x0: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut mult = 0;
    let mut g = p.clone();
    while g.eval(x0).is_zero() {
        mult += 1;
        g = g.derivative();
        if g.is_zero() {
            break;
        }
    }
    Ok(mult)
}

/// Trigonometric polynomial `a_0 + sum_{i=1}^h (a_i cos(i t) + b_i sin(i t))`
/// with exact rational coefficients. Index 0 of `sin_coeffs` is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigPoly {
    cos_coeffs: Vec<BigRational>,
    sin_coeffs: Vec<BigRational>,
}

impl TrigPoly {
    /// `cos_coeffs[0]` is the constant term; both vectors must have the same
    /// length `h + 1`.
    pub fn new(cos_coeffs: Vec<BigRational>, sin_coeffs: Vec<BigRational>) -> Result<Self> {
        if cos_coeffs.len() != sin_coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: cos_coeffs.len(),
                got: sin_coeffs.len(),
            });
        }
        if cos_coeffs.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        Ok(Self { cos_coeffs, sin_coeffs })
    }

    pub fn from_f64(cos_coeffs: &[f64], sin_coeffs: &[f64]) -> Result<Self> {
        let a: Result<Vec<BigRational>> =
            cos_coeffs.iter().map(|c| rational_from_f64(*c)).collect();
        let b: Result<Vec<BigRational>> =
            sin_coeffs.iter().map(|c| rational_from_f64(*c)).collect();
        Self::new(a?, b?)
    }

    /// Highest harmonic index (the vectors may carry trailing zeros).
    pub fn harmonic_degree(&self) -> usize {
        for i in (0..self.cos_coeffs.len()).rev() {
            if !self.cos_coeffs[i].is_zero() || !self.sin_coeffs[i].is_zero() {
                return i;
            }
        }
        0
    }

    pub fn is_zero(&self) -> bool {
        self.cos_coeffs.iter().all(Zero::is_zero) && self.sin_coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = crate::rational::rational_to_f64(&self.cos_coeffs[0]);
        for i in 1..self.cos_coeffs.len() {
            let it = i as f64 * t;
            acc += crate::rational::rational_to_f64(&self.cos_coeffs[i]) * it.cos();
            acc += crate::rational::rational_to_f64(&self.sin_coeffs[i]) * it.sin();
        }
        acc
    }

    /// Exact derivative: `d/dt cos(it) = -i sin(it)`, `d/dt sin(it) = i cos(it)`.
    pub fn derivative(&self) -> Self {
        let h = self.cos_coeffs.len() - 1;
        let mut cos_coeffs = vec![BigRational::zero(); h + 1];
        let mut sin_coeffs = vec![BigRational::zero(); h + 1];
        for i in 1..=h {
            let fi = BigRational::from_integer(BigInt::from(i));
            cos_coeffs[i] = &self.sin_coeffs[i] * &fi;
            sin_coeffs[i] = -(&self.cos_coeffs[i] * &fi);
        }
        Self { cos_coeffs, sin_coeffs }
    }

    /// Exact value at `t = pi`: `cos(i pi) = (-1)^i`, `sin(i pi) = 0`.
    pub fn eval_at_pi(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, a) in self.cos_coeffs.iter().enumerate() {
            if i % 2 == 0 {
                acc += a;
            } else {
                acc -= a;
            }
        }
        acc
    }

    /// Multiplicity of `t = pi` as a zero (0 when the value is nonzero).
    pub fn multiplicity_at_pi(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let cap = 2 * self.harmonic_degree() + 1;
        let mut mult = 0;
        let mut g = self.clone();
        while g.eval_at_pi().is_zero() {
            mult += 1;
            if mult > cap {
                // a nonzero harmonic polynomial cannot vanish this deeply
                return Err(Error::ZeroFunction);
            }
            g = g.derivative();
        }
        Ok(mult)
    }

    /// Half-angle image: with `s = tan(t/2)` this returns
    /// `P(s) = (1 + s^2)^h * f(t(s))`, a polynomial of degree at most `2h`
    /// whose real roots correspond exactly (with multiplicity) to the roots
    /// of `f` on `(-pi, pi)`.
    pub fn half_angle_polynomial(&self) -> RatPoly {
        let h = self.cos_coeffs.len() - 1;
        let one_plus_s2 = RatPoly::new(vec![
            BigRational::one(),
            BigRational::zero(),
            BigRational::one(),
        ]);
        // cos t = (1-s^2)/(1+s^2), sin t = 2s/(1+s^2); build numerators of
        // cos(it), sin(it) over (1+s^2)^i by the angle-addition recurrence.
        let cos_num = RatPoly::new(vec![
            BigRational::one(),
            BigRational::zero(),
            -BigRational::one(),
        ]);
        let sin_num = RatPoly::new(vec![
            BigRational::zero(),
            BigRational::from_integer(2.into()),
        ]);

        // powers[i] = (1+s^2)^i for i = 0..=h
        let mut powers = vec![RatPoly::constant(BigRational::one())];
        for i in 1..=h {
            powers.push(powers[i - 1].mul(&one_plus_s2));
        }

        let mut result = RatPoly::zero();
        let mut c_i = RatPoly::constant(BigRational::one()); // cos(0 t) numerator
        let mut s_i = RatPoly::zero(); // sin(0 t) numerator
        for i in 0..=h {
            let term = c_i
                .scale(&self.cos_coeffs[i])
                .add(&s_i.scale(&self.sin_coeffs[i]))
                .mul(&powers[h - i]);
            result = result.add(&term);
            if i < h {
                let next_c = c_i.mul(&cos_num).sub(&s_i.mul(&sin_num));
                let next_s = s_i.mul(&cos_num).add(&c_i.mul(&sin_num));
                c_i = next_c;
                s_i = next_s;
            }
        }
        result
    }
}

/// Roots of a trigonometric polynomial on the full circle `[0, 2pi)`,
/// counted with multiplicity. Exact: the point `t = pi` is handled by
/// symbolic differentiation and everything else through the half-angle
/// substitution.
pub fn count_circle_roots_with_multiplicity(f: &TrigPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let at_pi = f.multiplicity_at_pi()?;
    let p = f.half_angle_polynomial();
    let interior = if p.is_zero() {
        // f vanishes identically on (-pi, pi), hence everywhere; excluded above
        return Err(Error::ZeroFunction);
    } else {
        count_roots_with_multiplicity(&p)?
    };
    Ok(interior + at_pi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::new(coeffs.iter().map(|c| q(*c)).collect())
    }

    #[test]
    fn arithmetic_and_eval() {
        // (x - 1)(x + 2) = x^2 + x - 2
        let p = poly(&[-1, 1]).mul(&poly(&[2, 1]));
        assert_eq!(p, poly(&[-2, 1, 1]));
        assert_eq!(p.eval(&q(1)), q(0));
        assert_eq!(p.eval(&q(3)), q(10));
        assert_eq!(p.derivative(), poly(&[1, 2]));

        let (quo, rem) = p.divrem(&poly(&[-1, 1]));
        assert_eq!(quo, poly(&[2, 1]));
        assert!(rem.is_zero());

        let (quo, rem) = poly(&[1, 0, 1]).divrem(&poly(&[1, 1]));
        assert_eq!(quo, poly(&[-1, 1]));
        assert_eq!(rem, poly(&[2]));
    }

    #[test]
    fn gcd_detects_shared_roots() {
        // gcd((x-1)^2 (x+2), (x-1)(x-3)) = x - 1
        let a = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1]));
        let b = poly(&[-1, 1]).mul(&poly(&[-3, 1]));
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));

        let coprime = poly(&[1, 1]).gcd(&poly(&[-1, 1]));
        assert_eq!(coprime.degree(), Some(0));
    }

    #[test]
    fn sturm_distinct_root_counts() {
        // x^2 - 2: two real roots
        assert_eq!(count_real_roots(&poly(&[-2, 0, 1])).unwrap(), 2);
        // x^2 + 1: none
        assert_eq!(count_real_roots(&poly(&[1, 0, 1])).unwrap(), 0);
        // (x-1)^2 (x+2): two distinct
        let p = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1]));
        assert_eq!(count_real_roots(&p).unwrap(), 2);
        // degree 0
        assert_eq!(count_real_roots(&poly(&[5])).unwrap(), 0);
        assert!(count_real_roots(&RatPoly::zero()).is_err());
    }

    #[test]
    fn sturm_interval_counts() {
        // roots of x^2 - 2 at +-sqrt(2) ~ +-1.414
        let p = poly(&[-2, 0, 1]);
        assert_eq!(count_real_roots_in(&p, &q(0), &q(2)).unwrap(), 1);
        assert_eq!(count_real_roots_in(&p, &q(-2), &q(2)).unwrap(), 2);
        assert_eq!(count_real_roots_in(&p, &q(2), &q(3)).unwrap(), 0);
        // closed-interval semantics at both endpoints: x on [0, 1]
        let lin = poly(&[0, 1]);
        assert_eq!(count_real_roots_in(&lin, &q(0), &q(1)).unwrap(), 1);
        assert_eq!(count_real_roots_in(&lin, &q(-1), &q(0)).unwrap(), 1);
        assert!(count_real_roots_in(&lin, &q(1), &q(0)).is_err());
    }

    #[test]
    fn multiplicity_counts() {
        // (x-1)^3 (x+2): 4 with multiplicity, 2 distinct
        let cube = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[-1, 1]));
        let p = cube.mul(&poly(&[2, 1]));
        assert_eq!(count_real_roots(&p).unwrap(), 2);
        assert_eq!(count_roots_with_multiplicity(&p).unwrap(), 4);
        assert_eq!(multiplicity_at(&p, &q(1)).unwrap(), 3);
        assert_eq!(multiplicity_at(&p, &q(-2)).unwrap(), 1);
        assert_eq!(multiplicity_at(&p, &q(7)).unwrap(), 0);

        // x^2 (x^2 + 1): only the double root at 0 is real
        let p = poly(&[0, 0, 1]).mul(&poly(&[1, 0, 1]));
        assert_eq!(count_roots_with_multiplicity(&p).unwrap(), 2);

        // interval variant: (x-1)^2 x on [0, 1] has 3 with multiplicity
        let p = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[0, 1]));
        assert_eq!(count_roots_with_multiplicity_in(&p, &q(0), &q(1)).unwrap(), 3);
        assert_eq!(count_roots_with_multiplicity_in(&p, &q(0), &q(0)).unwrap(), 1);
    }

    #[test]
    fn float_coefficients_rationalize_exactly() {
        let p = RatPoly::from_f64_coeffs(&[0.5, -0.25, 1.0]).unwrap();
        assert_eq!(p.coeffs()[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(p.coeffs()[1], BigRational::new((-1).into(), 4.into()));
        assert!(RatPoly::from_f64_coeffs(&[f64::INFINITY]).is_err());
    }

    #[test]
    fn trig_derivative_and_pi_values() {
        // f = 1 + cos t
        let f = TrigPoly::new(vec![q(1), q(1)], vec![q(0), q(0)]).unwrap();
        assert_eq!(f.eval_at_pi(), q(0));
        // f' = -sin t
        let d = f.derivative();
        assert_eq!(d.eval_at_pi(), q(0));
        // f'' = -cos t, value 1 at pi
        assert_eq!(d.derivative().eval_at_pi(), q(1));
        assert_eq!(f.multiplicity_at_pi().unwrap(), 2);

        // and the half-angle image is the constant 2, with no real roots
        let p = f.half_angle_polynomial();
        assert_eq!(p, poly(&[2]));
        assert_eq!(count_circle_roots_with_multiplicity(&f).unwrap(), 2);
    }

    #[test]
    fn half_angle_tracks_known_roots() {
        // f = cos 2t - cos t: double root at 0, simple roots at +-2pi/3
        let f = TrigPoly::new(vec![q(0), q(-1), q(1)], vec![q(0), q(0), q(0)]).unwrap();
        assert_eq!(f.multiplicity_at_pi().unwrap(), 0);
        assert_eq!(count_circle_roots_with_multiplicity(&f).unwrap(), 4);

        // f = sin t: simple roots at 0 and pi
        let f = TrigPoly::new(vec![q(0), q(0)], vec![q(0), q(1)]).unwrap();
        assert_eq!(f.multiplicity_at_pi().unwrap(), 1);
        assert_eq!(count_circle_roots_with_multiplicity(&f).unwrap(), 2);

        // f = cos t - 2: no roots at all
        let f = TrigPoly::new(vec![q(-2), q(1)], vec![q(0), q(0)]).unwrap();
        assert_eq!(count_circle_roots_with_multiplicity(&f).unwrap(), 0);

        // harmonic degree h admits at most 2h circle roots: spot-check h = 3
        let f = TrigPoly::new(
            vec![q(0), q(0), q(0), q(1)],
            vec![q(0), q(0), q(0), q(0)],
        )
        .unwrap();
        // cos 3t has six simple roots on the circle
        assert_eq!(count_circle_roots_with_multiplicity(&f).unwrap(), 6);
    }

    #[test]
    fn half_angle_agrees_with_pointwise_evaluation() {
        let f = TrigPoly::new(
            vec![q(1), q(-2), q(0), q(3)],
            vec![q(0), q(1), q(1), q(-1)],
        )
        .unwrap();
        let p = f.half_angle_polynomial();
        for k in -6i32..=6 {
            let s = k as f64 / 2.0;
            let t = 2.0 * s.atan();
            let lhs = p.eval_f64(s);
            let rhs = (1.0 + s * s).powi(3) * f.eval_f64(t);
            assert!(
                (lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs().max(rhs.abs())),
                "mismatch at s={s}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn zero_function_is_rejected() {
        let z = TrigPoly::new(vec![q(0), q(0)], vec![q(0), q(0)]).unwrap();
        assert!(z.is_zero());
        assert!(count_circle_roots_with_multiplicity(&z).is_err());
        assert!(z.multiplicity_at_pi().is_err());
    }
}
