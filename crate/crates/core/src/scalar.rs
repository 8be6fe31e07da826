//! Exact ordered-field scalars: arbitrary-precision rationals, optionally
//! extended by a single square root `√d`.
//!
//! A computation context works over ℚ or over one quadratic extension
//! ℚ(√d); values from extensions with different radicands must not be
//! combined arithmetically.  Callers that accept external data check this
//! once at the boundary; the arithmetic operators then treat a mixed-radicand
//! operand pair as a programming error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Quadratic part `a + b·√d` with `b ≠ 0` and `d` square-free, `d ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub d: u64,
}

/// An exact element of ℚ or of a real quadratic field ℚ(√d).
///
/// Canonical form: rationals are stored in lowest terms with positive
/// denominator (enforced by `BigRational`); a quadratic value with vanishing
/// irrational part collapses to the `Rational` variant, so structural
/// equality coincides with equality of real numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic(Quad),
}

fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Rational `p/q`; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// Builds `a + b·√d`, collapsing to a rational when `b = 0`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::BadRadicand(d));
        }
        if b.is_zero() {
            Ok(Scalar::Rational(a))
        } else {
            Ok(Scalar::Quadratic(Quad { a, b, d }))
        }
    }

    /// `√d` itself.
    pub fn sqrt_of(d: u64) -> Result<Self> {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    pub fn radicand(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Quadratic(q) => Some(q.d),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Quadratic(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Quadratic(q) => quad_sign(q),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    fn check_compatible(&self, other: &Scalar) -> Result<()> {
        match (self.radicand(), other.radicand()) {
            (Some(d1), Some(d2)) if d1 != d2 => Err(Error::MixedRadicands(d1, d2)),
            _ => Ok(()),
        }
    }

    fn promote(&self, d: u64) -> Quad {
        match self {
            Scalar::Rational(r) => Quad {
                a: r.clone(),
                b: BigRational::zero(),
                d,
            },
            Scalar::Quadratic(q) => q.clone(),
        }
    }

    fn normalize(q: Quad) -> Scalar {
        if q.b.is_zero() {
            Scalar::Rational(q.a)
        } else {
            Scalar::Quadratic(q)
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_compatible(other)?;
        Ok(self.raw_add(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_compatible(other)?;
        Ok(self.raw_sub(other))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_compatible(other)?;
        Ok(self.raw_mul(other))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.raw_mul(&other.recip()?))
    }

    fn raw_add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => {
                let d = self.radicand().or_else(|| other.radicand()).unwrap();
                let x = self.promote(d);
                let y = other.promote(d);
                Scalar::normalize(Quad {
                    a: x.a + y.a,
                    b: x.b + y.b,
                    d,
                })
            }
        }
    }

    fn raw_sub(&self, other: &Scalar) -> Scalar {
        self.raw_add(&-other)
    }

    fn raw_mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => {
                let d = self.radicand().or_else(|| other.radicand()).unwrap();
                let x = self.promote(d);
                let y = other.promote(d);
                let rad = BigRational::from_integer(BigInt::from(d));
                Scalar::normalize(Quad {
                    a: &x.a * &y.a + &x.b * &y.b * &rad,
                    b: &x.a * &y.b + &x.b * &y.a,
                    d,
                })
            }
        }
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Quadratic(q) => {
                // 1/(a+b√d) = (a−b√d)/(a²−b²d); the norm is non-zero because
                // d is not a perfect square.
                let rad = BigRational::from_integer(BigInt::from(q.d));
                let norm = &q.a * &q.a - &q.b * &q.b * &rad;
                Ok(Scalar::normalize(Quad {
                    a: &q.a / &norm,
                    b: -(&q.b / &norm),
                    d: q.d,
                }))
            }
        }
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e == 0 {
            return Ok(Scalar::one());
        }
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Scalar::one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.raw_mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.raw_mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Exact comparison in the real order; mixed radicands are an error.
    pub fn try_cmp(&self, other: &Scalar) -> Result<Ordering> {
        self.check_compatible(other)?;
        Ok(self.raw_sub(other).signum().cmp(&0))
    }

    /// Largest integer `n ≤ self`.
    pub fn floor_int(&self) -> BigInt {
        match self {
            Scalar::Rational(r) => r.floor().to_integer(),
            Scalar::Quadratic(_) => {
                // Binary search on exact comparisons against integers.
                // |a + b√d| ≤ |a| + |b|·d for d ≥ 2 gives a safe bracket.
                let q = match self {
                    Scalar::Quadratic(q) => q,
                    _ => unreachable!(),
                };
                let bound = q.a.abs().ceil().to_integer()
                    + q.b.abs().ceil().to_integer() * BigInt::from(q.d)
                    + BigInt::one();
                let mut lo = -bound.clone();
                let mut hi = bound;
                // invariant: lo ≤ self < hi + 1
                while lo < hi {
                    let mid: BigInt = (&lo + &hi + BigInt::one()).div_floor(&BigInt::from(2));
                    let m = Scalar::Rational(BigRational::from_integer(mid.clone()));
                    if m.try_cmp(self).unwrap() == Ordering::Greater {
                        hi = mid - BigInt::one();
                    } else {
                        lo = mid;
                    }
                }
                lo
            }
        }
    }
}

fn quad_sign(q: &Quad) -> i8 {
    let sa = if q.a.is_zero() {
        0
    } else if q.a.is_positive() {
        1
    } else {
        -1
    };
    let sb = if q.b.is_positive() { 1 } else { -1 }; // b ≠ 0 by invariant
    if sa == 0 {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    // opposite signs: compare a² with b²·d
    let rad = BigRational::from_integer(BigInt::from(q.d));
    let lhs = &q.a * &q.a;
    let rhs = &q.b * &q.b * &rad;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        // a² = b²d would make √d rational
        Ordering::Equal => unreachable!("radicand is square-free"),
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Ord for Scalar {
    /// Total order within one radicand context; panics on mixed radicands.
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other)
            .expect("scalars from different quadratic extensions are not ordered")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $raw:ident, $msg:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.check_compatible(rhs).expect($msg);
                self.$raw(rhs)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, raw_add, "mixed radicands in +");
forward_binop!(Sub, sub, raw_sub, "mixed radicands in -");
forward_binop!(Mul, mul, raw_mul, "mixed radicands in *");

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.try_div(rhs).expect("scalar division failed")
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self) / (&rhs)
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        (&self) / rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quadratic(q) => Scalar::Quadratic(Quad {
                a: -&q.a,
                b: -&q.b,
                d: q.d,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", r),
            Scalar::Quadratic(q) => write!(f, "({})+({})√{}", q.a, q.b, q.d),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::ParseScalar(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let num = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(BigRational::from_integer(num))
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, `p`, the canonical `(<rat>)+(<rat>)√<d>` and the ASCII
    /// spelling `(<rat>)+(<rat>)*sqrt(<d>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::ParseScalar(s.to_string());
        if !s.starts_with('(') {
            return Ok(Scalar::Rational(parse_rational(s)?));
        }
        let close_a = s.find(')').ok_or_else(bad)?;
        let a = parse_rational(&s[1..close_a])?;
        let rest = s[close_a + 1..].strip_prefix('+').ok_or_else(bad)?;
        let rest = rest.strip_prefix('(').ok_or_else(bad)?;
        let close_b = rest.find(')').ok_or_else(bad)?;
        let b = parse_rational(&rest[..close_b])?;
        let tail = &rest[close_b + 1..];
        let d_str = if let Some(t) = tail.strip_prefix('√') {
            t
        } else if let Some(t) = tail
            .strip_prefix("*sqrt(")
            .and_then(|t| t.strip_suffix(')'))
        {
            t
        } else if let Some(t) = tail.strip_prefix("sqrt(").and_then(|t| t.strip_suffix(')')) {
            t
        } else {
            return Err(bad());
        };
        let d: u64 = d_str.trim().parse().map_err(|_| bad())?;
        Scalar::quadratic(a, b, d)
    }
}
