//! Numeric tower: exact rationals and `f64` behind one trait.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. With
//! [`Rational`] all comparisons are exact; with `f64` they carry an
//! absolute-plus-relative slack of `1e-9`.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + Sum
{
    /// True for exact arithmetic.
    const EXACT: bool;

    fn int(v: i64) -> Self;

    fn ratio(n: i64, d: i64) -> Self {
        Self::int(n) / Self::int(d)
    }

    /// Lift a float. Exact types refuse, so transcendental constants
    /// never leak into rational computations.
    fn from_float(v: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    /// Square root when it is representable exactly (always for `f64`).
    fn sqrt_exact(&self) -> Option<Self>;

    /// Parse `p/q`, an integer or a decimal literal.
    fn parse_value(s: &str) -> Option<Self>;

    /// Comparison slack: zero in exact mode.
    fn slack() -> Self;

    /// Pivoting threshold for the simplex: zero in exact mode.
    fn pivot_eps() -> Self;

    fn powi(&self, k: u32) -> Self {
        num_traits::pow(self.clone(), k as usize)
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

fn scale<S: Scalar>(a: &S, b: &S) -> S {
    S::max_of(S::one(), S::max_of(a.abs(), b.abs()))
}

/// `a <= b` up to the mode's slack.
pub fn le<S: Scalar>(a: &S, b: &S) -> bool {
    if S::EXACT {
        a <= b
    } else {
        a.clone() <= b.clone() + S::slack() * scale(a, b)
    }
}

/// `a >= b` up to the mode's slack.
pub fn ge<S: Scalar>(a: &S, b: &S) -> bool {
    le(b, a)
}

/// `a == b` up to the mode's slack.
pub fn approx_eq<S: Scalar>(a: &S, b: &S) -> bool {
    le(a, b) && le(b, a)
}

/// Strictly positive beyond the slack.
pub fn is_pos<S: Scalar>(a: &S) -> bool {
    !le(a, &S::zero())
}

pub fn min_all<S: Scalar, I: IntoIterator<Item = S>>(it: I) -> Option<S> {
    it.into_iter().reduce(S::min_of)
}

pub fn max_all<S: Scalar, I: IntoIterator<Item = S>>(it: I) -> Option<S> {
    it.into_iter().reduce(S::max_of)
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_float(_: f64) -> Option<Self> {
        None
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
    }

    fn parse_value(s: &str) -> Option<Self> {
        parse_rational(s)
    }

    fn slack() -> Self {
        Self::zero()
    }

    fn pivot_eps() -> Self {
        Self::zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn int(v: i64) -> Self {
        v as f64
    }

    fn from_float(v: f64) -> Option<Self> {
        Some(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn parse_value(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((p, q)) => {
                let p: f64 = p.trim().parse().ok()?;
                let q: f64 = q.trim().parse().ok()?;
                (q != 0.0).then(|| p / q)
            }
            None => s.trim().parse().ok().filter(|v: &f64| v.is_finite()),
        }
    }

    fn slack() -> Self {
        1e-9
    }

    fn pivot_eps() -> Self {
        1e-12
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(all);
    if shift >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(if neg { -value } else { value })
}

/// True when a literal is written in decimal or exponent notation, which
/// selects float mode by default.
pub fn is_float_literal(s: &str) -> bool {
    !s.contains('/') && s.contains(['.', 'e', 'E'])
}
