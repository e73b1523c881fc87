//! Exact scalars and extended bounds.
//!
//! Every endpoint, breakpoint and coefficient in the crate is a
//! [`Rational`]. Machine-facing text always uses the `p/q` form, even for
//! integers, so that output is unambiguous and byte-stable.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n/d` as a rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("integer part exceeds i64")
}

pub fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("integer part exceeds i64")
}

/// Canonical `p/q` rendering.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, `p` or `-p/q` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

/// Decimal rendering with `digits` fractional digits, rounded half away
/// from zero. Display only.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = a.numer() * &scale;
    let (q, rem) = scaled.div_rem(a.denom());
    let q = if rem * 2 >= *a.denom() { q + 1 } else { q };
    let (ip, fp) = q.div_rem(&scale);
    let mut out = String::new();
    if neg && !(ip.is_zero() && fp.is_zero()) {
        out.push('-');
    }
    out.push_str(&ip.to_string());
    if digits > 0 {
        let f = fp.to_string();
        out.push('.');
        for _ in f.len()..digits {
            out.push('0');
        }
        out.push_str(&f);
    }
    out
}

/// A point of the extended real line, ordered `-inf < q < +inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            Bound::NegInf => Ordering::Less,
            Bound::PosInf => Ordering::Greater,
            Bound::Finite(x) => x.cmp(q),
        }
    }

    pub fn shift(&self, by: &Rational) -> Bound {
        match self {
            Bound::Finite(x) => Bound::Finite(x + by),
            other => other.clone(),
        }
    }
}

impl From<Rational> for Bound {
    fn from(q: Rational) -> Self {
        Bound::Finite(q)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "+inf"),
            Bound::Finite(q) => write!(f, "{}", format_rational(q)),
        }
    }
}

pub fn parse_bound(s: &str) -> Option<Bound> {
    match s.trim() {
        "-inf" => Some(Bound::NegInf),
        "+inf" | "inf" => Some(Bound::PosInf),
        other => parse_rational(other).map(Bound::Finite),
    }
}

/// A rational strictly between two bounds (`lo < hi` assumed).
pub fn interior_point(lo: &Bound, hi: &Bound) -> Rational {
    match (lo, hi) {
        (Bound::Finite(a), Bound::Finite(b)) => (a + b) / int(2),
        (Bound::Finite(a), _) => a + Rational::one(),
        (_, Bound::Finite(b)) => b - Rational::one(),
        _ => Rational::zero(),
    }
}
