//! Bounded intervals with open/closed endpoints and the left-intersection
//! calculus that decides when an interval module maps nontrivially to
//! another.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{floor_i64, format_rational, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndpointKind {
    Closed,
    Open,
}

impl EndpointKind {
    pub fn flip(self) -> Self {
        match self {
            EndpointKind::Closed => EndpointKind::Open,
            EndpointKind::Open => EndpointKind::Closed,
        }
    }
}

/// A position on the line strictly between real points: `(x, -1)` sits just
/// left of `x`, `(x, 1)` just right of it. An interval is the set of points
/// strictly between its lower and upper cut.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Cut(Rational, i8);

/// A nonempty bounded interval `U`. The field order gives the deterministic
/// output ordering `(lo, lo_kind, hi, hi_kind)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    lo: Rational,
    lo_kind: EndpointKind,
    hi: Rational,
    hi_kind: EndpointKind,
}

impl Interval {
    pub fn new(lo: Rational, lo_kind: EndpointKind, hi: Rational, hi_kind: EndpointKind) -> Result<Self> {
        let ok = lo < hi || (lo == hi && lo_kind == EndpointKind::Closed && hi_kind == EndpointKind::Closed);
        if !ok {
            return Err(Error::EmptyInterval(format!(
                "{}{}, {}{}",
                if lo_kind == EndpointKind::Closed { '[' } else { '(' },
                format_rational(&lo),
                format_rational(&hi),
                if hi_kind == EndpointKind::Closed { ']' } else { ')' },
            )));
        }
        Ok(Interval {
            lo,
            lo_kind,
            hi,
            hi_kind,
        })
    }

    /// `[lo, hi]`; panics on an empty interval.
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, EndpointKind::Closed, hi, EndpointKind::Closed).expect("nonempty closed interval")
    }

    /// `(lo, hi]`; panics on an empty interval.
    pub fn left_open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, EndpointKind::Open, hi, EndpointKind::Closed).expect("nonempty interval")
    }

    /// `[lo, hi)`; panics on an empty interval.
    pub fn right_open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, EndpointKind::Closed, hi, EndpointKind::Open).expect("nonempty interval")
    }

    /// `(lo, hi)`; panics on an empty interval.
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, EndpointKind::Open, hi, EndpointKind::Open).expect("nonempty interval")
    }

    pub fn point(x: Rational) -> Self {
        Self::closed(x.clone(), x)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_kind(&self) -> EndpointKind {
        self.lo_kind
    }

    pub fn hi_kind(&self) -> EndpointKind {
        self.hi_kind
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_closed(&self) -> bool {
        self.lo_kind == EndpointKind::Closed && self.hi_kind == EndpointKind::Closed
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        let above = match self.lo_kind {
            EndpointKind::Closed => x >= &self.lo,
            EndpointKind::Open => x > &self.lo,
        };
        let below = match self.hi_kind {
            EndpointKind::Closed => x <= &self.hi,
            EndpointKind::Open => x < &self.hi,
        };
        above && below
    }

    pub(crate) fn lower_cut(&self) -> Cut {
        match self.lo_kind {
            EndpointKind::Closed => Cut(self.lo.clone(), -1),
            EndpointKind::Open => Cut(self.lo.clone(), 1),
        }
    }

    pub(crate) fn upper_cut(&self) -> Cut {
        match self.hi_kind {
            EndpointKind::Closed => Cut(self.hi.clone(), 1),
            EndpointKind::Open => Cut(self.hi.clone(), -1),
        }
    }

    /// The points strictly between two cuts, or `None` when there are none.
    pub(crate) fn from_cuts(lower: Cut, upper: Cut) -> Option<Self> {
        if lower >= upper {
            return None;
        }
        let lo_kind = if lower.1 < 0 {
            EndpointKind::Closed
        } else {
            EndpointKind::Open
        };
        let hi_kind = if upper.1 > 0 {
            EndpointKind::Closed
        } else {
            EndpointKind::Open
        };
        Some(Interval {
            lo: lower.0,
            lo_kind,
            hi: upper.0,
            hi_kind,
        })
    }

    /// Rebuild with both endpoints replaced, keeping the kinds.
    pub fn with_endpoints(&self, lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, self.lo_kind, hi, self.hi_kind)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_kind == EndpointKind::Closed { '[' } else { '(' },
            format_rational(&self.lo),
            format_rational(&self.hi),
            if self.hi_kind == EndpointKind::Closed { ']' } else { ')' },
        )
    }
}

/// Canonical representative of a circle string: an interval with
/// `0 <= lo < 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringLift(Interval);

impl StringLift {
    pub fn interval(&self) -> &Interval {
        &self.0
    }

    pub fn into_interval(self) -> Interval {
        self.0
    }
}

impl fmt::Display for StringLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `U ∩_L V`: the intersection of `U` and `V` when every point of `V`
/// outside `U` lies to the right of all of `U` and every point of `U`
/// outside `V` lies to the left of all of `V`.
///
/// Nonempty exactly when the interval module on `V` maps nontrivially to
/// the one on `U`.
pub fn left_intersect(u: &Interval, v: &Interval) -> Option<Interval> {
    let (u_lo, u_hi) = (u.lower_cut(), u.upper_cut());
    let (v_lo, v_hi) = (v.lower_cut(), v.upper_cut());
    // V may not reach below U, and U may not reach above V.
    if v_lo < u_lo || u_hi > v_hi {
        return None;
    }
    Interval::from_cuts(v_lo, u_hi)
}

pub fn translate(u: &Interval, i: i64) -> Interval {
    let shift = int(i);
    Interval {
        lo: &u.lo + &shift,
        lo_kind: u.lo_kind,
        hi: &u.hi + &shift,
        hi_kind: u.hi_kind,
    }
}

/// True iff every point of `v` lies in `u`.
pub fn contains(u: &Interval, v: &Interval) -> bool {
    u.lower_cut() <= v.lower_cut() && v.upper_cut() <= u.upper_cut()
}

pub fn canonical_lift(u: &Interval) -> StringLift {
    let shift = floor_i64(u.lo());
    if shift.is_zero() {
        StringLift(u.clone())
    } else {
        StringLift(translate(u, -shift))
    }
}

/// The integer `n` with `canonical_lift(u) = translate(u, -n)`.
pub fn lift_offset(u: &Interval) -> i64 {
    floor_i64(u.lo())
}
