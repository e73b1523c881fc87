//! Increasing piecewise fractional-linear maps with rational data.
//!
//! The class is closed under composition and inversion, so conjugating a
//! successor map by a homeomorphism stays exact. Pieces are left-closed and
//! right-open; the value at a jump belongs to the right-hand piece.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ceil_i64, floor_i64, format_rational, int, interior_point, Bound, Rational};

/// An interval of the extended line used as the domain of a map. Infinite
/// ends are always open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    lo: Bound,
    lo_closed: bool,
    hi: Bound,
    hi_closed: bool,
}

impl Domain {
    pub fn new(lo: Bound, lo_closed: bool, hi: Bound, hi_closed: bool) -> Result<Self> {
        if (lo_closed && !lo.is_finite()) || (hi_closed && !hi.is_finite()) {
            return Err(Error::domain("infinite domain ends must be open"));
        }
        if lo >= hi || lo == Bound::PosInf || hi == Bound::NegInf {
            return Err(Error::domain(format!("degenerate domain between {lo} and {hi}")));
        }
        Ok(Domain {
            lo,
            lo_closed,
            hi,
            hi_closed,
        })
    }

    pub fn real_line() -> Self {
        Domain {
            lo: Bound::NegInf,
            lo_closed: false,
            hi: Bound::PosInf,
            hi_closed: false,
        }
    }

    /// `[a, +inf)`
    pub fn half_line(a: Rational) -> Self {
        Domain {
            lo: Bound::Finite(a),
            lo_closed: true,
            hi: Bound::PosInf,
            hi_closed: false,
        }
    }

    /// `[a, b)`
    pub fn right_open(a: Rational, b: Rational) -> Result<Self> {
        Self::new(Bound::Finite(a), true, Bound::Finite(b), false)
    }

    /// `[0, 1)`, the fundamental period of circle data.
    pub fn unit() -> Self {
        Domain {
            lo: Bound::Finite(Rational::zero()),
            lo_closed: true,
            hi: Bound::Finite(Rational::one()),
            hi_closed: false,
        }
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_real_line(&self) -> bool {
        self.lo == Bound::NegInf && self.hi == Bound::PosInf
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = match self.lo.cmp_rational(t) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match self.hi.cmp_rational(t) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Less => false,
        };
        above && below
    }

    pub fn contains_domain(&self, other: &Domain) -> bool {
        self.contains_range(&other.lo, other.lo_closed, &other.hi, other.hi_closed)
    }

    /// Whether the set running from `lo` to `hi` (ends included as flagged)
    /// lies inside this domain.
    pub(crate) fn contains_range(&self, lo: &Bound, lo_incl: bool, hi: &Bound, hi_incl: bool) -> bool {
        let lower = if lo_incl {
            lo > &self.lo || (lo == &self.lo && self.lo_closed)
        } else {
            lo >= &self.lo
        };
        let upper = if hi_incl {
            hi < &self.hi || (hi == &self.hi && self.hi_closed)
        } else {
            hi <= &self.hi
        };
        lower && upper
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// `t ↦ (a t + b) / (c t + d)`, stored normalized: `c = 1` when `c != 0`,
/// otherwise `d = 1`; constants are `(0, v, 0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracLinear {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl FracLinear {
    /// Rejects decreasing formulas (`ad - bc < 0`) and the zero denominator.
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        if c.is_zero() && d.is_zero() {
            return Err(Error::InvalidMap("formula with identically zero denominator".into()));
        }
        if (&a * &d - &b * &c).is_negative() {
            return Err(Error::InvalidMap(format!(
                "decreasing formula ({}, {}, {}, {})",
                format_rational(&a),
                format_rational(&b),
                format_rational(&c),
                format_rational(&d)
            )));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        if (&a * &d - &b * &c).is_zero() {
            let v = if c.is_zero() { &b / &d } else { &a / &c };
            return Self::constant(v);
        }
        let s = if c.is_zero() { d.clone() } else { c.clone() };
        FracLinear {
            a: a / &s,
            b: b / &s,
            c: c / &s,
            d: d / &s,
        }
    }

    /// `t ↦ m t + q`. Panics when `m < 0`.
    pub fn affine(m: Rational, q: Rational) -> Self {
        assert!(!m.is_negative(), "affine formula must be non-decreasing");
        Self::normalized(m, q, Rational::zero(), Rational::one())
    }

    pub fn constant(v: Rational) -> Self {
        FracLinear {
            a: Rational::zero(),
            b: v,
            c: Rational::zero(),
            d: Rational::one(),
        }
    }

    pub fn identity() -> Self {
        Self::affine(Rational::one(), Rational::zero())
    }

    pub fn translation(k: Rational) -> Self {
        Self::affine(Rational::one(), k)
    }

    pub fn coefficients(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }

    pub fn determinant(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn pole(&self) -> Option<Rational> {
        if self.c.is_zero() {
            None
        } else {
            Some(-&self.d / &self.c)
        }
    }

    /// `None` exactly at the pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let den = &self.c * t + &self.d;
        if den.is_zero() {
            None
        } else {
            Some((&self.a * t + &self.b) / den)
        }
    }

    /// One-sided limit at `x` (from the left when `from_left`).
    pub fn limit(&self, x: &Bound, from_left: bool) -> Bound {
        if self.is_constant() {
            return Bound::Finite(self.b.clone());
        }
        match x {
            Bound::Finite(t) => match self.eval(t) {
                Some(v) => Bound::Finite(v),
                // increasing on both sides of the pole
                None if from_left => Bound::PosInf,
                None => Bound::NegInf,
            },
            inf => {
                if self.c.is_zero() {
                    inf.clone()
                } else {
                    Bound::Finite(&self.a / &self.c)
                }
            }
        }
    }

    /// `self ∘ inner`, or `None` when `inner` is a constant sitting on the
    /// pole of `self`.
    pub fn after(&self, inner: &FracLinear) -> Option<FracLinear> {
        let a = &self.a * &inner.a + &self.b * &inner.c;
        let b = &self.a * &inner.b + &self.b * &inner.d;
        let c = &self.c * &inner.a + &self.d * &inner.c;
        let d = &self.c * &inner.b + &self.d * &inner.d;
        if c.is_zero() && d.is_zero() {
            None
        } else {
            Some(Self::normalized(a, b, c, d))
        }
    }

    /// `(a, b, c, d) ↦ (d, -b, -c, a)`; `None` for constants.
    pub fn inverse(&self) -> Option<FracLinear> {
        if self.is_constant() {
            None
        } else {
            Some(Self::normalized(self.d.clone(), -&self.b, -&self.c, self.a.clone()))
        }
    }

    /// `t ↦ φ(t - k) + k`.
    pub fn conjugate_by_translation(&self, k: &Rational) -> FracLinear {
        let inner = FracLinear::translation(-k);
        let outer = FracLinear::translation(k.clone());
        outer
            .after(&self.after(&inner).expect("translation is invertible"))
            .expect("translation is invertible")
    }
}

impl fmt::Display for FracLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_affine() {
            write!(f, "affine {} {}", format_rational(&self.a), format_rational(&self.b))
        } else {
            write!(
                f,
                "mobius {} {} {} {}",
                format_rational(&self.a),
                format_rational(&self.b),
                format_rational(&self.c),
                format_rational(&self.d)
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    start: Bound,
    formula: FracLinear,
}

impl Piece {
    pub fn start(&self) -> &Bound {
        &self.start
    }

    pub fn formula(&self) -> &FracLinear {
        &self.formula
    }
}

/// Extent of one piece: start, whether the start belongs to it, end,
/// whether the end belongs to it.
#[derive(Clone, Debug)]
pub struct PieceSpan {
    pub start: Bound,
    pub start_incl: bool,
    pub end: Bound,
    pub end_incl: bool,
}

/// A non-decreasing piecewise fractional-linear map in canonical form
/// (adjacent pieces never share a formula). A periodic map stores its
/// pieces on `[0, 1)` and satisfies `F(t + 1) = F(t) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseMap {
    domain: Domain,
    pieces: Vec<Piece>,
    periodic: bool,
}

impl PiecewiseMap {
    pub fn new(domain: Domain, pieces: Vec<(Bound, FracLinear)>, periodic: bool) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidMap("no pieces".into()));
        }
        if periodic && domain != Domain::unit() {
            return Err(Error::InvalidMap("periodic maps are given on [0, 1)".into()));
        }
        if pieces[0].0 != domain.lo {
            return Err(Error::InvalidMap(format!(
                "first piece starts at {} but the domain starts at {}",
                pieces[0].0, domain.lo
            )));
        }
        for w in pieces.windows(2) {
            if w[1].0 <= w[0].0 || !w[1].0.is_finite() {
                return Err(Error::InvalidMap(format!("piece starts out of order at {}", w[1].0)));
            }
        }
        if pieces.last().map(|p| p.0 >= domain.hi).unwrap_or(false) {
            return Err(Error::InvalidMap("a piece starts at or beyond the domain end".into()));
        }
        let map = PiecewiseMap {
            domain,
            pieces: pieces
                .into_iter()
                .map(|(start, formula)| Piece { start, formula })
                .collect(),
            periodic,
        };
        map.check_poles()?;
        map.check_monotone()?;
        Ok(map.merged())
    }

    pub fn single(domain: Domain, formula: FracLinear) -> Result<Self> {
        let start = domain.lo.clone();
        Self::new(domain, vec![(start, formula)], false)
    }

    pub fn identity(domain: Domain) -> Self {
        Self::single(domain, FracLinear::identity()).expect("identity is a valid map")
    }

    /// A degree-one periodic map from its pieces on `[0, 1)`.
    pub fn periodic(pieces: Vec<(Bound, FracLinear)>) -> Result<Self> {
        Self::new(Domain::unit(), pieces, true)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn span(&self, i: usize) -> PieceSpan {
        let last = i + 1 == self.pieces.len();
        PieceSpan {
            start: self.pieces[i].start.clone(),
            start_incl: i > 0 || self.domain.lo_closed,
            end: if last {
                self.domain.hi.clone()
            } else {
                self.pieces[i + 1].start.clone()
            },
            end_incl: last && self.domain.hi_closed,
        }
    }

    /// Interior breakpoints (periodic maps: every piece start in `[0, 1)`).
    pub fn breakpoints(&self) -> Vec<Rational> {
        let skip = if self.periodic { 0 } else { 1 };
        self.pieces
            .iter()
            .skip(skip)
            .filter_map(|p| p.start.finite().cloned())
            .collect()
    }

    fn check_poles(&self) -> Result<()> {
        for (i, p) in self.pieces.iter().enumerate() {
            let Some(pole) = p.formula.pole() else { continue };
            let span = self.span(i);
            let first = i == 0;
            let last = i + 1 == self.pieces.len();
            let after_start = match span.start.cmp_rational(&pole) {
                Ordering::Less => true,
                Ordering::Equal => !(first && !span.start_incl && !self.periodic),
                Ordering::Greater => false,
            };
            let before_end = match span.end.cmp_rational(&pole) {
                Ordering::Greater => true,
                Ordering::Equal => !(last && !span.end_incl && !self.periodic),
                Ordering::Less => false,
            };
            if after_start && before_end {
                return Err(Error::InvalidMap(format!(
                    "piece {} has its pole {} inside its closure",
                    i,
                    format_rational(&pole)
                )));
            }
        }
        Ok(())
    }

    fn check_monotone(&self) -> Result<()> {
        for i in 1..self.pieces.len() {
            let u = self.pieces[i].start.clone();
            let left = self.pieces[i - 1].formula.limit(&u, true);
            let right = self.pieces[i].formula.limit(&u, false);
            if left > right {
                return Err(Error::InvalidMap(format!("map decreases at breakpoint {u}")));
            }
        }
        if self.periodic {
            let one = Bound::Finite(Rational::one());
            let left = self.pieces.last().unwrap().formula.limit(&one, true);
            let at_zero = self.pieces[0].formula.limit(&Bound::Finite(Rational::zero()), false);
            if left > at_zero.shift(&Rational::one()) {
                return Err(Error::InvalidMap("periodic map decreases at 1".into()));
            }
        }
        Ok(())
    }

    fn merged(mut self) -> Self {
        let mut out: Vec<Piece> = Vec::with_capacity(self.pieces.len());
        for p in self.pieces.drain(..) {
            match out.last() {
                Some(prev) if prev.formula == p.formula => {}
                _ => out.push(p),
            }
        }
        self.pieces = out;
        self
    }

    fn piece_index(&self, t: &Rational) -> usize {
        self.pieces
            .partition_point(|p| p.start.cmp_rational(t) != Ordering::Greater)
            .saturating_sub(1)
    }

    fn piece_index_left_of(&self, t: &Rational) -> usize {
        self.pieces
            .partition_point(|p| p.start.cmp_rational(t) == Ordering::Less)
            .saturating_sub(1)
    }

    pub fn formula_at(&self, t: &Rational) -> Result<&FracLinear> {
        if self.periodic {
            let s = t - int(floor_i64(t));
            return Ok(&self.pieces[self.piece_index(&s)].formula);
        }
        if !self.domain.contains(t) {
            return Err(Error::domain(format!(
                "{} is outside {}",
                format_rational(t),
                self.domain
            )));
        }
        Ok(&self.pieces[self.piece_index(t)].formula)
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if self.periodic {
            let n = int(floor_i64(t));
            let s = t - &n;
            let f = &self.pieces[self.piece_index(&s)].formula;
            return Ok(f.eval(&s).expect("pole excluded from piece") + n);
        }
        let f = self.formula_at(t)?;
        Ok(f.eval(t).expect("pole excluded from piece"))
    }

    /// Value of the continuous extension of the piece immediately left of `t`.
    pub fn left_limit(&self, t: &Rational) -> Result<Rational> {
        if self.periodic {
            let n = int(ceil_i64(t) - 1);
            let s = t - &n;
            let f = &self.pieces[self.piece_index_left_of(&s)].formula;
            return match f.limit(&Bound::Finite(s), true) {
                Bound::Finite(v) => Ok(v + n),
                _ => Err(Error::domain("left limit is infinite")),
            };
        }
        let at = Bound::Finite(t.clone());
        if at <= self.domain.lo || at > self.domain.hi {
            return Err(Error::domain(format!(
                "no left limit at {} for domain {}",
                format_rational(t),
                self.domain
            )));
        }
        let f = &self.pieces[self.piece_index_left_of(t)].formula;
        match f.limit(&at, true) {
            Bound::Finite(v) => Ok(v),
            _ => Err(Error::domain(format!(
                "left limit at {} is infinite",
                format_rational(t)
            ))),
        }
    }

    /// Limits at the two ends of the domain; for periodic maps, over `[0, 1)`.
    pub fn value_bounds(&self) -> (Bound, Bound) {
        let lo = self.pieces[0].formula.limit(&self.domain.lo, false);
        let hi = self.pieces.last().unwrap().formula.limit(&self.domain.hi, true);
        (lo, hi)
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.pieces.iter().all(|p| !p.formula.is_constant())
    }

    /// No jumps at breakpoints (and across the period for periodic maps).
    pub fn is_continuous(&self) -> bool {
        for i in 1..self.pieces.len() {
            let u = &self.pieces[i].start;
            if self.pieces[i - 1].formula.limit(u, true) != self.pieces[i].formula.limit(u, false) {
                return false;
            }
        }
        if self.periodic {
            let left = self
                .pieces
                .last()
                .unwrap()
                .formula
                .limit(&Bound::Finite(Rational::one()), true);
            let right = self.pieces[0].formula.limit(&Bound::Finite(Rational::zero()), false);
            return left == right.shift(&Rational::one());
        }
        true
    }

    /// The image of a continuous strictly increasing non-periodic map.
    pub fn range(&self) -> Result<Domain> {
        if self.periodic {
            return Err(Error::domain("a periodic map has range the whole line"));
        }
        let (lo, hi) = self.value_bounds();
        Domain::new(lo, self.domain.lo_closed, hi, self.domain.hi_closed)
    }

    /// The periodic map written out as a plain map on `[lo, hi)`.
    pub fn unfold(&self, lo: i64, hi: i64) -> Result<PiecewiseMap> {
        if !self.periodic {
            return Err(Error::domain("only periodic maps unfold"));
        }
        let mut pieces = Vec::new();
        for k in lo..hi {
            let shift = int(k);
            for p in &self.pieces {
                pieces.push((p.start.shift(&shift), p.formula.conjugate_by_translation(&shift)));
            }
        }
        let domain = Domain::new(Bound::Finite(int(lo)), true, Bound::Finite(int(hi)), false)?;
        PiecewiseMap::new(domain, pieces, false)
    }

    fn as_plain(&self) -> PiecewiseMap {
        PiecewiseMap {
            periodic: false,
            ..self.clone()
        }
    }

    fn into_periodic(self) -> Result<PiecewiseMap> {
        let pieces = self.pieces.into_iter().map(|p| (p.start, p.formula)).collect();
        PiecewiseMap::new(Domain::unit(), pieces, true)
    }

    /// Restriction to a subdomain.
    pub fn restrict(&self, dom: &Domain) -> Result<PiecewiseMap> {
        if self.periodic {
            let (Some(lo), Some(hi)) = (dom.lo.finite(), dom.hi.finite()) else {
                return Err(Error::domain("periodic maps restrict only to bounded domains"));
            };
            return self.unfold(floor_i64(lo), ceil_i64(hi) + 1)?.restrict(dom);
        }
        if !self.domain.contains_domain(dom) {
            return Err(Error::domain(format!("{} is not inside {}", dom, self.domain)));
        }
        let mut pieces = Vec::new();
        for i in 0..self.pieces.len() {
            let span = self.span(i);
            if span.start >= dom.hi || span.end <= dom.lo {
                continue;
            }
            let start = if span.start < dom.lo {
                dom.lo.clone()
            } else {
                span.start
            };
            pieces.push((start, self.pieces[i].formula.clone()));
        }
        PiecewiseMap::new(dom.clone(), pieces, false)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PiecewiseMap) -> Result<PiecewiseMap> {
        match (self.periodic, inner.periodic) {
            (false, false) => self.compose_plain(inner),
            (true, true) => {
                let start = inner.eval(&Rational::zero())?;
                let l = floor_i64(&start);
                let window = self.unfold(l, l + 2)?;
                window.compose_plain(&inner.as_plain())?.into_periodic()
            }
            (true, false) => {
                let (lo, hi) = inner.value_bounds();
                let (Some(lo), Some(hi)) = (lo.finite(), hi.finite()) else {
                    return Err(Error::domain(
                        "periodic outer map needs an inner map with bounded values",
                    ));
                };
                let window = self.unfold(floor_i64(lo), floor_i64(hi) + 1)?;
                window.compose_plain(inner)
            }
            (false, true) => Err(Error::domain("cannot compose a non-periodic map after a periodic one")),
        }
    }

    fn compose_plain(&self, g: &PiecewiseMap) -> Result<PiecewiseMap> {
        let f = self;
        let f_breaks: Vec<Bound> = f.pieces.iter().skip(1).map(|p| p.start.clone()).collect();
        let mut out: Vec<(Bound, FracLinear)> = Vec::new();
        for i in 0..g.pieces.len() {
            let span = g.span(i);
            let phi = &g.pieces[i].formula;
            let img_lo = phi.limit(&span.start, false);
            let img_hi = phi.limit(&span.end, true);
            let constant = phi.is_constant();
            let inside = if constant {
                f.domain.contains_range(&img_lo, true, &img_hi, true)
            } else {
                f.domain
                    .contains_range(&img_lo, span.start_incl, &img_hi, span.end_incl)
            };
            if !inside {
                return Err(Error::domain(format!(
                    "values of piece {} leave the outer domain {}",
                    i, f.domain
                )));
            }
            if constant {
                let v = img_lo.finite().expect("constant value").clone();
                let psi = f.formula_at(&v)?;
                out.push((span.start.clone(), psi.after(phi).expect("value off the pole")));
                continue;
            }
            let inv = phi.inverse().expect("non-constant formula");
            let mut cuts = vec![span.start.clone()];
            for u in &f_breaks {
                if u > &img_lo && u < &img_hi {
                    let x = inv.eval(u.finite().unwrap()).expect("inside the image");
                    cuts.push(Bound::Finite(x));
                }
            }
            for j in 0..cuts.len() {
                let end = cuts.get(j + 1).unwrap_or(&span.end);
                let x = interior_point(&cuts[j], end);
                let y = phi.eval(&x).expect("pole excluded");
                let psi = f.formula_at(&y)?;
                out.push((
                    cuts[j].clone(),
                    psi.after(phi).expect("composite of increasing formulas"),
                ));
            }
        }
        PiecewiseMap::new(g.domain.clone(), out, false)
    }

    /// Exact inverse of a strictly increasing continuous map.
    pub fn invert(&self) -> Result<PiecewiseMap> {
        if !self.is_strictly_increasing() {
            return Err(Error::NotBijective("a piece has zero slope".into()));
        }
        if !self.is_continuous() {
            return Err(Error::NotBijective("a jump leaves a gap in the range".into()));
        }
        if self.periodic {
            let v = self.eval(&Rational::zero())?;
            let k0 = -ceil_i64(&v);
            let inv = self.unfold(k0, k0 + 2)?.invert_plain()?;
            return inv.restrict(&Domain::unit())?.into_periodic();
        }
        self.invert_plain()
    }

    fn invert_plain(&self) -> Result<PiecewiseMap> {
        let range = self.range()?;
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let start = p.formula.limit(&p.start, false);
                (start, p.formula.inverse().expect("non-constant"))
            })
            .collect();
        PiecewiseMap::new(range, pieces, false)
    }

    /// Equality of canonical forms.
    pub fn equals(&self, other: &PiecewiseMap) -> bool {
        self == other
    }
}
