//! Kupisch profiles: a space together with its successor map
//! `K(t) = κ(t) + t`.
//!
//! The profile stores `K` rather than `κ` because conjugating `K` by a
//! fractional-linear homeomorphism stays fractional-linear, while `κ` does not.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{self, Interval};
use crate::pwmap::{Domain, FracLinear, PiecewiseMap};
use crate::rational::{floor_i64, format_rational, int, interior_point, Bound, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Line(Domain),
    Circle,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Line(d) => write!(f, "line {d}"),
            Space::Circle => write!(f, "circle"),
        }
    }
}

/// A space and its successor map. On the circle, `K` is periodic and its
/// pieces live on `[0, 1)`. A line profile may also carry a periodic `K`
/// when the domain is the whole line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KupischProfile {
    space: Space,
    successor: PiecewiseMap,
}

impl KupischProfile {
    /// Checks only that the map fits the space; see [`validate_profile`]
    /// for the Kupisch conditions.
    pub fn new(space: Space, successor: PiecewiseMap) -> Result<Self> {
        match &space {
            Space::Circle if !successor.is_periodic() => {
                return Err(Error::InvalidProfile(
                    "a circle profile needs a periodic successor map".into(),
                ))
            }
            Space::Line(d) if successor.is_periodic() && !d.is_real_line() => {
                return Err(Error::InvalidProfile(
                    "a periodic successor map needs the whole line as domain".into(),
                ))
            }
            Space::Line(d) if !successor.is_periodic() && successor.domain() != d => {
                return Err(Error::InvalidProfile(format!(
                    "successor map is defined on {} but the space is {}",
                    successor.domain(),
                    d
                )))
            }
            _ => {}
        }
        Ok(KupischProfile { space, successor })
    }

    /// Builds the profile and fails with the collected violations if it is
    /// not a valid Kupisch profile.
    pub fn validated(space: Space, successor: PiecewiseMap) -> Result<Self> {
        let p = Self::new(space, successor)?;
        let violations = validate_profile(&p);
        if violations.is_empty() {
            Ok(p)
        } else {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidProfile(msgs.join("; ")))
        }
    }

    pub fn circle(successor: PiecewiseMap) -> Result<Self> {
        Self::new(Space::Circle, successor)
    }

    pub fn line(successor: PiecewiseMap) -> Result<Self> {
        let d = if successor.is_periodic() {
            Domain::real_line()
        } else {
            successor.domain().clone()
        };
        Self::new(Space::Line(d), successor)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn successor(&self) -> &PiecewiseMap {
        &self.successor
    }

    pub fn is_circle(&self) -> bool {
        self.space == Space::Circle
    }

    /// Circle profiles and periodic line profiles.
    pub fn is_periodic(&self) -> bool {
        self.successor.is_periodic()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        match &self.space {
            Space::Circle => true,
            Space::Line(d) => d.contains(t),
        }
    }

    fn check_point(&self, t: &Rational) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{} is outside the profile domain",
                format_rational(t)
            )))
        }
    }

    /// `K(t)`; circle profiles are evaluated on the line lift.
    pub fn successor_at(&self, t: &Rational) -> Result<Rational> {
        self.check_point(t)?;
        self.successor.eval(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    NonPositiveKappa,
    LeavesDomain,
    RightClosedDomain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub piece: Option<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::NonPositiveKappa => "κ≤0",
            ViolationKind::LeavesDomain => "[t,K(t)] leaves the domain",
            ViolationKind::RightClosedDomain => "right-closed domain inadmissible",
        };
        match self.piece {
            Some(i) => write!(f, "piece {i}: {what}"),
            None => write!(f, "{what}"),
        }
    }
}

/// Sign of a polynomial with coefficients `[c0, c1, c2]` as `t → ±∞`.
fn sign_at_infinity(p: &[Rational; 3], positive: bool) -> Ordering {
    for deg in (0..3).rev() {
        if !p[deg].is_zero() {
            let s = p[deg].cmp(&Rational::zero());
            return if positive || deg % 2 == 0 { s } else { s.reverse() };
        }
    }
    Ordering::Equal
}

fn poly_eval(p: &[Rational; 3], t: &Rational) -> Rational {
    &p[0] + &p[1] * t + &p[2] * t * t
}

/// Whether `K(t) - t > 0` on the given span of one formula.
fn kappa_positive(f: &FracLinear, start: &Bound, start_incl: bool, end: &Bound, end_incl: bool) -> bool {
    let [a, b, c, d] = f.coefficients();
    let x = interior_point(start, end);
    let den = c * &x + d;
    let sigma = if den.is_negative() {
        -Rational::one()
    } else {
        Rational::one()
    };
    // numerator of K(t) - t is -c t² + (a - d) t + b
    let p = [b * &sigma, (a - d) * &sigma, -c * &sigma];
    if p.iter().all(|q| q.is_zero()) {
        return false;
    }
    let end_ok = |bound: &Bound, incl: bool, right: bool| match bound {
        Bound::Finite(e) => {
            let v = poly_eval(&p, e);
            if incl {
                v.is_positive()
            } else {
                !v.is_negative()
            }
        }
        _ => sign_at_infinity(&p, right) == Ordering::Greater,
    };
    if !end_ok(start, start_incl, false) || !end_ok(end, end_incl, true) {
        return false;
    }
    if !poly_eval(&p, &x).is_positive() {
        return false;
    }
    if !p[2].is_zero() {
        let vertex = -&p[1] / (int(2) * &p[2]);
        let inside = start.cmp_rational(&vertex) == Ordering::Less && end.cmp_rational(&vertex) == Ordering::Greater;
        if inside && !poly_eval(&p, &vertex).is_positive() {
            return false;
        }
    }
    true
}

/// All violations of the Kupisch conditions; empty means valid.
/// Monotonicity of `K` is already enforced when the map is built.
pub fn validate_profile(profile: &KupischProfile) -> Vec<Violation> {
    let k = &profile.successor;
    let mut out = Vec::new();
    for i in 0..k.pieces().len() {
        let span = k.span(i);
        if !kappa_positive(
            k.pieces()[i].formula(),
            &span.start,
            span.start_incl,
            &span.end,
            span.end_incl,
        ) {
            out.push(Violation {
                piece: Some(i),
                kind: ViolationKind::NonPositiveKappa,
            });
        }
    }
    if let Space::Line(d) = &profile.space {
        if d.hi_closed() {
            out.push(Violation {
                piece: None,
                kind: ViolationKind::RightClosedDomain,
            });
        } else if let (Bound::Finite(b), false) = (d.hi(), k.is_periodic()) {
            let last = k.pieces().len() - 1;
            let f = k.pieces()[last].formula();
            let sup = f.limit(d.hi(), true);
            let leaves = match sup.cmp_rational(b) {
                Ordering::Greater => true,
                Ordering::Equal => f.is_constant(),
                Ordering::Less => false,
            };
            if leaves {
                out.push(Violation {
                    piece: Some(last),
                    kind: ViolationKind::LeavesDomain,
                });
            }
        }
    }
    out
}

/// `κ(t) = K(t) - t`.
pub fn kappa_at(profile: &KupischProfile, t: &Rational) -> Result<Rational> {
    Ok(profile.successor_at(t)? - t)
}

/// `[t, K(t), ..., K^n(t)]`.
pub fn orbit(profile: &KupischProfile, t: &Rational, n: usize) -> Result<Vec<Rational>> {
    profile.check_point(t)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(t.clone());
    for _ in 0..n {
        let next = profile.successor.eval(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// Separation points: sorted, and for periodic profiles the representatives
/// in `[0, 1)` of a set invariant under integer translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeparationSet {
    pub points: Vec<Rational>,
    pub periodic: bool,
}

impl SeparationSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        if self.periodic {
            let s = t - int(floor_i64(t));
            self.points.binary_search(&s).is_ok()
        } else {
            self.points.binary_search(t).is_ok()
        }
    }
}

/// Interior points `c` with `K(c⁻) = c` and `K(t) < c` for every `t < c`.
///
/// Inside a piece `κ` is continuous and positive, so only breakpoints can
/// qualify; a constant piece equal to `c` on the left rules `c` out.
pub fn separation_points(profile: &KupischProfile) -> SeparationSet {
    let k = &profile.successor;
    let mut points = Vec::new();
    for c in k.breakpoints() {
        let Ok(left) = k.left_limit(&c) else { continue };
        if left != c {
            continue;
        }
        let left_formula = if k.is_periodic() {
            let s = if c.is_zero() { Rational::one() } else { c.clone() };
            let idx = k
                .pieces()
                .iter()
                .rposition(|p| p.start().cmp_rational(&s) == Ordering::Less);
            k.pieces()[idx.unwrap_or(k.pieces().len() - 1)].formula()
        } else {
            let idx = k
                .pieces()
                .iter()
                .rposition(|p| p.start().cmp_rational(&c) == Ordering::Less);
            k.pieces()[idx.unwrap_or(0)].formula()
        };
        if !left_formula.is_constant() {
            points.push(c);
        }
    }
    points.sort();
    SeparationSet {
        points,
        periodic: k.is_periodic(),
    }
}

/// The least separation point above `c`, or the right end of the domain
/// (`+inf` on the line and circle) when there is none.
pub fn next_separation(profile: &KupischProfile, c: &Rational) -> Result<Bound> {
    profile.check_point(c)?;
    let seps = separation_points(profile);
    if seps.periodic {
        if seps.is_empty() {
            return Ok(Bound::PosInf);
        }
        let n = int(floor_i64(c));
        let s = c - &n;
        let next = match seps.points.iter().find(|p| **p > s) {
            Some(p) => p.clone(),
            None => &seps.points[0] + Rational::one(),
        };
        return Ok(Bound::Finite(next + n));
    }
    Ok(match seps.points.iter().find(|p| *p > c) {
        Some(p) => Bound::Finite(p.clone()),
        None => match &profile.space {
            Space::Line(d) => d.hi().clone(),
            Space::Circle => Bound::PosInf,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentShape {
    /// Equivalent to a profile on a half-open half-line.
    HalfLineLike,
    /// Equivalent to a profile on the whole line.
    LineLike,
    /// The whole circle, with strings allowed to wrap.
    CircleWhole,
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentShape::HalfLineLike => "half-line",
            ComponentShape::LineLike => "line",
            ComponentShape::CircleWhole => "circle",
        })
    }
}

/// One orthogonal component, supported on `left..right` with the right end
/// excluded. For periodic profiles the list covers one period and repeats
/// under integer translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentDescriptor {
    pub index: usize,
    pub left: Bound,
    pub left_closed: bool,
    pub right: Bound,
    pub shape: ComponentShape,
}

impl fmt::Display for ComponentDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}{}, {}) {}",
            self.index,
            if self.left_closed { '[' } else { '(' },
            self.left,
            self.right,
            self.shape
        )
    }
}

pub fn components(profile: &KupischProfile) -> Vec<ComponentDescriptor> {
    let seps = separation_points(profile);
    let pts = &seps.points;
    let comp = |index: usize, left: Bound, left_closed: bool, right: Bound, shape| ComponentDescriptor {
        index,
        left,
        left_closed,
        right,
        shape,
    };
    if seps.periodic {
        if pts.is_empty() {
            return match profile.space {
                Space::Circle => vec![comp(
                    0,
                    Bound::Finite(Rational::zero()),
                    true,
                    Bound::Finite(Rational::one()),
                    ComponentShape::CircleWhole,
                )],
                Space::Line(_) => vec![comp(0, Bound::NegInf, false, Bound::PosInf, ComponentShape::LineLike)],
            };
        }
        let m = pts.len();
        return (0..m)
            .map(|i| {
                let right = if i + 1 < m {
                    pts[i + 1].clone()
                } else {
                    &pts[0] + Rational::one()
                };
                comp(
                    i,
                    Bound::Finite(pts[i].clone()),
                    true,
                    Bound::Finite(right),
                    ComponentShape::HalfLineLike,
                )
            })
            .collect();
    }
    let Space::Line(d) = &profile.space else {
        unreachable!("circle profiles are periodic")
    };
    let first_shape = if d.lo_closed() {
        ComponentShape::HalfLineLike
    } else {
        ComponentShape::LineLike
    };
    let mut out = Vec::with_capacity(pts.len() + 1);
    let mut left = d.lo().clone();
    let mut left_closed = d.lo_closed();
    let mut shape = first_shape;
    for p in pts {
        out.push(comp(out.len(), left, left_closed, Bound::Finite(p.clone()), shape));
        left = Bound::Finite(p.clone());
        left_closed = true;
        shape = ComponentShape::HalfLineLike;
    }
    out.push(comp(out.len(), left, left_closed, d.hi().clone(), shape));
    out
}

/// Which component holds a module, and for periodic line profiles the
/// integer translate of the listed component that holds it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComponentRef {
    pub index: usize,
    pub shift: i64,
}

/// Index of the listed component containing the point `t`, and the integer
/// translate of it that does (points just right of a separation point belong
/// to the component starting there).
fn locate_point(profile: &KupischProfile, comps: &[ComponentDescriptor], t: &Rational) -> (usize, i64) {
    let (s, n) = match comps[0].left.finite() {
        Some(r0) if profile.is_periodic() => {
            let n = floor_i64(&(t - r0));
            (t - int(n), n)
        }
        _ => (t.clone(), 0),
    };
    let index = comps
        .iter()
        .rposition(|c| c.left.cmp_rational(&s) != Ordering::Greater)
        .unwrap_or(0);
    (index, n)
}

pub fn component_of(profile: &KupischProfile, u: &Interval) -> Result<ComponentRef> {
    if !crate::repcat::is_compatible(profile, u)? {
        return Err(Error::IncompatibleModule(format!(
            "{u} is not compatible with the profile"
        )));
    }
    let comps = components(profile);
    let (index, shift) = locate_point(profile, &comps, u.lo());
    let c = &comps[index];
    if c.shape != ComponentShape::CircleWhole && !component_holds(c, shift, u) {
        return Err(Error::IncompatibleModule(format!("{u} straddles a separation point")));
    }
    let shift = if profile.is_circle() { 0 } else { shift };
    Ok(ComponentRef { index, shift })
}

fn require_bijection(f: &PiecewiseMap) -> Result<PiecewiseMap> {
    f.invert()
}

/// `K' = f ∘ K ∘ f⁻¹`, the successor map of the push-forward `f_* κ`.
pub fn push_forward(profile: &KupischProfile, f: &PiecewiseMap) -> Result<KupischProfile> {
    match &profile.space {
        Space::Circle => {
            if !f.is_periodic() {
                return Err(Error::Degree(
                    "circle homeomorphisms are given as degree-one lifts".into(),
                ));
            }
            let finv = require_bijection(f)?;
            let k = f.compose(&profile.successor.compose(&finv)?)?;
            KupischProfile::new(Space::Circle, k)
        }
        Space::Line(d) => {
            if profile.successor.is_periodic() {
                if !f.is_periodic() {
                    return Err(Error::domain(
                        "a periodic line profile is transported only by degree-one lifts",
                    ));
                }
                let finv = require_bijection(f)?;
                let k = f.compose(&profile.successor.compose(&finv)?)?;
                return KupischProfile::new(Space::Line(Domain::real_line()), k);
            }
            if f.is_periodic() {
                let fr = f.restrict(d)?;
                return push_forward(profile, &fr);
            }
            if f.domain() != d {
                return Err(Error::domain(format!(
                    "homeomorphism is defined on {} but the profile lives on {}",
                    f.domain(),
                    d
                )));
            }
            let finv = require_bijection(f)?;
            let k = f.compose(&profile.successor.compose(&finv)?)?;
            let range = finv.domain().clone();
            KupischProfile::new(Space::Line(range), k)
        }
    }
}

pub fn verify_conjugacy(f: &PiecewiseMap, source: &KupischProfile, target: &KupischProfile) -> Result<bool> {
    let pushed = push_forward(source, f)?;
    Ok(pushed.space == target.space && pushed.successor.equals(&target.successor))
}

fn mobius(a: Rational, b: Rational, c: Rational, d: Rational) -> FracLinear {
    FracLinear::new(a, b, c, d).expect("increasing normalizing formula")
}

/// The fixed homeomorphism carrying a line domain to `[0, +inf)` (domains
/// with a closed left end) or to the whole line (open left end).
pub fn normalizing_map(domain: &Domain) -> Result<PiecewiseMap> {
    if domain.hi_closed() {
        return Err(Error::domain("right-closed domain inadmissible"));
    }
    let one = Rational::one();
    let map = |pieces: Vec<(Bound, FracLinear)>| PiecewiseMap::new(domain.clone(), pieces, false);
    match (domain.lo(), domain.hi()) {
        (Bound::NegInf, Bound::PosInf) => Ok(PiecewiseMap::identity(domain.clone())),
        (Bound::Finite(a), Bound::PosInf) if domain.lo_closed() => {
            map(vec![(domain.lo().clone(), FracLinear::translation(-a))])
        }
        (Bound::Finite(a), Bound::Finite(b)) if domain.lo_closed() => {
            map(vec![(domain.lo().clone(), mobius(one.clone(), -a, -one, b.clone()))])
        }
        (Bound::Finite(a), Bound::Finite(b)) => {
            let m = (a + b) / int(2);
            map(vec![
                (domain.lo().clone(), mobius(one.clone(), -&m, one.clone(), -a)),
                (Bound::Finite(m.clone()), mobius(one.clone(), -&m, -one, b.clone())),
            ])
        }
        (Bound::Finite(a), Bound::PosInf) => {
            let m = a + &one;
            map(vec![
                (domain.lo().clone(), mobius(one.clone(), -&m, one.clone(), -a)),
                (Bound::Finite(m.clone()), FracLinear::translation(-m)),
            ])
        }
        (Bound::NegInf, Bound::Finite(b)) => {
            let m = b - &one;
            map(vec![
                (Bound::NegInf, FracLinear::translation(-&m)),
                (Bound::Finite(m.clone()), mobius(one.clone(), -&m, -one, b.clone())),
            ])
        }
        _ => Err(Error::domain(format!("unsupported domain {domain}"))),
    }
}

/// An equivalent profile on `[0, +inf)` or the whole line, with the
/// homeomorphism realizing it.
pub fn normalize_profile(profile: &KupischProfile) -> Result<(KupischProfile, PiecewiseMap)> {
    let Space::Line(d) = &profile.space else {
        return Err(Error::domain("circle profiles have no line normal form"));
    };
    if profile.is_periodic() {
        return Ok((profile.clone(), PiecewiseMap::identity(Domain::real_line())));
    }
    let f = normalizing_map(d)?;
    Ok((push_forward(profile, &f)?, f))
}

/// Whether an interval lies in the component `[left, right)`.
fn component_holds(c: &ComponentDescriptor, shift: i64, u: &Interval) -> bool {
    let k = int(shift);
    let left = c.left.shift(&k);
    let right = c.right.shift(&k);
    let lo_ok = match left.cmp_rational(u.lo()) {
        Ordering::Less => true,
        Ordering::Equal => c.left_closed || u.lo_kind() == interval::EndpointKind::Open,
        Ordering::Greater => false,
    };
    let hi_ok = match right.cmp_rational(u.hi()) {
        Ordering::Greater => true,
        Ordering::Equal => u.hi_kind() == interval::EndpointKind::Open,
        Ordering::Less => false,
    };
    lo_ok && hi_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn fin(n: i64, d: i64) -> Bound {
        Bound::Finite(rat(n, d))
    }

    fn line_shift(c: Rational) -> KupischProfile {
        KupischProfile::line(PiecewiseMap::single(Domain::real_line(), FracLinear::translation(c)).unwrap()).unwrap()
    }

    fn circle_shift(c: Rational) -> KupischProfile {
        KupischProfile::circle(PiecewiseMap::periodic(vec![(fin(0, 1), FracLinear::translation(c))]).unwrap()).unwrap()
    }

    fn kappa_a_332() -> KupischProfile {
        KupischProfile::circle(
            PiecewiseMap::periodic(vec![
                (fin(0, 1), FracLinear::constant(int(1))),
                (fin(1, 3), FracLinear::constant(rat(4, 3))),
            ])
            .unwrap(),
        )
        .unwrap()
    }

    /// K(t) = t/2 + (k+1)/(2n) on [k/n, (k+1)/n).
    fn kappa_n(n: i64) -> KupischProfile {
        let pieces = (0..n)
            .map(|k| (fin(k, n), FracLinear::affine(rat(1, 2), rat(k + 1, 2 * n))))
            .collect();
        KupischProfile::circle(PiecewiseMap::periodic(pieces).unwrap()).unwrap()
    }

    /// K(t) = (n + 1 + t)/2 on [n, n + 1).
    fn nu() -> KupischProfile {
        let k = PiecewiseMap::periodic(vec![(fin(0, 1), FracLinear::affine(rat(1, 2), rat(1, 2)))]).unwrap();
        KupischProfile::line(k).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_profile(&line_shift(int(1))).is_empty());
        let bad = validate_profile(&line_shift(int(-1)));
        assert_eq!(bad[0].kind, ViolationKind::NonPositiveKappa);
        assert!(bad[0].to_string().contains("κ≤0"));

        let closed = Domain::new(fin(0, 1), true, fin(1, 1), true).unwrap();
        let p = KupischProfile::line(PiecewiseMap::single(closed, FracLinear::translation(int(1))).unwrap()).unwrap();
        assert!(validate_profile(&p)
            .iter()
            .any(|v| v.to_string() == "right-closed domain inadmissible"));

        assert!(validate_profile(&kappa_a_332()).is_empty());
        assert!(validate_profile(&kappa_n(3)).is_empty());
        assert!(validate_profile(&nu()).is_empty());
    }

    #[test]
    fn validation_detects_escape_and_fractional_sign() {
        // K = (1 + t)/2 on [0, 1) stays inside, K = t + 1/2 does not
        let d = Domain::right_open(int(0), int(1)).unwrap();
        let ok = PiecewiseMap::single(d.clone(), FracLinear::affine(rat(1, 2), rat(1, 2))).unwrap();
        assert!(validate_profile(&KupischProfile::line(ok).unwrap()).is_empty());
        let out = PiecewiseMap::single(d.clone(), FracLinear::translation(rat(1, 2))).unwrap();
        let v = validate_profile(&KupischProfile::line(out).unwrap());
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::LeavesDomain);
        // constant 1 reaches the open end
        let flat = PiecewiseMap::single(d, FracLinear::constant(int(1))).unwrap();
        assert_eq!(
            validate_profile(&KupischProfile::line(flat).unwrap())[0].kind,
            ViolationKind::LeavesDomain
        );
        // K = 1/(1 - t) on [0, 1): K - t = (t² - t + 1)/(1 - t) > 0, pole at the open end
        let pole = FracLinear::new(int(0), int(1), int(-1), int(1)).unwrap();
        let half = Domain::right_open(int(0), int(1)).unwrap();
        let p = KupischProfile::line(PiecewiseMap::single(half, pole).unwrap()).unwrap();
        let v = validate_profile(&p);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::LeavesDomain);
        // K = 2t on [0, +inf): K(0) = 0
        let p = KupischProfile::line(
            PiecewiseMap::single(Domain::half_line(int(0)), FracLinear::affine(int(2), int(0))).unwrap(),
        )
        .unwrap();
        assert_eq!(validate_profile(&p)[0].kind, ViolationKind::NonPositiveKappa);
        // K = 2t on (0, +inf) is fine
        let open = Domain::new(fin(0, 1), false, Bound::PosInf, false).unwrap();
        let p = KupischProfile::line(PiecewiseMap::single(open, FracLinear::affine(int(2), int(0))).unwrap()).unwrap();
        assert!(validate_profile(&p).is_empty());
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa_at(&kappa_a_332(), &int(0)).unwrap(), int(1));
        assert_eq!(kappa_at(&kappa_a_332(), &rat(1, 2)).unwrap(), rat(5, 6));
        assert_eq!(kappa_at(&kappa_n(2), &int(0)).unwrap(), rat(1, 4));
    }

    #[test]
    fn orbits() {
        assert_eq!(
            orbit(&line_shift(int(1)), &int(0), 3).unwrap(),
            vec![int(0), int(1), int(2), int(3)]
        );
        assert_eq!(
            orbit(&kappa_n(1), &int(0), 3).unwrap(),
            vec![int(0), rat(1, 2), rat(3, 4), rat(7, 8)]
        );
    }

    #[test]
    fn separation_examples() {
        let jump = PiecewiseMap::new(
            Domain::real_line(),
            vec![
                (Bound::NegInf, FracLinear::translation(int(1))),
                (fin(0, 1), FracLinear::translation(int(2))),
            ],
            false,
        )
        .unwrap();
        assert!(separation_points(&KupischProfile::line(jump).unwrap()).is_empty());
        assert_eq!(separation_points(&kappa_n(2)).points, vec![int(0), rat(1, 2)]);
        let s = separation_points(&nu());
        assert_eq!(s.points, vec![int(0)]);
        assert!(s.periodic);
        assert!(s.contains(&int(-4)));
        assert!(separation_points(&kappa_a_332()).is_empty());
    }

    #[test]
    fn constant_left_piece_is_not_separating() {
        // K = 1 on [0, 1), K = t + 1 on [1, +inf): K(1⁻) = 1 but K ≡ 1 just left of 1
        let k = PiecewiseMap::new(
            Domain::half_line(int(0)),
            vec![
                (fin(0, 1), FracLinear::constant(int(1))),
                (fin(1, 1), FracLinear::translation(int(1))),
            ],
            false,
        )
        .unwrap();
        let p = KupischProfile::line(k).unwrap();
        assert!(validate_profile(&p).is_empty());
        assert!(separation_points(&p).is_empty());
    }

    #[test]
    fn next_separation_examples() {
        assert_eq!(next_separation(&kappa_n(1), &int(0)).unwrap(), fin(1, 1));
        assert_eq!(next_separation(&line_shift(int(1)), &int(5)).unwrap(), Bound::PosInf);
        assert_eq!(next_separation(&kappa_n(3), &rat(1, 4)).unwrap(), fin(1, 3));
        assert_eq!(next_separation(&nu(), &rat(-1, 2)).unwrap(), fin(0, 1));
    }

    #[test]
    fn component_examples() {
        for n in 1..=3 {
            assert_eq!(components(&kappa_n(n)).len(), n as usize);
        }
        assert_eq!(components(&circle_shift(rat(3, 2))).len(), 1);
        assert_eq!(
            components(&circle_shift(rat(3, 2)))[0].shape,
            ComponentShape::CircleWhole
        );
        let c = components(&nu());
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].left.clone(), c[0].right.clone()), (fin(0, 1), fin(1, 1)));

        let r = component_of(&kappa_n(2), &Interval::closed(rat(1, 8), rat(1, 4))).unwrap();
        let comps = components(&kappa_n(2));
        assert_eq!(
            (comps[r.index].left.clone(), comps[r.index].right.clone()),
            (fin(0, 1), fin(1, 2))
        );
        let r = component_of(&nu(), &Interval::closed(rat(3, 2), rat(7, 4))).unwrap();
        assert_eq!(r, ComponentRef { index: 0, shift: 1 });
        assert_eq!(
            component_of(&line_shift(int(1)), &Interval::closed(int(7), rat(15, 2)))
                .unwrap()
                .index,
            0
        );
    }

    #[test]
    fn push_forward_examples() {
        let p = kappa_a_332();
        let id = PiecewiseMap::periodic(vec![(fin(0, 1), FracLinear::identity())]).unwrap();
        assert_eq!(push_forward(&p, &id).unwrap(), p);

        // K = 2t + 1 on [0, +inf) under t/(n(1 + t))
        for n in 1..=3 {
            let k = PiecewiseMap::single(Domain::half_line(int(0)), FracLinear::affine(int(2), int(1))).unwrap();
            let src = KupischProfile::line(k).unwrap();
            let f = PiecewiseMap::single(
                Domain::half_line(int(0)),
                FracLinear::new(int(1), int(0), int(n), int(n)).unwrap(),
            )
            .unwrap();
            let out = push_forward(&src, &f).unwrap();
            let expected = PiecewiseMap::single(
                Domain::right_open(int(0), rat(1, n)).unwrap(),
                FracLinear::affine(rat(1, 2), rat(1, 2 * n)),
            )
            .unwrap();
            assert!(out.successor().equals(&expected));
            assert!(validate_profile(&out).is_empty());
        }

        // ν restricted to [0, 1) under t/(1 - t)
        let k = PiecewiseMap::single(
            Domain::right_open(int(0), int(1)).unwrap(),
            FracLinear::affine(rat(1, 2), rat(1, 2)),
        )
        .unwrap();
        let src = KupischProfile::line(k).unwrap();
        let f = PiecewiseMap::single(
            Domain::right_open(int(0), int(1)).unwrap(),
            FracLinear::new(int(1), int(0), int(-1), int(1)).unwrap(),
        )
        .unwrap();
        let out = push_forward(&src, &f).unwrap();
        let expected = PiecewiseMap::single(Domain::half_line(int(0)), FracLinear::affine(int(2), int(1))).unwrap();
        assert!(out.successor().equals(&expected));
    }

    #[test]
    fn push_forward_errors() {
        let shift = PiecewiseMap::single(Domain::real_line(), FracLinear::translation(int(1))).unwrap();
        assert!(matches!(push_forward(&kappa_n(2), &shift), Err(Error::Degree(_))));
        let half = PiecewiseMap::identity(Domain::half_line(int(0)));
        assert!(matches!(
            push_forward(&line_shift(int(1)), &half),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn conjugacy_examples() {
        let p = kappa_a_332();
        let id = PiecewiseMap::periodic(vec![(fin(0, 1), FracLinear::identity())]).unwrap();
        assert!(verify_conjugacy(&id, &p, &p).unwrap());

        // rotation by 1/4 shifts the pieces
        let rot = PiecewiseMap::periodic(vec![(fin(0, 1), FracLinear::translation(rat(1, 4)))]).unwrap();
        let shifted = KupischProfile::circle(
            PiecewiseMap::periodic(vec![
                (fin(0, 1), FracLinear::constant(rat(7, 12))),
                (fin(1, 4), FracLinear::constant(rat(5, 4))),
                (fin(7, 12), FracLinear::constant(rat(19, 12))),
            ])
            .unwrap(),
        )
        .unwrap();
        assert!(verify_conjugacy(&rot, &p, &shifted).unwrap());

        for c in [rat(0, 1), rat(1, 3), rat(5, 7)] {
            let rot = PiecewiseMap::periodic(vec![(fin(0, 1), FracLinear::translation(c))]).unwrap();
            assert!(!verify_conjugacy(&rot, &circle_shift(rat(1, 2)), &circle_shift(rat(1, 3))).unwrap());
        }

        // on the whole line a dilation does relate the two constant lengths
        let line = |c: Rational| {
            KupischProfile::line(PiecewiseMap::single(Domain::real_line(), FracLinear::translation(c)).unwrap())
                .unwrap()
        };
        let dilate = PiecewiseMap::single(Domain::real_line(), FracLinear::affine(rat(2, 3), int(0))).unwrap();
        assert!(verify_conjugacy(&dilate, &line(rat(1, 2)), &line(rat(1, 3))).unwrap());
    }

    #[test]
    fn normalization() {
        let p = KupischProfile::line(
            PiecewiseMap::single(Domain::half_line(int(0)), FracLinear::translation(int(1))).unwrap(),
        )
        .unwrap();
        let (q, f) = normalize_profile(&p).unwrap();
        assert_eq!(q, p);
        assert!(f.equals(&PiecewiseMap::identity(Domain::half_line(int(0)))));

        let k = PiecewiseMap::single(
            Domain::right_open(int(0), int(1)).unwrap(),
            FracLinear::affine(rat(1, 2), rat(1, 2)),
        )
        .unwrap();
        let (q, f) = normalize_profile(&KupischProfile::line(k.clone()).unwrap()).unwrap();
        assert_eq!(q.space(), &Space::Line(Domain::half_line(int(0))));
        let expected = PiecewiseMap::single(Domain::half_line(int(0)), FracLinear::affine(int(2), int(1))).unwrap();
        assert!(q.successor().equals(&expected));
        assert!(verify_conjugacy(&f, &KupischProfile::line(k).unwrap(), &q).unwrap());

        let open = Domain::new(fin(0, 1), false, fin(1, 1), false).unwrap();
        let k = PiecewiseMap::single(open, FracLinear::affine(rat(1, 2), rat(1, 2))).unwrap();
        let src = KupischProfile::line(k).unwrap();
        let (q, f) = normalize_profile(&src).unwrap();
        assert_eq!(q.space(), &Space::Line(Domain::real_line()));
        assert!(validate_profile(&q).is_empty());
        assert!(verify_conjugacy(&f, &src, &q).unwrap());
        let back = push_forward(&q, &f.invert().unwrap()).unwrap();
        assert_eq!(back, src);

        assert!(matches!(normalize_profile(&kappa_n(2)), Err(Error::Domain(_))));
    }
}
