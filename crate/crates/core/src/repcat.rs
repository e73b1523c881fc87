//! Hom dimensions, morphisms, projectives and resolutions for interval and
//! string modules.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::{canonical_lift, contains, left_intersect, translate, EndpointKind, Interval};
use crate::kupisch::{KupischProfile, Space};
use crate::pwmap::PiecewiseMap;
use crate::rational::{ceil_i64, floor_i64, Rational};

pub const DEFAULT_CAP: usize = 512;

/// A finite direct sum of interval (or string) modules. Circle summands
/// are stored as canonical lifts; the order of summands carries no meaning.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleExpr {
    space: Space,
    summands: Vec<Interval>,
}

impl ModuleExpr {
    pub fn new(space: Space, summands: Vec<Interval>) -> Self {
        let mut summands: Vec<Interval> = match space {
            Space::Circle => summands.iter().map(|u| canonical_lift(u).into_interval()).collect(),
            Space::Line(_) => summands,
        };
        summands.sort();
        ModuleExpr { space, summands }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn summands(&self) -> &[Interval] {
        &self.summands
    }

    /// Hom dimension between sums: the sum over all pairs of summands.
    pub fn hom_dim_to(&self, target: &ModuleExpr) -> usize {
        self.summands
            .iter()
            .flat_map(|v| target.summands.iter().map(move |u| hom_dim(&self.space, v, u)))
            .sum()
    }

    pub fn is_compatible(&self, profile: &KupischProfile) -> Result<bool> {
        for u in &self.summands {
            if !is_compatible(profile, u)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether `U ⊆ [t, K(t)]` for some `t` in the domain. Since `K` is
/// non-decreasing, `t = lo(U)` is the best candidate.
pub fn is_compatible(profile: &KupischProfile, u: &Interval) -> Result<bool> {
    if let Space::Line(d) = profile.space() {
        let below = d.lo().cmp_rational(u.lo()).is_gt();
        let above = match d.hi().cmp_rational(u.hi()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => u.hi_kind() == EndpointKind::Closed && !d.hi_closed(),
            std::cmp::Ordering::Greater => false,
        };
        if below || above {
            return Err(Error::domain(format!("{u} leaves the domain {d}")));
        }
        if !d.contains(u.lo()) {
            return Ok(false);
        }
    }
    let k = profile.successor_at(u.lo())?;
    if k < *u.lo() {
        return Ok(false);
    }
    Ok(contains(&Interval::closed(u.lo().clone(), k), u))
}

/// `[t, K(t)]` or `(t, K(t)]`.
pub fn projective_at(profile: &KupischProfile, t: &Rational, left_kind: EndpointKind) -> Result<Interval> {
    let k = profile.successor_at(t)?;
    Interval::new(t.clone(), left_kind, k, EndpointKind::Closed)
}

pub fn is_projective(profile: &KupischProfile, u: &Interval) -> Result<bool> {
    let k = profile.successor_at(u.lo())?;
    Ok(u.hi_kind() == EndpointKind::Closed && *u.hi() == k)
}

/// `dim Hom(M_source, M_target)`.
///
/// On the circle this counts the integers `i` with
/// `target ∩_L (source + i) ≠ ∅`; only shifts making the two supports
/// overlap can qualify, so the window below is exact.
pub fn hom_dim(space: &Space, source: &Interval, target: &Interval) -> usize {
    match space {
        Space::Line(_) => usize::from(left_intersect(target, source).is_some()),
        Space::Circle => {
            let lo = floor_i64(&(target.lo() - source.hi())) - 1;
            let hi = ceil_i64(&(target.hi() - source.lo())) + 1;
            (lo..=hi)
                .filter(|&i| left_intersect(target, &translate(source, i)).is_some())
                .count()
        }
    }
}

pub fn end_dim(space: &Space, u: &Interval) -> usize {
    hom_dim(space, u, u)
}

/// On the circle, a string is a brick iff any two of its points are less
/// than one apart.
pub fn is_brick(space: &Space, u: &Interval) -> bool {
    match space {
        Space::Line(_) => true,
        Space::Circle => {
            let len = u.length();
            if u.is_closed() {
                len < Rational::from_integer(1.into())
            } else {
                len <= Rational::from_integer(1.into())
            }
        }
    }
}

/// The morphism `M_source → M_target` that is multiplication by
/// `coefficient` on the overlap with `target + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarMorphism {
    pub source: Interval,
    pub target: Interval,
    pub shift: i64,
    pub coefficient: Rational,
}

impl ScalarMorphism {
    pub fn new(source: Interval, target: Interval, shift: i64, coefficient: Rational) -> Result<Self> {
        if coefficient.is_zero() {
            return Err(Error::InvalidMorphism("zero coefficient".into()));
        }
        let m = ScalarMorphism {
            source,
            target,
            shift,
            coefficient,
        };
        if left_intersect(&translate(&m.target, m.shift), &m.source).is_none() {
            return Err(Error::InvalidMorphism(format!(
                "no nonzero morphism from {} to {} at shift {}",
                m.source, m.target, m.shift
            )));
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismAnalysis {
    pub image: Option<Interval>,
    pub kernel: Option<Interval>,
    pub cokernel: Option<Interval>,
}

fn show(u: &Option<Interval>) -> String {
    u.as_ref().map_or_else(|| "0".to_string(), |u| u.to_string())
}

impl fmt::Display for MorphismAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "image: {}", show(&self.image))?;
        writeln!(f, "kernel: {}", show(&self.kernel))?;
        write!(f, "cokernel: {}", show(&self.cokernel))
    }
}

/// Image, kernel and cokernel supports. The kernel is the part of the
/// source right of the image, the cokernel the part of the target left
/// of it.
pub fn morphism_analyze(m: &ScalarMorphism) -> Result<MorphismAnalysis> {
    if m.coefficient.is_zero() {
        return Err(Error::InvalidMorphism("zero coefficient".into()));
    }
    let target = translate(&m.target, m.shift);
    let Some(image) = left_intersect(&target, &m.source) else {
        return Err(Error::InvalidMorphism(format!(
            "no nonzero morphism from {} to {}",
            m.source, target
        )));
    };
    let kernel = Interval::from_cuts(image.upper_cut(), m.source.upper_cut());
    let cokernel = Interval::from_cuts(target.lower_cut(), image.lower_cut());
    Ok(MorphismAnalysis {
        image: Some(image),
        kernel,
        cokernel,
    })
}

/// The projective cover `P(lo U) ↠ U` and its kernel.
pub fn projective_cover(profile: &KupischProfile, u: &Interval) -> Result<(Interval, Option<Interval>)> {
    if !is_compatible(profile, u)? {
        return Err(Error::IncompatibleModule(format!(
            "{u} is not compatible with the profile"
        )));
    }
    let cover = projective_at(profile, u.lo(), u.lo_kind())?;
    let syzygy = Interval::from_cuts(u.upper_cut(), cover.upper_cut());
    Ok((cover, syzygy))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Finite(usize),
    InfinitePeriodic(usize),
    ExceededCap(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Finite(n) => write!(f, "Finite({n})"),
            Verdict::InfinitePeriodic(p) => write!(f, "InfinitePeriodic({p})"),
            Verdict::ExceededCap(c) => write!(f, "ExceededCap({c})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResolutionReport {
    pub covers: Vec<Interval>,
    pub syzygies: Vec<Interval>,
    pub verdict: Verdict,
}

/// Iterated projective covers. `Finite(n)` means the `n`-th syzygy
/// vanishes after `n + 1` covers. On periodic profiles a syzygy that
/// repeats an earlier one (or the module itself) up to integer translation
/// proves infinite projective dimension.
pub fn projective_resolution(profile: &KupischProfile, u: &Interval, cap: usize) -> Result<ResolutionReport> {
    let mut covers = Vec::new();
    let mut syzygies: Vec<Interval> = Vec::new();
    let mut seen = vec![canonical_lift(u)];
    let mut module = u.clone();
    loop {
        if covers.len() >= cap {
            return Ok(ResolutionReport {
                covers,
                syzygies,
                verdict: Verdict::ExceededCap(cap),
            });
        }
        let (cover, syzygy) = projective_cover(profile, &module)?;
        covers.push(cover);
        let Some(syz) = syzygy else {
            let n = covers.len() - 1;
            return Ok(ResolutionReport {
                covers,
                syzygies,
                verdict: Verdict::Finite(n),
            });
        };
        syzygies.push(syz.clone());
        if profile.is_periodic() {
            let lift = canonical_lift(&syz);
            if let Some(j) = seen.iter().position(|s| *s == lift) {
                let period = seen.len() - j;
                return Ok(ResolutionReport {
                    covers,
                    syzygies,
                    verdict: Verdict::InfinitePeriodic(period),
                });
            }
            seen.push(lift);
        }
        module = syz;
    }
}

/// `M_U ↦ M_{f(U)}`: endpoints pushed through `f`, kinds unchanged.
pub fn map_module(f: &PiecewiseMap, u: &Interval) -> Result<Interval> {
    let lo = f.eval(u.lo())?;
    let hi = f.eval(u.hi())?;
    u.with_endpoints(lo, hi)
}
