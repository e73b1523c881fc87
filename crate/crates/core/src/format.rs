//! Text forms of profiles, maps, intervals, series and modules.
//!
//! Profile files are line oriented with `#` comments:
//!
//! ```text
//! space circle
//! piece [0/1, 1/3) affine 1/1 1/1
//! piece [1/3, 1/1) mobius 4/3 0/1 0/1 1/1
//! ```
//!
//! `space line <domain>` selects a line profile, and
//! `space line (-inf, +inf) periodic` a line profile with periodic `K`.
//! Homeomorphisms use `homeo <domain> -> <domain>` or `homeo circle`, and
//! plain maps `map <domain>` or `map periodic`, with the same piece lines.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::discrete::{DiscreteModule, KupischSeries};
use crate::error::{Error, Result};
use crate::interval::{EndpointKind, Interval};
use crate::kupisch::{KupischProfile, Space};
use crate::pwmap::{Domain, FracLinear, PiecewiseMap};
use crate::rational::{format_rational, parse_bound, parse_rational, Bound, Rational};

/// Splits a bracketed pair such as `[1/2, 3)` into its kinds and halves.
fn split_bracketed(s: &str) -> Option<(bool, &str, &str, bool)> {
    let s = s.trim();
    let lo_closed = match s.chars().next()? {
        '[' => true,
        '(' => false,
        _ => return None,
    };
    let hi_closed = match s.chars().last()? {
        ']' => true,
        ')' => false,
        _ => return None,
    };
    if s.len() < 2 {
        return None;
    }
    let (a, b) = s[1..s.len() - 1].split_once(',')?;
    Some((lo_closed, a, b, hi_closed))
}

fn kind(closed: bool) -> EndpointKind {
    if closed {
        EndpointKind::Closed
    } else {
        EndpointKind::Open
    }
}

pub fn parse_interval(s: &str) -> Result<Interval> {
    let bad = || Error::parse(1, format!("malformed interval `{}`", s.trim()));
    let (lc, a, b, hc) = split_bracketed(s).ok_or_else(bad)?;
    let lo = parse_rational(a).ok_or_else(bad)?;
    let hi = parse_rational(b).ok_or_else(bad)?;
    Interval::new(lo, kind(lc), hi, kind(hc))
}

pub fn parse_domain(s: &str) -> Result<Domain> {
    let bad = || Error::parse(1, format!("malformed domain `{}`", s.trim()));
    let (lc, a, b, hc) = split_bracketed(s).ok_or_else(bad)?;
    let lo = parse_bound(a).ok_or_else(bad)?;
    let hi = parse_bound(b).ok_or_else(bad)?;
    Domain::new(lo, lc, hi, hc)
}

pub fn parse_series(s: &str) -> Result<KupischSeries> {
    let lengths = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::parse(1, format!("malformed series `{}`", s.trim())))?;
    KupischSeries::new(lengths)
}

pub fn parse_module(s: &str) -> Result<DiscreteModule> {
    let bad = || Error::parse(1, format!("malformed module `{}`, expected top,length", s.trim()));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let top = a.trim().parse().map_err(|_| bad())?;
    let length = b.trim().parse().map_err(|_| bad())?;
    Ok(DiscreteModule { top, length })
}

fn parse_formula(line: usize, words: &[&str]) -> Result<FracLinear> {
    let nums = words[1..]
        .iter()
        .map(|w| parse_rational(w).ok_or_else(|| Error::parse(line, format!("bad number `{w}`"))))
        .collect::<Result<Vec<Rational>>>()?;
    let at_line = |e: Error| match e {
        Error::InvalidMap(m) => Error::parse(line, m),
        other => other,
    };
    match (words[0], nums.as_slice()) {
        ("affine", [m, q]) => FracLinear::new(m.clone(), q.clone(), Rational::zero(), Rational::one()).map_err(at_line),
        ("mobius", [a, b, c, d]) => FracLinear::new(a.clone(), b.clone(), c.clone(), d.clone()).map_err(at_line),
        ("affine", _) => Err(Error::parse(line, "affine takes two coefficients")),
        ("mobius", _) => Err(Error::parse(line, "mobius takes four coefficients")),
        (w, _) => Err(Error::parse(line, format!("unknown formula kind `{w}`"))),
    }
}

/// A raw `piece` line: the extent and the formula.
struct RawPiece {
    line: usize,
    start: Bound,
    end: Bound,
    formula: FracLinear,
}

fn parse_piece(line: usize, rest: &str) -> Result<RawPiece> {
    let close = rest
        .find([']', ')'])
        .ok_or_else(|| Error::parse(line, "piece needs an extent like [0/1, 1/2)"))?;
    let (extent, formula) = rest.split_at(close + 1);
    let (_, a, b, _) =
        split_bracketed(extent).ok_or_else(|| Error::parse(line, format!("malformed extent `{extent}`")))?;
    let start = parse_bound(a).ok_or_else(|| Error::parse(line, format!("bad bound `{}`", a.trim())))?;
    let end = parse_bound(b).ok_or_else(|| Error::parse(line, format!("bad bound `{}`", b.trim())))?;
    let words: Vec<&str> = formula.split_whitespace().collect();
    if words.is_empty() {
        return Err(Error::parse(line, "piece needs a formula"));
    }
    Ok(RawPiece {
        line,
        start,
        end,
        formula: parse_formula(line, &words)?,
    })
}

fn assemble(header_line: usize, domain: Domain, periodic: bool, pieces: Vec<RawPiece>) -> Result<PiecewiseMap> {
    if pieces.is_empty() {
        return Err(Error::parse(header_line, "no pieces"));
    }
    for w in pieces.windows(2) {
        if w[0].end != w[1].start {
            return Err(Error::parse(
                w[1].line,
                format!(
                    "piece starts at {} but the previous one ends at {}",
                    w[1].start, w[0].end
                ),
            ));
        }
    }
    let last = pieces.last().unwrap();
    if &last.end != domain.hi() {
        return Err(Error::parse(
            last.line,
            format!("last piece ends at {} but the domain ends at {}", last.end, domain.hi()),
        ));
    }
    if &pieces[0].start != domain.lo() {
        return Err(Error::parse(
            pieces[0].line,
            format!(
                "first piece starts at {} but the domain starts at {}",
                pieces[0].start,
                domain.lo()
            ),
        ));
    }
    PiecewiseMap::new(
        domain,
        pieces.into_iter().map(|p| (p.start, p.formula)).collect(),
        periodic,
    )
}

/// Meaningful lines with their 1-based numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Header line and the pieces following it.
fn split_header(text: &str, keyword: &str) -> Result<(usize, String, Vec<RawPiece>)> {
    let mut header = None;
    let mut pieces = Vec::new();
    for (n, l) in content_lines(text) {
        let (word, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match word {
            w if w == keyword => {
                if header.is_some() {
                    return Err(Error::parse(n, format!("second `{keyword}` line")));
                }
                header = Some((n, rest.trim().to_string()));
            }
            "piece" => {
                if header.is_none() {
                    return Err(Error::parse(n, format!("`piece` before the `{keyword}` line")));
                }
                pieces.push(parse_piece(n, rest)?);
            }
            other => return Err(Error::parse(n, format!("unknown directive `{other}`"))),
        }
    }
    let (n, rest) = header.ok_or_else(|| Error::parse(1, format!("missing `{keyword}` line")))?;
    Ok((n, rest, pieces))
}

fn with_line(n: usize, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::parse(n, message),
        other => other,
    }
}

/// Parses a profile file. The result is structurally sound but not
/// necessarily a valid Kupisch profile.
pub fn parse_profile(text: &str) -> Result<KupischProfile> {
    let (n, rest, pieces) = split_header(text, "space")?;
    let (space, periodic, domain) = if rest == "circle" {
        (Space::Circle, true, Domain::unit())
    } else if let Some(d) = rest.strip_prefix("line") {
        let d = d.trim();
        let (d, periodic) = match d.strip_suffix("periodic") {
            Some(x) => (x.trim(), true),
            None => (d, false),
        };
        let domain = parse_domain(d).map_err(|e| with_line(n, e))?;
        if periodic {
            if !domain.is_real_line() {
                return Err(Error::parse(n, "only (-inf, +inf) can be periodic"));
            }
            (Space::Line(domain), true, Domain::unit())
        } else {
            (Space::Line(domain.clone()), false, domain)
        }
    } else {
        return Err(Error::parse(n, format!("unknown space `{rest}`")));
    };
    let k = assemble(n, domain, periodic, pieces)?;
    KupischProfile::new(space, k)
}

/// Parses a homeomorphism file; the map must carry the first domain onto
/// the second.
pub fn parse_homeo(text: &str) -> Result<PiecewiseMap> {
    let (n, rest, pieces) = split_header(text, "homeo")?;
    if rest == "circle" {
        return assemble(n, Domain::unit(), true, pieces);
    }
    let (a, b) = rest
        .split_once("->")
        .ok_or_else(|| Error::parse(n, "expected `homeo <domain> -> <domain>`"))?;
    let source = parse_domain(a).map_err(|e| with_line(n, e))?;
    let target = parse_domain(b).map_err(|e| with_line(n, e))?;
    let f = assemble(n, source, false, pieces)?;
    let range = f.range().map_err(|e| Error::NotBijective(e.to_string()))?;
    if f.is_strictly_increasing() && f.is_continuous() && range != target {
        return Err(Error::NotBijective(format!("map reaches {range}, not {target}")));
    }
    Ok(f)
}

/// Parses a plain map file (`map <domain>` or `map periodic`).
pub fn parse_map(text: &str) -> Result<PiecewiseMap> {
    let (n, rest, pieces) = split_header(text, "map")?;
    if rest == "periodic" {
        return assemble(n, Domain::unit(), true, pieces);
    }
    let domain = parse_domain(&rest).map_err(|e| with_line(n, e))?;
    assemble(n, domain, false, pieces)
}

fn write_pieces(out: &mut String, map: &PiecewiseMap) {
    for i in 0..map.pieces().len() {
        let span = map.span(i);
        let _ = writeln!(
            out,
            "piece {}{}, {}{} {}",
            if span.start_incl { '[' } else { '(' },
            span.start,
            span.end,
            if span.end_incl { ']' } else { ')' },
            map.pieces()[i].formula()
        );
    }
}

pub fn format_profile(profile: &KupischProfile) -> String {
    let mut out = String::new();
    match profile.space() {
        Space::Circle => out.push_str("space circle\n"),
        Space::Line(d) if profile.is_periodic() => {
            let _ = writeln!(out, "space line {d} periodic");
        }
        Space::Line(d) => {
            let _ = writeln!(out, "space line {d}");
        }
    }
    write_pieces(&mut out, profile.successor());
    out
}

pub fn format_homeo(f: &PiecewiseMap) -> String {
    let mut out = String::new();
    if f.is_periodic() {
        out.push_str("homeo circle\n");
    } else {
        let target = f
            .range()
            .map(|r| r.to_string())
            .unwrap_or_else(|_| f.domain().to_string());
        let _ = writeln!(out, "homeo {} -> {}", f.domain(), target);
    }
    write_pieces(&mut out, f);
    out
}

pub fn format_map(f: &PiecewiseMap) -> String {
    let mut out = String::new();
    if f.is_periodic() {
        out.push_str("map periodic\n");
    } else {
        let _ = writeln!(out, "map {}", f.domain());
    }
    write_pieces(&mut out, f);
    out
}

pub fn format_option(u: &Option<Interval>) -> String {
    u.as_ref().map_or_else(|| "0".to_string(), |u| u.to_string())
}

pub fn format_points(points: &[Rational]) -> String {
    points.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}
