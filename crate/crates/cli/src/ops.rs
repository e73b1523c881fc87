use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nakarep_core::discrete::{
    algebra_dim_check, associated_kupisch, discrete_hom_dim, embed_module, extract_module, validate_series,
    DiscreteModule, KupischSeries,
};
use nakarep_core::format::{
    format_homeo, format_map, format_option, format_points, format_profile, parse_homeo, parse_interval, parse_map,
    parse_module, parse_profile, parse_series,
};
use nakarep_core::interval::{canonical_lift, contains, left_intersect, lift_offset, translate, EndpointKind};
use nakarep_core::kupisch::{
    component_of, components, kappa_at, next_separation, normalize_profile, orbit, push_forward, separation_points,
    validate_profile, verify_conjugacy,
};
use nakarep_core::rational::{format_rational, parse_rational};
use nakarep_core::repcat::{
    end_dim, hom_dim, is_brick, is_compatible, is_projective, map_module, morphism_analyze, projective_at,
    projective_cover, projective_resolution, DEFAULT_CAP,
};
use nakarep_core::{Domain, Error, Interval, KupischProfile, PiecewiseMap, Rational, ScalarMorphism, Space};
use serde_json::{json, Value};

use crate::plot::{export_plot, PlotOptions};
use crate::{Command, SpaceArg};

/// Successful output: human text, machine payload and exit code. A
/// nonzero code with a report means the input was read but is invalid.
pub struct Report {
    pub text: String,
    pub payload: Value,
    pub code: u8,
}

impl Report {
    fn ok(text: impl Into<String>, payload: Value) -> Self {
        let mut text = text.into();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Report { text, payload, code: 0 }
    }

    fn invalid(self) -> Self {
        Report { code: 1, ..self }
    }
}

#[derive(Debug)]
pub enum Failure {
    Validation {
        context: String,
        message: String,
    },
    Parse {
        context: String,
        message: String,
        line: Option<usize>,
    },
    Math {
        context: String,
        message: String,
    },
}

impl Failure {
    fn from_error(context: &str, e: Error) -> Self {
        let context = context.to_string();
        match e {
            Error::Parse { line, message } => Failure::Parse {
                context,
                message,
                line: Some(line),
            },
            Error::InvalidProfile(_)
            | Error::InvalidSeries(_)
            | Error::InvalidMap(_)
            | Error::NotBijective(_)
            | Error::InvalidModule(_) => Failure::Validation {
                context,
                message: e.to_string(),
            },
            _ => Failure::Math {
                context,
                message: e.to_string(),
            },
        }
    }

    fn parse(context: &str, message: impl Into<String>) -> Self {
        Failure::Parse {
            context: context.to_string(),
            message: message.into(),
            line: None,
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::Validation { .. } => 1,
            Failure::Parse { .. } => 2,
            Failure::Math { .. } => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Parse {
                context,
                message,
                line: Some(n),
            } => format!("{context}:{n}: {message}"),
            Failure::Parse { context, message, .. }
            | Failure::Validation { context, message }
            | Failure::Math { context, message } => format!("{context}: {message}"),
        }
    }

    pub fn payload(&self) -> Value {
        let kind = match self {
            Failure::Validation { .. } => "validation",
            Failure::Parse { .. } => "parse",
            Failure::Math { .. } => "math",
        };
        let line = match self {
            Failure::Parse { line, .. } => json!(line),
            _ => Value::Null,
        };
        json!({ "kind": kind, "message": self.message(), "line": line })
    }
}

type Outcome = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::parse(&path.display().to_string(), format!("cannot read: {e}")))
}

fn raw_profile(path: &Path) -> Result<KupischProfile, Failure> {
    let text = read(path)?;
    parse_profile(&text).map_err(|e| Failure::from_error(&path.display().to_string(), e))
}

fn profile(path: &Path) -> Result<KupischProfile, Failure> {
    let p = raw_profile(path)?;
    let violations = validate_profile(&p);
    if let Some(v) = violations.first() {
        return Err(Failure::Validation {
            context: path.display().to_string(),
            message: format!("invalid profile: {v}"),
        });
    }
    Ok(p)
}

fn homeo(path: &Path) -> Result<PiecewiseMap, Failure> {
    let text = read(path)?;
    parse_homeo(&text).map_err(|e| Failure::from_error(&path.display().to_string(), e))
}

fn map_file(path: &Path) -> Result<PiecewiseMap, Failure> {
    let text = read(path)?;
    parse_map(&text).map_err(|e| Failure::from_error(&path.display().to_string(), e))
}

fn arg_context(s: &str) -> String {
    format!("argument `{s}`")
}

fn interval(s: &str) -> Result<Interval, Failure> {
    parse_interval(s).map_err(|e| match e {
        Error::Parse { message, .. } => Failure::parse(&arg_context(s), message),
        other => Failure::from_error(&arg_context(s), other),
    })
}

fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::parse(&arg_context(s), "malformed rational"))
}

fn series(s: &str) -> Result<KupischSeries, Failure> {
    parse_series(s).map_err(|e| match e {
        Error::Parse { message, .. } => Failure::parse(&arg_context(s), message),
        other => Failure::from_error(&arg_context(s), other),
    })
}

fn module(s: &str) -> Result<DiscreteModule, Failure> {
    parse_module(s).map_err(|e| match e {
        Error::Parse { message, .. } => Failure::parse(&arg_context(s), message),
        other => Failure::from_error(&arg_context(s), other),
    })
}

fn space(s: SpaceArg) -> Space {
    match s {
        SpaceArg::Line => Space::Line(Domain::real_line()),
        SpaceArg::Circle => Space::Circle,
    }
}

/// Resolution cap: the flag, then `NAKAREP_CAP`, then the library default.
fn cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("NAKAREP_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::parse("NAKAREP_CAP", format!("`{v}` is not a natural number"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn iv(u: &Interval) -> Value {
    Value::String(u.to_string())
}

fn opt_iv(u: &Option<Interval>) -> Value {
    u.as_ref().map_or(Value::Null, iv)
}

fn pieces_json(map: &PiecewiseMap) -> Value {
    let pieces: Vec<Value> = (0..map.pieces().len())
        .map(|i| {
            let s = map.span(i);
            json!({
                "span": format!(
                    "{}{}, {}{}",
                    if s.start_incl { '[' } else { '(' },
                    s.start,
                    s.end,
                    if s.end_incl { ']' } else { ')' }
                ),
                "formula": map.pieces()[i].formula().to_string(),
            })
        })
        .collect();
    Value::Array(pieces)
}

fn profile_json(p: &KupischProfile) -> Value {
    json!({
        "space": p.space().to_string(),
        "periodic": p.is_periodic(),
        "pieces": pieces_json(p.successor()),
    })
}

fn map_json(f: &PiecewiseMap) -> Value {
    json!({
        "domain": if f.is_periodic() { "periodic".to_string() } else { f.domain().to_string() },
        "periodic": f.is_periodic(),
        "pieces": pieces_json(f),
    })
}

fn yes_no(b: bool) -> Report {
    Report::ok(b.to_string(), json!({ "value": b }))
}

fn count(n: usize) -> Report {
    Report::ok(n.to_string(), json!({ "value": n }))
}

pub fn run(command: Command) -> Outcome {
    use Command::*;
    match command {
        Validate { profile: path } => {
            let p = raw_profile(&path)?;
            let violations = validate_profile(&p);
            let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            let payload = json!({ "valid": list.is_empty(), "violations": list });
            if list.is_empty() {
                Ok(Report::ok("valid", payload))
            } else {
                Ok(Report::ok(list.join("\n"), payload).invalid())
            }
        }
        Info { profile: path, at } => {
            let p = profile(&path)?;
            let k = p.successor();
            let mut text = String::new();
            let _ = writeln!(text, "space: {}", p.space());
            let _ = writeln!(text, "periodic: {}", p.is_periodic());
            let _ = writeln!(text, "pieces: {}", k.pieces().len());
            let _ = writeln!(text, "breakpoints: {}", format_points(&k.breakpoints()));
            let mut payload = profile_json(&p);
            payload["breakpoints"] = Value::Array(k.breakpoints().iter().map(q).collect());
            if let Some(at) = at {
                let t = rational(&at)?;
                let kappa = kappa_at(&p, &t).map_err(|e| Failure::from_error(&arg_context(&at), e))?;
                let kt = &kappa + &t;
                let _ = writeln!(text, "K({}) = {}", format_rational(&t), format_rational(&kt));
                let _ = writeln!(text, "kappa({}) = {}", format_rational(&t), format_rational(&kappa));
                payload["at"] = json!({ "t": q(&t), "K": q(&kt), "kappa": q(&kappa) });
            }
            Ok(Report::ok(text, payload))
        }
        Orbit {
            profile: path,
            t,
            steps,
        } => {
            let p = profile(&path)?;
            let x = rational(&t)?;
            let pts = orbit(&p, &x, steps).map_err(|e| Failure::from_error(&arg_context(&t), e))?;
            Ok(Report::ok(
                format_points(&pts),
                json!({ "points": pts.iter().map(q).collect::<Vec<_>>() }),
            ))
        }
        Seps { profile: path } => {
            let p = profile(&path)?;
            let s = separation_points(&p);
            let text = if s.is_empty() {
                "none".to_string()
            } else {
                format_points(&s.points)
            };
            Ok(Report::ok(
                text,
                json!({ "points": s.points.iter().map(q).collect::<Vec<_>>(), "periodic": s.periodic }),
            ))
        }
        NextSep { profile: path, c } => {
            let p = profile(&path)?;
            let x = rational(&c)?;
            let b = next_separation(&p, &x).map_err(|e| Failure::from_error(&arg_context(&c), e))?;
            Ok(Report::ok(b.to_string(), json!({ "value": b.to_string() })))
        }
        Components { profile: path } => {
            let p = profile(&path)?;
            let cs = components(&p);
            let text = cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
            let list: Vec<Value> = cs
                .iter()
                .map(|c| {
                    json!({
                        "index": c.index,
                        "left": c.left.to_string(),
                        "left_closed": c.left_closed,
                        "right": c.right.to_string(),
                        "shape": c.shape.to_string(),
                    })
                })
                .collect();
            Ok(Report::ok(text, json!({ "components": list })))
        }
        Component {
            profile: path,
            interval: s,
        } => {
            let p = profile(&path)?;
            let u = interval(&s)?;
            let c = component_of(&p, &u).map_err(|e| Failure::from_error(&arg_context(&s), e))?;
            let text = if c.shift == 0 {
                format!("component {}", c.index)
            } else {
                format!("component {} shifted by {}", c.index, c.shift)
            };
            Ok(Report::ok(text, json!({ "index": c.index, "shift": c.shift })))
        }
        Pushforward {
            profile: path,
            homeo: h,
        } => {
            let p = profile(&path)?;
            let f = homeo(&h)?;
            let out = push_forward(&p, &f).map_err(|e| Failure::from_error(&h.display().to_string(), e))?;
            Ok(Report::ok(
                format_profile(&out),
                json!({ "profile": profile_json(&out) }),
            ))
        }
        Conjugate {
            homeo: h,
            source,
            target,
        } => {
            let f = homeo(&h)?;
            let a = profile(&source)?;
            let b = profile(&target)?;
            let ok = verify_conjugacy(&f, &a, &b).map_err(|e| Failure::from_error(&h.display().to_string(), e))?;
            Ok(yes_no(ok))
        }
        Normalize { profile: path } => {
            let p = profile(&path)?;
            let (out, f) = normalize_profile(&p).map_err(|e| Failure::from_error(&path.display().to_string(), e))?;
            let text = format!("{}\n{}", format_profile(&out), format_homeo(&f));
            Ok(Report::ok(
                text,
                json!({ "profile": profile_json(&out), "homeo": map_json(&f) }),
            ))
        }
        Compat {
            profile: path,
            interval: s,
        } => {
            let p = profile(&path)?;
            let u = interval(&s)?;
            let ok = is_compatible(&p, &u).map_err(|e| Failure::from_error(&arg_context(&s), e))?;
            Ok(yes_no(ok))
        }
        Projective { profile: path, t, open } => {
            let p = profile(&path)?;
            let x = rational(&t)?;
            let kind = if open { EndpointKind::Open } else { EndpointKind::Closed };
            let u = projective_at(&p, &x, kind).map_err(|e| Failure::from_error(&arg_context(&t), e))?;
            Ok(Report::ok(u.to_string(), json!({ "value": iv(&u) })))
        }
        IsProjective {
            profile: path,
            interval: s,
        } => {
            let p = profile(&path)?;
            let u = interval(&s)?;
            let ok = is_projective(&p, &u).map_err(|e| Failure::from_error(&arg_context(&s), e))?;
            Ok(yes_no(ok))
        }
        Hom {
            space: sp,
            source,
            target,
        } => {
            let a = interval(&source)?;
            let b = interval(&target)?;
            Ok(count(hom_dim(&space(sp), &a, &b)))
        }
        End { space: sp, interval: s } => Ok(count(end_dim(&space(sp), &interval(&s)?))),
        Brick { space: sp, interval: s } => Ok(yes_no(is_brick(&space(sp), &interval(&s)?))),
        Morphism {
            source,
            target,
            shift,
            coeff,
        } => {
            let a = interval(&source)?;
            let b = interval(&target)?;
            let c = rational(&coeff)?;
            let m = ScalarMorphism::new(a, b, shift, c).map_err(|e| Failure::from_error("morphism", e))?;
            let r = morphism_analyze(&m).map_err(|e| Failure::from_error("morphism", e))?;
            Ok(Report::ok(
                r.to_string(),
                json!({ "image": opt_iv(&r.image), "kernel": opt_iv(&r.kernel), "cokernel": opt_iv(&r.cokernel) }),
            ))
        }
        Cover {
            profile: path,
            interval: s,
        } => {
            let p = profile(&path)?;
            let u = interval(&s)?;
            let (c, k) = projective_cover(&p, &u).map_err(|e| Failure::from_error(&arg_context(&s), e))?;
            Ok(Report::ok(
                format!("cover: {c}\nsyzygy: {}", format_option(&k)),
                json!({ "cover": iv(&c), "syzygy": opt_iv(&k) }),
            ))
        }
        Resolve {
            profile: path,
            interval: s,
            cap: flag,
        } => {
            let p = profile(&path)?;
            let u = interval(&s)?;
            let cap = cap(flag)?;
            let r = projective_resolution(&p, &u, cap).map_err(|e| Failure::from_error(&arg_context(&s), e))?;
            let mut text = String::new();
            for (i, c) in r.covers.iter().enumerate() {
                let _ = writeln!(text, "cover {i}: {c}");
                if let Some(k) = r.syzygies.get(i) {
                    let _ = writeln!(text, "syzygy {}: {k}", i + 1);
                }
            }
            let _ = writeln!(text, "verdict: {}", r.verdict);
            Ok(Report::ok(
                text,
                json!({
                    "covers": r.covers.iter().map(iv).collect::<Vec<_>>(),
                    "syzygies": r.syzygies.iter().map(iv).collect::<Vec<_>>(),
                    "verdict": r.verdict.to_string(),
                    "cap": cap,
                }),
            ))
        }
        Transport { homeo: h, interval: s } => {
            let f = homeo(&h)?;
            let u = interval(&s)?;
            let v = map_module(&f, &u).map_err(|e| Failure::from_error(&arg_context(&s), e))?;
            Ok(Report::ok(v.to_string(), json!({ "value": iv(&v) })))
        }
        Eval { map: path, t } => {
            let f = map_file(&path)?;
            let x = rational(&t)?;
            let y = f.eval(&x).map_err(|e| Failure::from_error(&arg_context(&t), e))?;
            Ok(Report::ok(format_rational(&y), json!({ "value": q(&y) })))
        }
        LeftLimit { map: path, t } => {
            let f = map_file(&path)?;
            let x = rational(&t)?;
            let y = f.left_limit(&x).map_err(|e| Failure::from_error(&arg_context(&t), e))?;
            Ok(Report::ok(format_rational(&y), json!({ "value": q(&y) })))
        }
        Compose { f, g } => {
            let a = map_file(&f)?;
            let b = map_file(&g)?;
            let c = a.compose(&b).map_err(|e| Failure::from_error("compose", e))?;
            Ok(Report::ok(format_map(&c), json!({ "map": map_json(&c) })))
        }
        Invert { homeo: h } => {
            let f = homeo(&h)?;
            let g = f
                .invert()
                .map_err(|e| Failure::from_error(&h.display().to_string(), e))?;
            Ok(Report::ok(format_homeo(&g), json!({ "map": map_json(&g) })))
        }
        Equals { f, g } => Ok(yes_no(map_file(&f)?.equals(&map_file(&g)?))),
        Intersect { u, v } => {
            let w = left_intersect(&interval(&u)?, &interval(&v)?);
            Ok(Report::ok(format_option(&w), json!({ "value": opt_iv(&w) })))
        }
        Translate { interval: s, by } => {
            let w = translate(&interval(&s)?, by);
            Ok(Report::ok(w.to_string(), json!({ "value": iv(&w) })))
        }
        Contains { u, v } => Ok(yes_no(contains(&interval(&u)?, &interval(&v)?))),
        Lift { interval: s } => {
            let u = interval(&s)?;
            let l = canonical_lift(&u);
            let k = lift_offset(&u);
            Ok(Report::ok(
                format!("{} (offset {k})", l.interval()),
                json!({ "value": iv(l.interval()), "offset": k }),
            ))
        }
        SeriesCheck { series: s } => {
            let ser = series(&s)?;
            let list: Vec<String> = validate_series(&ser).iter().map(|v| v.to_string()).collect();
            let payload = json!({ "valid": list.is_empty(), "violations": list });
            if list.is_empty() {
                Ok(Report::ok("valid", payload))
            } else {
                Ok(Report::ok(list.join("\n"), payload).invalid())
            }
        }
        SeriesProfile { series: s } => {
            let ser = series(&s)?;
            let p = associated_kupisch(&ser).map_err(|e| Failure::from_error(&arg_context(&s), e))?;
            Ok(Report::ok(format_profile(&p), json!({ "profile": profile_json(&p) })))
        }
        Embed { series: s, module: m } => {
            let ser = series(&s)?;
            let md = module(&m)?;
            let u = embed_module(&ser, &md).map_err(|e| Failure::from_error(&arg_context(&m), e))?;
            Ok(Report::ok(u.to_string(), json!({ "value": iv(&u) })))
        }
        Extract { series: s, interval: i } => {
            let ser = series(&s)?;
            let u = interval(&i)?;
            let md = extract_module(&ser, &u).map_err(|e| Failure::from_error(&arg_context(&i), e))?;
            Ok(Report::ok(
                md.to_string(),
                json!({ "top": md.top, "length": md.length }),
            ))
        }
        Dhom {
            series: s,
            source,
            target,
        } => {
            let ser = series(&s)?;
            let a = module(&source)?;
            let b = module(&target)?;
            let n = discrete_hom_dim(&ser, &a, &b).map_err(|e| Failure::from_error("dhom", e))?;
            Ok(count(n))
        }
        Algdim { series: s } => {
            let ser = series(&s)?;
            let n = algebra_dim_check(&ser).map_err(|e| Failure::from_error(&arg_context(&s), e))?;
            Ok(count(n))
        }
        ExportPlot {
            profile: path,
            samples,
            digits,
            from,
            to,
        } => {
            let p = profile(&path)?;
            let opts = PlotOptions {
                samples: samples as usize,
                from: from.as_deref().map(rational).transpose()?,
                to: to.as_deref().map(rational).transpose()?,
            };
            let rows = export_plot(&p, &opts).map_err(|e| Failure::from_error(&path.display().to_string(), e))?;
            let mut text = String::from("t,K,kappa\n");
            for r in &rows {
                let _ = writeln!(
                    text,
                    "{},{},{}",
                    nakarep_core::rational::to_decimal(&r.t, digits),
                    nakarep_core::rational::to_decimal(&r.k, digits),
                    nakarep_core::rational::to_decimal(&r.kappa, digits)
                );
            }
            let list: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "t": q(&r.t), "K": q(&r.k), "kappa": q(&r.kappa) }))
                .collect();
            Ok(Report::ok(text, json!({ "rows": list })))
        }
    }
}
