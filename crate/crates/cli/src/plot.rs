use nakarep_core::rational::{format_rational, int};
use nakarep_core::{Error, KupischProfile, Rational, Result, Space};

pub struct PlotOptions {
    pub samples: usize,
    pub from: Option<Rational>,
    pub to: Option<Rational>,
}

pub struct Row {
    pub t: Rational,
    pub k: Rational,
    pub kappa: Rational,
}

/// Default sampling window: one period for circles and periodic lines,
/// the domain itself when it is bounded.
fn window(profile: &KupischProfile) -> (Option<Rational>, Option<Rational>) {
    match profile.space() {
        _ if profile.is_periodic() => (Some(int(0)), Some(int(1))),
        Space::Circle => unreachable!("circle profiles are periodic"),
        Space::Line(d) => (d.lo().finite().cloned(), d.hi().finite().cloned()),
    }
}

/// Exact samples `t, K(t), K(t) - t` at `samples` equally spaced points of
/// the window `[from, to)`. Points outside the domain are skipped, and an
/// excluded left end moves the grid one step right.
pub fn export_plot(profile: &KupischProfile, opts: &PlotOptions) -> Result<Vec<Row>> {
    let (lo, hi) = window(profile);
    let from = opts
        .from
        .clone()
        .or(lo)
        .ok_or_else(|| Error::Domain("unbounded domain: pass --from".into()))?;
    let to = opts
        .to
        .clone()
        .or(hi)
        .ok_or_else(|| Error::Domain("unbounded domain: pass --to".into()))?;
    if from >= to {
        return Err(Error::Domain(format!(
            "empty sampling window [{}, {})",
            format_rational(&from),
            format_rational(&to)
        )));
    }
    let step = (&to - &from) / int(opts.samples as i64);
    let offset = usize::from(!profile.contains(&from));
    let mut rows = Vec::new();
    for i in offset..opts.samples + offset {
        let t = &from + &step * int(i as i64);
        if !profile.contains(&t) {
            continue;
        }
        let k = profile.successor_at(&t)?;
        let kappa = &k - &t;
        rows.push(Row { t, k, kappa });
    }
    Ok(rows)
}
