#![allow(dead_code)]

use nakarep_core::discrete::{validate_series, KupischSeries};
use nakarep_core::kupisch::{separation_points, validate_profile};
use nakarep_core::rational::{int, rat};
use nakarep_core::{Bound, Domain, FracLinear, Interval, KupischProfile, PiecewiseMap, Rational};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fin(n: i64, d: i64) -> Bound {
    Bound::Finite(rat(n, d))
}

/// A multiple of `1/den` in `[lo, hi)`.
pub fn grid(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo * den..hi * den), den)
}

/// Random interval on the `1/den` grid with left end in `[lo, hi)` and
/// length at most `max_len`.
pub fn random_interval(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64, max_len: i64) -> Interval {
    loop {
        let a = grid(rng, lo, hi, den);
        let len = rat(rng.gen_range(0..=max_len * den), den);
        let lk = if rng.gen_bool(0.5) {
            nakarep_core::EndpointKind::Closed
        } else {
            nakarep_core::EndpointKind::Open
        };
        let hk = if rng.gen_bool(0.5) {
            nakarep_core::EndpointKind::Closed
        } else {
            nakarep_core::EndpointKind::Open
        };
        if let Ok(u) = Interval::new(a.clone(), lk, &a + len, hk) {
            return u;
        }
    }
}

/// A random nonempty subinterval of `[t, K(t)]` starting at `t`, hence
/// compatible with the profile.
pub fn random_compatible(rng: &mut ChaCha8Rng, profile: &KupischProfile, t: &Rational) -> Interval {
    let k = profile.successor_at(t).unwrap();
    let steps = 8;
    loop {
        let j = rng.gen_range(0..=steps);
        let hi = t + (&k - t) * rat(j, steps);
        let lk = if rng.gen_bool(0.5) {
            nakarep_core::EndpointKind::Closed
        } else {
            nakarep_core::EndpointKind::Open
        };
        let hk = if rng.gen_bool(0.5) {
            nakarep_core::EndpointKind::Closed
        } else {
            nakarep_core::EndpointKind::Open
        };
        if let Ok(u) = Interval::new(t.clone(), lk, hi, hk) {
            return u;
        }
    }
}

/// Endpoints of the given intervals, midpoints between consecutive ones,
/// and a point beyond each extreme.
pub fn sample_points(intervals: &[&Interval]) -> Vec<Rational> {
    let mut ends: Vec<Rational> = intervals
        .iter()
        .flat_map(|u| [u.lo().clone(), u.hi().clone()])
        .collect();
    ends.sort();
    ends.dedup();
    let mut pts = vec![&ends[0] - Rational::one()];
    for w in ends.windows(2) {
        pts.push(w[0].clone());
        pts.push((&w[0] + &w[1]) / int(2));
    }
    pts.push(ends.last().unwrap().clone());
    pts.push(ends.last().unwrap() + Rational::one());
    pts
}

/// Basis of the null space of a rational matrix with `cols` columns.
pub fn null_space(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(&pivot) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); cols];
            v[fc] = Rational::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[ri][fc].clone();
            }
            v
        })
        .collect()
}

/// Hom between interval modules restricted to finitely many sample points
/// of the line, as the solution space of the commutativity equations of
/// the linear quiver through those points. Returns the sample points, the
/// index of each unknown, and a null space basis.
pub struct LineHom {
    pub points: Vec<Rational>,
    pub unknown: Vec<Option<usize>>,
    pub basis: Vec<Vec<Rational>>,
}

pub fn line_hom_oracle(source: &Interval, target: &Interval) -> LineHom {
    let points = sample_points(&[source, target]);
    let mut unknown = Vec::new();
    let mut count = 0;
    for x in &points {
        if source.contains_point(x) && target.contains_point(x) {
            unknown.push(Some(count));
            count += 1;
        } else {
            unknown.push(None);
        }
    }
    let mut rows = Vec::new();
    for i in 0..points.len() - 1 {
        let (x, y) = (&points[i], &points[i + 1]);
        let mut row = vec![Rational::zero(); count];
        // φ_y ∘ V(x→y) = U(x→y) ∘ φ_x
        if source.contains_point(x) && source.contains_point(y) {
            if let Some(k) = unknown[i + 1] {
                row[k] += Rational::one();
            }
        }
        if target.contains_point(x) && target.contains_point(y) {
            if let Some(k) = unknown[i] {
                row[k] -= Rational::one();
            }
        }
        rows.push(row);
    }
    let basis = if count == 0 {
        Vec::new()
    } else {
        null_space(rows, count)
    };
    LineHom { points, unknown, basis }
}

/// Points of `u` lying over the circle point `p`.
fn lifts_over(u: &Interval, p: &Rational) -> Vec<Rational> {
    let lo = nakarep_core::rational::ceil_i64(&(u.lo() - p));
    let hi = nakarep_core::rational::floor_i64(&(u.hi() - p));
    (lo..=hi).map(|k| p + int(k)).filter(|x| u.contains_point(x)).collect()
}

/// Hom between string modules restricted to finitely many circle points,
/// computed on the cyclic quiver through them.
pub fn circle_hom_oracle(source: &Interval, target: &Interval) -> usize {
    let frac = |x: &Rational| x - int(nakarep_core::rational::floor_i64(x));
    let mut res: Vec<Rational> = [source.lo(), source.hi(), target.lo(), target.hi()]
        .iter()
        .map(|x| frac(x))
        .collect();
    res.sort();
    res.dedup();
    let mut pts = Vec::new();
    for i in 0..res.len() {
        pts.push(res[i].clone());
        let next = if i + 1 < res.len() {
            res[i + 1].clone()
        } else {
            &res[0] + Rational::one()
        };
        pts.push(frac(&((&res[i] + &next) / int(2))));
    }
    pts.sort();
    pts.dedup();
    let m = pts.len();
    let vs: Vec<Vec<Rational>> = pts.iter().map(|p| lifts_over(source, p)).collect();
    let us: Vec<Vec<Rational>> = pts.iter().map(|p| lifts_over(target, p)).collect();
    // unknown (i, y, x): coefficient of b_y in φ_i(b_x)
    let mut index = std::collections::HashMap::new();
    for i in 0..m {
        for y in &us[i] {
            for x in &vs[i] {
                let k = index.len();
                index.insert((i, y.clone(), x.clone()), k);
            }
        }
    }
    let count = index.len();
    if count == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    for i in 0..m {
        let j = (i + 1) % m;
        let gap = if j == 0 {
            &pts[0] + Rational::one() - &pts[i]
        } else {
            &pts[j] - &pts[i]
        };
        for x in &vs[i] {
            for y2 in &us[j] {
                let mut row = vec![Rational::zero(); count];
                let xg = x + &gap;
                if source.contains_point(&xg) {
                    if let Some(&k) = index.get(&(j, y2.clone(), xg)) {
                        row[k] += Rational::one();
                    }
                }
                let y = y2 - &gap;
                if target.contains_point(&y) {
                    if let Some(&k) = index.get(&(i, y, x.clone())) {
                        row[k] -= Rational::one();
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    null_space(rows, count).len()
}

/// Random valid Kupisch series with `n <= max_n` and entries `<= max_l`.
pub fn random_series(rng: &mut ChaCha8Rng, max_n: usize, max_l: usize) -> KupischSeries {
    loop {
        let n = rng.gen_range(1..=max_n);
        let lengths: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_l)).collect();
        let s = KupischSeries::new(lengths).unwrap();
        if validate_series(&s).is_empty() {
            return s;
        }
    }
}

/// Random piecewise-affine pieces on `starts` (the last piece ending at
/// `end`), non-decreasing with `K > t`. With `separate`, some pieces are
/// chosen to meet the diagonal at their right end.
fn affine_pieces(
    rng: &mut ChaCha8Rng,
    starts: &[Rational],
    end: &Bound,
    den: i64,
    separate: bool,
) -> Vec<(Bound, FracLinear)> {
    let slopes = [rat(0, 1), rat(1, 2), rat(1, 1), rat(3, 2), rat(2, 1)];
    let extras = [rat(0, 1), rat(1, 4 * den), rat(1, den), rat(1, 2), rat(1, 1)];
    let mut out = Vec::new();
    let mut prev: Option<Rational> = None;
    for (i, s) in starts.iter().enumerate() {
        let e = starts
            .get(i + 1)
            .map(|x| Bound::Finite(x.clone()))
            .unwrap_or_else(|| end.clone());
        let m = match e {
            Bound::Finite(_) => slopes.choose(rng).unwrap().clone(),
            _ => slopes[2..].choose(rng).unwrap().clone(),
        };
        let mut lower = s + rat(1, 4 * den);
        if let Some(p) = &prev {
            if *p > lower {
                lower = p.clone();
            }
        }
        let v = match &e {
            Bound::Finite(e) => {
                let touch = e - &m * (e - s);
                if separate && m > Rational::zero() && m < Rational::one() && touch >= lower && rng.gen_bool(0.6) {
                    touch
                } else {
                    let base = if touch > lower { touch } else { lower };
                    base + extras.choose(rng).unwrap().clone()
                }
            }
            _ => lower + extras.choose(rng).unwrap().clone(),
        };
        if let Bound::Finite(e) = &e {
            prev = Some(&v + &m * (e - s));
        }
        out.push((Bound::Finite(s.clone()), FracLinear::affine(m.clone(), &v - &m * s)));
    }
    out
}

fn random_starts(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64, max_pieces: usize) -> Vec<Rational> {
    let mut cand: Vec<i64> = ((lo * den + 1)..(hi * den)).collect();
    cand.shuffle(rng);
    let k = rng.gen_range(0..max_pieces.min(cand.len() + 1));
    let mut starts: Vec<Rational> = cand[..k].iter().map(|&j| rat(j, den)).collect();
    starts.push(int(lo));
    starts.sort();
    starts
}

/// Random valid piecewise-affine circle profile; with `min_seps`, one with
/// at least that many separation points per period.
pub fn random_circle_profile(rng: &mut ChaCha8Rng, min_seps: usize) -> KupischProfile {
    loop {
        let den = *[2i64, 3, 4, 6].choose(rng).unwrap();
        let starts = random_starts(rng, 0, 1, den, 4);
        let pieces = affine_pieces(rng, &starts, &Bound::Finite(int(1)), den, min_seps > 0);
        let Ok(k) = PiecewiseMap::periodic(pieces) else {
            continue;
        };
        let p = KupischProfile::circle(k).unwrap();
        if validate_profile(&p).is_empty() && separation_points(&p).points.len() >= min_seps {
            return p;
        }
    }
}

/// Random valid piecewise-affine profile on `[0, +inf)`.
pub fn random_half_line_profile(rng: &mut ChaCha8Rng, separate: bool) -> KupischProfile {
    loop {
        let den = *[2i64, 3, 4].choose(rng).unwrap();
        let starts = random_starts(rng, 0, 3, den, 5);
        let pieces = affine_pieces(rng, &starts, &Bound::PosInf, den, separate);
        let Ok(k) = PiecewiseMap::new(Domain::half_line(int(0)), pieces, false) else {
            continue;
        };
        let p = KupischProfile::line(k).unwrap();
        if validate_profile(&p).is_empty() {
            return p;
        }
    }
}

/// Piecewise-affine increasing map through the given nodes, continued with
/// slope `tail` past the last node when the domain is unbounded.
fn through_nodes(domain: Domain, xs: &[Rational], ys: &[Rational], tail: Option<Rational>) -> PiecewiseMap {
    let mut pieces = Vec::new();
    for i in 0..xs.len() {
        let m = if i + 1 < xs.len() {
            (&ys[i + 1] - &ys[i]) / (&xs[i + 1] - &xs[i])
        } else {
            tail.clone().expect("unbounded tail slope")
        };
        pieces.push((
            Bound::Finite(xs[i].clone()),
            FracLinear::affine(m.clone(), &ys[i] - &m * &xs[i]),
        ));
    }
    PiecewiseMap::new(domain, pieces, false).unwrap()
}

/// Random degree-one piecewise-affine circle homeomorphism (as a lift).
pub fn random_circle_homeo(rng: &mut ChaCha8Rng) -> PiecewiseMap {
    let den = *[2i64, 3, 4, 5].choose(rng).unwrap();
    let xs = random_starts(rng, 0, 1, den, 4);
    let weights: Vec<i64> = xs.iter().map(|_| rng.gen_range(1..=3)).collect();
    let total: i64 = weights.iter().sum();
    let c = grid(rng, -1, 1, 4);
    let mut ys = vec![c];
    for w in &weights[..weights.len() - 1] {
        let next = ys.last().unwrap() + rat(*w, total);
        ys.push(next);
    }
    let mut pieces = Vec::new();
    for i in 0..xs.len() {
        let (x1, y1) = if i + 1 < xs.len() {
            (xs[i + 1].clone(), ys[i + 1].clone())
        } else {
            (int(1), &ys[0] + int(1))
        };
        let m = (&y1 - &ys[i]) / (&x1 - &xs[i]);
        pieces.push((
            Bound::Finite(xs[i].clone()),
            FracLinear::affine(m.clone(), &ys[i] - &m * &xs[i]),
        ));
    }
    PiecewiseMap::periodic(pieces).unwrap()
}

/// Random piecewise-affine homeomorphism of `[0, +inf)`.
pub fn random_half_line_homeo(rng: &mut ChaCha8Rng) -> PiecewiseMap {
    let den = *[2i64, 3, 4].choose(rng).unwrap();
    let xs = random_starts(rng, 0, 4, den, 4);
    let mut ys = vec![int(0)];
    for i in 1..xs.len() {
        let m = rat(rng.gen_range(1..=8), 4);
        let next = ys.last().unwrap() + m * (&xs[i] - &xs[i - 1]);
        ys.push(next);
    }
    let tail = rat(rng.gen_range(1..=8), 4);
    through_nodes(Domain::half_line(int(0)), &xs, &ys, Some(tail))
}

/// The circle profile with constant pieces `K = 1/(n-1) + 1` on
/// `[1/(n+1), 1/n)` for `n = 4..=12`, `K = 3/2` on `[1/4, 1)`, and the filler
/// `K = t + 1/2` on `[0, 1/13)`.
pub fn findim_profile() -> KupischProfile {
    let mut pieces = vec![(fin(0, 1), FracLinear::translation(rat(1, 2)))];
    for n in (4..=12).rev() {
        pieces.push((fin(1, n + 1), FracLinear::constant(rat(1, n - 1) + int(1))));
    }
    pieces.push((fin(1, 4), FracLinear::constant(rat(3, 2))));
    KupischProfile::circle(PiecewiseMap::periodic(pieces).unwrap()).unwrap()
}

/// `K(t) = t/2 + (k+1)/(2n)` on `[k/n, (k+1)/n)`.
pub fn kappa_n(n: i64) -> KupischProfile {
    let pieces = (0..n)
        .map(|k| (fin(k, n), FracLinear::affine(rat(1, 2), rat(k + 1, 2 * n))))
        .collect();
    KupischProfile::circle(PiecewiseMap::periodic(pieces).unwrap()).unwrap()
}

pub fn circle_shift(c: Rational) -> KupischProfile {
    KupischProfile::circle(PiecewiseMap::periodic(vec![(fin(0, 1), FracLinear::translation(c))]).unwrap()).unwrap()
}
