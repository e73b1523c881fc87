//! Finite-dimensional Nakayama algebras given by their Kupisch series, and
//! their embedding into representations of the circle.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::interval::{canonical_lift, EndpointKind, Interval};
use crate::kupisch::{KupischProfile, Space};
use crate::pwmap::{FracLinear, PiecewiseMap};
use crate::rational::{int, rat, Bound};
use crate::repcat::hom_dim;

/// Lengths `(l_0, ..., l_{n-1})` of the indecomposable projectives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KupischSeries {
    lengths: Vec<usize>,
}

impl KupischSeries {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidSeries("a series needs at least one entry".into()));
        }
        Ok(KupischSeries { lengths })
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i % self.n()]
    }

    /// The quiver is a line rather than a cycle.
    pub fn is_linear(&self) -> bool {
        self.lengths[self.n() - 1] == 1
    }

    /// The indecomposable projective with top `i`.
    pub fn projective(&self, i: usize) -> DiscreteModule {
        DiscreteModule {
            top: i,
            length: self.length(i),
        }
    }

    /// Every indecomposable module, ordered by top then length.
    pub fn modules(&self) -> Vec<DiscreteModule> {
        (0..self.n())
            .flat_map(|top| (1..=self.length(top)).map(move |length| DiscreteModule { top, length }))
            .collect()
    }
}

impl fmt::Display for KupischSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesViolation {
    ZeroLength { index: usize },
    Drop { index: usize, next: usize },
}

impl fmt::Display for SeriesViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesViolation::ZeroLength { index } => write!(f, "l_{index} = 0"),
            SeriesViolation::Drop { index, next } => write!(f, "l_{next} < l_{index} - 1"),
        }
    }
}

/// Requires `l_i >= 1` and `l_{i+1} >= l_i - 1` with indices mod `n`.
pub fn validate_series(series: &KupischSeries) -> Vec<SeriesViolation> {
    let n = series.n();
    let mut out = Vec::new();
    for i in 0..n {
        if series.lengths[i] == 0 {
            out.push(SeriesViolation::ZeroLength { index: i });
        }
    }
    for i in 0..n {
        let next = (i + 1) % n;
        if series.lengths[next] + 1 < series.lengths[i] {
            out.push(SeriesViolation::Drop { index: i, next });
        }
    }
    out
}

fn require_valid(series: &KupischSeries) -> Result<()> {
    let v = validate_series(series);
    if v.is_empty() {
        Ok(())
    } else {
        let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        Err(Error::InvalidSeries(format!("{series}: {}", msgs.join("; "))))
    }
}

/// A string module given by its top vertex and its length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscreteModule {
    pub top: usize,
    pub length: usize,
}

impl fmt::Display for DiscreteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.top, self.length)
    }
}

fn require_module(series: &KupischSeries, m: &DiscreteModule) -> Result<()> {
    if m.top >= series.n() || m.length == 0 || m.length > series.length(m.top) {
        return Err(Error::InvalidModule(format!(
            "module {m} does not exist over the series {series}"
        )));
    }
    Ok(())
}

/// Circle profile with `K(t) = (i + l_i)/n` on `[i/n, (i+1)/n)`.
pub fn associated_kupisch(series: &KupischSeries) -> Result<KupischProfile> {
    require_valid(series)?;
    let n = series.n() as i64;
    let pieces = (0..series.n())
        .map(|i| {
            let i64_i = i as i64;
            (
                Bound::Finite(rat(i64_i, n)),
                FracLinear::constant(rat(i64_i + series.lengths[i] as i64, n)),
            )
        })
        .collect();
    KupischProfile::circle(PiecewiseMap::periodic(pieces)?)
}

/// `(a/n, (a+l)/n]` for the module with top `a` and length `l`.
pub fn embed_module(series: &KupischSeries, m: &DiscreteModule) -> Result<Interval> {
    require_valid(series)?;
    require_module(series, m)?;
    let n = series.n() as i64;
    let a = m.top as i64;
    Ok(Interval::left_open(rat(a, n), rat(a + m.length as i64, n)))
}

pub fn extract_module(series: &KupischSeries, u: &Interval) -> Result<DiscreteModule> {
    require_valid(series)?;
    let lift = canonical_lift(u).into_interval();
    let n = int(series.n() as i64);
    let a = lift.lo() * &n;
    let b = lift.hi() * &n;
    if !a.is_integer() || !b.is_integer() {
        return Err(Error::NotGridAligned(format!(
            "{u} has endpoints off the 1/{} grid",
            series.n()
        )));
    }
    if lift.lo_kind() != EndpointKind::Open || lift.hi_kind() != EndpointKind::Closed || b <= a {
        return Err(Error::IncompatibleModule(format!("{u} is not of the form (a/n, b/n]")));
    }
    let top = a.to_integer().try_into().expect("canonical lift lies in [0, 1)");
    let length: usize = (b - a)
        .to_integer()
        .try_into()
        .map_err(|_| Error::IncompatibleModule(format!("{u} is too long")))?;
    let m = DiscreteModule { top, length };
    if length > series.length(top) {
        return Err(Error::IncompatibleModule(format!(
            "{u} is longer than the projective with top {top}"
        )));
    }
    Ok(m)
}

/// Rank of an integer matrix, by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i64>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let (x, y) = (rows[r][c], rows[i][c]);
            let pivot = rows[r].clone();
            let mut g = 0i64;
            for (v, pv) in rows[i].iter_mut().zip(&pivot) {
                *v = *v * x - pv * y;
                g = g.gcd(v);
            }
            if g > 1 {
                for v in rows[i].iter_mut() {
                    *v /= g;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim Hom(m1, m2)` over the cyclic quiver with `n` vertices, computed
/// directly from the string modules' bases.
///
/// Basis vector `j` of a module with top `a` sits at vertex `a + j mod n`,
/// and each arrow sends basis vector `j` to `j + 1`.
pub fn discrete_hom_dim(series: &KupischSeries, m1: &DiscreteModule, m2: &DiscreteModule) -> Result<usize> {
    require_module(series, m1)?;
    require_module(series, m2)?;
    let n = series.n();
    let vertex1 = |j: usize| (m1.top + j) % n;
    let vertex2 = |j: usize| (m2.top + j) % n;
    // unknown x[j1][j2]: coefficient of basis vector j2 in the image of j1
    let mut index = vec![vec![None; m2.length]; m1.length];
    let mut count = 0;
    for (j1, row) in index.iter_mut().enumerate() {
        for (j2, slot) in row.iter_mut().enumerate() {
            if vertex1(j1) == vertex2(j2) {
                *slot = Some(count);
                count += 1;
            }
        }
    }
    // commutation with the arrow out of each source vector: the coefficient
    // of j2 in φ(α e_j1) equals that of j2 - 1 in φ(e_j1)
    let mut rows = Vec::new();
    for j1 in 0..m1.length {
        for j2 in 0..m2.length {
            if vertex2(j2) != (vertex1(j1) + 1) % n {
                continue;
            }
            let mut row = vec![0i64; count];
            if j1 + 1 < m1.length {
                if let Some(k) = index[j1 + 1][j2] {
                    row[k] += 1;
                }
            }
            if j2 >= 1 {
                if let Some(k) = index[j1][j2 - 1] {
                    row[k] -= 1;
                }
            }
            if row.iter().any(|&v| v != 0) {
                rows.push(row);
            }
        }
    }
    Ok(count - rank(rows, count))
}

/// `Σ_i Σ_j dim Hom(P_i, P_j)` computed on the embedded strings; equals
/// `Σ l_i`, the dimension of the algebra.
pub fn algebra_dim_check(series: &KupischSeries) -> Result<usize> {
    require_valid(series)?;
    let projectives: Vec<Interval> = (0..series.n())
        .map(|i| embed_module(series, &series.projective(i)))
        .collect::<Result<_>>()?;
    Ok(projectives
        .iter()
        .flat_map(|p| projectives.iter().map(move |q| hom_dim(&Space::Circle, p, q)))
        .sum())
}
