//! Finite metric and dissimilarity spaces.
//!
//! A [`DissimilarityMatrix`] stores a symmetric matrix `d` with
//! `d[i][i] <= d[i][j]`; the triangle inequality is recorded but never
//! required. Point clouds are converted to matrices with
//! [`PointCloud::to_matrix`]. Correspondences between two finite spaces
//! are index relations, and [`gh_exact`] computes the Gromov–Hausdorff
//! distance of tiny spaces by exhaustive search.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used for every floating point comparison.
pub const TOL: f64 = 1e-9;

/// Default cap on `|Y|^|X| * |X|^|Y|` for [`gh_exact`].
pub const GH_EXACT_CAP: f64 = 1e7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DissimilarityMatrix {
    n: usize,
    data: Vec<f64>,
    triangle: bool,
}

impl DissimilarityMatrix {
    /// Validates rows of a square matrix. Entries that differ from their
    /// transpose by at most [`TOL`] are averaged.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty("dissimilarity matrix"));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j, value: v });
                }
            }
            data.extend_from_slice(row);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (data[i * n + j], data[j * n + i]);
                if (a - b).abs() > TOL {
                    return Err(Error::Asymmetric { i, j, a, b });
                }
                if a != b {
                    let mean = 0.5 * (a + b);
                    data[i * n + j] = mean;
                    data[j * n + i] = mean;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (dii, dij) = (data[i * n + i], data[i * n + j]);
                if dii > dij {
                    return Err(Error::DiagonalViolation { i, j, dii, dij });
                }
            }
        }
        let triangle = check_triangle(n, &data);
        Ok(Self { n, data, triangle })
    }

    /// Builds a matrix from a symmetric function. Validation still runs.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        Self::from_rows((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    }

    /// Builds a matrix known to be a metric; the triangle flag is set
    /// without the cubic check.
    fn from_metric_data(n: usize, data: Vec<f64>) -> Self {
        Self { n, data, triangle: true }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Whether the triangle inequality holds (within [`TOL`]).
    pub fn satisfies_triangle(&self) -> bool {
        self.triangle
    }

    pub fn diameter(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Restriction to the listed indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        check_indices(indices, self.n)?;
        if indices.is_empty() {
            return Err(Error::Empty("index set"));
        }
        let k = indices.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                data.push(self.get(i, j));
            }
        }
        let triangle = self.triangle || check_triangle(k, &data);
        Ok(Self { n: k, data, triangle })
    }

    /// Multiplies every entry by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_fn(self.n, |i, j| factor * self.get(i, j))
    }

    /// Parses the `dist n` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines
            .next()
            .ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        let mut it = header.split_whitespace();
        if it.next() != Some("dist") {
            return Err(Error::Parse { line: hline, msg: "expected header `dist n`".into() });
        }
        let n = parse_count(it.next(), hline)?;
        if it.next().is_some() {
            return Err(Error::Parse { line: hline, msg: "trailing tokens in header".into() });
        }
        let rows = parse_rows(&mut lines, n, n)?;
        Self::from_rows(rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dist {}\n", self.n);
        for i in 0..self.n {
            write_row(&mut out, self.row(i));
        }
        out
    }
}

fn check_triangle(n: usize, d: &[f64]) -> bool {
    for i in 0..n {
        for j in 0..n {
            let dij = d[i * n + j];
            for k in 0..n {
                if dij > d[i * n + k] + d[k * n + j] + TOL {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn check_indices(indices: &[usize], n: usize) -> Result<()> {
    match indices.iter().find(|&&i| i >= n) {
        Some(&index) => Err(Error::IndexOutOfRange { index, len: n }),
        None => Ok(()),
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_count(tok: Option<&str>, line: usize) -> Result<usize> {
    tok.ok_or(Error::Parse { line, msg: "missing count".into() })?
        .parse()
        .map_err(|e| Error::Parse { line, msg: format!("bad count: {e}") })
}

pub(crate) fn parse_rows<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    rows: usize,
    cols: usize,
) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(rows);
    for r in 0..rows {
        let (line, text) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: format!("expected {rows} rows, found {r}"),
        })?;
        let row = text
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Error::Parse { line, msg: format!("bad value `{t}`: {e}") })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != cols {
            return Err(Error::Parse {
                line,
                msg: format!("expected {cols} values, found {}", row.len()),
            });
        }
        out.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse { line, msg: "unexpected extra row".into() });
    }
    Ok(out)
}

pub(crate) fn write_row(out: &mut String, row: &[f64]) {
    for (j, v) in row.iter().enumerate() {
        if j > 0 {
            out.push(' ');
        }
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MetricKind {
    Euclidean,
    L1,
    Linf,
    /// Geodesic distance on a circle; coordinates are 1-D arc positions.
    CircleGeodesic { circumference: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    metric: MetricKind,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>, metric: MetricKind) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("point cloud"))?;
        let dim = first.len();
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "point {i} has {} coordinates, expected {dim}",
                p.len()
            )));
        }
        if let MetricKind::CircleGeodesic { circumference } = metric {
            if dim != 1 {
                return Err(Error::DimensionMismatch(
                    "circle-geodesic metric needs 1-D coordinates".into(),
                ));
            }
            if !(circumference > 0.0) {
                return Err(Error::InvalidParameter("circumference must be positive".into()));
            }
        }
        Ok(Self { points, metric })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (p, q) = (&self.points[i], &self.points[j]);
        let diffs = p.iter().zip(q).map(|(a, b)| (a - b).abs());
        match self.metric {
            MetricKind::Euclidean => diffs.map(|x| x * x).sum::<f64>().sqrt(),
            MetricKind::L1 => diffs.sum(),
            MetricKind::Linf => diffs.fold(0.0, f64::max),
            MetricKind::CircleGeodesic { circumference } => {
                let t = (p[0] - q[0]).rem_euclid(circumference);
                t.min(circumference - t)
            }
        }
    }

    pub fn to_matrix(&self) -> DissimilarityMatrix {
        let n = self.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.distance(i, j);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        DissimilarityMatrix::from_metric_data(n, data)
    }

    /// Parses CSV text with one point per row and no header.
    pub fn parse_csv(text: &str, metric: MetricKind) -> Result<Self> {
        let points = content_lines(text)
            .map(|(line, l)| {
                l.split(',')
                    .map(|t| {
                        t.trim().parse::<f64>().map_err(|e| Error::Parse {
                            line,
                            msg: format!("bad coordinate `{t}`: {e}"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points, metric)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Converts a point cloud to its dissimilarity matrix.
pub fn pointcloud_to_matrix(pc: &PointCloud) -> DissimilarityMatrix {
    pc.to_matrix()
}

/// Relation between index sets `0..m` and `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    m: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
    left_total: bool,
    right_total: bool,
}

impl Correspondence {
    pub fn new(m: usize, n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        for &(i, j) in &pairs {
            if i >= m {
                return Err(Error::IndexOutOfRange { index: i, len: m });
            }
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, len: n });
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut left = vec![false; m];
        let mut right = vec![false; n];
        for &(i, j) in &pairs {
            left[i] = true;
            right[j] = true;
        }
        Ok(Self {
            m,
            n,
            pairs,
            left_total: left.iter().all(|&b| b),
            right_total: right.iter().all(|&b| b),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, n, (0..n).map(|i| (i, i))).unwrap()
    }

    pub fn full(m: usize, n: usize) -> Self {
        Self::new(m, n, (0..m).flat_map(|i| (0..n).map(move |j| (i, j)))).unwrap()
    }

    /// Graph of a map `0..m -> 0..n`.
    pub fn from_map(f: &[usize], n: usize) -> Result<Self> {
        Self::new(f.len(), n, f.iter().copied().enumerate())
    }

    pub fn source_len(&self) -> usize {
        self.m
    }

    pub fn target_len(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Every source index appears: a multivalued map.
    pub fn left_total(&self) -> bool {
        self.left_total
    }

    /// Every target index appears.
    pub fn right_total(&self) -> bool {
        self.right_total
    }

    pub fn is_correspondence(&self) -> bool {
        self.left_total && self.right_total
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.binary_search(&(i, j)).is_ok()
    }

    /// Targets related to source index `i`, ascending.
    pub fn image_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.pairs.partition_point(|&(a, _)| a < i);
        self.pairs[start..].iter().take_while(move |&&(a, _)| a == i).map(|&(_, b)| b)
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.n, self.m, self.pairs.iter().map(|&(i, j)| (j, i))).unwrap()
    }

    /// Relational composite `other ∘ self`.
    pub fn then(&self, other: &Correspondence) -> Result<Self> {
        if self.n != other.m {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose relation into {} points with one from {} points",
                self.n, other.m
            )));
        }
        let mut out = Vec::new();
        for &(i, j) in &self.pairs {
            out.extend(other.image_of(j).map(|k| (i, k)));
        }
        Self::new(self.m, other.n, out)
    }

    pub fn parse(text: &str, m: usize, n: usize) -> Result<Self> {
        let pairs = content_lines(text)
            .map(|(line, l)| {
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(Error::Parse { line, msg: "expected `i j`".into() });
                }
                let p = |t: &str| {
                    t.parse::<usize>()
                        .map_err(|e| Error::Parse { line, msg: format!("bad index `{t}`: {e}") })
                };
                Ok((p(toks[0])?, p(toks[1])?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, n, pairs)
    }

    pub fn to_text(&self) -> String {
        self.pairs.iter().map(|(i, j)| format!("{i} {j}\n")).collect()
    }
}

/// Hausdorff distance between two index subsets of one ambient space.
pub fn hausdorff_distance(l: &[usize], lp: &[usize], ambient: &DissimilarityMatrix) -> Result<f64> {
    if l.is_empty() || lp.is_empty() {
        return Err(Error::Empty("Hausdorff operand"));
    }
    check_indices(l, ambient.len())?;
    check_indices(lp, ambient.len())?;
    let directed = |a: &[usize], b: &[usize]| {
        a.iter()
            .map(|&x| b.iter().map(|&y| ambient.get(x, y)).fold(f64::INFINITY, f64::min))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    Ok(directed(l, lp).max(directed(lp, l)))
}

/// `max |dX(x, x') - dY(y, y')|` over all pairs of pairs in `c`.
pub fn distortion(c: &Correspondence, dx: &DissimilarityMatrix, dy: &DissimilarityMatrix) -> Result<f64> {
    if c.is_empty() {
        return Err(Error::Empty("correspondence"));
    }
    if c.source_len() != dx.len() || c.target_len() != dy.len() {
        return Err(Error::DimensionMismatch(format!(
            "relation is {}x{} but spaces have {} and {} points",
            c.source_len(),
            c.target_len(),
            dx.len(),
            dy.len()
        )));
    }
    let p = c.pairs();
    let mut worst = 0.0f64;
    for (k, &(x, y)) in p.iter().enumerate() {
        for &(x2, y2) in &p[k..] {
            worst = worst.max((dx.get(x, x2) - dy.get(y, y2)).abs());
        }
    }
    Ok(worst)
}

/// Exact Gromov–Hausdorff distance with the default enumeration cap.
pub fn gh_exact(dx: &DissimilarityMatrix, dy: &DissimilarityMatrix) -> Result<f64> {
    gh_exact_with_cap(dx, dy, GH_EXACT_CAP)
}

/// Exact Gromov–Hausdorff distance by enumerating pairs of maps
/// `f: X -> Y`, `g: Y -> X`. Every correspondence contains the union of
/// the graph of such an `f` and the transposed graph of such a `g`, and
/// distortion only shrinks on subsets, so the minimum is attained there.
pub fn gh_exact_with_cap(dx: &DissimilarityMatrix, dy: &DissimilarityMatrix, cap: f64) -> Result<f64> {
    let (m, n) = (dx.len(), dy.len());
    let cost = (n as f64).powi(m as i32) * (m as f64).powi(n as i32);
    if cost > cap {
        return Err(Error::TooLargeForExactGh { cost, cap });
    }
    let fs = all_maps(m, n);
    let mut gs: Vec<(f64, Vec<usize>)> =
        all_maps(n, m).into_iter().map(|g| (map_distortion(&g, dy, dx), g)).collect();
    gs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let best = AtomicU64::new(f64::INFINITY.to_bits());
    fs.par_iter().for_each(|f| {
        let df = map_distortion(f, dx, dy);
        for (dg, g) in &gs {
            let current = f64::from_bits(best.load(Ordering::Relaxed));
            let base = df.max(*dg);
            if base >= current {
                break;
            }
            let mut worst = base;
            'outer: for (x, &fx) in f.iter().enumerate() {
                for (y, &gy) in g.iter().enumerate() {
                    worst = worst.max((dx.get(x, gy) - dy.get(fx, y)).abs());
                    if worst >= current {
                        break 'outer;
                    }
                }
            }
            if worst < current {
                let _ = best.fetch_update(Ordering::Relaxed, Ordering::Relaxed, |b| {
                    (worst < f64::from_bits(b)).then_some(worst.to_bits())
                });
            }
        }
    });
    Ok(0.5 * f64::from_bits(best.into_inner()))
}

/// Distortion of the graph of `f: X -> Y`.
fn map_distortion(f: &[usize], dx: &DissimilarityMatrix, dy: &DissimilarityMatrix) -> f64 {
    let mut worst = 0.0f64;
    for (x, &fx) in f.iter().enumerate() {
        for (x2, &fx2) in f.iter().enumerate().skip(x) {
            worst = worst.max((dx.get(x, x2) - dy.get(fx, fx2)).abs());
        }
    }
    worst
}

/// All maps `0..m -> 0..n` in lexicographic order.
fn all_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(n.pow(m as u32));
    let mut cur = vec![0usize; m];
    loop {
        out.push(cur.clone());
        let mut k = m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < n {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// `½ dis(C)` for a correspondence `C`; an upper bound for [`gh_exact`].
pub fn gh_upper_bound(dx: &DissimilarityMatrix, dy: &DissimilarityMatrix, c: &Correspondence) -> Result<f64> {
    if !c.is_correspondence() {
        return Err(Error::NotCorrespondence {
            left_total: c.left_total(),
            right_total: c.right_total(),
        });
    }
    Ok(0.5 * distortion(c, dx, dy)?)
}

/// Correspondence pairing every point of each subset with its nearest
/// points in the other; its distortion is at most twice the Hausdorff
/// distance.
pub fn nearest_neighbor_correspondence(
    l: &[usize],
    lp: &[usize],
    ambient: &DissimilarityMatrix,
) -> Result<Correspondence> {
    if l.is_empty() || lp.is_empty() {
        return Err(Error::Empty("subset"));
    }
    check_indices(l, ambient.len())?;
    check_indices(lp, ambient.len())?;
    let nearest = |x: usize, set: &[usize]| {
        (0..set.len())
            .min_by(|&a, &b| ambient.get(x, set[a]).total_cmp(&ambient.get(x, set[b])))
            .unwrap()
    };
    let mut pairs: Vec<(usize, usize)> = l.iter().enumerate().map(|(i, &x)| (i, nearest(x, lp))).collect();
    pairs.extend(lp.iter().enumerate().map(|(j, &y)| (nearest(y, l), j)));
    Correspondence::new(l.len(), lp.len(), pairs)
}
