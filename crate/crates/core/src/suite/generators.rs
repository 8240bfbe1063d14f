//! Point sets and metric trees used by the verification drivers.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::CrossDissimilarity;
use crate::error::{Error, Result};
use crate::metric::{DissimilarityMatrix, MetricKind, PointCloud};

/// `{(i/n, 0), (i/n, 1) : 0 <= i <= n}`, euclidean. Bottom row first.
pub fn parallel_segments(n: usize) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::InvalidParameter("parallel_segments needs n >= 1".into()));
    }
    let mut pts: Vec<Vec<f64>> = (0..=n).map(|i| vec![i as f64 / n as f64, 0.0]).collect();
    pts.extend((0..=n).map(|i| vec![i as f64 / n as f64, 1.0]));
    PointCloud::new(pts, MetricKind::Euclidean)
}

/// Grids with `n` steps along `t ∈ [0, 2]` and `z ∈ [0, 1]` on the
/// rectangles `{(t, 0, z)}` and `{(t, 1 + t/2, z)}`, with the ℓ¹ metric.
pub fn two_rectangles(n: usize) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::InvalidParameter("two_rectangles needs n >= 1".into()));
    }
    let mut pts = Vec::with_capacity(2 * (n + 1) * (n + 1));
    for lift in [false, true] {
        for i in 0..=n {
            let t = 2.0 * i as f64 / n as f64;
            let y = if lift { 1.0 + t / 2.0 } else { 0.0 };
            for j in 0..=n {
                pts.push(vec![t, y, j as f64 / n as f64]);
            }
        }
    }
    PointCloud::new(pts, MetricKind::L1)
}

/// `{(2^{-2k-4}, 2^{-k}), (1 - 2^{-2k-4}, 2^{-k}) : 1 <= k <= N}`,
/// euclidean. The left column comes first, in order of `k`.
pub fn open_rips(count: usize) -> Result<PointCloud> {
    if count == 0 {
        return Err(Error::InvalidParameter("open_rips needs N >= 1".into()));
    }
    let left = |k: i32| vec![2f64.powi(-2 * k - 4), 2f64.powi(-k)];
    let right = |k: i32| vec![1.0 - 2f64.powi(-2 * k - 4), 2f64.powi(-k)];
    let mut pts: Vec<Vec<f64>> = (1..=count as i32).map(left).collect();
    pts.extend((1..=count as i32).map(right));
    PointCloud::new(pts, MetricKind::Euclidean)
}

/// `n` equally spaced points on a circle, with arc-length distance.
pub fn circle(n: usize, circumference: f64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::InvalidParameter("circle needs n >= 1".into()));
    }
    let step = circumference / n as f64;
    PointCloud::new((0..n).map(|i| vec![i as f64 * step]).collect(), MetricKind::CircleGeodesic { circumference })
}

/// Landmarks `L = {0, 1}`, `L' = {−δ, 0, 1, 1 + δ}` and witnesses
/// `W = {0, 1}` on the real line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessExample {
    pub delta: f64,
    pub landmarks: Vec<f64>,
    pub perturbed: Vec<f64>,
    pub witnesses: Vec<f64>,
}

impl WitnessExample {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, 1/2), got {delta}")));
        }
        Ok(Self {
            delta,
            landmarks: vec![0.0, 1.0],
            perturbed: vec![-delta, 0.0, 1.0, 1.0 + delta],
            witnesses: vec![0.0, 1.0],
        })
    }

    fn cross(ls: &[f64], ws: &[f64]) -> CrossDissimilarity {
        CrossDissimilarity::from_rows(ls.iter().map(|l| ws.iter().map(|w| (l - w).abs()).collect()).collect())
            .expect("finite coordinates")
    }

    /// `Λ = |l − w|` on `L × W`.
    pub fn landmark_cross(&self) -> CrossDissimilarity {
        Self::cross(&self.landmarks, &self.witnesses)
    }

    /// `Λ = |l − w|` on `L' × W`.
    pub fn perturbed_cross(&self) -> CrossDissimilarity {
        Self::cross(&self.perturbed, &self.witnesses)
    }

    /// The line restricted to `L ∪ L'`, with `L` at indices `0, 1` and
    /// `L'` at `2..6` (shared points repeated).
    pub fn ambient(&self) -> (DissimilarityMatrix, Vec<usize>, Vec<usize>) {
        let pts: Vec<Vec<f64>> = self.landmarks.iter().chain(&self.perturbed).map(|&x| vec![x]).collect();
        let m = PointCloud::new(pts, MetricKind::Euclidean).unwrap().to_matrix();
        (m, vec![0, 1], vec![2, 3, 4, 5])
    }

    pub fn point_clouds(&self) -> [(&'static str, PointCloud); 3] {
        let pc = |xs: &[f64]| PointCloud::new(xs.iter().map(|&x| vec![x]).collect(), MetricKind::Euclidean).unwrap();
        [("L", pc(&self.landmarks)), ("Lp", pc(&self.perturbed)), ("W", pc(&self.witnesses))]
    }
}

/// A finite metric tree given by weighted edges on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl TreeSpec {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if vertex_count == 0 || edges.len() + 1 != vertex_count {
            return Err(Error::InvalidParameter(format!(
                "a tree on {vertex_count} vertices needs {} edges",
                vertex_count.saturating_sub(1)
            )));
        }
        let mut parent: Vec<usize> = (0..vertex_count).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v, len) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::IndexOutOfRange { index: u.max(v), len: vertex_count });
            }
            if !(len > 0.0 && len.is_finite()) {
                return Err(Error::InvalidParameter(format!("edge length {len} must be positive")));
            }
            let (a, b) = (root(&mut parent, u), root(&mut parent, v));
            if a == b {
                return Err(Error::InvalidParameter("edges contain a cycle".into()));
            }
            parent[a] = b;
        }
        Ok(Self { vertex_count, edges })
    }

    /// Star with `arms` edges of length `len` around vertex 0.
    pub fn star(arms: usize, len: f64) -> Result<Self> {
        Self::new(arms + 1, (1..=arms).map(|i| (0, i, len)).collect())
    }

    /// Complete binary tree of the given depth, edges of length `len`.
    pub fn binary(depth: u32, len: f64) -> Result<Self> {
        let n = (1usize << (depth + 1)) - 1;
        Self::new(n, (1..n).map(|i| ((i - 1) / 2, i, len)).collect())
    }

    /// A single segment of length `len`.
    pub fn path(len: f64) -> Result<Self> {
        Self::new(2, vec![(0, 1, len)])
    }

    /// Parses `star:K[:LEN]`, `binary:DEPTH[:LEN]`, `path:LEN`, or an
    /// explicit edge list `u-v:len,u-v:len,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad tree spec `{text}`"));
        let parts: Vec<&str> = text.split(':').collect();
        let num = |i: usize| parts.get(i).map(|t| t.parse::<f64>().map_err(|_| bad()));
        let len = || Ok::<f64, Error>(num(2).transpose()?.unwrap_or(1.0));
        match parts[0] {
            "star" => Self::star(parts.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?, len()?),
            "binary" => Self::binary(parts.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?, len()?),
            "path" => Self::path(num(1).transpose()?.unwrap_or(1.0)),
            _ => {
                let edges = text
                    .split(',')
                    .map(|e| {
                        let (uv, l) = e.split_once(':').ok_or_else(bad)?;
                        let (u, v) = uv.split_once('-').ok_or_else(bad)?;
                        Ok((
                            u.trim().parse().map_err(|_| bad())?,
                            v.trim().parse().map_err(|_| bad())?,
                            l.trim().parse().map_err(|_| bad())?,
                        ))
                    })
                    .collect::<Result<Vec<(usize, usize, f64)>>>()?;
                let n = edges.iter().map(|&(u, v, _)| u.max(v)).max().map_or(1, |m| m + 1);
                Self::new(n, edges)
            }
        }
    }

    /// Tree vertices plus equally spaced interior points on every edge, at
    /// spacing at most `h`, with the path metric of the tree. Every point
    /// of the tree lies within `h/2` of the sample.
    pub fn subdivided(&self, h: f64) -> Result<DissimilarityMatrix> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter(format!("subdivision step must be positive, got {h}")));
        }
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.vertex_count];
        for &(u, v, len) in &self.edges {
            let pieces = ((len / h) - 1e-9).ceil().max(1.0) as usize;
            let step = len / pieces as f64;
            let mut prev = u;
            for _ in 1..pieces {
                let node = adj.len();
                adj.push(Vec::new());
                adj[prev].push((node, step));
                adj[node].push((prev, step));
                prev = node;
            }
            adj[prev].push((v, step));
            adj[v].push((prev, step));
        }
        let n = adj.len();
        let mut data = vec![vec![0.0; n]; n];
        for (src, row) in data.iter_mut().enumerate() {
            let mut stack = vec![(src, usize::MAX, 0.0)];
            while let Some((x, from, dist)) = stack.pop() {
                row[x] = dist;
                for &(y, w) in &adj[x] {
                    if y != from {
                        stack.push((y, x, dist + w));
                    }
                }
            }
        }
        // path sums may differ in the last bit between directions
        for i in 0..n {
            for j in (i + 1)..n {
                data[j][i] = data[i][j];
            }
        }
        DissimilarityMatrix::from_rows(data)
    }
}

/// Uniform points in the unit square.
pub fn random_plane_points<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PointCloud {
    PointCloud::new((0..n).map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()]).collect(), MetricKind::Euclidean)
        .expect("nonempty")
}

/// Named example generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum ExampleSpec {
    ParallelSegments { n: usize },
    TwoRectangles { n: usize },
    OpenRips { count: usize },
    WitnessCounterexample { delta: f64 },
    Circle { n: usize, circumference: f64 },
    Tree { tree: TreeSpec, h: f64 },
}

/// Output of [`gen_example`].
#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Cloud(PointCloud),
    Matrix(DissimilarityMatrix),
    Witness(WitnessExample),
}

impl Generated {
    /// Dissimilarity matrix of a point cloud or metric tree.
    pub fn matrix(&self) -> Option<DissimilarityMatrix> {
        match self {
            Generated::Cloud(pc) => Some(pc.to_matrix()),
            Generated::Matrix(m) => Some(m.clone()),
            Generated::Witness(_) => None,
        }
    }
}

/// Builds a named example. Unknown names are rejected by
/// [`ExampleSpec::from_name`].
pub fn gen_example(spec: &ExampleSpec) -> Result<Generated> {
    Ok(match spec {
        ExampleSpec::ParallelSegments { n } => Generated::Cloud(parallel_segments(*n)?),
        ExampleSpec::TwoRectangles { n } => Generated::Cloud(two_rectangles(*n)?),
        ExampleSpec::OpenRips { count } => Generated::Cloud(open_rips(*count)?),
        ExampleSpec::WitnessCounterexample { delta } => Generated::Witness(WitnessExample::new(*delta)?),
        ExampleSpec::Circle { n, circumference } => Generated::Cloud(circle(*n, *circumference)?),
        ExampleSpec::Tree { tree, h } => Generated::Matrix(tree.subdivided(*h)?),
    })
}

/// Optional parameters shared by the named generators.
#[derive(Clone, Debug, Default)]
pub struct ExampleParams {
    pub n: Option<usize>,
    pub delta: Option<f64>,
    pub circumference: Option<f64>,
    pub tree: Option<String>,
    pub h: Option<f64>,
}

impl ExampleSpec {
    pub fn from_name(name: &str, p: &ExampleParams) -> Result<Self> {
        let need_n = || p.n.ok_or_else(|| Error::InvalidParameter(format!("{name} needs n")));
        Ok(match name.replace('-', "_").as_str() {
            "parallel_segments" => ExampleSpec::ParallelSegments { n: need_n()? },
            "two_rectangles" => ExampleSpec::TwoRectangles { n: need_n()? },
            "open_rips" => ExampleSpec::OpenRips { count: need_n()? },
            "witness_counterexample" | "witness_example" => {
                ExampleSpec::WitnessCounterexample { delta: p.delta.unwrap_or(0.1) }
            }
            "circle" => ExampleSpec::Circle { n: need_n()?, circumference: p.circumference.unwrap_or(2.0 * PI) },
            "tree" => ExampleSpec::Tree {
                tree: TreeSpec::parse(p.tree.as_deref().unwrap_or("star:3"))?,
                h: p.h.unwrap_or(0.25),
            },
            _ => return Err(Error::UnknownName(name.to_string())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_rips_cross_edges() {
        let pc = open_rips(3).unwrap();
        assert_eq!(pc.len(), 6);
        let d = pc.to_matrix();
        for i in 0..3 {
            for j in 3..6 {
                assert_eq!(d.get(i, j) < 1.0, j == i + 3, "({i}, {j}) at {}", d.get(i, j));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                assert!(d.get(i, j) < 1.0 && d.get(i + 3, j + 3) < 1.0);
            }
        }
    }

    #[test]
    fn parallel_segments_square() {
        let pc = parallel_segments(1).unwrap();
        let mut pts = pc.points().to_vec();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(pts, vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]);
    }

    #[test]
    fn witness_example_sets() {
        let ex = WitnessExample::new(0.1).unwrap();
        assert_eq!(ex.perturbed, vec![-0.1, 0.0, 1.0, 1.1]);
        assert!(WitnessExample::new(0.5).is_err());
        assert!(WitnessExample::new(0.0).is_err());
    }

    #[test]
    fn tree_metrics() {
        let star = TreeSpec::star(3, 1.0).unwrap().subdivided(0.25).unwrap();
        assert_eq!(star.len(), 13);
        assert!(star.satisfies_triangle());
        assert!((star.diameter() - 2.0).abs() < 1e-12);
        let bin = TreeSpec::binary(2, 1.0).unwrap();
        assert_eq!(bin.vertex_count, 7);
        assert_eq!(bin.subdivided(0.5).unwrap().len(), 13);
        assert!(TreeSpec::new(3, vec![(0, 1, 1.0), (1, 0, 1.0)]).is_err());
        assert_eq!(TreeSpec::parse("star:3").unwrap(), TreeSpec::star(3, 1.0).unwrap());
        assert_eq!(TreeSpec::parse("0-1:1,1-2:0.5,2-3:2").unwrap().edges.len(), 3);
        assert!(TreeSpec::parse("wat").is_err());
    }

    #[test]
    fn names() {
        let p = ExampleParams { n: Some(3), ..Default::default() };
        assert!(matches!(ExampleSpec::from_name("open-rips", &p), Ok(ExampleSpec::OpenRips { count: 3 })));
        assert!(matches!(ExampleSpec::from_name("nope", &p), Err(Error::UnknownName(_))));
        assert!(ExampleSpec::from_name("circle", &ExampleParams::default()).is_err());
    }
}
