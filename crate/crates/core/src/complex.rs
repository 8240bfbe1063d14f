//! Filtered simplicial complexes and rectangular cross-dissimilarities.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{check_indices, content_lines, parse_count, parse_rows, write_row, DissimilarityMatrix};

/// A simplex with its filtration value. Vertices are sorted ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub value: f64,
}

impl Simplex {
    pub fn new(mut vertices: Vec<usize>, value: f64) -> Self {
        vertices.sort_unstable();
        Self { vertices, value }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-one faces, the `i`-th omitting vertex `i`.
    pub fn facets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let k = self.vertices.len();
        (0..k).filter(move |_| k > 1).map(move |i| {
            let mut f = self.vertices.clone();
            f.remove(i);
            f
        })
    }
}

/// Filtration order: value, then dimension, then vertices lexicographically.
pub fn canonical_cmp(a: &Simplex, b: &Simplex) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

/// A finite filtered simplicial complex: simplex `σ` belongs to the
/// complex at scale `a` iff `value(σ) <= a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilteredComplex {
    vertex_count: usize,
    max_dim: usize,
    simplices: Vec<Simplex>,
}

impl FilteredComplex {
    /// Sorts the simplices into canonical filtration order and validates.
    pub fn new(vertex_count: usize, max_dim: usize, mut simplices: Vec<Simplex>) -> Result<Self> {
        simplices.sort_by(canonical_cmp);
        let k = Self { vertex_count, max_dim, simplices };
        k.validate()?;
        Ok(k)
    }

    /// Keeps the given order, which must list faces before cofaces with
    /// non-decreasing values.
    pub fn from_ordered(vertex_count: usize, max_dim: usize, simplices: Vec<Simplex>) -> Result<Self> {
        let k = Self { vertex_count, max_dim, simplices };
        k.validate()?;
        if let Some(w) = k.simplices.windows(2).find(|w| w[1].value < w[0].value) {
            return Err(Error::InvalidComplex(format!(
                "values decrease from {:?} to {:?}",
                w[0].vertices, w[1].vertices
            )));
        }
        let index = k.index_map();
        for (pos, s) in k.simplices.iter().enumerate() {
            if s.facets().any(|f| index[&f] >= pos) {
                return Err(Error::InvalidComplex(format!("{:?} precedes one of its faces", s.vertices)));
            }
        }
        Ok(k)
    }

    /// Checks sortedness of vertex lists, ranges, duplicates, face
    /// closure and monotonicity.
    pub fn validate(&self) -> Result<()> {
        let mut index = HashMap::with_capacity(self.simplices.len());
        for (pos, s) in self.simplices.iter().enumerate() {
            if s.vertices.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            if s.value.is_nan() {
                return Err(Error::InvalidComplex(format!("NaN value on {:?}", s.vertices)));
            }
            if s.vertices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidComplex(format!("vertices not strictly ascending: {:?}", s.vertices)));
            }
            if s.dim() > self.max_dim {
                return Err(Error::InvalidComplex(format!("{:?} exceeds max_dim {}", s.vertices, self.max_dim)));
            }
            check_indices(&s.vertices, self.vertex_count)?;
            if index.insert(s.vertices.as_slice(), pos).is_some() {
                return Err(Error::InvalidComplex(format!("duplicate simplex {:?}", s.vertices)));
            }
        }
        for s in &self.simplices {
            for f in s.facets() {
                match index.get(f.as_slice()) {
                    None => {
                        return Err(Error::InvalidComplex(format!("face {f:?} of {:?} missing", s.vertices)))
                    }
                    Some(&p) if self.simplices[p].value > s.value => {
                        return Err(Error::InvalidComplex(format!(
                            "face {f:?} enters at {} after coface {:?} at {}",
                            self.simplices[p].value, s.vertices, s.value
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Position of each simplex in filtration order.
    pub fn index_map(&self) -> HashMap<Vec<usize>, usize> {
        self.simplices.iter().enumerate().map(|(i, s)| (s.vertices.clone(), i)).collect()
    }

    /// Value of a simplex, if present.
    pub fn value_of(&self, vertices: &[usize]) -> Option<f64> {
        self.simplices.iter().find(|s| s.vertices == vertices).map(|s| s.value)
    }

    /// Number of leading simplices with value `<= a` (or `< a` when
    /// `strict`). Valid only for complexes whose values are sorted, which
    /// every constructor guarantees.
    pub fn prefix_len(&self, a: f64, strict: bool) -> usize {
        if strict {
            self.simplices.partition_point(|s| s.value < a)
        } else {
            self.simplices.partition_point(|s| s.value <= a)
        }
    }

    /// The simplicial complex at scale `a`.
    pub fn slice(&self, a: f64, strict: bool) -> &[Simplex] {
        &self.simplices[..self.prefix_len(a, strict)]
    }

    /// Vertex sets of the complex at scale `a`.
    pub fn simplex_set_at(&self, a: f64, strict: bool) -> BTreeSet<Vec<usize>> {
        self.slice(a, strict).iter().map(|s| s.vertices.clone()).collect()
    }

    /// Distinct filtration values, ascending.
    pub fn critical_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.simplices.iter().map(|s| s.value).collect();
        v.dedup();
        v
    }

    /// Text export, one `dim v0 ... vk value` line per simplex in
    /// filtration order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.simplices {
            write!(out, "{}", s.dim()).unwrap();
            for v in &s.vertices {
                write!(out, " {v}").unwrap();
            }
            writeln!(out, " {}", s.value).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut simplices = Vec::new();
        for (line, l) in content_lines(text) {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let bad = |msg: String| Error::Parse { line, msg };
            let dim: usize = toks
                .first()
                .ok_or_else(|| bad("empty line".into()))?
                .parse()
                .map_err(|e| bad(format!("bad dimension: {e}")))?;
            if toks.len() != dim + 3 {
                return Err(bad(format!("expected {} tokens", dim + 3)));
            }
            let vertices = toks[1..=dim + 1]
                .iter()
                .map(|t| t.parse::<usize>().map_err(|e| bad(format!("bad vertex `{t}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let value = parse_value(toks[dim + 2]).ok_or_else(|| bad(format!("bad value `{}`", toks[dim + 2])))?;
            simplices.push(Simplex::new(vertices, value));
        }
        let vertex_count = simplices.iter().flat_map(|s| s.vertices.iter()).max().map_or(0, |&v| v + 1);
        let max_dim = simplices.iter().map(Simplex::dim).max().unwrap_or(0);
        Self::new(vertex_count, max_dim, simplices)
    }
}

/// Parses a decimal value, accepting `inf`/`-inf`.
pub(crate) fn parse_value(t: &str) -> Option<f64> {
    match t {
        "inf" | "+inf" | "Infinity" => Some(f64::INFINITY),
        "-inf" | "-Infinity" => Some(f64::NEG_INFINITY),
        _ => t.parse::<f64>().ok().filter(|v| !v.is_nan()),
    }
}

/// A rectangular relation `Λ: L × W → ℝ` between landmarks and witnesses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossDissimilarity {
    m: usize,
    n: usize,
    data: Vec<f64>,
}

impl CrossDissimilarity {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::Empty("landmark set"));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::Empty("witness set"));
        }
        let mut data = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, v)| !v.is_finite()) {
                return Err(Error::NonFinite { row: i, col: j, value: v });
            }
            data.extend(row);
        }
        Ok(Self { m, n, data })
    }

    /// The restriction `d|_{L × W}` of an ambient matrix.
    pub fn from_ambient(landmarks: &[usize], witnesses: &[usize], ambient: &DissimilarityMatrix) -> Result<Self> {
        check_indices(landmarks, ambient.len())?;
        check_indices(witnesses, ambient.len())?;
        Self::from_rows(
            landmarks
                .iter()
                .map(|&l| witnesses.iter().map(|&w| ambient.get(l, w)).collect())
                .collect(),
        )
    }

    /// A square matrix viewed as a relation of the space with itself.
    pub fn from_square(d: &DissimilarityMatrix) -> Self {
        let n = d.len();
        Self { m: n, n, data: (0..n).flat_map(|i| d.row(i).to_vec()).collect() }
    }

    pub fn landmark_count(&self) -> usize {
        self.m
    }

    pub fn witness_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, l: usize, w: usize) -> f64 {
        self.data[l * self.n + w]
    }

    pub fn row(&self, l: usize) -> &[f64] {
        &self.data[l * self.n..(l + 1) * self.n]
    }

    /// `(w, l) ↦ Λ(l, w)`.
    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for w in 0..self.n {
            for l in 0..self.m {
                data.push(self.get(l, w));
            }
        }
        Self { m: self.n, n: self.m, data }
    }

    /// Parses the `dowker m n` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        let mut it = header.split_whitespace();
        if it.next() != Some("dowker") {
            return Err(Error::Parse { line: hline, msg: "expected header `dowker m n`".into() });
        }
        let m = parse_count(it.next(), hline)?;
        let n = parse_count(it.next(), hline)?;
        let rows = parse_rows(&mut lines, m, n)?;
        Self::from_rows(rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dowker {} {}\n", self.m, self.n);
        for l in 0..self.m {
            write_row(&mut out, self.row(l));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize], a: f64) -> Simplex {
        Simplex::new(v.to_vec(), a)
    }

    #[test]
    fn sorts_canonically() {
        let k = FilteredComplex::new(2, 1, vec![s(&[0, 1], 1.0), s(&[1], 0.0), s(&[0], 0.0)]).unwrap();
        let order: Vec<_> = k.simplices().iter().map(|s| s.vertices.clone()).collect();
        assert_eq!(order, vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(k.critical_values(), vec![0.0, 1.0]);
        assert_eq!(k.prefix_len(1.0, true), 2);
        assert_eq!(k.prefix_len(1.0, false), 3);
    }

    #[test]
    fn rejects_invalid() {
        let missing = FilteredComplex::new(3, 1, vec![s(&[0], 0.0), s(&[0, 1], 1.0)]);
        assert!(matches!(missing, Err(Error::InvalidComplex(_))));
        let non_monotone = FilteredComplex::new(2, 1, vec![s(&[0], 0.0), s(&[1], 2.0), s(&[0, 1], 1.0)]);
        assert!(non_monotone.is_err());
        let dup = FilteredComplex::new(1, 0, vec![s(&[0], 0.0), s(&[0], 0.0)]);
        assert!(dup.is_err());
        let too_big = FilteredComplex::new(2, 0, vec![s(&[0], 0.0), s(&[1], 0.0), s(&[0, 1], 0.0)]);
        assert!(too_big.is_err());
        let ordered = FilteredComplex::from_ordered(2, 1, vec![s(&[0], 0.0), s(&[0, 1], 0.0), s(&[1], 0.0)]);
        assert!(ordered.is_err());
    }

    #[test]
    fn text_roundtrip() {
        let k = FilteredComplex::new(
            3,
            2,
            vec![
                s(&[0], 0.0),
                s(&[1], 0.0),
                s(&[2], f64::NEG_INFINITY),
                s(&[0, 1], 1.5),
                s(&[0, 2], 1.0),
                s(&[1, 2], 1.0),
                s(&[0, 1, 2], 1.5),
            ],
        )
        .unwrap();
        let text = k.to_text();
        assert!(text.starts_with("0 2 -inf\n0 0 0\n"));
        assert_eq!(FilteredComplex::parse(&text).unwrap(), k);
    }

    #[test]
    fn cross_transpose() {
        let lam = CrossDissimilarity::from_rows(vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let t = lam.transpose();
        assert_eq!((t.landmark_count(), t.witness_count()), (3, 2));
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(t.get(j, i), lam.get(i, j));
            }
        }
        assert_eq!(t.transpose(), lam);
        let sym = CrossDissimilarity::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(sym.transpose(), sym);
        assert_eq!(CrossDissimilarity::parse(&lam.to_text()).unwrap(), lam);
        assert!(CrossDissimilarity::parse("dowker 1 2\n1 2 3\n").is_err());
    }
}
