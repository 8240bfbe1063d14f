//! Persistent homology by column reduction of the filtered boundary matrix.
//!
//! Columns follow the filtration order of the complex. Reduction runs
//! dimension by dimension from the top down so that each pivot found in
//! dimension `d` clears the paired column of dimension `d - 1` before it
//! is visited. Over ℤ/2 the column being reduced lives in a bit-packed
//! buffer; other primes use sorted sparse columns.

use crate::complex::{FilteredComplex, Simplex};
use crate::diagram::{DiagramPoint, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Sparse column: `(row, coefficient)` sorted by row, coefficients nonzero.
pub type Column = Vec<(usize, u32)>;

#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    field: PrimeField,
    dims: Vec<usize>,
    columns: Vec<Column>,
}

impl BoundaryMatrix {
    /// Boundary matrix of simplices listed in a filtration order.
    pub fn from_simplices(simplices: &[Simplex], field: PrimeField) -> Self {
        let index: std::collections::HashMap<&[usize], usize> =
            simplices.iter().enumerate().map(|(i, s)| (s.vertices.as_slice(), i)).collect();
        let columns = simplices
            .iter()
            .map(|s| {
                let mut col: Column = s
                    .facets()
                    .enumerate()
                    .map(|(i, f)| (index[f.as_slice()], field.sign(i)))
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        Self { field, dims: simplices.iter().map(Simplex::dim).collect(), columns }
    }

    pub fn new(k: &FilteredComplex, field: PrimeField) -> Self {
        Self::from_simplices(k.simplices(), field)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, j: usize) -> &Column {
        &self.columns[j]
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    /// Whether every column only references earlier columns.
    pub fn is_strictly_upper_triangular(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, c)| c.iter().all(|&(i, _)| i < j))
    }

    /// Whether `∂ ∘ ∂ = 0`.
    pub fn boundary_squared_is_zero(&self) -> bool {
        self.columns.iter().all(|col| {
            let mut acc = Vec::new();
            for &(i, c) in col {
                add_scaled(self.field, &mut acc, &self.columns[i], c);
            }
            acc.is_empty()
        })
    }
}

/// `target += factor * src` for sorted sparse columns.
pub(crate) fn add_scaled(field: PrimeField, target: &mut Column, src: &Column, factor: u32) {
    if factor == 0 || src.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < src.len() {
        match (target.get(a), src.get(b)) {
            (Some(&(ra, ca)), Some(&(rb, cb))) if ra == rb => {
                let c = field.add(ca, field.mul(factor, cb));
                if c != 0 {
                    out.push((ra, c));
                }
                a += 1;
                b += 1;
            }
            (Some(&(ra, ca)), Some(&(rb, _))) if ra < rb => {
                out.push((ra, ca));
                a += 1;
            }
            (Some(&(ra, ca)), None) => {
                out.push((ra, ca));
                a += 1;
            }
            (_, Some(&(rb, cb))) => {
                out.push((rb, field.mul(factor, cb)));
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    *target = out;
}

/// Result of reducing `D` to `R = D V`.
#[derive(Clone, Debug)]
pub struct Reduction {
    field: PrimeField,
    dims: Vec<usize>,
    low: Vec<Option<usize>>,
    pivot_col: Vec<Option<usize>>,
    r: Vec<Column>,
    v: Option<Vec<Column>>,
}

impl Reduction {
    /// Reduces with clearing. `track_v` additionally records `V`, which
    /// forces the sparse path.
    pub fn new(bm: &BoundaryMatrix, track_v: bool) -> Self {
        if bm.field.characteristic() == 2 && !track_v {
            reduce_z2(bm)
        } else {
            reduce_sparse(bm, track_v)
        }
    }

    pub fn len(&self) -> usize {
        self.low.len()
    }

    pub fn is_empty(&self) -> bool {
        self.low.is_empty()
    }

    /// Pivot row of reduced column `j`, if nonzero.
    pub fn low(&self, j: usize) -> Option<usize> {
        self.low[j]
    }

    /// Column whose pivot is row `i`.
    pub fn pivot_col(&self, i: usize) -> Option<usize> {
        self.pivot_col[i]
    }

    pub fn r(&self, j: usize) -> &Column {
        &self.r[j]
    }

    /// Column `j` of `V`; `None` unless `V` was tracked.
    pub fn v(&self, j: usize) -> Option<&Column> {
        self.v.as_ref().map(|v| &v[j])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    /// Columns creating a class that never dies.
    pub fn is_essential(&self, j: usize) -> bool {
        self.low[j].is_none() && self.pivot_col[j].is_none()
    }

    /// `(birth, death)` index pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.low.iter().enumerate().filter_map(|(j, l)| l.map(|i| (i, j)))
    }
}

fn reduction_order(dims: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dims.len()).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(dims[j]), j));
    order
}

fn reduce_sparse(bm: &BoundaryMatrix, track_v: bool) -> Reduction {
    let n = bm.len();
    let field = bm.field;
    let mut low = vec![None; n];
    let mut pivot_col: Vec<Option<usize>> = vec![None; n];
    let mut r: Vec<Column> = vec![Vec::new(); n];
    let mut v: Vec<Column> = if track_v { (0..n).map(|j| vec![(j, 1)]).collect() } else { Vec::new() };
    let mut cleared = vec![false; n];
    for j in reduction_order(&bm.dims) {
        if cleared[j] {
            continue;
        }
        let mut col = bm.columns[j].clone();
        let mut vj = if track_v { v[j].clone() } else { Vec::new() };
        while let Some(&(i, c)) = col.last() {
            let Some(k) = pivot_col[i] else { break };
            let (_, ck) = *r[k].last().unwrap();
            let factor = field.neg(field.mul(c, field.inv(ck)));
            let rk = std::mem::take(&mut r[k]);
            add_scaled(field, &mut col, &rk, factor);
            r[k] = rk;
            if track_v {
                let vk = std::mem::take(&mut v[k]);
                add_scaled(field, &mut vj, &vk, factor);
                v[k] = vk;
            }
        }
        if let Some(&(i, _)) = col.last() {
            low[j] = Some(i);
            pivot_col[i] = Some(j);
            cleared[i] = true;
            if track_v {
                // R_i is zero and the reduced boundary of j is a cycle born at i
                v[i] = col.clone();
            }
        }
        r[j] = col;
        if track_v {
            v[j] = vj;
        }
    }
    Reduction { field, dims: bm.dims.clone(), low, pivot_col, r, v: track_v.then_some(v) }
}

/// Dense bit buffer for the column under reduction.
struct BitColumn {
    words: Vec<u64>,
    touched: Vec<usize>,
}

impl BitColumn {
    fn new(n: usize) -> Self {
        Self { words: vec![0; n / 64 + 1], touched: Vec::new() }
    }

    fn xor(&mut self, rows: &[(usize, u32)]) {
        for &(i, _) in rows {
            self.words[i / 64] ^= 1 << (i % 64);
            self.touched.push(i);
        }
    }

    /// Highest set bit at or below `from`.
    fn highest(&self, from: usize) -> Option<usize> {
        let mut w = from / 64;
        let mut mask = if from % 64 == 63 { u64::MAX } else { (1u64 << (from % 64 + 1)) - 1 };
        loop {
            let bits = self.words[w] & mask;
            if bits != 0 {
                return Some(w * 64 + 63 - bits.leading_zeros() as usize);
            }
            if w == 0 {
                return None;
            }
            w -= 1;
            mask = u64::MAX;
        }
    }

    /// Empties the buffer, returning the set rows in ascending order.
    fn drain(&mut self) -> Column {
        self.touched.sort_unstable();
        self.touched.dedup();
        let mut out = Vec::new();
        for &i in &self.touched {
            let bit = 1 << (i % 64);
            if self.words[i / 64] & bit != 0 {
                out.push((i, 1));
                self.words[i / 64] &= !bit;
            }
        }
        self.touched.clear();
        out
    }
}

fn reduce_z2(bm: &BoundaryMatrix) -> Reduction {
    let n = bm.len();
    let mut low = vec![None; n];
    let mut pivot_col: Vec<Option<usize>> = vec![None; n];
    let mut r: Vec<Column> = vec![Vec::new(); n];
    let mut cleared = vec![false; n];
    let mut buf = BitColumn::new(n);
    for j in reduction_order(&bm.dims) {
        if cleared[j] || bm.columns[j].is_empty() {
            continue;
        }
        buf.xor(&bm.columns[j]);
        let mut top = bm.columns[j].last().unwrap().0;
        let mut pivot = None;
        while let Some(i) = buf.highest(top) {
            match pivot_col[i] {
                Some(k) => {
                    buf.xor(&r[k]);
                    top = i;
                }
                None => {
                    pivot = Some(i);
                    break;
                }
            }
        }
        r[j] = buf.drain();
        if let Some(i) = pivot {
            low[j] = Some(i);
            pivot_col[i] = Some(j);
            cleared[i] = true;
        }
    }
    Reduction { field: bm.field, dims: bm.dims.clone(), low, pivot_col, r, v: None }
}

/// Diagram of simplices in filtration order; zero-length bars dropped.
pub fn diagram_of(simplices: &[Simplex], red: &Reduction) -> PersistenceDiagram {
    let mut points = Vec::new();
    for (i, j) in red.pairs() {
        let (b, d) = (simplices[i].value, simplices[j].value);
        if b != d {
            points.push(DiagramPoint::new(simplices[i].dim(), b, d));
        }
    }
    for (j, s) in simplices.iter().enumerate() {
        if red.is_essential(j) {
            points.push(DiagramPoint::new(s.dim(), s.value, f64::INFINITY));
        }
    }
    PersistenceDiagram::new(points).expect("births precede deaths in a filtration")
}

/// Persistent homology of `k` over `field`.
///
/// Classes in the top dimension `k.max_dim()` never die because no
/// higher simplices are present.
pub fn compute_persistence(k: &FilteredComplex, field: PrimeField) -> PersistenceDiagram {
    let bm = BoundaryMatrix::new(k, field);
    let red = Reduction::new(&bm, false);
    diagram_of(k.simplices(), &red)
}

/// As [`compute_persistence`], taking the characteristic as an integer.
pub fn compute_persistence_mod(k: &FilteredComplex, p: u64) -> Result<PersistenceDiagram> {
    Ok(compute_persistence(k, PrimeField::new(p)?))
}

/// Betti numbers `β_0..=β_{max_dim}` of the complex at scale `a`. The
/// top entry counts cycles only, since no higher simplices exist.
pub fn betti_at(k: &FilteredComplex, a: f64, strict: bool, field: PrimeField) -> Vec<usize> {
    let slice = k.slice(a, strict);
    betti_numbers(slice, k.max_dim(), field)
}

/// Betti numbers of a face-closed simplex list in filtration order.
pub fn betti_numbers(simplices: &[Simplex], max_dim: usize, field: PrimeField) -> Vec<usize> {
    let red = Reduction::new(&BoundaryMatrix::from_simplices(simplices, field), false);
    let mut betti = vec![0; max_dim + 1];
    for (j, s) in simplices.iter().enumerate() {
        if red.is_essential(j) {
            betti[s.dim()] += 1;
        }
    }
    betti
}

/// Betti numbers `β_0..=β_{max_dim}` of `Rips(X, a)` (or `Rips(X, a⁻)`),
/// built with one extra dimension so every entry is exact.
pub fn rips_betti_at(
    d: &crate::metric::DissimilarityMatrix,
    a: f64,
    strict: bool,
    max_dim: usize,
    field: PrimeField,
) -> Vec<usize> {
    let k = crate::builders::rips_complex_at(d, a, strict, max_dim + 1);
    let mut b = betti_numbers(k.simplices(), max_dim + 1, field);
    b.truncate(max_dim + 1);
    b
}

/// Rank of `H_dim(K_a) → H_dim(K_b)`.
pub fn rank_of_inclusion(k: &FilteredComplex, a: f64, b: f64, dim: usize, field: PrimeField) -> Result<usize> {
    if a > b {
        return Err(Error::InvalidRange { a, b });
    }
    Ok(compute_persistence(k, field).count_containing(dim, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::rips_filtration;
    use crate::metric::{DissimilarityMatrix, MetricKind, PointCloud};

    fn circle4() -> DissimilarityMatrix {
        PointCloud::new((0..4).map(|i| vec![i as f64]).collect(), MetricKind::CircleGeodesic { circumference: 4.0 })
            .unwrap()
            .to_matrix()
    }

    fn pts(dgm: &PersistenceDiagram) -> Vec<(usize, f64, f64)> {
        dgm.points().iter().map(|p| (p.dim, p.birth, p.death)).collect()
    }

    #[test]
    fn single_vertex() {
        let k = FilteredComplex::new(1, 0, vec![Simplex::new(vec![0], 0.0)]).unwrap();
        assert_eq!(pts(&compute_persistence(&k, PrimeField::Z2)), vec![(0, 0.0, f64::INFINITY)]);
    }

    #[test]
    fn circle4_rips_diagram() {
        // expected values from the naive rank oracle in tests/engine_oracle.rs
        let k = rips_filtration(&circle4(), 2);
        for p in [2, 3, 5] {
            let dgm = compute_persistence_mod(&k, p).unwrap();
            // the 2-skeleton of the full simplex also carries an essential H₂ class
            assert_eq!(dgm.restricted(2).points(), &[DiagramPoint::new(2, 2.0, f64::INFINITY)]);
            let low: Vec<_> = pts(&dgm).into_iter().filter(|p| p.0 < 2).collect();
            assert_eq!(
                low,
                vec![(0, 0.0, 1.0), (0, 0.0, 1.0), (0, 0.0, 1.0), (0, 0.0, f64::INFINITY), (1, 1.0, 2.0)]
            );
        }
    }

    #[test]
    fn boundary_matrix_invariants() {
        let k = rips_filtration(&circle4(), 3);
        for p in [2, 3, 7] {
            let bm = BoundaryMatrix::new(&k, PrimeField::new(p).unwrap());
            assert!(bm.is_strictly_upper_triangular());
            assert!(bm.boundary_squared_is_zero());
        }
    }

    #[test]
    fn betti_two_points() {
        let d = DissimilarityMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 }).unwrap();
        assert_eq!(rips_betti_at(&d, 1.0, false, 0, PrimeField::Z2), vec![1]);
        assert_eq!(rips_betti_at(&d, 1.0, true, 0, PrimeField::Z2), vec![2]);
    }

    #[test]
    fn inclusion_ranks() {
        let k = rips_filtration(&circle4(), 2);
        let f = PrimeField::Z2;
        assert_eq!(rank_of_inclusion(&k, 1.0, 1.5, 1, f).unwrap(), 1);
        assert_eq!(rank_of_inclusion(&k, 1.0, 2.0, 1, f).unwrap(), 0);
        assert_eq!(rank_of_inclusion(&k, 1.0, 1.0, 1, f).unwrap(), betti_at(&k, 1.0, false, f)[1]);
        assert!(matches!(rank_of_inclusion(&k, 2.0, 1.0, 1, f), Err(Error::InvalidRange { .. })));
    }

    #[test]
    fn tracked_v_satisfies_r_equals_dv() {
        let k = rips_filtration(&circle4(), 2);
        let field = PrimeField::new(3).unwrap();
        let bm = BoundaryMatrix::new(&k, field);
        let red = Reduction::new(&bm, true);
        for j in 0..bm.len() {
            if red.pivot_col(j).is_some() {
                // cleared columns store the killing boundary instead
                continue;
            }
            let mut dv = Vec::new();
            for &(i, c) in red.v(j).unwrap() {
                add_scaled(field, &mut dv, bm.column(i), c);
            }
            assert_eq!(&dv, red.r(j));
        }
    }

    #[test]
    fn rejects_non_prime() {
        let k = rips_filtration(&circle4(), 1);
        assert!(matches!(compute_persistence_mod(&k, 4), Err(Error::NotPrime(4))));
    }
}
