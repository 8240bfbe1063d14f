//! Maps between filtered complexes induced by correspondences, and the
//! linear maps they induce on homology at every critical value.
//!
//! A left-total relation `C` from the vertices of `S` to those of `T` is
//! `ε`-simplicial when every simplex of `S` at scale `a` has an image
//! spanning a simplex of `T` at scale `a + ε`. Any vertex map chosen
//! inside `C` is then simplicial `S_a → T_{a+ε}`, and its chain map
//! gives matrices between homology bases computed per level.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::metric::Correspondence;
use crate::persistence::{add_scaled, BoundaryMatrix, Column, Reduction};

/// A single-valued map subordinate to a relation: `(x, f(x)) ∈ parent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubordinateMap {
    f: Vec<usize>,
    parent: Correspondence,
}

impl SubordinateMap {
    pub fn new(f: Vec<usize>, parent: Correspondence) -> Result<Self> {
        if f.len() != parent.source_len() {
            return Err(Error::DimensionMismatch(format!(
                "map has {} entries, relation has {} sources",
                f.len(),
                parent.source_len()
            )));
        }
        if let Some((x, &y)) = f.iter().enumerate().find(|&(x, &y)| !parent.contains(x, y)) {
            return Err(Error::InvalidParameter(format!("({x}, {y}) is not in the relation")));
        }
        Ok(Self { f, parent })
    }

    /// Picks the smallest related target for every source.
    pub fn smallest(parent: &Correspondence) -> Result<Self> {
        let f = (0..parent.source_len())
            .map(|x| parent.image_of(x).next().ok_or(Error::NotLeftTotal))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { f, parent: parent.clone() })
    }

    /// Picks a uniformly random related target for every source.
    pub fn random(parent: &Correspondence, rng: &mut impl Rng) -> Result<Self> {
        let f = (0..parent.source_len())
            .map(|x| {
                let image: Vec<usize> = parent.image_of(x).collect();
                if image.is_empty() {
                    Err(Error::NotLeftTotal)
                } else {
                    Ok(image[rng.gen_range(0..image.len())])
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { f, parent: parent.clone() })
    }

    pub fn map(&self) -> &[usize] {
        &self.f
    }

    pub fn parent(&self) -> &Correspondence {
        &self.parent
    }

    /// `g ∘ self`, subordinate to the composite relation.
    pub fn then(&self, g: &SubordinateMap) -> Result<Self> {
        let parent = self.parent.then(&g.parent)?;
        Self::new(self.f.iter().map(|&x| g.f[x]).collect(), parent)
    }
}

/// Outcome of [`is_eps_simplicial`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Simpliciality {
    Simplicial,
    /// `simplex` enters `S` at `value`, but its image subset `image` is
    /// missing from `T` at `value + eps`.
    Fails { simplex: Vec<usize>, value: f64, image: Vec<usize> },
}

impl Simpliciality {
    pub fn holds(&self) -> bool {
        matches!(self, Simpliciality::Simplicial)
    }
}

/// Checks that `C` maps every simplex of `S` at scale `a` onto vertex
/// sets whose subsets (up to `T`'s dimension cap) are simplices of `T` at
/// scale `a + eps`.
pub fn is_eps_simplicial(c: &Correspondence, s: &FilteredComplex, t: &FilteredComplex, eps: f64) -> Result<Simpliciality> {
    if !c.left_total() {
        return Err(Error::NotLeftTotal);
    }
    check_sizes(c, s, t)?;
    let t_values: HashMap<&[usize], f64> = t.simplices().iter().map(|x| (x.vertices.as_slice(), x.value)).collect();
    let cap = t.max_dim() + 1;
    for sigma in s.simplices() {
        let mut image: Vec<usize> = sigma.vertices.iter().flat_map(|&x| c.image_of(x)).collect();
        image.sort_unstable();
        image.dedup();
        let bound = sigma.value + eps;
        let mut failure = None;
        // faces are no later than cofaces, so maximal subsets suffice
        subsets_of_size(&image, cap.min(image.len()), &mut |sub| {
            if failure.is_none() && t_values.get(sub).is_none_or(|&v| v > bound) {
                failure = Some(sub.to_vec());
            }
        });
        if let Some(image) = failure {
            return Ok(Simpliciality::Fails { simplex: sigma.vertices.clone(), value: sigma.value, image });
        }
    }
    Ok(Simpliciality::Simplicial)
}

fn check_sizes(c: &Correspondence, s: &FilteredComplex, t: &FilteredComplex) -> Result<()> {
    if c.source_len() != s.vertex_count() || c.target_len() != t.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "relation is {}x{} but complexes have {} and {} vertices",
            c.source_len(),
            c.target_len(),
            s.vertex_count(),
            t.vertex_count()
        )));
    }
    Ok(())
}

fn subsets_of_size(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=items.len() - (k - cur.len()) {
            cur.push(items[i]);
            go(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k <= items.len() {
        go(items, k, 0, &mut Vec::with_capacity(k), f);
    }
}

/// Homology of one sublevel complex `K_a`, with a basis of representative
/// cycles per dimension.
struct LevelHomology {
    red: Reduction,
    /// Essential column indices per dimension; the basis of `H_k(K_a)`.
    basis: Vec<Vec<usize>>,
    position: HashMap<usize, usize>,
}

impl LevelHomology {
    fn new(k: &FilteredComplex, prefix: usize, field: PrimeField) -> Self {
        let simplices = &k.simplices()[..prefix];
        let red = Reduction::new(&BoundaryMatrix::from_simplices(simplices, field), true);
        let mut basis = vec![Vec::new(); k.max_dim() + 1];
        let mut position = HashMap::new();
        for (j, s) in simplices.iter().enumerate() {
            if red.is_essential(j) {
                position.insert(j, basis[s.dim()].len());
                basis[s.dim()].push(j);
            }
        }
        Self { red, basis, position }
    }

    fn rank(&self, dim: usize) -> usize {
        self.basis.get(dim).map_or(0, Vec::len)
    }

    fn representative(&self, dim: usize, i: usize) -> &Column {
        self.red.v(self.basis[dim][i]).unwrap()
    }

    /// Coordinates of a cycle in the basis, by reducing it against the
    /// representative cycles and the reduced boundaries.
    fn coordinates(&self, dim: usize, cycle: &Column) -> Result<Vec<u32>> {
        let field = self.red.field();
        let mut z = cycle.clone();
        let mut coords = vec![0u32; self.rank(dim)];
        while let Some(&(i, c)) = z.last() {
            let (src, lead) = if let Some(&pos) = self.position.get(&i) {
                let v = self.red.v(i).unwrap();
                let lead = v.last().unwrap().1;
                coords[pos] = field.add(coords[pos], field.mul(c, field.inv(lead)));
                (v, lead)
            } else if let Some(j) = self.red.pivot_col(i) {
                let r = self.red.r(j);
                (r, r.last().unwrap().1)
            } else {
                return Err(Error::NotSimplicial(format!("chain with top simplex {i} is not a cycle")));
            };
            let factor = field.neg(field.mul(c, field.inv(lead)));
            add_scaled(field, &mut z, src, factor);
        }
        Ok(coords)
    }
}

/// Per-level homology of a filtered complex, computed on demand.
pub struct FiltrationHomology<'a> {
    complex: &'a FilteredComplex,
    field: PrimeField,
    index: HashMap<Vec<usize>, usize>,
    levels: HashMap<usize, LevelHomology>,
}

impl<'a> FiltrationHomology<'a> {
    pub fn new(complex: &'a FilteredComplex, field: PrimeField) -> Self {
        Self { complex, field, index: complex.index_map(), levels: HashMap::new() }
    }

    fn level(&mut self, a: f64) -> (usize, &LevelHomology) {
        let prefix = self.ensure(a);
        (prefix, &self.levels[&prefix])
    }

    /// Computes the level at scale `a` if needed; returns its prefix length.
    fn ensure(&mut self, a: f64) -> usize {
        let prefix = self.complex.prefix_len(a, false);
        let (complex, field) = (self.complex, self.field);
        self.levels.entry(prefix).or_insert_with(|| LevelHomology::new(complex, prefix, field));
        prefix
    }

    /// `dim H_k(K_a)`.
    pub fn betti(&mut self, a: f64, dim: usize) -> usize {
        self.level(a).1.rank(dim)
    }

    /// Matrix of the inclusion `H_k(K_a) → H_k(K_b)`.
    pub fn shift_matrix(&mut self, a: f64, b: f64, dim: usize) -> Result<Matrix> {
        if a > b {
            return Err(Error::InvalidRange { a, b });
        }
        let reps: Vec<Column> = {
            let (_, src) = self.level(a);
            (0..src.rank(dim)).map(|i| src.representative(dim, i).clone()).collect()
        };
        let (_, dst) = self.level(b);
        let cols = reps.iter().map(|z| dst.coordinates(dim, z)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(dst.rank(dim), cols))
    }
}

/// Dense matrix over ℤ/p, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

impl Matrix {
    pub fn from_columns(rows: usize, columns: Vec<Vec<u32>>) -> Self {
        let cols = columns.len();
        let mut entries = vec![0; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                entries[i * cols + j] = x;
            }
        }
        Self { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_columns(n, (0..n).map(|j| (0..n).map(|i| u32::from(i == j)).collect()).collect())
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &Matrix, field: PrimeField) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = vec![0; self.rows * rhs.cols];
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                entries[i * rhs.cols + j] = (0..self.cols)
                    .fold(0, |acc, k| field.add(acc, field.mul(self.get(i, k), rhs.get(k, j))));
            }
        }
        Ok(Matrix { rows: self.rows, cols: rhs.cols, entries })
    }
}

/// The matrix of `H_k(S_a) → H_k(T_{a+ε})` at one level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelMap {
    pub level: f64,
    pub dim: usize,
    pub matrix: Matrix,
}

/// A degree-`eps` map between persistent homologies, sampled at levels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyMap {
    pub eps: f64,
    pub maps: Vec<LevelMap>,
}

impl HomologyMap {
    pub fn at(&self, level: f64, dim: usize) -> Option<&Matrix> {
        self.maps.iter().find(|m| m.level == level && m.dim == dim).map(|m| &m.matrix)
    }
}

/// Image of the chain `z` of `dim`-simplices of `S` under the vertex map,
/// in terms of `T`'s simplex indices. Degenerate images vanish.
fn push_chain(
    f: &[usize],
    z: &Column,
    s: &FilteredComplex,
    t_index: &HashMap<Vec<usize>, usize>,
    t_prefix: usize,
    field: PrimeField,
) -> Result<Column> {
    let mut out = Vec::new();
    for &(j, c) in z {
        let image: Vec<usize> = s.simplices()[j].vertices.iter().map(|&v| f[v]).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let inversions = (0..image.len())
            .flat_map(|a| ((a + 1)..image.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| image[a] > image[b])
            .count();
        let idx = match t_index.get(&sorted) {
            Some(&i) if i < t_prefix => i,
            _ => return Err(Error::NotSimplicial(format!("image {sorted:?} is not in the target complex"))),
        };
        add_scaled(field, &mut out, &vec![(idx, 1)], field.mul(c, field.sign(inversions)));
    }
    Ok(out)
}

/// Matrix of `H_k(S_a) → H_k(T_b)` induced by the vertex map `f`.
fn map_matrix(
    f: &[usize],
    hs: &mut FiltrationHomology,
    ht: &mut FiltrationHomology,
    a: f64,
    b: f64,
    dim: usize,
) -> Result<Matrix> {
    let field = hs.field;
    let reps: Vec<Column> = {
        let (_, src) = hs.level(a);
        (0..src.rank(dim)).map(|i| src.representative(dim, i).clone()).collect()
    };
    let s = hs.complex;
    let t_prefix = ht.ensure(b);
    let (dst, t_index) = (&ht.levels[&t_prefix], &ht.index);
    let cols = reps
        .iter()
        .map(|z| dst.coordinates(dim, &push_chain(f, z, s, t_index, t_prefix, field)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(dst.rank(dim), cols))
}

/// Matrix of `H_k(S_a) → H_k(T_b)` induced by `f`, for explicitly given
/// levels. Fails if some image simplex is missing from `T_b`.
pub fn induced_level_map(
    f: &SubordinateMap,
    hs: &mut FiltrationHomology,
    ht: &mut FiltrationHomology,
    a: f64,
    b: f64,
    dim: usize,
) -> Result<Matrix> {
    check_sizes(f.parent(), hs.complex, ht.complex)?;
    map_matrix(f.map(), hs, ht, a, b, dim)
}

/// Critical values of both complexes together with their shifts by
/// `−2ε, −ε, +ε`, ascending and deduplicated.
pub fn critical_grid(s: &FilteredComplex, t: &FilteredComplex, eps: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    for v in s.critical_values().into_iter().chain(t.critical_values()) {
        if v.is_finite() {
            grid.extend([v, v - eps, v - 2.0 * eps, v + eps]);
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Induced map `H(S_a) → H(T_{a+eps})` at every level of `levels`, in
/// dimensions `0..=max_hom_dim`.
pub fn induced_homology_map_at(
    f: &SubordinateMap,
    s: &FilteredComplex,
    t: &FilteredComplex,
    eps: f64,
    field: PrimeField,
    levels: &[f64],
    max_hom_dim: usize,
) -> Result<HomologyMap> {
    check_sizes(f.parent(), s, t)?;
    let mut hs = FiltrationHomology::new(s, field);
    let mut ht = FiltrationHomology::new(t, field);
    let mut maps = Vec::new();
    for &a in levels {
        for dim in 0..=max_hom_dim {
            let matrix = map_matrix(f.map(), &mut hs, &mut ht, a, a + eps, dim)?;
            maps.push(LevelMap { level: a, dim, matrix });
        }
    }
    Ok(HomologyMap { eps, maps })
}

/// Induced map on the critical grid of `S` and `T`, in the dimensions
/// below the top dimension of `S`.
pub fn induced_homology_map(
    f: &SubordinateMap,
    s: &FilteredComplex,
    t: &FilteredComplex,
    eps: f64,
    field: PrimeField,
) -> Result<HomologyMap> {
    if !is_eps_simplicial(f.parent(), s, t, eps)?.holds() {
        return Err(Error::NotSimplicial(format!("relation is not {eps}-simplicial")));
    }
    let grid = critical_grid(s, t, eps);
    induced_homology_map_at(f, s, t, eps, field, &grid, s.max_dim().saturating_sub(1))
}

/// Verdict of [`verify_interleaving`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterleavingVerdict {
    pub applicable: bool,
    pub verified: bool,
    pub failure: Option<InterleavingFailure>,
    /// Present when the relation or its transpose is not `eps`-simplicial.
    pub obstruction: Option<Simpliciality>,
    pub levels_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterleavingFailure {
    pub a: f64,
    pub dim: usize,
    /// `"S"` when `ΨΦ` differs from the shift of `H(S)`, `"T"` for `ΦΨ`.
    pub side: String,
}

/// Checks that `Φ = H(C)` and `Ψ = H(Cᵀ)` form an `eps`-interleaving:
/// `ΨΦ` and `ΦΨ` equal the `2·eps` shift maps at every grid level and
/// every dimension up to `max_hom_dim`.
pub fn verify_interleaving(
    c: &Correspondence,
    s: &FilteredComplex,
    t: &FilteredComplex,
    eps: f64,
    field: PrimeField,
    max_hom_dim: usize,
) -> Result<InterleavingVerdict> {
    let ct = c.transpose();
    let not_applicable = |o| InterleavingVerdict {
        applicable: false,
        verified: false,
        failure: None,
        obstruction: Some(o),
        levels_checked: 0,
    };
    if !c.is_correspondence() {
        return Err(Error::NotCorrespondence { left_total: c.left_total(), right_total: c.right_total() });
    }
    let forward = is_eps_simplicial(c, s, t, eps)?;
    if !forward.holds() {
        return Ok(not_applicable(forward));
    }
    let backward = is_eps_simplicial(&ct, t, s, eps)?;
    if !backward.holds() {
        return Ok(not_applicable(backward));
    }
    let phi = SubordinateMap::smallest(c)?;
    let psi = SubordinateMap::smallest(&ct)?;
    let grid = critical_grid(s, t, eps);
    let mut hs = FiltrationHomology::new(s, field);
    let mut ht = FiltrationHomology::new(t, field);
    for &a in &grid {
        for dim in 0..=max_hom_dim {
            let sides: [(&SubordinateMap, &SubordinateMap, bool); 2] = [(&phi, &psi, true), (&psi, &phi, false)];
            for (first, second, on_s) in sides {
                let (h1, h2) = if on_s { (&mut hs, &mut ht) } else { (&mut ht, &mut hs) };
                let m1 = map_matrix(first.map(), h1, h2, a, a + eps, dim)?;
                let m2 = map_matrix(second.map(), h2, h1, a + eps, a + 2.0 * eps, dim)?;
                let shift = h1.shift_matrix(a, a + 2.0 * eps, dim)?;
                if m2.mul(&m1, field)? != shift {
                    return Ok(InterleavingVerdict {
                        applicable: true,
                        verified: false,
                        failure: Some(InterleavingFailure { a, dim, side: if on_s { "S" } else { "T" }.into() }),
                        obstruction: None,
                        levels_checked: grid.len(),
                    });
                }
            }
        }
    }
    Ok(InterleavingVerdict { applicable: true, verified: true, failure: None, obstruction: None, levels_checked: grid.len() })
}

/// Checks `v_{a+ε}^{b+ε} ∘ φ_a = φ_b ∘ u_a^b` for consecutive levels.
pub fn commutes_with_shifts(
    map: &HomologyMap,
    s: &FilteredComplex,
    t: &FilteredComplex,
    field: PrimeField,
) -> Result<bool> {
    let mut hs = FiltrationHomology::new(s, field);
    let mut ht = FiltrationHomology::new(t, field);
    let eps = map.eps;
    let dims: Vec<usize> = {
        let mut d: Vec<usize> = map.maps.iter().map(|m| m.dim).collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    for dim in dims {
        let levels: Vec<&LevelMap> = map.maps.iter().filter(|m| m.dim == dim).collect();
        for w in levels.windows(2) {
            let (a, b) = (w[0].level, w[1].level);
            let left = ht.shift_matrix(a + eps, b + eps, dim)?.mul(&w[0].matrix, field)?;
            let right = w[1].matrix.mul(&hs.shift_matrix(a, b, dim)?, field)?;
            if left != right {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::rips_filtration;
    use crate::metric::{distortion, DissimilarityMatrix, MetricKind, PointCloud};

    fn line(xs: &[f64]) -> DissimilarityMatrix {
        PointCloud::new(xs.iter().map(|&x| vec![x]).collect(), MetricKind::Euclidean).unwrap().to_matrix()
    }

    fn square(side: f64) -> DissimilarityMatrix {
        PointCloud::new(
            vec![vec![0.0, 0.0], vec![side, 0.0], vec![side, side], vec![0.0, side]],
            MetricKind::Euclidean,
        )
        .unwrap()
        .to_matrix()
    }

    #[test]
    fn identity_is_simplicial_and_interleaves() {
        let k = rips_filtration(&square(1.0), 2);
        let id = Correspondence::identity(4);
        assert!(is_eps_simplicial(&id, &k, &k, 0.0).unwrap().holds());
        let v = verify_interleaving(&id, &k, &k, 0.0, PrimeField::Z2, 1).unwrap();
        assert!(v.applicable && v.verified, "{v:?}");
        let map = induced_homology_map(&SubordinateMap::smallest(&id).unwrap(), &k, &k, 0.0, PrimeField::Z2).unwrap();
        for m in &map.maps {
            assert_eq!(m.matrix, Matrix::identity(m.matrix.rows));
        }
    }

    #[test]
    fn simpliciality_failure_has_witness() {
        let s = rips_filtration(&line(&[0.0, 1.0]), 1);
        let t = rips_filtration(&line(&[0.0, 3.0]), 1);
        let full = Correspondence::full(2, 2);
        match is_eps_simplicial(&full, &s, &t, 1.0).unwrap() {
            Simpliciality::Fails { image, .. } => assert_eq!(image, vec![0, 1]),
            ok => panic!("expected failure, got {ok:?}"),
        }
        let eps = distortion(&full, &line(&[0.0, 1.0]), &line(&[0.0, 3.0])).unwrap();
        assert!(is_eps_simplicial(&full, &s, &t, eps).unwrap().holds());
    }

    #[test]
    fn scaled_square_interleaving() {
        let (x, y) = (square(1.0), square(1.3));
        let s = rips_filtration(&x, 2);
        let t = rips_filtration(&y, 2);
        let c = Correspondence::full(4, 4);
        let eps = distortion(&c, &x, &y).unwrap();
        for p in [2, 3] {
            let v = verify_interleaving(&c, &s, &t, eps, PrimeField::new(p).unwrap(), 1).unwrap();
            assert!(v.verified, "{v:?}");
        }
        // with too small an ε the relation is not simplicial
        let v = verify_interleaving(&c, &s, &t, 0.1, PrimeField::Z2, 1).unwrap();
        assert!(!v.applicable);
    }

    #[test]
    fn shift_matrices_match_ranks() {
        let k = rips_filtration(&square(1.0), 2);
        let mut h = FiltrationHomology::new(&k, PrimeField::Z2);
        let sq2 = 2f64.sqrt();
        assert_eq!(h.betti(1.0, 1), 1);
        assert_eq!(h.betti(1.0, 0), 1);
        assert_eq!(h.betti(0.0, 0), 4);
        let m = h.shift_matrix(1.0, 1.2, 1).unwrap();
        assert_eq!(m, Matrix::identity(1));
        assert_eq!(h.shift_matrix(1.0, sq2, 1).unwrap().cols, 1);
        assert_eq!(h.shift_matrix(1.0, sq2, 1).unwrap().rows, 0);
    }

    #[test]
    fn subordinate_map_validation() {
        let c = Correspondence::new(2, 2, [(0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(SubordinateMap::smallest(&c).unwrap().map(), &[1, 0]);
        assert!(SubordinateMap::new(vec![0, 0], c.clone()).is_err());
        let partial = Correspondence::new(2, 2, [(0, 1)]).unwrap();
        assert!(matches!(SubordinateMap::smallest(&partial), Err(Error::NotLeftTotal)));
    }
}
