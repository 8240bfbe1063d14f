//! Builders for Vietoris–Rips, Čech, Dowker and witness filtrations.
//!
//! Every builder enumerates simplices up to `max_dim` by extending each
//! simplex with vertices larger than its last one, so each vertex set is
//! visited once. None of them relies on the triangle inequality.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::complex::{CrossDissimilarity, FilteredComplex, Simplex};
use crate::error::{Error, Result};
use crate::metric::DissimilarityMatrix;

fn finish(vertex_count: usize, max_dim: usize, simplices: Vec<Simplex>) -> FilteredComplex {
    FilteredComplex::new(vertex_count, max_dim, simplices).expect("builder produced an invalid filtration")
}

/// Vietoris–Rips filtration: a simplex enters at its diameter, a vertex
/// `i` at `d[i][i]` (zero for metrics).
pub fn rips_filtration(d: &DissimilarityMatrix, max_dim: usize) -> FilteredComplex {
    finish(d.len(), max_dim, rips_cliques(d, max_dim, |_| true))
}

/// The Rips complex at a single scale: simplices of diameter `<= a`, or
/// `< a` when `strict`. Values are kept so the result can be sliced further.
pub fn rips_complex_at(d: &DissimilarityMatrix, a: f64, strict: bool, max_dim: usize) -> FilteredComplex {
    let keep = move |v: f64| if strict { v < a } else { v <= a };
    finish(d.len(), max_dim, rips_cliques(d, max_dim, keep))
}

fn rips_cliques(d: &DissimilarityMatrix, max_dim: usize, keep: impl Fn(f64) -> bool + Sync) -> Vec<Simplex> {
    let n = d.len();
    // upper neighbours in the threshold graph
    let nbrs: Vec<Vec<usize>> = (0..n).map(|i| ((i + 1)..n).filter(|&j| keep(d.get(i, j))).collect()).collect();
    (0..n)
        .into_par_iter()
        .filter(|&i| keep(d.get(i, i)))
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            let mut stack = vec![i];
            expand_clique(d, &nbrs, max_dim, &keep, &mut stack, d.get(i, i), &nbrs[i], &mut out);
            out
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn expand_clique(
    d: &DissimilarityMatrix,
    nbrs: &[Vec<usize>],
    max_dim: usize,
    keep: &impl Fn(f64) -> bool,
    stack: &mut Vec<usize>,
    value: f64,
    candidates: &[usize],
    out: &mut Vec<Simplex>,
) {
    out.push(Simplex { vertices: stack.clone(), value });
    if stack.len() > max_dim {
        return;
    }
    for (k, &v) in candidates.iter().enumerate() {
        if !keep(d.get(v, v)) {
            continue;
        }
        let next: Vec<usize> = candidates[k + 1..].iter().copied().filter(|w| nbrs[v].binary_search(w).is_ok()).collect();
        let value = stack.iter().fold(value.max(d.get(v, v)), |acc, &u| acc.max(d.get(u, v)));
        stack.push(v);
        expand_clique(d, nbrs, max_dim, keep, stack, value, &next, out);
        stack.pop();
    }
}

/// Intrinsic Čech filtration: a simplex enters at
/// `min_{c ∈ X} max_{x ∈ σ} d(c, x)`, the radius at which some point of
/// the space is a centre for it.
pub fn cech_intrinsic_filtration(d: &DissimilarityMatrix, max_dim: usize) -> FilteredComplex {
    let n = d.len();
    let value = |s: &[usize]| {
        (0..n)
            .map(|c| s.iter().map(|&x| d.get(c, x)).fold(f64::NEG_INFINITY, f64::max))
            .fold(f64::INFINITY, f64::min)
    };
    let mut simplices = Vec::new();
    for_each_subset(n, max_dim + 1, |s| simplices.push(Simplex { vertices: s.to_vec(), value: value(s) }));
    finish(n, max_dim, simplices)
}

/// Calls `f` on every nonempty ascending subset of `0..n` with at most
/// `max_len` elements.
fn for_each_subset(n: usize, max_len: usize, mut f: impl FnMut(&[usize])) {
    fn go(n: usize, max_len: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        for v in start..n {
            cur.push(v);
            f(cur);
            if cur.len() < max_len {
                go(n, max_len, v + 1, cur, f);
            }
            cur.pop();
        }
    }
    go(n, max_len, 0, &mut Vec::new(), &mut f)
}

/// Dowker filtration of `Λ` on the landmark set: a simplex enters at
/// `min_w max_{l ∈ σ} Λ(l, w)`.
pub fn dowker_filtration(lam: &CrossDissimilarity, max_dim: usize) -> FilteredComplex {
    let m = lam.landmark_count();
    let simplices = (0..m)
        .into_par_iter()
        .flat_map_iter(|l| {
            let mut out = Vec::new();
            let mut stack = vec![l];
            expand_dowker(lam, max_dim, &mut stack, lam.row(l).to_vec(), &mut out);
            out
        })
        .collect();
    finish(m, max_dim, simplices)
}

fn expand_dowker(lam: &CrossDissimilarity, max_dim: usize, stack: &mut Vec<usize>, maxes: Vec<f64>, out: &mut Vec<Simplex>) {
    let value = maxes.iter().copied().fold(f64::INFINITY, f64::min);
    out.push(Simplex { vertices: stack.clone(), value });
    if stack.len() > max_dim {
        return;
    }
    let last = *stack.last().unwrap();
    for l in (last + 1)..lam.landmark_count() {
        let next: Vec<f64> = maxes.iter().zip(lam.row(l)).map(|(a, b)| a.max(*b)).collect();
        stack.push(l);
        expand_dowker(lam, max_dim, stack, next, out);
        stack.pop();
    }
}

/// `(w, l) ↦ Λ(l, w)`.
pub fn dowker_transpose(lam: &CrossDissimilarity) -> CrossDissimilarity {
    lam.transpose()
}

/// Ambient Čech filtration of landmarks `L` with centres restricted to
/// `W`, all inside one ambient space.
pub fn ambient_cech_filtration(
    landmarks: &[usize],
    witnesses: &[usize],
    ambient: &DissimilarityMatrix,
    max_dim: usize,
) -> Result<FilteredComplex> {
    if landmarks.is_empty() {
        return Err(Error::Empty("landmark set"));
    }
    if witnesses.is_empty() {
        return Err(Error::Empty("witness set"));
    }
    let lam = CrossDissimilarity::from_ambient(landmarks, witnesses, ambient)?;
    Ok(dowker_filtration(&lam, max_dim))
}

/// Witness filtration. `wit(τ) = min_w [max_{l ∈ τ} Λ(l, w) − min_{l' ∉ τ} Λ(l', w)]`
/// is the least `a` for which some `w` is an `a`-witness for `τ` (`−∞`
/// when `τ` is every landmark), and a simplex enters at the largest
/// `wit(τ)` over its nonempty subsets `τ`.
pub fn witness_filtration(lam: &CrossDissimilarity, max_dim: usize) -> FilteredComplex {
    let m = lam.landmark_count();
    let mut value: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut simplices = Vec::new();
    // subsets arrive in an order where every facet is seen before its cofaces
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_dim + 1];
    for_each_subset(m, max_dim + 1, |s| by_size[s.len() - 1].push(s.to_vec()));
    for level in by_size {
        for s in level {
            let own = witness_value(lam, &s);
            let v = Simplex { vertices: s.clone(), value: own }
                .facets()
                .map(|f| value[&f])
                .fold(own, f64::max);
            value.insert(s.clone(), v);
            simplices.push(Simplex { vertices: s, value: v });
        }
    }
    finish(m, max_dim, simplices)
}

/// Smallest `a` for which some witness is an `a`-witness for `tau`.
pub fn witness_value(lam: &CrossDissimilarity, tau: &[usize]) -> f64 {
    let m = lam.landmark_count();
    if tau.len() == m {
        return f64::NEG_INFINITY;
    }
    (0..lam.witness_count())
        .map(|w| {
            let inside = tau.iter().map(|&l| lam.get(l, w)).fold(f64::NEG_INFINITY, f64::max);
            let outside = (0..m)
                .filter(|l| !tau.contains(l))
                .map(|l| lam.get(l, w))
                .fold(f64::INFINITY, f64::min);
            inside - outside
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{MetricKind, PointCloud};
    use std::collections::BTreeSet;

    fn line(xs: &[f64]) -> DissimilarityMatrix {
        PointCloud::new(xs.iter().map(|&x| vec![x]).collect(), MetricKind::Euclidean).unwrap().to_matrix()
    }

    fn circle4() -> DissimilarityMatrix {
        PointCloud::new((0..4).map(|i| vec![i as f64]).collect(), MetricKind::CircleGeodesic { circumference: 4.0 })
            .unwrap()
            .to_matrix()
    }

    fn values(k: &FilteredComplex) -> Vec<(Vec<usize>, f64)> {
        k.simplices().iter().map(|s| (s.vertices.clone(), s.value)).collect()
    }

    /// Brute-force diameter of every vertex subset.
    fn diameter_oracle(d: &DissimilarityMatrix, s: &[usize]) -> f64 {
        let mut v = f64::NEG_INFINITY;
        for &i in s {
            for &j in s {
                v = v.max(d.get(i, j));
            }
        }
        v
    }

    #[test]
    fn rips_equilateral() {
        let d = DissimilarityMatrix::from_fn(3, |i, j| if i == j { 0.0 } else { 1.0 }).unwrap();
        let k = rips_filtration(&d, 2);
        assert_eq!(k.len(), 7);
        assert_eq!(k.value_of(&[0, 1, 2]), Some(1.0));
        assert_eq!(k.value_of(&[1, 2]), Some(1.0));
        assert_eq!(k.value_of(&[2]), Some(0.0));
    }

    #[test]
    fn rips_circle4_matches_diameter_oracle() {
        let d = circle4();
        let k = rips_filtration(&d, 3);
        assert_eq!(k.len(), 4 + 6 + 4 + 1);
        for s in k.simplices() {
            assert_eq!(s.value, diameter_oracle(&d, &s.vertices));
        }
        let edges: Vec<f64> = k.simplices().iter().filter(|s| s.dim() == 1).map(|s| s.value).collect();
        assert_eq!(edges.iter().filter(|&&v| v == 1.0).count(), 4);
        assert_eq!(edges.iter().filter(|&&v| v == 2.0).count(), 2);
        assert!(k.simplices().iter().filter(|s| s.dim() >= 2).all(|s| s.value == 2.0));
    }

    #[test]
    fn rips_at_strict_and_closed() {
        let d = line(&[0.0, 1.0]);
        assert_eq!(rips_complex_at(&d, 1.0, true, 1).len(), 2);
        assert_eq!(rips_complex_at(&d, 1.0, false, 1).len(), 3);
        let full = rips_filtration(&d, 1);
        assert_eq!(full.value_of(&[0, 1]), Some(1.0));
    }

    #[test]
    fn rips_at_agrees_with_slicing_full_filtration() {
        let d = line(&[0.0, 0.4, 1.1, 1.5, 2.7]);
        let full = rips_filtration(&d, 2);
        for &a in &[0.0, 0.4, 0.7, 1.1, 1.5, 3.0] {
            for strict in [false, true] {
                let at = rips_complex_at(&d, a, strict, 2);
                assert_eq!(at.simplices(), full.slice(a, strict));
            }
        }
    }

    #[test]
    fn cech_examples() {
        let d = line(&[0.0, 2.5]);
        assert_eq!(cech_intrinsic_filtration(&d, 1).value_of(&[0, 1]), Some(2.5));
        let eq = DissimilarityMatrix::from_fn(3, |i, j| if i == j { 0.0 } else { 1.0 }).unwrap();
        assert_eq!(cech_intrinsic_filtration(&eq, 2).value_of(&[0, 1, 2]), Some(1.0));
        let col = line(&[0.0, 1.0, 2.0]);
        assert_eq!(cech_intrinsic_filtration(&col, 2).value_of(&[0, 2]), Some(1.0));
        assert_eq!(rips_filtration(&col, 2).value_of(&[0, 2]), Some(2.0));
    }

    #[test]
    fn dowker_examples() {
        let d = line(&[0.0, 0.7, 1.9, 2.0]);
        assert_eq!(
            values(&dowker_filtration(&CrossDissimilarity::from_square(&d), 3)),
            values(&cech_intrinsic_filtration(&d, 3))
        );
        let one = CrossDissimilarity::from_rows(vec![vec![-0.5]]).unwrap();
        assert_eq!(values(&dowker_filtration(&one, 2)), vec![(vec![0], -0.5)]);
        let two = CrossDissimilarity::from_rows(vec![vec![0.0, 5.0], vec![5.0, 0.0]]).unwrap();
        assert_eq!(values(&dowker_filtration(&two, 1)), vec![(vec![0], 0.0), (vec![1], 0.0), (vec![0, 1], 5.0)]);
    }

    #[test]
    fn ambient_cech_examples() {
        let d = line(&[0.0, 0.3, 1.0, 2.2]);
        let all = [0, 1, 2, 3];
        assert_eq!(
            values(&ambient_cech_filtration(&all, &all, &d, 2).unwrap()),
            values(&cech_intrinsic_filtration(&d, 2))
        );
        let k = ambient_cech_filtration(&[0, 1, 3], &[2], &d, 2).unwrap();
        for s in k.simplices() {
            let expected = s.vertices.iter().map(|&i| d.get([0, 1, 3][i], 2)).fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(s.value, expected);
        }
        let mid = line(&[0.0, 2.0, 1.0]);
        assert_eq!(ambient_cech_filtration(&[0, 1], &[2], &mid, 1).unwrap().value_of(&[0, 1]), Some(1.0));
        assert!(ambient_cech_filtration(&[], &[2], &mid, 1).is_err());
    }

    fn witness_sets(delta: f64) -> (CrossDissimilarity, CrossDissimilarity) {
        let w = [0.0, 1.0];
        let cross = |ls: &[f64]| {
            CrossDissimilarity::from_rows(ls.iter().map(|l| w.iter().map(|x| (l - x).abs()).collect()).collect())
                .unwrap()
        };
        (cross(&[0.0, 1.0]), cross(&[-delta, 0.0, 1.0, 1.0 + delta]))
    }

    fn set(items: &[&[usize]]) -> BTreeSet<Vec<usize>> {
        items.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn witness_counterexample_lists() {
        let delta = 0.1;
        let (lw, lpw) = witness_sets(delta);
        let k = witness_filtration(&lw, 1);
        for a in [0.0, 0.3, 5.0] {
            assert_eq!(k.simplex_set_at(a, false), set(&[&[0], &[1], &[0, 1]]));
        }
        // L' = {−δ, 0, 1, 1+δ} indexed 0..4
        let kp = witness_filtration(&lpw, 3);
        assert_eq!(kp.simplex_set_at(0.5, false), set(&[&[0], &[1], &[2], &[3], &[0, 1], &[2, 3]]));
        assert_eq!(kp.value_of(&[1]), Some(0.0 - delta));
    }

    #[test]
    fn witness_value_of_whole_landmark_set_is_vacuous() {
        let (lw, _) = witness_sets(0.1);
        assert_eq!(witness_value(&lw, &[0, 1]), f64::NEG_INFINITY);
        let single = CrossDissimilarity::from_rows(vec![vec![1.0, 2.0]]).unwrap();
        assert_eq!(witness_filtration(&single, 1).value_of(&[0]), Some(f64::NEG_INFINITY));
    }

    #[test]
    fn witness_values_follow_subset_definition() {
        let lam = CrossDissimilarity::from_rows(vec![
            vec![0.3, 1.2, 2.0],
            vec![1.1, 0.2, 0.9],
            vec![2.2, 0.8, 0.1],
            vec![0.5, 0.6, 1.7],
        ])
        .unwrap();
        let k = witness_filtration(&lam, 3);
        for s in k.simplices() {
            let v = &s.vertices;
            let mut best = f64::NEG_INFINITY;
            for mask in 1..(1u32 << v.len()) {
                let tau: Vec<usize> = (0..v.len()).filter(|b| mask >> b & 1 == 1).map(|b| v[b]).collect();
                best = best.max(witness_value(&lam, &tau));
            }
            assert_eq!(s.value, best);
        }
    }
}
