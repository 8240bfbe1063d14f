//! Bottleneck distance between persistence diagrams.
//!
//! Points with infinite death are matched among themselves by sorted
//! birth. The finite points are matched by binary search over the finite
//! set of candidate costs, testing each threshold for a perfect matching
//! in the graph of points plus their diagonal projections.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramPoint, PersistenceDiagram};
use crate::error::{Error, Result};

/// Largest combined point count accepted by [`bottleneck_bruteforce`].
pub const BRUTEFORCE_CAP: usize = 8;

/// `|a − b|`, with equal infinities at distance zero.
fn coord_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

/// L∞ distance between two points of the extended half-plane.
pub fn point_distance(p: &DiagramPoint, q: &DiagramPoint) -> f64 {
    coord_diff(p.birth, q.birth).max(coord_diff(p.death, q.death))
}

/// L∞ distance from a point to the diagonal.
pub fn diagonal_distance(p: &DiagramPoint) -> f64 {
    0.5 * (p.death - p.birth)
}

/// One assignment in a matching; `None` stands for the diagonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub left: Option<DiagramPoint>,
    pub right: Option<DiagramPoint>,
    pub cost: f64,
}

impl MatchedPair {
    fn recompute(&self) -> f64 {
        match (&self.left, &self.right) {
            (Some(p), Some(q)) => point_distance(p, q),
            (Some(p), None) | (None, Some(p)) => diagonal_distance(p),
            (None, None) => 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingCertificate {
    pub pairs: Vec<MatchedPair>,
    pub cost: f64,
}

impl MatchingCertificate {
    /// Maximum of the recomputed pair costs.
    pub fn recomputed_cost(&self) -> f64 {
        self.pairs.iter().map(MatchedPair::recompute).fold(0.0, f64::max)
    }

    /// Checks that every point of both diagrams in `dim` appears exactly
    /// once and that the stored costs are consistent.
    pub fn is_valid_for(&self, d1: &PersistenceDiagram, d2: &PersistenceDiagram, dim: usize) -> bool {
        let mut left: Vec<DiagramPoint> = self.pairs.iter().filter_map(|p| p.left).collect();
        let mut right: Vec<DiagramPoint> = self.pairs.iter().filter_map(|p| p.right).collect();
        let key = |a: &DiagramPoint, b: &DiagramPoint| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death));
        left.sort_by(key);
        right.sort_by(key);
        let expect = |d: &PersistenceDiagram| {
            let mut v: Vec<DiagramPoint> = d.in_dim(dim).copied().collect();
            v.sort_by(key);
            v
        };
        left == expect(d1)
            && right == expect(d2)
            && self.pairs.iter().all(|p| p.cost == p.recompute())
            && self.cost == self.recomputed_cost()
    }
}

/// Bottleneck distance between the `dim` parts of two diagrams, with a
/// matching that attains it.
pub fn bottleneck_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram, dim: usize) -> (f64, MatchingCertificate) {
    let (fin1, ess1) = split(d1, dim);
    let (fin2, ess2) = split(d2, dim);
    let mut pairs = match_essential(&ess1, &ess2);
    pairs.extend(match_finite(&fin1, &fin2));
    let cost = pairs.iter().map(|p| p.cost).fold(0.0, f64::max);
    (cost, MatchingCertificate { pairs, cost })
}

/// Largest bottleneck distance over dimensions `0..=max_dim`.
pub fn bottleneck_all_dims(d1: &PersistenceDiagram, d2: &PersistenceDiagram, max_dim: usize) -> f64 {
    (0..=max_dim).map(|k| bottleneck_distance(d1, d2, k).0).fold(0.0, f64::max)
}

fn split(d: &PersistenceDiagram, dim: usize) -> (Vec<DiagramPoint>, Vec<DiagramPoint>) {
    d.in_dim(dim).copied().partition(|p| !p.is_essential())
}

fn match_essential(a: &[DiagramPoint], b: &[DiagramPoint]) -> Vec<MatchedPair> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.birth.total_cmp(&y.birth));
    b.sort_by(|x, y| x.birth.total_cmp(&y.birth));
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let pair = MatchedPair { left: a.get(i).copied(), right: b.get(i).copied(), cost: 0.0 };
            MatchedPair { cost: pair.recompute(), ..pair }
        })
        .collect()
}

fn match_finite(a: &[DiagramPoint], b: &[DiagramPoint]) -> Vec<MatchedPair> {
    if a.is_empty() && b.is_empty() {
        return Vec::new();
    }
    let mut candidates = vec![0.0];
    candidates.extend(a.iter().map(diagonal_distance));
    candidates.extend(b.iter().map(diagonal_distance));
    for p in a {
        candidates.extend(b.iter().map(|q| point_distance(p, q)));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // the largest candidate is always feasible: everything may go to the diagonal
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    let mut best = perfect_matching(a, b, candidates[hi]).expect("all-diagonal matching exists");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching(a, b, candidates[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let (n1, n2) = (a.len(), b.len());
    let mut pairs = Vec::new();
    for (i, &j) in best.iter().enumerate().take(n1) {
        let pair = if j < n2 {
            MatchedPair { left: Some(a[i]), right: Some(b[j]), cost: point_distance(&a[i], &b[j]) }
        } else {
            MatchedPair { left: Some(a[i]), right: None, cost: diagonal_distance(&a[i]) }
        };
        pairs.push(pair);
    }
    for &j in best.iter().skip(n1) {
        // a diagonal copy of b[j] matched to b[j] itself
        if j < n2 {
            pairs.push(MatchedPair { left: None, right: Some(b[j]), cost: diagonal_distance(&b[j]) });
        }
    }
    pairs
}

/// Perfect matching of the threshold graph, as the right partner of each
/// left node, or `None` if no perfect matching exists.
///
/// Left nodes are the points of `a` followed by diagonal copies of `b`;
/// right nodes are the points of `b` followed by diagonal copies of `a`.
fn perfect_matching(a: &[DiagramPoint], b: &[DiagramPoint], t: f64) -> Option<Vec<usize>> {
    let (n1, n2) = (a.len(), b.len());
    let size = n1 + n2;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, p) in a.iter().enumerate() {
        adj[i].extend((0..n2).filter(|&j| point_distance(p, &b[j]) <= t));
        if diagonal_distance(p) <= t {
            adj[i].push(n2 + i);
        }
    }
    for (j, q) in b.iter().enumerate() {
        let node = n1 + j;
        if diagonal_distance(q) <= t {
            adj[node].push(j);
        }
        adj[node].extend(n2..n2 + n1);
    }
    let m = hopcroft_karp(&adj, size);
    m.iter().all(Option::is_some).then(|| m.into_iter().map(Option::unwrap).collect())
}

/// Maximum bipartite matching; returns the right partner of each left node.
fn hopcroft_karp(adj: &[Vec<usize>], right_len: usize) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut match_l: Vec<Option<usize>> = vec![None; n];
    let mut match_r: Vec<Option<usize>> = vec![None; right_len];
    let mut dist = vec![u32::MAX; n];
    loop {
        // layered BFS from free left nodes
        let mut queue = VecDeque::new();
        for u in 0..n {
            if match_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_r[v] {
                    None => found = true,
                    Some(w) if dist[w] == u32::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            return match_l;
        }
        for u in 0..n {
            if match_l[u].is_none() {
                augment(u, adj, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [Option<usize>],
    match_r: &mut [Option<usize>],
    dist: &mut [u32],
) -> bool {
    for &v in &adj[u] {
        let ok = match match_r[v] {
            None => true,
            Some(w) => dist[w] == dist[u] + 1 && augment(w, adj, match_l, match_r, dist),
        };
        if ok {
            match_l[u] = Some(v);
            match_r[v] = Some(u);
            return true;
        }
    }
    dist[u] = u32::MAX;
    false
}

/// Bottleneck distance by enumerating every partial matching. Limited to
/// [`BRUTEFORCE_CAP`] points in total.
pub fn bottleneck_bruteforce(d1: &PersistenceDiagram, d2: &PersistenceDiagram, dim: usize) -> Result<f64> {
    let (fin1, ess1) = split(d1, dim);
    let (fin2, ess2) = split(d2, dim);
    let total = fin1.len() + ess1.len() + fin2.len() + ess2.len();
    if total > BRUTEFORCE_CAP {
        return Err(Error::BruteForceCap { cap: BRUTEFORCE_CAP, got: total });
    }
    let ess = if ess1.len() != ess2.len() {
        f64::INFINITY
    } else {
        let mut used = vec![false; ess2.len()];
        brute(&ess1, &ess2, 0, &mut used, 0.0, false)
    };
    let mut used = vec![false; fin2.len()];
    Ok(ess.max(brute(&fin1, &fin2, 0, &mut used, 0.0, true)))
}

fn brute(a: &[DiagramPoint], b: &[DiagramPoint], i: usize, used: &mut [bool], acc: f64, diagonal: bool) -> f64 {
    if i == a.len() {
        return b
            .iter()
            .zip(used.iter())
            .filter(|(_, &u)| !u)
            .map(|(q, _)| if diagonal { diagonal_distance(q) } else { f64::INFINITY })
            .fold(acc, f64::max);
    }
    let mut best = if diagonal {
        brute(a, b, i + 1, used, acc.max(diagonal_distance(&a[i])), diagonal)
    } else {
        f64::INFINITY
    };
    for j in 0..b.len() {
        if !used[j] {
            used[j] = true;
            best = best.min(brute(a, b, i + 1, used, acc.max(point_distance(&a[i], &b[j])), diagonal));
            used[j] = false;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dgm(pts: &[(f64, f64)]) -> PersistenceDiagram {
        PersistenceDiagram::new(pts.iter().map(|&(b, d)| DiagramPoint::new(0, b, d)).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let a = dgm(&[(0.0, 2.0), (1.0, 5.0), (0.0, f64::INFINITY)]);
        assert_eq!(bottleneck_distance(&a, &a, 0).0, 0.0);
        assert_eq!(bottleneck_distance(&dgm(&[(0.0, 2.0)]), &dgm(&[]), 0).0, 1.0);
        let inf = f64::INFINITY;
        assert_eq!(bottleneck_distance(&dgm(&[(0.0, inf)]), &dgm(&[(1.0, inf)]), 0).0, 1.0);
        assert_eq!(bottleneck_distance(&dgm(&[(0.0, inf)]), &dgm(&[]), 0).0, inf);
        assert_eq!(bottleneck_distance(&dgm(&[]), &dgm(&[]), 0).0, 0.0);
    }

    #[test]
    fn bruteforce_examples() {
        let a = dgm(&[(0.0, 2.0), (0.0, 4.0)]);
        let b = dgm(&[(0.0, 4.0)]);
        assert_eq!(bottleneck_bruteforce(&a, &b, 0).unwrap(), 1.0);
        assert_eq!(bottleneck_distance(&a, &b, 0).0, 1.0);
        let c = dgm(&[(0.0, 2.0)]);
        let d = dgm(&[(0.5, 2.5)]);
        assert_eq!(bottleneck_bruteforce(&c, &d, 0).unwrap(), 0.5);
        assert_eq!(bottleneck_distance(&c, &d, 0).0, 0.5);
        let big = dgm(&[(0.0, 1.0); 5]);
        assert!(matches!(bottleneck_bruteforce(&big, &big, 0), Err(Error::BruteForceCap { .. })));
    }

    #[test]
    fn certificate_is_valid() {
        let a = dgm(&[(0.0, 2.0), (1.0, 5.0), (0.0, f64::INFINITY), (3.0, 3.5)]);
        let b = dgm(&[(0.2, 2.5), (0.5, f64::INFINITY)]);
        let (v, cert) = bottleneck_distance(&a, &b, 0);
        assert!(cert.is_valid_for(&a, &b, 0));
        assert_eq!(cert.recomputed_cost(), v);
    }

    #[test]
    fn negative_infinite_births() {
        let inf = f64::INFINITY;
        let a = dgm(&[(-inf, 1.0), (-inf, inf)]);
        let b = dgm(&[(-inf, 1.5), (-inf, inf)]);
        assert_eq!(bottleneck_distance(&a, &b, 0).0, 0.5);
        assert_eq!(bottleneck_bruteforce(&a, &b, 0).unwrap(), 0.5);
    }
}
