//! Reference homology by dense Gaussian elimination.
//!
//! Shares nothing with [`crate::persistence`]: boundary maps are built
//! here from vertex lists and ranks come from plain row echelon forms.
//! Used to cross-check the reduction engine.

use std::collections::HashMap;

use crate::complex::FilteredComplex;
use crate::field::PrimeField;

/// Rank of a matrix over ℤ/p given as sparse columns of signed integers.
pub fn rank(columns: &[Vec<(usize, i64)>], rows: usize, field: PrimeField) -> usize {
    if field.characteristic() == 2 {
        rank_z2(columns, rows)
    } else {
        rank_dense(columns, rows, field)
    }
}

fn rank_z2(columns: &[Vec<(usize, i64)>], rows: usize) -> usize {
    // bit vectors along the shorter side, inserted into an echelon basis
    let vectors: Vec<Vec<u64>> = if rows <= columns.len() {
        let words = rows / 64 + 1;
        columns
            .iter()
            .map(|c| {
                let mut v = vec![0u64; words];
                for &(i, x) in c {
                    if x % 2 != 0 {
                        v[i / 64] ^= 1 << (i % 64);
                    }
                }
                v
            })
            .collect()
    } else {
        let words = columns.len() / 64 + 1;
        let mut t = vec![vec![0u64; words]; rows];
        for (j, c) in columns.iter().enumerate() {
            for &(i, x) in c {
                if x % 2 != 0 {
                    t[i][j / 64] ^= 1 << (j % 64);
                }
            }
        }
        t
    };
    let mut basis: HashMap<usize, Vec<u64>> = HashMap::new();
    for mut v in vectors {
        while let Some(lead) = leading_bit(&v) {
            match basis.get(&lead) {
                Some(b) => v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                None => {
                    basis.insert(lead, v);
                    break;
                }
            }
        }
    }
    basis.len()
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + 63 - w.leading_zeros() as usize)
}

fn rank_dense(columns: &[Vec<(usize, i64)>], rows: usize, field: PrimeField) -> usize {
    let mut m = vec![vec![0u32; columns.len()]; rows];
    for (j, c) in columns.iter().enumerate() {
        for &(i, x) in c {
            m[i][j] = field.add(m[i][j], field.from_i64(x));
        }
    }
    let mut rank = 0;
    for col in 0..columns.len() {
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        let inv = field.inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..columns.len() {
                    let sub = field.mul(f, m[rank][c]);
                    m[r][c] = field.sub(m[r][c], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Simplices grouped by dimension, with the boundary map `C_k → C_{k-1}`
/// as signed sparse columns.
struct Chains {
    by_dim: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Chains {
    fn new(simplices: &[Vec<usize>]) -> Self {
        let top = simplices.iter().map(|s| s.len()).max().unwrap_or(1);
        let mut by_dim = vec![Vec::new(); top];
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            by_dim[s.len() - 1].push(s);
        }
        for level in &mut by_dim {
            level.sort();
            level.dedup();
        }
        let index = by_dim
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Self { by_dim, index }
    }

    fn count(&self, k: usize) -> usize {
        self.by_dim.get(k).map_or(0, Vec::len)
    }

    fn boundary(&self, k: usize) -> Vec<Vec<(usize, i64)>> {
        if k == 0 || k >= self.by_dim.len() {
            return Vec::new();
        }
        self.by_dim[k]
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (self.index[k - 1][&f], sign)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Betti numbers `β_0..=β_top` of a face-closed simplex list, where
/// `top` is its largest dimension.
pub fn betti_numbers(simplices: &[Vec<usize>], field: PrimeField) -> Vec<usize> {
    let ch = Chains::new(simplices);
    let top = ch.by_dim.len();
    let ranks: Vec<usize> = (0..=top).map(|k| rank(&ch.boundary(k), ch.count(k.saturating_sub(1)), field)).collect();
    (0..top).map(|k| ch.count(k) - ranks[k] - ranks[k + 1]).collect()
}

/// Rank of `H_dim(K_a) → H_dim(K_b)`, computed as
/// `rank [∂_{dim+1}(K_b) | Z_dim(K_a)] − rank ∂_{dim+1}(K_b)`.
pub fn rank_of_inclusion(k: &FilteredComplex, a: f64, b: f64, dim: usize, field: PrimeField) -> usize {
    let big: Vec<Vec<usize>> = k.slice(b, false).iter().map(|s| s.vertices.clone()).collect();
    let ch = Chains::new(&big);
    let rows = ch.count(dim);
    let small: Vec<usize> = k
        .slice(a, false)
        .iter()
        .filter(|s| s.dim() == dim)
        .map(|s| ch.index[dim][&s.vertices])
        .collect();
    let cycles = cycle_basis(&ch, dim, &small, field);
    let bdry = ch.boundary(dim + 1);
    let mut joined = bdry.clone();
    joined.extend(cycles);
    rank(&joined, rows, field) - rank(&bdry, rows, field)
}

/// A basis of the cycles supported on the given `dim`-simplices, found as
/// the null space of the restricted boundary map.
fn cycle_basis(ch: &Chains, dim: usize, support: &[usize], field: PrimeField) -> Vec<Vec<(usize, i64)>> {
    let n = support.len();
    if dim == 0 {
        return support.iter().map(|&i| vec![(i, 1)]).collect();
    }
    let rows = ch.count(dim - 1);
    let bd = ch.boundary(dim);
    // rows of the augmented system [∂ᵀ | I] reduced to expose the kernel
    let mut m: Vec<Vec<u32>> = support
        .iter()
        .enumerate()
        .map(|(r, &s)| {
            let mut row = vec![0u32; rows + n];
            for &(i, x) in &bd[s] {
                row[i] = field.add(row[i], field.from_i64(x));
            }
            row[rows + r] = 1;
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..rows {
        let Some(p) = (pivot_row..n).find(|&r| m[r][col] != 0) else { continue };
        m.swap(pivot_row, p);
        let inv = field.inv(m[pivot_row][col]);
        for x in m[pivot_row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..n {
            if r != pivot_row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..rows + n {
                    let sub = field.mul(f, m[pivot_row][c]);
                    m[r][c] = field.sub(m[r][c], sub);
                }
            }
        }
        pivot_row += 1;
    }
    m[pivot_row..]
        .iter()
        .map(|row| {
            (0..n)
                .filter(|&r| row[rows + r] != 0)
                .map(|r| (support[r], row[rows + r] as i64))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces(top: &[&[usize]]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for s in top {
            for mask in 1..(1u32 << s.len()) {
                out.push((0..s.len()).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect());
            }
        }
        out
    }

    #[test]
    fn hollow_triangle_and_sphere() {
        let f = PrimeField::Z2;
        assert_eq!(betti_numbers(&faces(&[&[0, 1], &[1, 2], &[0, 2]]), f), vec![1, 1]);
        let sphere = faces(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        for p in [2, 3] {
            assert_eq!(betti_numbers(&sphere, PrimeField::new(p).unwrap()), vec![1, 0, 1]);
        }
        assert_eq!(betti_numbers(&faces(&[&[0], &[1], &[2, 3]]), f), vec![3, 0]);
    }

    #[test]
    fn projective_plane_depends_on_field() {
        // six-vertex triangulation of ℝP²
        let tris: [&[usize]; 10] = [
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 1, 5],
            &[1, 2, 4],
            &[2, 3, 5],
            &[1, 3, 4],
            &[2, 4, 5],
            &[1, 3, 5],
        ];
        let rp2 = faces(&tris);
        assert_eq!(betti_numbers(&rp2, PrimeField::Z2), vec![1, 1, 1]);
        assert_eq!(betti_numbers(&rp2, PrimeField::new(3).unwrap()), vec![1, 0, 0]);
    }
}
