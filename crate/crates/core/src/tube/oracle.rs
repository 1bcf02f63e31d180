//! Ground truth for `Hom_T`: explicit nilpotent representations of the cyclic
//! quiver and exact linear algebra over the rationals.
//!
//! The cyclic quiver has vertices `0..n` and one arrow `v -> v - 1` at each
//! vertex. The uniserial module with coordinates `(a, b)` has basis
//! `e_0, ..., e_{b-1}`, with `e_i` at vertex `a - 1 + i (mod n)`, and the arrow
//! action `e_i -> e_{i-1}`, `e_0 -> 0`. So `e_0` spans the socle; the
//! inclusion `(a, b) -> (a, b + 1)` and the projection `(a, b) -> (a + 1, b - 1)`
//! are the irreducible maps.

use super::{Indec, Rank};

/// Dense matrix, row-major.
type Mat = Vec<Vec<i64>>;

#[derive(Debug, Clone)]
pub struct UniserialRep {
    pub n: usize,
    /// `dims[v]` is the dimension at vertex `v`.
    pub dims: Vec<usize>,
    /// `arrows[v]` represents the arrow `v -> v - 1` as a
    /// `dims[v - 1] x dims[v]` matrix.
    pub arrows: Vec<Mat>,
}

pub fn nilpotent_uniserial(rank: Rank, x: Indec) -> UniserialRep {
    let n = rank.n();
    let vertex_of = |i: usize| (x.orbit() - 1 + i) % n;
    let mut dims = vec![0usize; n];
    let mut local = Vec::with_capacity(x.ql());
    for i in 0..x.ql() {
        let v = vertex_of(i);
        local.push(dims[v]);
        dims[v] += 1;
    }
    let mut arrows: Vec<Mat> = (0..n)
        .map(|v| {
            let tgt = (v + n - 1) % n;
            vec![vec![0; dims[v]]; dims[tgt]]
        })
        .collect();
    for i in 1..x.ql() {
        let v = vertex_of(i);
        debug_assert_eq!(vertex_of(i - 1), (v + n - 1) % n);
        arrows[v][local[i - 1]][local[i]] = 1;
    }
    UniserialRep { n, dims, arrows }
}

/// Dimension of the space of representation morphisms `X -> Y`.
pub(super) fn hom_dimension(rank: Rank, x: Indec, y: Indec) -> usize {
    let xr = nilpotent_uniserial(rank, x);
    let yr = nilpotent_uniserial(rank, y);
    morphism_space_dim(&xr, &yr)
}

fn morphism_space_dim(x: &UniserialRep, y: &UniserialRep) -> usize {
    let n = x.n;
    // unknown F_v[p][q] for each vertex v, p < dim Y_v, q < dim X_v
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + y.dims[v] * x.dims[v];
    }
    let unknowns = offset[n];
    if unknowns == 0 {
        return 0;
    }
    let var = |v: usize, p: usize, q: usize| offset[v] + p * x.dims[v] + q;

    // For the arrow v -> t: F_t · X_v - Y_v · F_v = 0.
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for v in 0..n {
        let t = (v + n - 1) % n;
        for p in 0..y.dims[t] {
            for q in 0..x.dims[v] {
                let mut row = vec![0i64; unknowns];
                for m in 0..x.dims[t] {
                    row[var(t, p, m)] += x.arrows[v][m][q];
                }
                for m in 0..y.dims[v] {
                    row[var(v, m, q)] -= y.arrows[v][p][m];
                }
                if row.iter().any(|&c| c != 0) {
                    rows.push(row);
                }
            }
        }
    }
    unknowns - rational_rank(rows)
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact rank over `Q` by fraction-free elimination, keeping every row
/// primitive (entries divided by their gcd).
pub fn rational_rank(rows: Vec<Vec<i64>>) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot_row = m[rank].clone();
        let p = pivot_row[col];
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let mut g = 0;
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = *entry * p - pivot_row[c] * f;
                g = gcd(g, *entry);
            }
            if g > 1 {
                row.iter_mut().for_each(|e| *e /= g);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_contracts() {
        for n in 2..=6 {
            let rk = Rank::new(n).unwrap();
            for a in 1..=n as i64 {
                // the irreducible maps span one-dimensional spaces while ql <= n
                for b in 1..=n {
                    let x = rk.at(a, b);
                    assert_eq!(rk.hom_tube_oracle(x, rk.at(a, b + 1)), 1, "{x} ray, n={n}");
                    if b >= 2 {
                        assert_eq!(
                            rk.hom_tube_oracle(x, rk.at(a + 1, b - 1)),
                            1,
                            "{x} coray, n={n}"
                        );
                    }
                    if b < n {
                        assert_eq!(rk.hom_tube_oracle(x, rk.at(a - 1, b)), 0, "{x} tau, n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let n4 = Rank::new(4).unwrap();
        assert_eq!(n4.hom_tube_oracle(n4.at(1, 1), n4.at(3, 1)), 0);
        let n2 = Rank::new(2).unwrap();
        assert_eq!(n2.hom_tube_oracle(n2.at(1, 1), n2.at(1, 1)), 1);
        let n3 = Rank::new(3).unwrap();
        assert_eq!(n3.hom_tube_oracle(n3.at(1, 3), n3.at(2, 2)), 1);
    }

    #[test]
    fn representation_is_nilpotent_of_right_shape() {
        let rk = Rank::new(3).unwrap();
        let rep = nilpotent_uniserial(rk, rk.at(2, 5));
        assert_eq!(rep.dims, vec![1, 2, 2]);
        // one nonzero entry per non-socle basis vector
        let nonzero: usize = rep.arrows.iter().flatten().flatten().map(|&e| e as usize).sum();
        assert_eq!(nonzero, 4);
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rational_rank(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rational_rank(vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(rational_rank(vec![vec![2, 3], vec![3, 2]]), 2);
        assert_eq!(rational_rank(vec![]), 0);
    }
}
