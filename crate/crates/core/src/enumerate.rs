//! Lattice point enumeration for positive definite integral quadratic forms.
//!
//! The Gram matrix is LLL-reduced first (floating-point Gram–Schmidt, exact
//! integer basis updates), then all vectors below the bound are found by a
//! Fincke–Pohst depth-first search. Floating point only prunes the search;
//! every reported vector has its norm recomputed in exact integer arithmetic,
//! and the pruning bound carries a slack so that no vector is lost.

use rayon::prelude::*;

use crate::linalg::{self, IntMatrix};

const SLACK: f64 = 1e-6;

/// LLL-reduces the form `gram`. Returns `(T, G')` with `T` unimodular and
/// `G' = T · gram · Tᵀ`.
pub fn lll_reduce(gram: &[Vec<i64>]) -> (IntMatrix, IntMatrix) {
    let n = gram.len();
    let mut g: IntMatrix = gram.to_vec();
    let mut t = linalg::identity(n);
    if n < 2 {
        return (t, g);
    }
    let delta = 0.99;
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        assert!(guard < 1_000_000, "LLL failed to terminate");
        // size reduction of row k
        for j in (0..k).rev() {
            let (mu, _) = gso(&g);
            let q = mu[k][j].round() as i64;
            if q != 0 {
                sub_row(&mut g, &mut t, k, j, q);
            }
        }
        let (mu, b) = gso(&g);
        if b[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] {
            swap_rows(&mut g, &mut t, k, k - 1);
            k = k.saturating_sub(1).max(1);
        } else {
            k += 1;
        }
    }
    (t, g)
}

/// Gram–Schmidt coefficients and squared lengths from a Gram matrix.
fn gso(g: &[Vec<i64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = g.len();
    let mut mu = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j] as f64;
            for l in 0..j {
                s -= mu[j][l] * mu[i][l] * b[l];
            }
            mu[i][j] = s / b[j];
        }
        let mut s = g[i][i] as f64;
        for l in 0..i {
            s -= mu[i][l] * mu[i][l] * b[l];
        }
        b[i] = s;
    }
    (mu, b)
}

/// `b_k ← b_k − q·b_j`.
fn sub_row(g: &mut IntMatrix, t: &mut IntMatrix, k: usize, j: usize, q: i64) {
    let n = g.len();
    let gkk = g[k][k] - 2 * q * g[k][j] + q * q * g[j][j];
    let row: Vec<i64> = (0..n).map(|i| g[k][i] - q * g[j][i]).collect();
    for i in 0..n {
        g[k][i] = row[i];
        g[i][k] = row[i];
    }
    g[k][k] = gkk;
    for c in 0..n {
        t[k][c] -= q * t[j][c];
    }
}

fn swap_rows(g: &mut IntMatrix, t: &mut IntMatrix, a: usize, b: usize) {
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
    t.swap(a, b);
}

/// Fincke–Pohst data: `Q(x) = Σ_i q[i][i] (x_i + Σ_{j>i} q[i][j] x_j)²`.
fn fp_form(g: &[Vec<i64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut q: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    q
}

struct Search {
    q: Vec<Vec<f64>>,
    g: IntMatrix,
    bound: i64,
    exact: bool,
}

impl Search {
    /// Searches below a task whose outermost coordinate is already set.
    fn descend(&self, x: &mut Vec<i64>, left: f64, out: &mut dyn FnMut(&[i64])) {
        let top = x.len() - 1;
        if top == 0 {
            self.leaf(x, out);
        } else {
            self.run(x, top - 1, left, out);
        }
    }

    /// Depth-first search over coordinates `level, level-1, …, 0` with the
    /// coordinates above `level` fixed in `x`; `rem` is the remaining budget.
    fn run(&self, x: &mut Vec<i64>, level: usize, rem: f64, out: &mut dyn FnMut(&[i64])) {
        let n = x.len();
        let q = &self.q;
        let mut c = 0.0;
        for j in level + 1..n {
            c -= q[level][j] * x[j] as f64;
        }
        let r = ((rem + SLACK) / q[level][level]).max(0.0).sqrt();
        let lo = (c - r - SLACK).ceil() as i64;
        let hi = (c + r + SLACK).floor() as i64;
        for v in lo..=hi {
            let d = v as f64 - c;
            let left = rem - q[level][level] * d * d;
            if left < -SLACK {
                continue;
            }
            x[level] = v;
            if level == 0 {
                self.leaf(x, out);
            } else {
                self.run(x, level - 1, left, out);
            }
        }
        x[level] = 0;
    }

    fn leaf(&self, x: &[i64], out: &mut dyn FnMut(&[i64])) {
        if x.iter().all(|&v| v == 0) {
            return;
        }
        let norm = linalg::bilinear(x, &self.g, x);
        let keep = if self.exact {
            norm == self.bound
        } else {
            norm <= self.bound
        };
        if keep {
            out(x);
        }
    }
}

/// All nonzero integer row vectors `x` with `x · gram · xᵀ == target`,
/// expressed in the input coordinates and sorted lexicographically.
pub fn vectors_of_norm(gram: &[Vec<i64>], target: i64) -> Vec<Vec<i64>> {
    enumerate(gram, target, true)
}

/// All nonzero vectors with `x · gram · xᵀ ≤ bound`, sorted.
pub fn vectors_up_to(gram: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    enumerate(gram, bound, false)
}

/// Number of nonzero vectors with `x · gram · xᵀ == target`, without
/// storing them.
pub fn count_of_norm(gram: &[Vec<i64>], target: i64) -> u64 {
    let Some((_, search, prefixes)) = prepare(gram, target, true) else {
        return 0;
    };
    prefixes
        .into_par_iter()
        .map(|(mut x, left)| {
            let mut count = 0u64;
            search.descend(&mut x, left, &mut |_| count += 1);
            count
        })
        .sum()
}

type Prefixes = Vec<(Vec<i64>, f64)>;

/// LLL-reduced search data and the tasks split on the outermost coordinate.
fn prepare(gram: &[Vec<i64>], bound: i64, exact: bool) -> Option<(IntMatrix, Search, Prefixes)> {
    let n = gram.len();
    if n == 0 || bound <= 0 {
        return None;
    }
    let (t, g) = lll_reduce(gram);
    let q = fp_form(&g);
    let top = n - 1;
    let mut prefixes = Vec::new();
    let rem = bound as f64;
    let r = ((rem + SLACK) / q[top][top]).sqrt();
    for v in (-r - SLACK).ceil() as i64..=(r + SLACK).floor() as i64 {
        let left = rem - q[top][top] * (v * v) as f64;
        if left < -SLACK {
            continue;
        }
        let mut x = vec![0i64; n];
        x[top] = v;
        prefixes.push((x, left));
    }
    let search = Search { q, g, bound, exact };
    Some((t, search, prefixes))
}

fn enumerate(gram: &[Vec<i64>], bound: i64, exact: bool) -> Vec<Vec<i64>> {
    let Some((t, search, prefixes)) = prepare(gram, bound, exact) else {
        return Vec::new();
    };
    let found: Vec<Vec<Vec<i64>>> = prefixes
        .into_par_iter()
        .map(|(mut x, left)| {
            let mut out = Vec::new();
            search.descend(&mut x, left, &mut |v| out.push(v.to_vec()));
            out
        })
        .collect();
    let mut result: Vec<Vec<i64>> = found.into_iter().flatten().map(|x| linalg::vec_mul(&x, &t)).collect();
    result.sort_unstable();
    result
}

/// Least nonzero value of the form.
pub fn min_norm(gram: &[Vec<i64>]) -> i64 {
    let diag_min = (0..gram.len()).map(|i| gram[i][i]).min().unwrap_or(0);
    let mut bound = 1;
    loop {
        let v = vectors_up_to(gram, bound);
        if let Some(m) = v.iter().map(|x| linalg::bilinear(x, gram, x)).min() {
            return m;
        }
        if bound >= diag_min {
            return diag_min;
        }
        bound = (bound * 2).min(diag_min);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> IntMatrix {
        vec![vec![2, -1], vec![-1, 2]]
    }

    #[test]
    fn hexagonal_lattice_shells() {
        assert_eq!(vectors_of_norm(&a2(), 2).len(), 6);
        assert_eq!(vectors_of_norm(&a2(), 6).len(), 6);
        assert_eq!(vectors_up_to(&a2(), 2).len(), 6);
        assert_eq!(min_norm(&a2()), 2);
    }

    #[test]
    fn lll_keeps_the_form_equivalent() {
        let g = vec![vec![10, 7, 3], vec![7, 6, 2], vec![3, 2, 5]];
        let (t, r) = lll_reduce(&g);
        assert_eq!(linalg::mat_mul(&linalg::mat_mul(&t, &g), &linalg::transpose(&t)), r);
        assert_eq!(linalg::det(&t).magnitude(), &num_bigint::BigUint::from(1u32));
        // brute force cross-check of a shell
        let mut brute = 0;
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in -6i64..=6 {
                    if linalg::bilinear(&[a, b, c], &g, &[a, b, c]) == 5 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(vectors_of_norm(&g, 5).len(), brute);
    }

    #[test]
    fn cubic_lattice() {
        let g = linalg::identity(4);
        // Jacobi four-square count r4(2) = 24
        assert_eq!(vectors_of_norm(&g, 2).len(), 24);
        assert_eq!(vectors_of_norm(&g, 1).len(), 8);
    }
}
