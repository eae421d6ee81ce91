//! Small exact linear algebra: determinants, rational inverses, Hermite
//! normal form, and echelon forms over F₂.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn transpose(m: &[Vec<i64>]) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(v: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![0i64; cols];
    for (x, row) in v.iter().zip(m) {
        if *x == 0 {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

/// `a · G · bᵀ`.
pub fn bilinear(a: &[i64], g: &[Vec<i64>], b: &[i64]) -> i64 {
    let ag = vec_mul(a, g);
    ag.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact inverse as `(numerators, denominator)` with the denominator positive
/// and minimal. `None` for singular input.
pub fn rational_inverse(m: &[Vec<i64>]) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    let mut den = BigInt::one();
    for row in &a {
        for x in &row[n..] {
            den = den.lcm(x.denom());
        }
    }
    let num = a
        .iter()
        .map(|row| row[n..].iter().map(|x| x.numer() * (&den / x.denom())).collect())
        .collect();
    Some((num, den))
}

/// Row-style Hermite normal form: nonzero rows only, pivots positive and
/// strictly increasing in column, entries above each pivot reduced into
/// `[0, pivot)`. Two integer row sets span the same lattice iff their forms
/// coincide.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !a[i][c].is_zero() && best.map_or(true, |b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(r).map_or(true, |row| row[c].is_zero()) {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = a[r].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

pub fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Converts back to machine integers when every entry fits.
pub fn from_big(m: &[Vec<BigInt>]) -> Option<IntMatrix> {
    m.iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).ok()).collect())
        .collect()
}

/// Fully reduced row echelon basis of the F₂-span of bit vectors. The result
/// is canonical: equal spans give equal vectors, sorted by leading bit.
pub fn f2_rref(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            let lead = 63 - b.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= b;
            }
        }
        if v == 0 {
            continue;
        }
        let lead = 63 - v.leading_zeros();
        for b in basis.iter_mut() {
            if *b >> lead & 1 == 1 {
                *b ^= v;
            }
        }
        basis.push(v);
    }
    basis.sort_unstable_by(|a, b| b.cmp(a));
    basis
}

/// Whether `v` lies in the span of an [`f2_rref`] basis.
pub fn f2_contains(basis: &[u64], mut v: u64) -> bool {
    for b in basis {
        let lead = 63 - b.leading_zeros();
        if v >> lead & 1 == 1 {
            v ^= b;
        }
    }
    v == 0
}

/// Basis of the intersection of two F₂ subspaces of `F₂^dim`.
pub fn f2_intersection(a: &[u64], b: &[u64], dim: u32) -> Vec<u64> {
    // annihilators: U ∩ V = (U⊥ + V⊥)⊥
    let ann_a = f2_annihilator(a, dim);
    let ann_b = f2_annihilator(b, dim);
    let sum = f2_rref(ann_a.into_iter().chain(ann_b));
    f2_annihilator(&sum, dim)
}

/// Basis of `{x : x·v = 0 for all v in span}` under the standard dot product.
pub fn f2_annihilator(span: &[u64], dim: u32) -> Vec<u64> {
    let basis = f2_rref(span.iter().copied());
    let pivots: Vec<u32> = basis.iter().map(|b| 63 - b.leading_zeros()).collect();
    let mut out = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        // x_free = 1, pivot coordinates determined by the rows
        let mut x = 1u64 << free;
        for (b, &p) in basis.iter().zip(&pivots) {
            if b >> free & 1 == 1 {
                x |= 1 << p;
            }
        }
        out.push(x);
    }
    f2_rref(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_inverse() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(det(&m), BigInt::from(4));
        let (n, d) = rational_inverse(&m).unwrap();
        assert_eq!(d, BigInt::from(4));
        let n = from_big(&n).unwrap();
        let p = mat_mul(&m, &n);
        assert_eq!(
            p,
            mat_mul(&identity(3), &vec![vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4]])
        );
        assert!(rational_inverse(&[vec![1, 2], vec![2, 4]]).is_none());
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = to_big(&[vec![2, 0], vec![0, 2], vec![1, 1]]);
        let b = to_big(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(hnf(&a), hnf(&b));
        assert_eq!(hnf(&a), to_big(&[vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn f2_spaces() {
        let u = f2_rref([0b0011, 0b0101]);
        let v = f2_rref([0b0110, 0b1000]);
        assert_eq!(u.len(), 2);
        assert!(f2_contains(&u, 0b0110));
        let i = f2_intersection(&u, &v, 4);
        assert_eq!(i, vec![0b0110]);
        let ann = f2_annihilator(&u, 4);
        assert_eq!(ann.len(), 2);
        for x in &ann {
            for y in &u {
                assert_eq!((x & y).count_ones() % 2, 0);
            }
        }
    }
}
