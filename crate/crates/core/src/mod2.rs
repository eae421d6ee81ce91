//! The residue ring `O/2O`, its minimal-norm classes, and the two strongly
//! regular graphs on the 135 classes of minimal norm 2.

use std::fmt;
use std::ops::{Add, Mul};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::half::HalfOct;
use crate::linalg;
use crate::octonion::Octonion;
use crate::ring;

/// An element of `O/2O`: α-coordinates mod 2, bit `k` for `α_{k+1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Residue(u8);

impl Residue {
    pub const ZERO: Residue = Residue(0);

    pub fn from_bits(bits: u8) -> Self {
        Residue(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The representative with α-coordinates in `{0, 1}`.
    pub fn representative(self) -> HalfOct {
        let c: Vec<i64> = (0..8).map(|k| i64::from(self.0 >> k & 1)).collect();
        ring::from_alpha(&c)
    }

    /// `⟨x, y⟩ mod 2` for the doubled inner product.
    pub fn inner(self, other: Residue) -> u8 {
        let c = ring::cartan();
        let mut s = 0i64;
        for i in 0..8 {
            if self.0 >> i & 1 == 0 {
                continue;
            }
            for (j, cij) in c[i].iter().enumerate() {
                if other.0 >> j & 1 == 1 {
                    s += cij;
                }
            }
        }
        (s.rem_euclid(2)) as u8
    }

    /// Least norm over the class: 0, 1 or 2.
    pub fn min_norm(self) -> u8 {
        min_norm_table()[self.0 as usize]
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Residue({:08b})", self.0)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, other: Residue) -> Residue {
        Residue(self.0 ^ other.0)
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, other: Residue) -> Residue {
        mul_table()[self.0 as usize][other.0 as usize]
    }
}

fn reduce_coords(c: &[i64; 8]) -> Residue {
    let mut b = 0u8;
    for (k, x) in c.iter().enumerate() {
        if x.rem_euclid(2) == 1 {
            b |= 1 << k;
        }
    }
    Residue(b)
}

pub fn reduce(x: &Octonion) -> Result<Residue> {
    ring::alpha_coords(x)
        .map(|c| reduce_coords(&c))
        .ok_or_else(|| Error::NotInRing(x.to_string()))
}

pub fn reduce_half(x: &HalfOct) -> Result<Residue> {
    ring::alpha_coords_half(x)
        .map(|c| reduce_coords(&c))
        .ok_or_else(|| Error::NotInRing(x.to_octonion().to_string()))
}

fn mul_table() -> &'static Vec<[Residue; 256]> {
    static T: OnceLock<Vec<[Residue; 256]>> = OnceLock::new();
    T.get_or_init(|| {
        let reps: Vec<HalfOct> = (0..=255u8).map(|b| Residue(b).representative()).collect();
        reps.iter()
            .map(|a| {
                std::array::from_fn(|j| {
                    let p = a.checked_mul(&reps[j]).expect("O is closed under products");
                    reduce_half(&p).expect("O is closed under products")
                })
            })
            .collect()
    })
}

fn min_norm_table() -> &'static [u8; 256] {
    static T: OnceLock<[u8; 256]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [u8::MAX; 256];
        t[0] = 0;
        for u in ring::units() {
            t[reduce_half(u).unwrap().0 as usize] = 1;
        }
        for r in ring::roots2() {
            let slot = &mut t[reduce_half(r).unwrap().0 as usize];
            if *slot == u8::MAX {
                *slot = 2;
            }
        }
        assert!(
            t.iter().all(|&x| x <= 2),
            "every class has a representative of norm ≤ 2"
        );
        t
    })
}

/// Number of classes with minimal norm 0, 1 and 2.
pub fn class_histogram() -> [usize; 3] {
    let mut h = [0usize; 3];
    for &m in min_norm_table() {
        h[m as usize] += 1;
    }
    h
}

/// The 135 classes of minimal norm 2, sorted.
pub fn norm2_classes() -> Vec<Residue> {
    (0..=255u8).map(Residue).filter(|r| r.min_norm() == 2).collect()
}

/// The 16 norm-2 representatives of a class of minimal norm 2, sorted.
pub fn frame(c: Residue) -> Result<Vec<HalfOct>> {
    if c.min_norm() != 2 {
        return Err(Error::Invalid(format!(
            "frame requires a class of minimal norm 2, got minimal norm {}",
            c.min_norm()
        )));
    }
    Ok(ring::roots2()
        .iter()
        .copied()
        .filter(|x| reduce_half(x).map(|r| r == c).unwrap_or(false))
        .collect())
}

/// A fixed-width bitset over at most 192 vertices.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
struct Bits([u64; 3]);

impl Bits {
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits([self.0[0] & o.0[0], self.0[1] & o.0[1], self.0[2] & o.0[2]])
    }
    fn and_not(&self, o: &Bits) -> Bits {
        Bits([self.0[0] & !o.0[0], self.0[1] & !o.0[1], self.0[2] & !o.0[2]])
    }
    fn or(&self, o: &Bits) -> Bits {
        Bits([self.0[0] | o.0[0], self.0[1] | o.0[1], self.0[2] | o.0[2]])
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_empty(&self) -> bool {
        self.0 == [0; 3]
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..3).flat_map(move |w| {
            let mut word = self.0[w];
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// A graph on residues with bitset adjacency.
#[derive(Clone, Debug)]
pub struct Srg {
    pub vertices: Vec<Residue>,
    adj: Vec<Bits>,
}

/// `(v, k, λ, μ)`.
pub type SrgParams = (usize, usize, usize, usize);

impl Srg {
    fn from_predicate(vertices: Vec<Residue>, edge: impl Fn(Residue, Residue) -> bool) -> Self {
        assert!(vertices.len() <= 192);
        let mut adj = vec![Bits::default(); vertices.len()];
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if i != j && edge(a, b) {
                    adj[i].set(j);
                }
            }
        }
        Srg { vertices, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].get(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count() as usize
    }

    /// Number of ordered adjacent pairs.
    pub fn directed_edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|i| self.degree(i)).sum()
    }

    pub fn is_loop_free(&self) -> bool {
        (0..self.vertex_count()).all(|i| !self.adjacent(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|i| (0..n).all(|j| self.adjacent(i, j) == self.adjacent(j, i)))
    }

    /// Parameters by exhaustive counting over all pairs; `None` unless the
    /// graph is strongly regular.
    pub fn parameters(&self) -> Option<SrgParams> {
        let n = self.vertex_count();
        if n == 0 || !self.is_symmetric() || !self.is_loop_free() {
            return None;
        }
        let k = self.degree(0);
        let mut lam = None;
        let mut mu = None;
        for i in 0..n {
            if self.degree(i) != k {
                return None;
            }
            for j in i + 1..n {
                let common = self.adj[i].and(&self.adj[j]).count() as usize;
                let slot = if self.adjacent(i, j) { &mut lam } else { &mut mu };
                match *slot {
                    None => *slot = Some(common),
                    Some(c) if c != common => return None,
                    _ => {}
                }
            }
        }
        Some((n, k, lam.unwrap_or(0), mu.unwrap_or(0)))
    }

    /// Whether every pair of distinct vertices is adjacent in exactly one of
    /// the two graphs.
    pub fn is_complement_of(&self, other: &Srg) -> bool {
        let n = self.vertex_count();
        self.vertices == other.vertices
            && (0..n).all(|i| (0..n).all(|j| i == j || self.adjacent(i, j) != other.adjacent(i, j)))
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), each as sorted
    /// vertex indices; the list is sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut all = Bits::default();
        for i in 0..n {
            all.set(i);
        }
        let mut out = Vec::new();
        let mut r = Vec::new();
        self.bron_kerbosch(&mut r, all, Bits::default(), &mut out);
        for c in out.iter_mut() {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: Bits, x: Bits, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .or(&x)
            .iter()
            .max_by_key(|&u| self.adj[u].and(&p).count())
            .expect("P ∪ X nonempty");
        let mut p = p;
        let mut x = x;
        let candidates: Vec<usize> = p.and_not(&self.adj[pivot]).iter().collect();
        for v in candidates {
            r.push(v);
            self.bron_kerbosch(r, p.and(&self.adj[v]), x.and(&self.adj[v]), out);
            r.pop();
            let mut bit = Bits::default();
            bit.set(v);
            p = p.and_not(&bit);
            x = x.or(&bit);
        }
    }
}

/// Norm-2 classes, adjacent when `⟨x, y⟩ ≡ 0 mod 2`.
pub fn isotropic_graph() -> Srg {
    Srg::from_predicate(norm2_classes(), |a, b| a.inner(b) == 0)
}

/// Norm-2 classes, adjacent when `N(s + s′)` is odd for minimal
/// representatives. Adjacency is read off one pair of representatives; the
/// choice does not matter (see [`odd_sum_is_well_defined`]).
pub fn odd_sum_graph() -> Srg {
    let reps: Vec<HalfOct> = norm2_classes()
        .iter()
        .map(|&c| frame(c).expect("norm-2 class")[0])
        .collect();
    let classes = norm2_classes();
    let mut adj = vec![Bits::default(); classes.len()];
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            if i != j && sum_norm_is_odd(&reps[i], &reps[j]) {
                adj[i].set(j);
            }
        }
    }
    Srg { vertices: classes, adj }
}

fn sum_norm_is_odd(s: &HalfOct, t: &HalfOct) -> bool {
    (*s + *t).norm().expect("O is integral") % 2 != 0
}

/// Checks that the parity of `N(s + s′)` is the same for all 16 × 16
/// representative pairs of the classes `a` and `b`.
pub fn odd_sum_is_well_defined(a: Residue, b: Residue) -> Result<bool> {
    let fa = frame(a)?;
    let fb = frame(b)?;
    let first = sum_norm_is_odd(&fa[0], &fb[0]);
    Ok(fa.iter().all(|s| fb.iter().all(|t| sum_norm_is_odd(s, t) == first)))
}

/// F₂-span of the residues of `α_i s` (left) or `s α_i` (right): the image
/// of `Os` or `sO` in `O/2O`, as a sorted list of its 16 elements.
pub fn image_of_multiple(s: &HalfOct, left: bool) -> Vec<Residue> {
    let gens: Vec<u64> = ring::alphas()
        .iter()
        .map(|a| {
            let p = if left { a.mul(s) } else { s.mul(a) };
            u64::from(reduce_half(&p).expect("O is closed under products").0)
        })
        .collect();
    span_elements(&linalg::f2_rref(gens))
}

/// All elements of an F₂-span given by an echelon basis, sorted.
pub fn span_elements(basis: &[u64]) -> Vec<Residue> {
    let mut out: Vec<Residue> = (0u32..1 << basis.len())
        .map(|mask| {
            let mut v = 0u64;
            for (k, b) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    v ^= b;
                }
            }
            Residue(v as u8)
        })
        .collect();
    out.sort_unstable();
    out
}

/// Result of matching the maximal cliques against the images of `Os`
/// and `sO`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueMatching {
    pub cliques: usize,
    /// Classes `s` whose `Os` image is one of the cliques.
    pub matched_left: usize,
    /// Classes `s` whose `sO` image is one of the cliques.
    pub matched_right: usize,
    /// Cliques hit by exactly one image.
    pub hit_once: usize,
}

/// For each norm-2 class `s`, finds the cliques equal to `Os mod 2O` and
/// `sO mod 2O` (minus zero).
pub fn match_cliques(g: &Srg, cliques: &[Vec<usize>]) -> CliqueMatching {
    let as_sets: Vec<Vec<Residue>> = cliques
        .iter()
        .map(|c| {
            let mut v: Vec<Residue> = c.iter().map(|&i| g.vertices[i]).collect();
            v.push(Residue::ZERO);
            v.sort_unstable();
            v
        })
        .collect();
    let mut hit = vec![0u32; cliques.len()];
    let mut left = 0;
    let mut right = 0;
    for c in norm2_classes() {
        let s = frame(c).expect("norm-2 class")[0];
        for side in [true, false] {
            let img = image_of_multiple(&s, side);
            if let Some(k) = as_sets.iter().position(|x| *x == img) {
                hit[k] += 1;
                if side {
                    left += 1;
                } else {
                    right += 1;
                }
            }
        }
    }
    CliqueMatching {
        cliques: cliques.len(),
        matched_left: left,
        matched_right: right,
        hit_once: hit.iter().filter(|&&h| h == 1).count(),
    }
}

/// Whether a set of residues together with zero is closed under addition.
pub fn is_xor_closed(set: &[Residue]) -> bool {
    let mut members = [false; 256];
    members[0] = true;
    for r in set {
        members[r.0 as usize] = true;
    }
    set.iter().all(|a| set.iter().all(|b| members[(*a + *b).0 as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_and_frames() {
        assert_eq!(class_histogram(), [1, 120, 135]);
        for c in norm2_classes() {
            let f = frame(c).unwrap();
            assert_eq!(f.len(), 16);
            for s in &f {
                assert!(f.iter().all(|t| [0, 4, -4].contains(&s.inner(t))));
                assert!(f.contains(&-*s));
            }
        }
        assert!(frame(Residue::ZERO).is_err());
    }

    #[test]
    fn multiplication_is_well_defined() {
        let two_alpha: Vec<HalfOct> = ring::alphas().iter().map(|a| a.scale(2)).collect();
        for a in (0..=255u8).step_by(7) {
            for b in (0..=255u8).step_by(11) {
                let x = Residue(a).representative();
                let y = Residue(b).representative();
                let x2 = x + two_alpha[a as usize % 8];
                let y2 = y + two_alpha[b as usize % 8];
                let p = reduce_half(&x2.mul(&y2)).unwrap();
                assert_eq!(p, Residue(a) * Residue(b));
            }
        }
    }

    #[test]
    fn small_graphs() {
        let g = isotropic_graph();
        assert_eq!(g.vertex_count(), 135);
        assert!(g.is_loop_free());
        assert_eq!(g.parameters(), Some((135, 70, 37, 35)));
    }
}
