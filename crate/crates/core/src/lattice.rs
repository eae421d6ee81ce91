//! Sublattices of `O^n` (`n` = 1 or 3), the E8 sublattices `Os` and `sO`,
//! and the Leech lattices `Λ(Φ, Ψ)` and `Λ(s, s′)`.
//!
//! Vectors are stored by their integer coordinates over the α-basis of each
//! octonion slot, so a vector of `O^n` is a `Vec<i64>` of length `8n`. A
//! lattice keeps the Hermite normal form of its basis, which makes equality a
//! comparison of matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::enumerate;
use crate::error::{Error, Result};
use crate::half::HalfOct;
use crate::linalg::{self, IntMatrix};
use crate::perm::{BuildOptions, Perm, PermGroup};
use crate::ring;

/// Splits α-coordinates into octonion slots.
pub fn to_octs(v: &[i64]) -> Vec<HalfOct> {
    v.chunks(8).map(ring::from_alpha).collect()
}

/// α-coordinates of a vector of octonions; `None` outside `O^n`.
pub fn from_octs(x: &[HalfOct]) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(8 * x.len());
    for o in x {
        out.extend_from_slice(&ring::alpha_coords_half(o)?);
    }
    Some(out)
}

/// Doubled inner product `⟨x, y⟩` of α-coordinate vectors.
pub fn inner(a: &[i64], b: &[i64]) -> i64 {
    let c = ring::cartan();
    a.chunks(8)
        .zip(b.chunks(8))
        .map(|(x, y)| {
            let mut s = 0;
            for i in 0..8 {
                if x[i] == 0 {
                    continue;
                }
                for j in 0..8 {
                    s += x[i] * c[i][j] * y[j];
                }
            }
            s
        })
        .sum()
}

/// `N(x) = ½⟨x, x⟩`.
pub fn norm(v: &[i64]) -> i64 {
    inner(v, v) / 2
}

fn ambient_gram(dim: usize) -> IntMatrix {
    let c = ring::cartan();
    let mut g = vec![vec![0i64; dim]; dim];
    for slot in 0..dim / 8 {
        for i in 0..8 {
            for j in 0..8 {
                g[8 * slot + i][8 * slot + j] = c[i][j];
            }
        }
    }
    g
}

/// A full-rank sublattice of `O^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    dim: usize,
    basis: IntMatrix,
}

impl IntegerLattice {
    /// The lattice spanned by the rows; they must have full rank `8n`.
    pub fn from_rows(dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if dim == 0 || dim % 8 != 0 {
            return Err(Error::Invalid(format!(
                "ambient dimension {dim} is not a multiple of 8"
            )));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(r.len(), dim));
        }
        let h = linalg::hnf(&linalg::to_big(rows));
        if h.len() != dim {
            return Err(Error::Invalid(format!("rows span rank {} of {dim}", h.len())));
        }
        let basis = linalg::from_big(&h).ok_or(Error::Overflow("lattice basis"))?;
        Ok(IntegerLattice { dim, basis })
    }

    /// The lattice spanned by vectors of octonions.
    pub fn from_octonion_rows(rows: &[Vec<HalfOct>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        let coords = rows
            .iter()
            .map(|r| {
                if r.len() != n {
                    return Err(Error::DimensionMismatch(r.len(), n));
                }
                from_octs(r).ok_or_else(|| Error::NotInRing(format!("{r:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(8 * n, &coords)
    }

    /// `O^n`.
    pub fn ambient(n: usize) -> Self {
        IntegerLattice {
            dim: 8 * n,
            basis: linalg::identity(8 * n),
        }
    }

    /// `2O^n`.
    pub fn twice(n: usize) -> Self {
        let mut b = linalg::identity(8 * n);
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = 2;
        }
        IntegerLattice { dim: 8 * n, basis: b }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of octonion slots.
    pub fn slots(&self) -> usize {
        self.dim / 8
    }

    /// Canonical (Hermite normal form) basis in α-coordinates.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_octonions(&self) -> Vec<Vec<HalfOct>> {
        self.basis.iter().map(|r| to_octs(r)).collect()
    }

    /// `⟨b_i, b_j⟩` for the basis rows.
    pub fn gram(&self) -> IntMatrix {
        let g = ambient_gram(self.dim);
        linalg::mat_mul(&linalg::mat_mul(&self.basis, &g), &linalg::transpose(&self.basis))
    }

    /// `det(½ · gram)`.
    pub fn det_half_gram(&self) -> BigRational {
        let d = linalg::det(&self.gram());
        BigRational::new(d, BigInt::one() << self.dim)
    }

    /// Integral, even and unimodular for `½⟨x, y⟩`.
    pub fn is_even_unimodular(&self) -> bool {
        let g = self.gram();
        let even = (0..self.dim).all(|i| g[i][i].rem_euclid(4) == 0 && g[i].iter().all(|x| x.rem_euclid(2) == 0));
        even && self.det_half_gram().abs().is_one()
    }

    /// Membership by back-substitution through the echelon basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut v = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|&x| x != 0).expect("nonzero basis row");
            if v[p] % row[p] != 0 {
                return false;
            }
            let q = v[p] / row[p];
            if q != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_octs(&self, x: &[HalfOct]) -> bool {
        x.len() * 8 == self.dim && from_octs(x).is_some_and(|v| self.contains(&v))
    }

    /// Whether `2O^n ⊆ self`.
    pub fn contains_twice(&self) -> bool {
        (0..self.dim).all(|i| {
            let mut e = vec![0i64; self.dim];
            e[i] = 2;
            self.contains(&e)
        })
    }

    /// Image in `O^n / 2O^n` as a canonical F₂ echelon basis, bit `i` for
    /// coordinate `i`. Only meaningful when `2O^n ⊆ self`.
    pub fn f2_image(&self) -> Vec<u64> {
        linalg::f2_rref(self.basis.iter().map(|r| {
            r.iter()
                .enumerate()
                .fold(0u64, |acc, (i, x)| acc | ((x.rem_euclid(2) as u64) << i))
        }))
    }

    fn from_f2(dim: usize, image: &[u64]) -> Self {
        let mut rows: Vec<Vec<i64>> = image
            .iter()
            .map(|b| (0..dim).map(|i| (b >> i & 1) as i64).collect())
            .collect();
        rows.extend(IntegerLattice::twice(dim / 8).basis);
        IntegerLattice::from_rows(dim, &rows).expect("contains 2O^n, so full rank")
    }

    /// `self + other`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let rows: Vec<Vec<i64>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::from_rows(self.dim, &rows)
    }

    /// `self ∩ other`, through F₂ images when both contain `2O^n`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if self.contains_twice() && other.contains_twice() {
            let i = linalg::f2_intersection(&self.f2_image(), &other.f2_image(), self.dim as u32);
            return Ok(Self::from_f2(self.dim, &i));
        }
        self.intersect_general(other)
    }

    /// `self ∩ other = (self* + other*)*` with duals for the coordinate dot
    /// product.
    pub fn intersect_general(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let (da, na) = dual_scaled(&linalg::to_big(&self.basis));
        let (db, nb) = dual_scaled(&linalg::to_big(&other.basis));
        let d = num_integer::Integer::lcm(&da, &db);
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (den, m) in [(&da, &na), (&db, &nb)] {
            let f = &d / den;
            rows.extend(m.iter().map(|r| r.iter().map(|x| x * &f).collect::<Vec<_>>()));
        }
        // (K/d)* = d · K*
        let k = linalg::hnf(&rows);
        let (dk, nk) = dual_scaled(&k);
        let out: Vec<Vec<BigInt>> = nk
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let y = x * &d;
                        debug_assert!((&y % &dk).is_zero());
                        y / &dk
                    })
                    .collect()
            })
            .collect();
        let basis = linalg::from_big(&out).ok_or(Error::Overflow("lattice intersection"))?;
        Self::from_rows(self.dim, &basis)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    /// All vectors with `N(x) = norm`, in α-coordinates, sorted.
    pub fn short_vectors(&self, norm: i64) -> ShortVectorSet {
        let coeffs = enumerate::vectors_of_norm(&self.gram(), 2 * norm);
        let mut vectors: Vec<Vec<i64>> = coeffs.iter().map(|c| linalg::vec_mul(c, &self.basis)).collect();
        vectors.sort_unstable();
        ShortVectorSet { norm, vectors }
    }

    /// Number of vectors with `N(x) = norm`, counted without storing them.
    pub fn count_vectors(&self, norm: i64) -> u64 {
        enumerate::count_of_norm(&self.gram(), 2 * norm)
    }

    /// Least nonzero `N(x)`.
    pub fn min_norm(&self) -> i64 {
        enumerate::min_norm(&self.gram()) / 2
    }

    /// Image under a map of `O^n` given on octonion vectors.
    pub fn map(&self, f: impl Fn(&[HalfOct]) -> Vec<HalfOct>) -> Result<Self> {
        let rows: Vec<Vec<HalfOct>> = self.basis.iter().map(|r| f(&to_octs(r))).collect();
        Self::from_octonion_rows(&rows)
    }

    /// A random lattice vector with coefficients in `-2..=2`.
    pub fn random_vector<R: Rng>(&self, rng: &mut R) -> Vec<i64> {
        let mut v = vec![0i64; self.dim];
        for row in &self.basis {
            let c: i64 = rng.gen_range(-2..=2);
            for (x, r) in v.iter_mut().zip(row) {
                *x += c * r;
            }
        }
        v
    }
}

/// Dual basis for the coordinate dot product, as `(den, rows)` meaning
/// `rows / den`. Rows of `(B⁻¹)ᵀ`.
fn dual_scaled(b: &[Vec<BigInt>]) -> (BigInt, Vec<Vec<BigInt>>) {
    let n = b.len();
    let mut a: Vec<Vec<BigRational>> = b
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
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
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("full rank");
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
            den = num_integer::Integer::lcm(&den, x.denom());
        }
    }
    // transpose of the inverse
    let rows = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let x = &a[i][n + j];
                    x.numer() * (&den / x.denom())
                })
                .collect()
        })
        .collect();
    (den, rows)
}

/// Vectors of one norm, canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVectorSet {
    pub norm: i64,
    pub vectors: Vec<Vec<i64>>,
}

impl ShortVectorSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn closed_under_negation(&self) -> bool {
        self.vectors.iter().all(|v| {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            self.vectors.binary_search(&neg).is_ok()
        })
    }

    pub fn all_have_norm(&self) -> bool {
        self.vectors.iter().all(|v| norm(v) == self.norm)
    }
}

/// Which side `s` multiplies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `Os`
    Left,
    /// `sO`
    Right,
}

fn check_norm2(s: &HalfOct) -> Result<()> {
    if !ring::contains_half(s) {
        return Err(Error::NotInRing(s.to_octonion().to_string()));
    }
    if s.norm() != Some(2) {
        return Err(Error::WrongNorm {
            expected: "2".into(),
            found: format!("{}/4", s.norm4()),
        });
    }
    Ok(())
}

/// `Os` (basis `α_i s`) or `sO` (basis `s α_i`).
pub fn e8_sublattice(side: Side, s: &HalfOct) -> Result<IntegerLattice> {
    check_norm2(s)?;
    let rows: Vec<Vec<HalfOct>> = ring::alphas()
        .iter()
        .map(|a| {
            vec![match side {
                Side::Left => a.mul(s),
                Side::Right => s.mul(a),
            }]
        })
        .collect();
    IntegerLattice::from_octonion_rows(&rows)
}

/// Whether `Φ + Ψ = O` and `Φ ∩ Ψ = 2O`.
pub fn complementary(phi: &IntegerLattice, psi: &IntegerLattice) -> Result<bool> {
    Ok(phi.sum(psi)? == IntegerLattice::ambient(1) && phi.intersect(psi)? == IntegerLattice::twice(1))
}

/// `Λ(Φ, Ψ)` from the basis rows `(x, x, 0)`, `(0, x, x)` over `Φ` and
/// `(y, y, y)` over `Ψ`.
pub fn leech_from_pair(phi: &IntegerLattice, psi: &IntegerLattice) -> Result<IntegerLattice> {
    if phi.dim() != 8 || psi.dim() != 8 {
        return Err(Error::DimensionMismatch(phi.dim().max(psi.dim()), 8));
    }
    if !complementary(phi, psi)? {
        return Err(Error::NotComplementary);
    }
    let mut rows = Vec::with_capacity(24);
    for x in phi.basis() {
        let z = vec![0i64; 8];
        rows.push([x.as_slice(), x, &z].concat());
        rows.push([z.as_slice(), x, x].concat());
    }
    for y in psi.basis() {
        rows.push([y.as_slice(), y, y].concat());
    }
    IntegerLattice::from_rows(24, &rows)
}

/// `Λ(s, s′) = Λ(Os, Os′)`.
pub fn leech(s: &HalfOct, s2: &HalfOct) -> Result<IntegerLattice> {
    leech_from_pair(&e8_sublattice(Side::Left, s)?, &e8_sublattice(Side::Left, s2)?)
}

/// `L_u Λ(λ̄, λ)`.
pub fn leech_lambda(u: &HalfOct, lambda: &HalfOct) -> Result<IntegerLattice> {
    ring::check_unit(u)?;
    ring::check_lambda(lambda)?;
    let base = leech(&lambda.conj(), lambda)?;
    if *u == HalfOct::ONE {
        return Ok(base);
    }
    base.map(|x| translate_vec(Translation::L, u, x))
}

/// The three defining descriptions of `Λ(Φ, Ψ)` as membership tests.
pub mod definitions {
    use super::*;

    fn in_o3(v: &[HalfOct]) -> bool {
        v.len() == 3 && v.iter().all(ring::contains_half)
    }

    fn member(l: &IntegerLattice, x: &HalfOct) -> bool {
        l.contains_octs(std::slice::from_ref(x))
    }

    /// `a + b, b + c, a + c ∈ Φ` and `a + b + c ∈ Ψ`.
    pub fn sums(phi: &IntegerLattice, psi: &IntegerLattice, v: &[HalfOct]) -> bool {
        if !in_o3(v) {
            return false;
        }
        let (a, b, c) = (v[0], v[1], v[2]);
        member(phi, &(a + b)) && member(phi, &(b + c)) && member(phi, &(a + c)) && member(psi, &(a + b + c))
    }

    /// `(x₁ + z, x₂ + z, x₃ + z)` with `x_i ∈ Φ`, `x₁ + x₂ + x₃ ∈ Ψ`, `z ∈ Ψ`.
    /// Only `z mod 2O` matters, so the witness search runs over the
    /// residues of `Ψ`.
    pub fn shifted(phi: &IntegerLattice, psi: &IntegerLattice, v: &[HalfOct]) -> bool {
        if !in_o3(v) {
            return false;
        }
        for z in psi_residue_reps(psi) {
            let x: Vec<HalfOct> = v.iter().map(|a| *a - z).collect();
            if x.iter().all(|xi| member(phi, xi)) && member(psi, &(x[0] + x[1] + x[2])) {
                return true;
            }
        }
        false
    }

    fn psi_residue_reps(psi: &IntegerLattice) -> Vec<HalfOct> {
        crate::mod2::span_elements(&psi.f2_image())
            .into_iter()
            .map(|r| r.representative())
            .collect()
    }

    /// `(x + y + z, x + z, y + z)` with `x, y ∈ Φ`, `z ∈ Ψ`; the witness is
    /// forced: `z = b + c − a`, `x = a − c`, `y = a − b`.
    pub fn parametrized(phi: &IntegerLattice, psi: &IntegerLattice, v: &[HalfOct]) -> bool {
        if !in_o3(v) {
            return false;
        }
        let (a, b, c) = (v[0], v[1], v[2]);
        member(psi, &(b + c - a)) && member(phi, &(a - c)) && member(phi, &(a - b))
    }
}

/// Multiplication by a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Translation {
    /// `x ↦ u x`
    L,
    /// `x ↦ x u`
    R,
    /// `x ↦ u x u`
    B,
}

impl Translation {
    pub const ALL: [Translation; 3] = [Translation::L, Translation::R, Translation::B];

    pub fn apply(self, u: &HalfOct, x: &HalfOct) -> HalfOct {
        match self {
            Translation::L => u.mul(x),
            Translation::R => x.mul(u),
            Translation::B => u.mul(x).mul(u),
        }
    }
}

/// Slot-wise translation of a vector.
pub fn translate_vec(t: Translation, u: &HalfOct, x: &[HalfOct]) -> Vec<HalfOct> {
    x.iter().map(|o| t.apply(u, o)).collect()
}

pub fn translate(t: Translation, u: &HalfOct, l: &IntegerLattice) -> Result<IntegerLattice> {
    ring::check_unit(u)?;
    l.map(|x| translate_vec(t, u, x))
}

/// The group generated by all `L_u`, `R_u`, `B_u`, as permutations of the
/// sorted units.
pub fn translation_group() -> Result<PermGroup> {
    let units = ring::units();
    let idx = ring::index_of(units);
    let mut gens = Vec::with_capacity(3 * units.len());
    for t in Translation::ALL {
        for u in units {
            let images = units.iter().map(|x| idx[&t.apply(u, x)]).collect();
            let g = Perm::from_images(images)?;
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
    }
    let opts = BuildOptions {
        base: ring::alpha_unit_base(),
        base_certifies: true,
        ..Default::default()
    };
    PermGroup::build(units.len(), gens, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_is_odd_unimodular() {
        let o = IntegerLattice::ambient(1);
        assert!(!o.is_even_unimodular());
        assert_eq!(o.min_norm(), 1);
        assert_eq!(o.short_vectors(1).len(), 240);
    }

    #[test]
    fn os_is_e8() {
        let l = ring::lambda(0).unwrap();
        let os = e8_sublattice(Side::Left, &l).unwrap();
        assert!(os.is_even_unimodular());
        assert!(os.contains_twice());
        assert_eq!(os.short_vectors(2).len(), 240);
        assert!(e8_sublattice(Side::Left, &HalfOct::ONE).is_err());
    }

    #[test]
    fn intersections_agree() {
        let l = ring::lambda(3).unwrap();
        let a = e8_sublattice(Side::Left, &l).unwrap();
        let b = e8_sublattice(Side::Left, &l.conj()).unwrap();
        let c = e8_sublattice(Side::Right, &ring::lambda(100).unwrap()).unwrap();
        for (x, y) in [(&a, &b), (&a, &c), (&b, &c)] {
            assert_eq!(x.intersect(y).unwrap(), x.intersect_general(y).unwrap());
        }
        assert_eq!(a.intersect(&b).unwrap(), IntegerLattice::twice(1));
        assert_eq!(a.sum(&b).unwrap(), IntegerLattice::ambient(1));
    }
}
