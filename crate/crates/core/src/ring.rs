//! The canonical octavian integer ring `O = Z(ω₁, ω₂, ω₄)`.
//!
//! `O` is spanned by eight simple roots `α₁…α₈` of an E8 root system. Those
//! roots are units, so a ring automorphism is determined by where it sends
//! them, and permutations of the 240 units represent `Aut(O)` faithfully.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;

use crate::enumerate;
use crate::error::{Error, Result};
use crate::half::HalfOct;
use crate::linalg;
use crate::mod2;
use crate::octonion::Octonion;
use crate::perm::{self, BuildOptions, Perm, PermGroup};
use crate::scalar::{self, ExactScalar};

/// `α₁…α₈` in doubled standard coordinates (basis order `1, i0, …, i6`).
pub const ALPHA_DOUBLED: [[i64; 8]; 8] = [
    [0, 1, -1, 0, 0, 0, 1, 1],
    [0, -1, -1, -1, 0, -1, 0, 0],
    [0, -1, 0, 1, 1, 0, -1, 0],
    [0, 0, 1, 0, -1, 1, 1, 0],
    [0, 1, 0, -1, 1, 0, -1, 0],
    [0, 0, 0, 1, 0, -1, 1, -1],
    [0, 0, -1, 0, -1, 1, -1, 0],
    [-1, 0, 1, 0, 0, -1, 0, 1],
];

/// Marks of the highest root.
pub const HIGHEST_ROOT_MARKS: [i64; 8] = [2, 3, 4, 6, 5, 4, 3, 2];

/// Edges of the E8 diagram in the labelling of the α's (0-based).
pub const E8_EDGES: [(usize, usize); 7] = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];

pub fn alphas() -> [HalfOct; 8] {
    ALPHA_DOUBLED.map(HalfOct)
}

/// `ω_r = ½(−1 + i_0 + i_r + i_{3r})`.
pub fn omega(r: usize) -> HalfOct {
    let mut v = [0i64; 8];
    v[0] = -1;
    for t in [0, r % 7, (3 * r) % 7] {
        v[1 + t] += 1;
    }
    HalfOct(v)
}

/// The E8 Cartan matrix in the α labelling.
pub fn cartan() -> [[i64; 8]; 8] {
    let mut c = [[0i64; 8]; 8];
    for (k, row) in c.iter_mut().enumerate() {
        row[k] = 2;
    }
    for (a, b) in E8_EDGES {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    c
}

fn cartan_inverse() -> &'static [[i64; 8]; 8] {
    static INV: OnceLock<[[i64; 8]; 8]> = OnceLock::new();
    INV.get_or_init(|| {
        let c: Vec<Vec<i64>> = cartan().iter().map(|r| r.to_vec()).collect();
        let (num, den) = linalg::rational_inverse(&c).expect("Cartan matrix is invertible");
        assert_eq!(den, BigInt::from(1), "E8 Cartan matrix is unimodular");
        let mut out = [[0i64; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                out[i][j] = i64::try_from(&num[i][j]).unwrap();
            }
        }
        out
    })
}

/// A basic triple `(i, j, l)` of orthogonal imaginary units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicTriple {
    pub i: Octonion,
    pub j: Octonion,
    pub l: Octonion,
}

impl BasicTriple {
    /// Validates the triple, naming the first condition that fails.
    pub fn new(i: Octonion, j: Octonion, l: Octonion) -> Result<Self> {
        let one = scalar::int(1);
        for (name, x) in [("i", &i), ("j", &j), ("l", &l)] {
            if !x.re().is_zero() {
                return Err(Error::NotBasicTriple(format!("{name} has nonzero real part")));
            }
            if x.norm() != one {
                return Err(Error::NotBasicTriple(format!("{name} does not have norm 1")));
            }
        }
        for (name, a, b) in [("i, j", &i, &j), ("i, l", &i, &l), ("j, l", &j, &l)] {
            if !a.inner(b).is_zero() {
                return Err(Error::NotBasicTriple(format!("{name} are not orthogonal")));
            }
        }
        let ij = &i * &j;
        if !ij.inner(&l).is_zero() || Octonion::associator(&i, &j, &l).is_zero() {
            return Err(Error::NotBasicTriple(
                "l lies in the quaternion subalgebra generated by i and j".into(),
            ));
        }
        Ok(BasicTriple { i, j, l })
    }

    /// `(i_2, i_3, i_4)`, whose standard basis is the coordinate basis.
    pub fn canonical() -> Self {
        BasicTriple::new(Octonion::i(2), Octonion::i(3), Octonion::i(4)).expect("canonical triple")
    }
}

/// `(i_∞, i_0, …, i_6)` built from a basic triple.
pub fn standard_basis_from_triple(t: &BasicTriple) -> [Octonion; 8] {
    let (i, j, l) = (&t.i, &t.j, &t.l);
    let ij = i * j;
    [
        Octonion::one(),
        -&(&ij * l),
        i * l,
        i.clone(),
        j.clone(),
        l.clone(),
        ij.clone(),
        j * l,
    ]
}

/// The α-basis of `O` with its Gram matrix under the doubled inner product.
#[derive(Clone, Debug)]
pub struct OctavianBasis {
    pub alphas: [Octonion; 8],
    pub gram: [[i64; 8]; 8],
}

pub fn canonical_basis() -> OctavianBasis {
    let a = alphas();
    let mut gram = [[0i64; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            gram[i][j] = a[i].inner(&a[j]);
        }
    }
    OctavianBasis {
        alphas: a.map(|x| x.to_octonion()),
        gram,
    }
}

impl OctavianBasis {
    pub fn gram_rows(&self) -> Vec<Vec<i64>> {
        self.gram.iter().map(|r| r.to_vec()).collect()
    }

    pub fn determinant(&self) -> BigInt {
        linalg::det(&self.gram_rows())
    }

    /// Diagonal 2, −1 exactly on the E8 diagram edges, 0 elsewhere.
    pub fn realizes_e8_diagram(&self) -> bool {
        self.gram == cartan()
    }

    /// `Σ c_k α_k` for the highest-root marks.
    pub fn highest_root(&self) -> Octonion {
        let mut acc = Octonion::zero();
        for (c, a) in HIGHEST_ROOT_MARKS.iter().zip(&self.alphas) {
            acc = &acc + &a.scale(&scalar::int(*c));
        }
        acc
    }
}

/// Coordinates over the α-basis, solved from the Gram system
/// `c · G = (⟨x, α_j⟩)_j`. `None` unless all are integers.
pub fn alpha_coords(x: &Octonion) -> Option<[i64; 8]> {
    let a = alphas();
    let mut b = [0i64; 8];
    for (bj, aj) in b.iter_mut().zip(&a) {
        let ip = x.inner(&aj.to_octonion());
        *bj = scalar::to_i64(&ip)?;
    }
    Some(solve_cartan(&b))
}

/// Fast path of [`alpha_coords`] for half-integral input.
pub fn alpha_coords_half(x: &HalfOct) -> Option<[i64; 8]> {
    let mut b = [0i64; 8];
    for (bj, aj) in b.iter_mut().zip(ALPHA_DOUBLED.iter()) {
        let d = x.inner2(&HalfOct(*aj));
        if d % 2 != 0 {
            return None;
        }
        *bj = d / 2;
    }
    Some(solve_cartan(&b))
}

fn solve_cartan(b: &[i64; 8]) -> [i64; 8] {
    let inv = cartan_inverse();
    let mut c = [0i64; 8];
    for (j, cj) in c.iter_mut().enumerate() {
        *cj = (0..8).map(|i| b[i] * inv[i][j]).sum();
    }
    c
}

/// `Σ c_k α_k`.
pub fn from_alpha(c: &[i64]) -> HalfOct {
    let mut v = [0i64; 8];
    for (ck, a) in c.iter().zip(ALPHA_DOUBLED.iter()) {
        for t in 0..8 {
            v[t] += ck * a[t];
        }
    }
    HalfOct(v)
}

/// Membership in `O`: integral α-coordinates.
pub fn contains(x: &Octonion) -> bool {
    alpha_coords(x).is_some()
}

pub fn contains_half(x: &HalfOct) -> bool {
    alpha_coords_half(x).is_some()
}

fn cartan_rows() -> Vec<Vec<i64>> {
    cartan().iter().map(|r| r.to_vec()).collect()
}

/// Elements of `O` with the given norm, sorted by doubled coordinates.
pub fn elements_of_norm(n: i64) -> Vec<HalfOct> {
    let mut v: Vec<HalfOct> = enumerate::vectors_of_norm(&cartan_rows(), 2 * n)
        .into_iter()
        .map(|c| from_alpha(&c))
        .collect();
    v.sort_unstable();
    v
}

/// The 240 units, sorted.
pub fn units() -> &'static [HalfOct] {
    static U: OnceLock<Vec<HalfOct>> = OnceLock::new();
    U.get_or_init(|| elements_of_norm(1))
}

/// The 2160 norm-2 elements, sorted.
pub fn roots2() -> &'static [HalfOct] {
    static R: OnceLock<Vec<HalfOct>> = OnceLock::new();
    R.get_or_init(|| elements_of_norm(2))
}

/// The ten orbits of `Aut(O)` on elements of norm 1 and 2, labelled by the
/// quadratic `x² − 2Re(x)x + N(x)` they satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormClass {
    Identity,
    MinusIdentity,
    ImaginaryUnit,
    OrderThree,
    OrderSix,
    OnePlusUnit,
    MinusOneMinusUnit,
    ConjugateLambda,
    Lambda,
    SumOfUnits,
}

impl NormClass {
    pub const ALL: [NormClass; 10] = [
        NormClass::Identity,
        NormClass::MinusIdentity,
        NormClass::ImaginaryUnit,
        NormClass::OrderThree,
        NormClass::OrderSix,
        NormClass::OnePlusUnit,
        NormClass::MinusOneMinusUnit,
        NormClass::ConjugateLambda,
        NormClass::Lambda,
        NormClass::SumOfUnits,
    ];

    /// The defining quadratic.
    pub fn label(self) -> &'static str {
        match self {
            NormClass::Identity => "x^2-2x+1",
            NormClass::MinusIdentity => "x^2+2x+1",
            NormClass::ImaginaryUnit => "x^2+1",
            NormClass::OrderThree => "x^2+x+1",
            NormClass::OrderSix => "x^2-x+1",
            NormClass::OnePlusUnit => "x^2-2x+2",
            NormClass::MinusOneMinusUnit => "x^2+2x+2",
            NormClass::ConjugateLambda => "x^2-x+2",
            NormClass::Lambda => "x^2+x+2",
            NormClass::SumOfUnits => "x^2+2",
        }
    }

    fn from_trace_norm(trace: i64, norm: i64) -> Option<Self> {
        Some(match (trace, norm) {
            (2, 1) => NormClass::Identity,
            (-2, 1) => NormClass::MinusIdentity,
            (0, 1) => NormClass::ImaginaryUnit,
            (-1, 1) => NormClass::OrderThree,
            (1, 1) => NormClass::OrderSix,
            (2, 2) => NormClass::OnePlusUnit,
            (-2, 2) => NormClass::MinusOneMinusUnit,
            (1, 2) => NormClass::ConjugateLambda,
            (-1, 2) => NormClass::Lambda,
            (0, 2) => NormClass::SumOfUnits,
            _ => return None,
        })
    }
}

pub fn classify_norm12(x: &Octonion) -> Result<NormClass> {
    if !contains(x) {
        return Err(Error::NotInRing(x.to_string()));
    }
    let n = x.norm();
    let trace = scalar::to_i64(&(x.re() * scalar::int(2))).expect("orders have integral trace");
    let norm = scalar::to_i64(&n).expect("orders have integral norm");
    NormClass::from_trace_norm(trace, norm).ok_or_else(|| Error::WrongNorm {
        expected: "1 or 2".into(),
        found: scalar::format(&n),
    })
}

pub fn classify_half(x: &HalfOct) -> Option<NormClass> {
    NormClass::from_trace_norm(x.trace(), x.norm()?)
}

/// Class sizes over the units and norm-2 elements, in [`NormClass::ALL`] order.
pub fn class_histogram() -> [usize; 10] {
    let mut h = [0usize; 10];
    for x in units().iter().chain(roots2()) {
        let c = classify_half(x).expect("norm 1 or 2");
        h[c as usize] += 1;
    }
    h
}

/// The 576 zeros of `x² + x + 2`, sorted by standard coordinates.
pub fn lambdas() -> &'static [HalfOct] {
    static L: OnceLock<Vec<HalfOct>> = OnceLock::new();
    L.get_or_init(|| roots2().iter().copied().filter(|x| x.trace() == -1).collect())
}

pub fn lambda(index: usize) -> Result<HalfOct> {
    lambdas()
        .get(index)
        .copied()
        .ok_or_else(|| Error::Invalid(format!("lambda index {index} out of range (576 candidates)")))
}

/// Checks that `x` lies in `O` and satisfies `x² + x + 2 = 0`.
pub fn check_lambda(x: &HalfOct) -> Result<()> {
    if !contains_half(x) || x.trace() != -1 || x.norm() != Some(2) {
        return Err(Error::NotLambda(x.to_octonion().to_string()));
    }
    Ok(())
}

pub fn check_unit(u: &HalfOct) -> Result<()> {
    if !contains_half(u) {
        return Err(Error::NotInRing(u.to_octonion().to_string()));
    }
    if u.norm() != Some(1) {
        return Err(Error::WrongNorm {
            expected: "1".into(),
            found: format!("{}/4", u.norm4()),
        });
    }
    Ok(())
}

pub fn unit(index: usize) -> Result<HalfOct> {
    units()
        .get(index)
        .copied()
        .ok_or_else(|| Error::Invalid(format!("unit index {index} out of range (240 units)")))
}

/// An automorphism of the octonion algebra preserving `O`, as the matrix
/// sending the standard coordinates of `x` (row vector) to those of its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingAutomorphism {
    num: [[i64; 8]; 8],
    den: i64,
}

impl RingAutomorphism {
    /// Builds from the images of the standard basis.
    pub fn from_basis_images(images: &[Octonion; 8]) -> Result<Self> {
        let mut den = BigInt::from(1);
        for x in images {
            for c in x.coeffs() {
                den = num_integer::Integer::lcm(&den, c.denom());
            }
        }
        let den_i = i64::try_from(&den).map_err(|_| Error::Overflow("automorphism matrix"))?;
        let mut num = [[0i64; 8]; 8];
        for (row, x) in num.iter_mut().zip(images) {
            for (slot, c) in row.iter_mut().zip(x.coeffs()) {
                let v = c * ExactScalar::from_integer(den.clone());
                *slot = scalar::to_i64(&v).ok_or(Error::Overflow("automorphism matrix"))?;
            }
        }
        let a = RingAutomorphism { num, den: den_i };
        if !a.is_multiplicative() {
            return Err(Error::Invalid("map is not multiplicative".into()));
        }
        Ok(a)
    }

    /// `x ↦ ω̄ x ω`, an algebra automorphism when `ω³ = 1`.
    pub fn conjugation(w: &HalfOct) -> Result<Self> {
        let w = w.to_octonion();
        let wb = w.conj();
        let images: [Octonion; 8] = std::array::from_fn(|k| &(&wb * &Octonion::basis(k)) * &w);
        Self::from_basis_images(&images)
    }

    /// Fixes the quaternion subalgebra `⟨1, i_2, i_3, i_5⟩` and negates its
    /// orthogonal complement, i.e. `(i_2, i_3, i_4) ↦ (i_2, i_3, −i_4)`.
    pub fn quaternion_flip() -> Self {
        let signs = [1, -1, -1, 1, 1, -1, 1, -1];
        let mut num = [[0i64; 8]; 8];
        for k in 0..8 {
            num[k][k] = signs[k];
        }
        RingAutomorphism { num, den: 1 }
    }

    pub fn identity() -> Self {
        let mut num = [[0i64; 8]; 8];
        for (k, row) in num.iter_mut().enumerate() {
            row[k] = 1;
        }
        RingAutomorphism { num, den: 1 }
    }

    pub fn matrix(&self) -> [[ExactScalar; 8]; 8] {
        std::array::from_fn(|i| std::array::from_fn(|j| scalar::frac(self.num[i][j], self.den)))
    }

    pub fn apply(&self, x: &Octonion) -> Octonion {
        let m = self.matrix();
        let mut out = Octonion::zero();
        for (k, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..8 {
                out.0[j] += c * &m[k][j];
            }
        }
        out
    }

    pub fn apply_half(&self, x: &HalfOct) -> Option<HalfOct> {
        let mut v = [0i64; 8];
        for (k, &c) in x.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..8 {
                v[j] += c * self.num[k][j];
            }
        }
        HalfOct(v).div_exact(self.den)
    }

    /// Product preserved on all 64 pairs of basis elements, and 1 fixed.
    pub fn is_multiplicative(&self) -> bool {
        let img: Vec<Octonion> = (0..8).map(|k| self.apply(&Octonion::basis(k))).collect();
        if img[0] != Octonion::one() {
            return false;
        }
        for a in 0..8 {
            for b in 0..8 {
                let prod = &Octonion::basis(a) * &Octonion::basis(b);
                if self.apply(&prod) != &img[a] * &img[b] {
                    return false;
                }
            }
        }
        true
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        let mut num = [[0i64; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                num[i][j] = (0..8).map(|k| self.num[i][k] * other.num[k][j]).sum();
            }
        }
        let mut den = self.den * other.den;
        let g = num.iter().flatten().fold(den, |g, &x| num_integer::gcd(g, x));
        if g > 1 {
            for x in num.iter_mut().flatten() {
                *x /= g;
            }
            den /= g;
        }
        RingAutomorphism { num, den }
    }

    /// The induced permutation of a point list closed under the map.
    pub fn permutation_of(&self, points: &[HalfOct], index: &FxHashMap<HalfOct, u32>) -> Result<Perm> {
        let images = points
            .iter()
            .map(|p| {
                let q = self
                    .apply_half(p)
                    .ok_or_else(|| Error::NotPermutation("image left ½ℤ⁸".into()))?;
                index
                    .get(&q)
                    .copied()
                    .ok_or_else(|| Error::NotPermutation("image outside the point set".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Perm::from_images(images)
    }
}

/// The 56 conjugations by order-3 units and the quaternion flip.
pub fn aut_generators() -> Vec<RingAutomorphism> {
    let mut gens: Vec<RingAutomorphism> = units()
        .iter()
        .filter(|u| u.trace() == -1)
        .map(|w| RingAutomorphism::conjugation(w).expect("order-3 unit conjugation"))
        .collect();
    gens.push(RingAutomorphism::quaternion_flip());
    gens
}

pub fn index_of(points: &[HalfOct]) -> FxHashMap<HalfOct, u32> {
    points.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect()
}

/// Positions of `α₁…α₈` among the sorted units: a base certifying the
/// identity for any linear action.
pub fn alpha_unit_base() -> Vec<u32> {
    let idx = index_of(units());
    alphas().iter().map(|a| idx[a]).collect()
}

fn unit_perms(gens: &[RingAutomorphism]) -> Result<Vec<Perm>> {
    let idx = index_of(units());
    gens.iter().map(|g| g.permutation_of(units(), &idx)).collect()
}

fn certified(base: Vec<u32>) -> BuildOptions {
    BuildOptions {
        base,
        base_certifies: true,
        ..Default::default()
    }
}

/// `Aut(O)` as permutations of the sorted units.
pub fn aut_group() -> Result<PermGroup> {
    PermGroup::build(240, unit_perms(&aut_generators())?, certified(alpha_unit_base()))
}

/// The subgroup generated by the 56 conjugations alone.
pub fn conjugation_subgroup() -> Result<PermGroup> {
    let mut gens = aut_generators();
    gens.pop();
    PermGroup::build(240, unit_perms(&gens)?, certified(alpha_unit_base()))
}

/// Length of the orbit of the ordered basic triple `(i_2, i_3, i_4)`.
pub fn basic_triple_orbit_len() -> Result<usize> {
    let idx = index_of(units());
    let t: Vec<u32> = [2usize, 3, 4].iter().map(|&t| idx[&HalfOct::basis(1 + t)]).collect();
    Ok(perm::tuple_orbit_len(&unit_perms(&aut_generators())?, &t))
}

/// The stabilizer of a residue class `λ + 2O` and its action on the eight
/// zeros of `x² + x + 2` in that class.
#[derive(Debug)]
pub struct FrameStabilizer {
    pub lambda: HalfOct,
    /// The 16 norm-2 representatives of `λ + 2O`.
    pub frame: Vec<HalfOct>,
    /// The 8 representatives with real part −½, sorted.
    pub lambda_primes: Vec<HalfOct>,
    /// The stabilizer, acting on the units.
    pub group: PermGroup,
    /// Its generators acting on `lambda_primes` by position.
    pub action: Vec<Perm>,
}

/// Labels of the three orbits on 4-subsets of the eight `λ′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadOrbit {
    /// The 14-orbit whose least quadruple is lexicographically smaller.
    A14,
    B42,
    /// The other 14-orbit.
    C14,
}

impl QuadOrbit {
    pub fn label(self) -> &'static str {
        match self {
            QuadOrbit::A14 => "14a",
            QuadOrbit::B42 => "42",
            QuadOrbit::C14 => "14b",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "14a" => Ok(QuadOrbit::A14),
            "42" => Ok(QuadOrbit::B42),
            "14b" => Ok(QuadOrbit::C14),
            _ => Err(Error::Parse(format!(
                "quadruple orbit must be 14a, 42 or 14b, got {s:?}"
            ))),
        }
    }
}

pub fn frame_stabilizer(lambda: &HalfOct) -> Result<FrameStabilizer> {
    check_lambda(lambda)?;
    let u = units();
    let l = lambdas();
    // domain: units, then the zeros of x²+x+2, then all 256 residues
    let mut points: Vec<HalfOct> = u.to_vec();
    points.extend_from_slice(l);
    let res_offset = points.len();
    let reps: Vec<HalfOct> = (0..256u32)
        .map(|r| from_alpha(&(0..8).map(|i| i64::from(r >> i & 1)).collect::<Vec<_>>()))
        .collect();
    let idx = index_of(&points);
    let gens = aut_generators();
    let mut perms = Vec::with_capacity(gens.len());
    for g in &gens {
        let mut images = Vec::with_capacity(points.len() + 256);
        for p in &points {
            let q = g
                .apply_half(p)
                .ok_or_else(|| Error::NotPermutation("image left ½ℤ⁸".into()))?;
            images.push(
                *idx.get(&q)
                    .ok_or_else(|| Error::NotPermutation("image outside O".into()))?,
            );
        }
        for r in &reps {
            let q = g
                .apply_half(r)
                .ok_or_else(|| Error::NotPermutation("image left ½ℤ⁸".into()))?;
            images.push((res_offset + mod2::reduce_half(&q)?.bits() as usize) as u32);
        }
        perms.push(Perm::from_images(images)?);
    }
    let target = (res_offset + mod2::reduce_half(lambda)?.bits() as usize) as u32;
    let mut base = vec![target];
    base.extend(alpha_unit_base());
    let full = PermGroup::build(points.len() + 256, perms, certified(base))?;
    let stab: Vec<Perm> = full.stabilizer_generators(1);

    let frame: Vec<HalfOct> = {
        let c = mod2::reduce_half(lambda)?;
        roots2()
            .iter()
            .copied()
            .filter(|x| mod2::reduce_half(x).map(|r| r == c).unwrap_or(false))
            .collect()
    };
    let lambda_primes: Vec<HalfOct> = frame.iter().copied().filter(|x| x.trace() == -1).collect();
    let positions: Vec<u32> = lambda_primes.iter().map(|x| idx[x]).collect();
    let mut action = Vec::with_capacity(stab.len());
    let mut unit_gens = Vec::with_capacity(stab.len());
    for g in &stab {
        let img: Vec<u32> = positions
            .iter()
            .map(|&p| {
                let q = g.apply(p);
                positions.iter().position(|&x| x == q).map(|i| i as u32)
            })
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::NotPermutation("stabilizer moved a λ′ out of its frame".into()))?;
        action.push(Perm::from_images(img)?);
        unit_gens.push(Perm::from_images(g.images()[..240].to_vec())?);
    }
    let group = PermGroup::build(240, unit_gens, certified(alpha_unit_base()))?;
    Ok(FrameStabilizer {
        lambda: *lambda,
        frame,
        lambda_primes,
        group,
        action,
    })
}

impl FrameStabilizer {
    /// Orbit of `λ` itself among the eight `λ′` (as positions).
    pub fn lambda_orbit(&self) -> Vec<u32> {
        let start = self
            .lambda_primes
            .iter()
            .position(|x| *x == self.lambda)
            .expect("λ is one of its own λ′") as u32;
        perm::orbits(8, &self.action)
            .into_iter()
            .find(|o| o.contains(&start))
            .unwrap_or_default()
    }

    /// Orbits on unordered `k`-subsets of the eight `λ′`, each orbit sorted
    /// and the list ordered by least member.
    pub fn subset_orbits(&self, k: usize) -> Vec<Vec<Vec<u32>>> {
        let subsets = k_subsets(8, k);
        let index: FxHashMap<Vec<u32>, u32> = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let perms: Vec<Perm> = self
            .action
            .iter()
            .map(|g| {
                let imgs = subsets
                    .iter()
                    .map(|s| {
                        let mut t: Vec<u32> = s.iter().map(|&p| g.apply(p)).collect();
                        t.sort_unstable();
                        index[&t]
                    })
                    .collect();
                Perm::from_images(imgs).expect("subset action is a permutation")
            })
            .collect();
        perm::orbits(subsets.len(), &perms)
            .into_iter()
            .map(|o| o.into_iter().map(|i| subsets[i as usize].clone()).collect())
            .collect()
    }

    /// The three quadruple orbits with their labels.
    pub fn quadruple_orbits(&self) -> Vec<(QuadOrbit, Vec<Vec<u32>>)> {
        let orbits = self.subset_orbits(4);
        let mut out = Vec::new();
        let mut seen_14 = false;
        for o in orbits {
            let label = match o.len() {
                14 if !seen_14 => {
                    seen_14 = true;
                    QuadOrbit::A14
                }
                14 => QuadOrbit::C14,
                _ => QuadOrbit::B42,
            };
            out.push((label, o));
        }
        out
    }

    /// The quadruple orbit with a given label (only meaningful when the
    /// orbit sizes are 14, 14 and 42).
    pub fn quadruple_orbit(&self, label: QuadOrbit) -> Option<Vec<Vec<u32>>> {
        self.quadruple_orbits()
            .into_iter()
            .find(|(l, _)| *l == label)
            .map(|(_, o)| o)
    }

    /// λ′ values for a subset of positions.
    pub fn select(&self, positions: &[u32]) -> Vec<HalfOct> {
        positions.iter().map(|&p| self.lambda_primes[p as usize]).collect()
    }
}

/// Whether a family of 4-subsets of `0..8` covers every 3-subset exactly once.
pub fn is_steiner_3_4_8(blocks: &[Vec<u32>]) -> bool {
    let mut count = FxHashMap::default();
    for b in blocks {
        for t in k_subsets_of(b, 3) {
            *count.entry(t).or_insert(0u32) += 1;
        }
    }
    count.len() == 56 && count.values().all(|&c| c == 1)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    k_subsets_of(&(0..n).collect::<Vec<_>>(), k)
}

fn k_subsets_of(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Sign helper used by display code.
pub fn is_negative(x: &ExactScalar) -> bool {
    x.is_negative()
}
