//! Real-linear maps of `O^n` in α-coordinates.
//!
//! A map is stored as an integer numerator matrix and a positive
//! denominator; it acts on row vectors from the right, `y = x · num / den`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::half::HalfOct;
use crate::lattice::{self, IntegerLattice, Translation};
use crate::octonion::{Octonion, OctonionVector, VectorClass};
use crate::ring;
use crate::scalar::{self, ExactScalar};

/// Where a map came from, for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tag {
    Reflection(Vec<HalfOct>),
    Translation(Translation, HalfOct),
    Coordinate { perm: [usize; 3], signs: [i64; 3] },
    Composite,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearIsometry {
    dim: usize,
    num: Vec<i64>,
    den: i64,
    pub tag: Tag,
}

impl fmt::Debug for LinearIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearIsometry({}x{} /{} {:?})",
            self.dim, self.dim, self.den, self.tag
        )
    }
}

/// Exact α-coordinates of an arbitrary octonion.
pub fn alpha_coords_exact(x: &Octonion) -> [ExactScalar; 8] {
    let a = ring::alphas().map(|a| a.to_octonion());
    let b: Vec<ExactScalar> = a.iter().map(|aj| x.inner(aj)).collect();
    let c = ring::cartan();
    let cm: Vec<Vec<i64>> = c.iter().map(|r| r.to_vec()).collect();
    let (inv, den) = crate::linalg::rational_inverse(&cm).expect("Cartan matrix is invertible");
    let den = BigRational::from_integer(den);
    std::array::from_fn(|j| {
        let mut s = ExactScalar::zero();
        for i in 0..8 {
            s += &b[i] * BigRational::from_integer(inv[i][j].clone());
        }
        s / &den
    })
}

impl LinearIsometry {
    pub fn identity(dim: usize) -> Self {
        let mut num = vec![0i64; dim * dim];
        for i in 0..dim {
            num[i * dim + i] = 1;
        }
        LinearIsometry {
            dim,
            num,
            den: 1,
            tag: Tag::Composite,
        }
    }

    fn normalized(dim: usize, mut num: Vec<i64>, mut den: i64, tag: Tag) -> Self {
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = num.iter().fold(den, |g, &x| g.gcd(&x));
        if g > 1 {
            num.iter_mut().for_each(|x| *x /= g);
            den /= g;
        }
        LinearIsometry { dim, num, den, tag }
    }

    /// From the images of the α-basis vectors of `O^n`, computed exactly.
    pub fn from_exact_fn(n: usize, tag: Tag, f: impl Fn(&[Octonion]) -> Vec<Octonion>) -> Result<Self> {
        let dim = 8 * n;
        let alphas = ring::alphas().map(|a| a.to_octonion());
        let mut rows: Vec<Vec<ExactScalar>> = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut x = vec![Octonion::zero(); n];
            x[i / 8] = alphas[i % 8].clone();
            let y = f(&x);
            if y.len() != n {
                return Err(Error::DimensionMismatch(y.len(), n));
            }
            let mut row = Vec::with_capacity(dim);
            for o in &y {
                row.extend(alpha_coords_exact(o));
            }
            rows.push(row);
        }
        let mut den = BigInt::one();
        for x in rows.iter().flatten() {
            den = den.lcm(x.denom());
        }
        let den_r = BigRational::from_integer(den.clone());
        let num = rows
            .iter()
            .flatten()
            .map(|x| scalar::to_i64(&(x * &den_r)).ok_or(Error::Overflow("isometry matrix")))
            .collect::<Result<Vec<i64>>>()?;
        let den = i64::try_from(&den).map_err(|_| Error::Overflow("isometry denominator"))?;
        Ok(Self::normalized(dim, num, den, tag))
    }

    /// From a map that sends `O^n` into `O^n`, evaluated on ring elements.
    pub fn from_ring_fn(n: usize, den: i64, tag: Tag, f: impl Fn(&[HalfOct]) -> Vec<HalfOct>) -> Result<Self> {
        let dim = 8 * n;
        let mut num = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            let mut e = vec![0i64; dim];
            e[i] = 1;
            let y = f(&lattice::to_octs(&e));
            let c = lattice::from_octs(&y).ok_or(Error::NonIntegralImage(den))?;
            num.extend(c);
        }
        Ok(Self::normalized(dim, num, den, tag))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn numerator(&self) -> &[i64] {
        &self.num
    }

    pub fn entry(&self, i: usize, j: usize) -> ExactScalar {
        scalar::frac(self.num[i * self.dim + j], self.den)
    }

    /// `x · M` for an integral vector; fails when the image is not integral.
    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.dim];
        self.apply_into(x, &mut out)?;
        Ok(out)
    }

    pub fn apply_into(&self, x: &[i64], out: &mut [i64]) -> Result<()> {
        out.iter_mut().for_each(|o| *o = 0);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.num[i * self.dim..(i + 1) * self.dim];
            for (o, &m) in out.iter_mut().zip(row) {
                *o += xi * m;
            }
        }
        if self.den != 1 {
            for o in out.iter_mut() {
                if *o % self.den != 0 {
                    return Err(Error::NonIntegralImage(self.den));
                }
                *o /= self.den;
            }
        }
        Ok(())
    }

    pub fn apply_octs(&self, x: &[HalfOct]) -> Result<Vec<HalfOct>> {
        let c = lattice::from_octs(x).ok_or_else(|| Error::NotInRing(format!("{x:?}")))?;
        Ok(lattice::to_octs(&self.apply(&c)?))
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let d = self.dim;
        let mut num = vec![0i64; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.num[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    num[i * d + j] += a * other.num[k * d + j];
                }
            }
        }
        let den = self
            .den
            .checked_mul(other.den)
            .ok_or(Error::Overflow("isometry product"))?;
        Ok(Self::normalized(d, num, den, Tag::Composite))
    }

    /// `a⁻¹ · self · a` for an invertible `a` given with its inverse.
    pub fn conjugate(&self, a: &Self, a_inv: &Self) -> Result<Self> {
        a_inv.then(self)?.then(a)
    }

    pub fn is_identity(&self) -> bool {
        self.num == Self::identity(self.dim).num && self.den == 1
    }

    pub fn same_matrix(&self, other: &Self) -> bool {
        self.dim == other.dim && self.den == other.den && self.num == other.num
    }

    pub fn is_involution(&self) -> bool {
        self.then(self).is_ok_and(|m| m.is_identity())
    }

    /// `M G Mᵀ = G` for the doubled inner product.
    pub fn preserves_gram(&self) -> bool {
        let d = self.dim;
        let n = d / 8;
        let g = IntegerLattice::ambient(n).gram();
        // M G
        let mut mg = vec![0i128; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.num[i * d + k] as i128;
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    mg[i * d + j] += a * g[k][j] as i128;
                }
            }
        }
        let den2 = (self.den as i128) * (self.den as i128);
        for i in 0..d {
            for j in 0..d {
                let s: i128 = (0..d).map(|k| mg[i * d + k] * self.num[j * d + k] as i128).sum();
                if s != den2 * g[i][j] as i128 {
                    return false;
                }
            }
        }
        true
    }

    /// Every basis image lies in the lattice. For an isometry this makes it
    /// an automorphism.
    pub fn stabilizes(&self, l: &IntegerLattice) -> bool {
        l.dim() == self.dim && l.basis().iter().all(|b| self.apply(b).is_ok_and(|y| l.contains(&y)))
    }

    /// The slot-wise translation `X_u`.
    pub fn translation(n: usize, t: Translation, u: &HalfOct) -> Result<Self> {
        ring::check_unit(u)?;
        Self::from_ring_fn(n, 1, Tag::Translation(t, *u), |x| lattice::translate_vec(t, u, x))
    }

    /// `(x_0, x_1, x_2) ↦ (y_0, y_1, y_2)` with `y_{perm[k]} = signs[k] x_k`.
    pub fn coordinate(perm: [usize; 3], signs: [i64; 3]) -> Self {
        let d = 24;
        let mut num = vec![0i64; d * d];
        for k in 0..3 {
            for i in 0..8 {
                num[(8 * k + i) * d + 8 * perm[k] + i] = signs[k];
            }
        }
        LinearIsometry {
            dim: d,
            num,
            den: 1,
            tag: Tag::Coordinate { perm, signs },
        }
    }
}

/// The 48 coordinate permutations and sign changes of `O³`.
pub fn coordinate_maps() -> Vec<LinearIsometry> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for p in perms {
        for s in 0..8 {
            let signs = [0, 1, 2].map(|k| if s >> k & 1 == 1 { -1 } else { 1 });
            out.push(LinearIsometry::coordinate(p, signs));
        }
    }
    out
}

/// `[r] = r† r / N(r)`: entry `(j, k)` is `r̄_j r_k / N(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianProjector {
    pub entries: Vec<Vec<Octonion>>,
}

impl HermitianProjector {
    pub fn new(r: &OctonionVector) -> Result<Self> {
        if r.classify() == VectorClass::Generic {
            return Err(Error::NotAssociative);
        }
        let n = r.norm();
        if n.is_zero() {
            return Err(Error::ZeroVector);
        }
        let inv = n.recip();
        let e = r.entries();
        let entries = e
            .iter()
            .map(|a| e.iter().map(|b| (&a.conj() * b).scale(&inv)).collect())
            .collect();
        Ok(HermitianProjector { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.size()).map(|k| self.entries[k][k].re()).sum()
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.size();
        (0..n).all(|j| (0..n).all(|k| self.entries[j][k] == self.entries[k][j].conj()))
    }
}

pub fn projector(r: &OctonionVector) -> Result<HermitianProjector> {
    HermitianProjector::new(r)
}

fn entries_commute_or_associate(r: &[HalfOct]) -> Result<()> {
    let v = OctonionVector::new(r.iter().map(HalfOct::to_octonion).collect())?;
    if v.classify() == VectorClass::Generic {
        return Err(Error::NotAssociative);
    }
    Ok(())
}

/// `W_r : x ↦ x(I − 2[r])` with `(xM)_j = Σ_k x_k M_kj`, for `r ∈ O^n`.
///
/// `N(r) M_kj = N(r) δ_kj − 2 r̄_k r_j`, and `x_k (r̄_k r_j)` stays in `O`, so
/// the numerator is computed in ring arithmetic.
pub fn reflection(r: &[HalfOct]) -> Result<LinearIsometry> {
    entries_commute_or_associate(r)?;
    let n = r.len();
    let nr: i64 = r.iter().map(|x| x.norm().expect("ring element")).sum();
    if nr == 0 {
        return Err(Error::ZeroVector);
    }
    let p: Vec<Vec<HalfOct>> = r.iter().map(|a| r.iter().map(|b| a.conj().mul(b)).collect()).collect();
    LinearIsometry::from_ring_fn(n, nr, Tag::Reflection(r.to_vec()), |x| {
        (0..n)
            .map(|j| {
                let mut acc = x[j].scale(nr);
                for k in 0..n {
                    acc = acc - x[k].mul(&p[k][j]).scale(2);
                }
                acc
            })
            .collect()
    })
}

/// The same map computed with exact rational octonions, for any
/// commutative or associative `r`.
pub fn reflection_exact(r: &OctonionVector) -> Result<LinearIsometry> {
    let proj = projector(r)?;
    let n = r.len();
    let two = scalar::int(2);
    let tag = match r
        .entries()
        .iter()
        .map(HalfOct::from_octonion)
        .collect::<Option<Vec<_>>>()
    {
        Some(h) => Tag::Reflection(h),
        None => Tag::Composite,
    };
    LinearIsometry::from_exact_fn(n, tag, |x| {
        (0..n)
            .map(|j| {
                let mut acc = x[j].clone();
                for k in 0..n {
                    acc = &acc - &(&x[k] * &proj.entries[k][j]).scale(&two);
                }
                acc
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> HalfOct {
        ring::lambda(0).unwrap()
    }

    #[test]
    fn simple_reflections() {
        let two = HalfOct::ONE.scale(2);
        let w = reflection(&[two, HalfOct::ZERO, HalfOct::ZERO]).unwrap();
        assert!(w.same_matrix(&LinearIsometry::coordinate([0, 1, 2], [-1, 1, 1])));
        let l = lam();
        let r = [HalfOct::ONE, HalfOct::ONE, l];
        let w = reflection(&r).unwrap();
        assert!(w.is_involution());
        assert!(w.preserves_gram());
        let exact =
            reflection_exact(&OctonionVector::new(r.iter().map(|x| x.to_octonion()).collect()).unwrap()).unwrap();
        assert!(w.same_matrix(&exact));
    }

    #[test]
    fn projector_of_one_one_lambda() {
        let l = lam().to_octonion();
        let r = OctonionVector::new(vec![Octonion::one(), Octonion::one(), l.clone()]).unwrap();
        let p = projector(&r).unwrap();
        let q = scalar::frac(1, 4);
        let one = Octonion::one();
        let expect = [
            [one.clone(), one.clone(), l.clone()],
            [one.clone(), one.clone(), l.clone()],
            [l.conj(), l.conj(), Octonion::real(scalar::int(2))],
        ];
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(p.entries[j][k], expect[j][k].scale(&q));
            }
        }
        assert!(p.is_hermitian());
        assert_eq!(p.trace(), scalar::int(1));
    }

    #[test]
    fn generic_vectors_are_rejected() {
        let r = [HalfOct::basis(3), HalfOct::basis(4), HalfOct::basis(5)];
        assert_eq!(reflection(&r).unwrap_err(), Error::NotAssociative);
    }

    #[test]
    fn coordinate_maps_are_isometries() {
        let maps = coordinate_maps();
        assert_eq!(maps.len(), 48);
        for m in &maps {
            assert!(m.preserves_gram());
        }
    }

    #[test]
    fn translations_compose() {
        let u = ring::unit(17).unwrap();
        let a = LinearIsometry::translation(3, Translation::L, &u).unwrap();
        let b = LinearIsometry::translation(3, Translation::L, &u.conj()).unwrap();
        assert!(a.then(&b).unwrap().is_identity());
        assert!(a.preserves_gram());
    }
}
