//! Exact octonion arithmetic over the rationals.
//!
//! Coordinates are taken over the standard basis `i_∞ = 1, i_0, i_1, …, i_6`,
//! stored in that order. The product of imaginary units follows the rule that
//! `{1, i_t, i_{t+1}, i_{t+3}}` is a quaternion basis with
//! `i_t i_{t+1} = i_{t+3}` (indices mod 7).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};

/// Basis labels in storage order.
pub const BASIS_LABELS: [&str; 8] = ["1", "i0", "i1", "i2", "i3", "i4", "i5", "i6"];

/// Storage index of `i_t` for `t` in `0..7`.
pub const fn unit_index(t: usize) -> usize {
    1 + t % 7
}

/// `MUL_TABLE[a][b] = (sign, c)` means `e_a e_b = sign · e_c`.
pub const MUL_TABLE: [[(i8, u8); 8]; 8] = build_mul_table();

const fn build_mul_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(0i8, 0u8); 8]; 8];
    let mut a = 0;
    while a < 8 {
        t[0][a] = (1, a as u8);
        t[a][0] = (1, a as u8);
        a += 1;
    }
    let mut a = 1;
    while a < 8 {
        t[a][a] = (-1, 0);
        a += 1;
    }
    let mut s = 0;
    while s < 7 {
        let p = 1 + s;
        let q = 1 + (s + 1) % 7;
        let r = 1 + (s + 3) % 7;
        t[p][q] = (1, r as u8);
        t[q][p] = (-1, r as u8);
        t[q][r] = (1, p as u8);
        t[r][q] = (-1, p as u8);
        t[r][p] = (1, q as u8);
        t[p][r] = (-1, q as u8);
        s += 1;
    }
    t
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Octonion(pub [ExactScalar; 8]);

impl Octonion {
    pub fn zero() -> Self {
        Octonion(std::array::from_fn(|_| ExactScalar::zero()))
    }

    pub fn real(x: ExactScalar) -> Self {
        let mut o = Self::zero();
        o.0[0] = x;
        o
    }

    pub fn one() -> Self {
        Self::real(scalar::int(1))
    }

    /// The basis element at storage index `k` (0 is the identity).
    pub fn basis(k: usize) -> Self {
        let mut o = Self::zero();
        o.0[k] = scalar::int(1);
        o
    }

    /// The imaginary unit `i_t`, `t` in `0..7`.
    pub fn i(t: usize) -> Self {
        Self::basis(unit_index(t))
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        Octonion(c.map(scalar::int))
    }

    /// Builds from doubled coordinates, i.e. `c / 2`.
    pub fn from_doubled(c: [i64; 8]) -> Self {
        Octonion(c.map(|v| scalar::frac(v, 2)))
    }

    pub fn coeffs(&self) -> &[ExactScalar; 8] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Octonion(std::array::from_fn(|k| &self.0[k] * s))
    }

    pub fn conj(&self) -> Self {
        Octonion(std::array::from_fn(|k| {
            if k == 0 {
                self.0[0].clone()
            } else {
                -&self.0[k]
            }
        }))
    }

    pub fn re(&self) -> ExactScalar {
        self.0[0].clone()
    }

    pub fn im(&self) -> Self {
        let mut o = self.clone();
        o.0[0] = ExactScalar::zero();
        o
    }

    pub fn norm(&self) -> ExactScalar {
        self.0.iter().map(|c| c * c).sum()
    }

    /// The doubled inner product `N(x+y) − N(x) − N(y)`.
    pub fn inner(&self, other: &Self) -> ExactScalar {
        let dot: ExactScalar = self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum();
        dot * scalar::int(2)
    }

    /// Multiplicative inverse `x̄ / N(x)`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn associator(a: &Self, b: &Self, c: &Self) -> Self {
        &(&(a * b) * c) - &(a * &(b * c))
    }

    /// Doubled coordinates as machine integers, when they are integral.
    pub fn to_doubled(&self) -> Option<[i64; 8]> {
        let mut out = [0i64; 8];
        for (o, c) in out.iter_mut().zip(&self.0) {
            *o = scalar::to_doubled_i64(c)?;
        }
        Some(out)
    }
}

impl<'a> Add<&'a Octonion> for &'a Octonion {
    type Output = Octonion;
    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|k| &self.0[k] + &rhs.0[k]))
    }
}

impl<'a> Sub<&'a Octonion> for &'a Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|k| &self.0[k] - &rhs.0[k]))
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(std::array::from_fn(|k| -&self.0[k]))
    }
}

impl<'a> Mul<&'a Octonion> for &'a Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        let mut out = Octonion::zero();
        for a in 0..8 {
            if self.0[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if rhs.0[b].is_zero() {
                    continue;
                }
                let (sign, c) = MUL_TABLE[a][b];
                let p = &self.0[a] * &rhs.0[b];
                if sign > 0 {
                    out.0[c as usize] += p;
                } else {
                    out.0[c as usize] -= p;
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Octonion {
            type Output = Octonion;
            fn $m(self, rhs: Octonion) -> Octonion {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Octonion {
    /// Eight `a/b` rationals joined by commas, in basis order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(scalar::format).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Octonion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 8 {
            return Err(Error::Parse(format!(
                "expected 8 comma-separated rationals, got {}",
                parts.len()
            )));
        }
        let mut o = Octonion::zero();
        for (slot, p) in o.0.iter_mut().zip(parts) {
            *slot = scalar::parse(p)?;
        }
        Ok(o)
    }
}

/// A row vector of one to three octonions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OctonionVector(pub Vec<Octonion>);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum VectorClass {
    Real,
    Commutative,
    Associative,
    Generic,
}

impl VectorClass {
    /// Whether a projector `x†x / N(x)` is defined for the class.
    pub fn admits_projector(self) -> bool {
        self != VectorClass::Generic
    }
}

impl OctonionVector {
    pub fn new(entries: Vec<Octonion>) -> Result<Self> {
        if entries.is_empty() || entries.len() > 3 {
            return Err(Error::Invalid(format!(
                "octonion vectors have 1 to 3 entries, got {}",
                entries.len()
            )));
        }
        Ok(OctonionVector(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Octonion] {
        &self.0
    }

    /// `N(x) = x x† = Σ N(x_k)`.
    pub fn norm(&self) -> ExactScalar {
        self.0.iter().map(Octonion::norm).sum()
    }

    pub fn inner(&self, other: &Self) -> Result<ExactScalar> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(self.len(), other.len()));
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a.inner(b)).sum())
    }

    pub fn classify(&self) -> VectorClass {
        classify_vector(self)
    }
}

/// Strongest of real / commutative / associative / generic for the entries.
pub fn classify_vector(v: &OctonionVector) -> VectorClass {
    let e = v.entries();
    if e.iter().all(|x| x.im().is_zero()) {
        return VectorClass::Real;
    }
    let commute = e
        .iter()
        .enumerate()
        .all(|(a, x)| e[a + 1..].iter().all(|y| x.commutator(y).is_zero()));
    if commute {
        return VectorClass::Commutative;
    }
    for a in e {
        for b in e {
            for c in e {
                if !Octonion::associator(a, b, c).is_zero() {
                    return VectorClass::Generic;
                }
            }
        }
    }
    VectorClass::Associative
}

/// Sign of a rational as -1, 0, 1.
#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use proptest::prelude::*;

    fn small_oct() -> impl Strategy<Value = Octonion> {
        prop::array::uniform8(-4i64..=4).prop_map(Octonion::from_ints)
    }

    fn half_oct() -> impl Strategy<Value = Octonion> {
        prop::array::uniform8(-5i64..=5).prop_map(Octonion::from_doubled)
    }

    #[test]
    fn table_rules() {
        // i_2 i_3 = i_5
        assert_eq!(&Octonion::i(2) * &Octonion::i(3), Octonion::i(5));
        for t in 0..7 {
            let it = Octonion::i(t);
            assert_eq!(&it * &it, -&Octonion::one());
            assert_eq!(&it * &Octonion::i(t + 1), Octonion::i(t + 3));
            // i_t i_{t+1} i_{t+3} = -1
            let p = &(&it * &Octonion::i(t + 1)) * &Octonion::i(t + 3);
            assert_eq!(p, -&Octonion::one());
            for s in 0..7 {
                if s != t {
                    let a = &it * &Octonion::i(s);
                    let b = &Octonion::i(s) * &it;
                    assert_eq!(a, -&b, "distinct units anticommute");
                }
            }
        }
    }

    #[test]
    fn every_basis_product_is_a_signed_basis_element() {
        for a in 0..8 {
            let mut seen = [false; 8];
            for b in 0..8 {
                seen[MUL_TABLE[a][b].1 as usize] = true;
            }
            assert!(seen.iter().all(|&s| s), "row {a} is a permutation");
        }
    }

    #[test]
    fn inner_products() {
        assert_eq!(Octonion::one().inner(&Octonion::one()), int(2));
        assert_eq!(Octonion::i(2).inner(&Octonion::i(3)), int(0));
        let x = Octonion::from_doubled([1, -1, 3, 0, 1, 1, -1, 1]);
        assert_eq!(x.norm(), x.inner(&x) / int(2));
        assert_eq!(x.re(), Octonion::one().inner(&x) / int(2));
    }

    #[test]
    fn lambda_zero_of_quadratic() {
        // λ = ½(−1 + i_0 + i_1 + i_2 + i_3 + …) style element with Re −½, N 2
        let l = Octonion::from_doubled([-1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(l.re(), frac(-1, 2));
        assert_eq!(l.norm(), int(2));
        let q = &(&(&l * &l) + &l) + &Octonion::real(int(2));
        assert!(q.is_zero());
    }

    #[test]
    fn classify_examples() {
        let two = Octonion::real(int(2));
        let z = Octonion::zero();
        let v = OctonionVector::new(vec![two.clone(), z.clone(), z.clone()]).unwrap();
        assert_eq!(classify_vector(&v), VectorClass::Real);
        assert!(classify_vector(&v) <= VectorClass::Commutative);

        let l = Octonion::from_doubled([-1, 1, 1, 1, 1, 1, 1, 1]);
        let one = Octonion::one();
        let v = OctonionVector::new(vec![one.clone(), one, l]).unwrap();
        assert_eq!(classify_vector(&v), VectorClass::Commutative);

        let q = OctonionVector::new(vec![Octonion::i(2), Octonion::i(3)]).unwrap();
        assert_eq!(classify_vector(&q), VectorClass::Associative);

        let g = OctonionVector::new(vec![Octonion::i(2), Octonion::i(3), Octonion::i(4)]).unwrap();
        assert!(!Octonion::associator(&Octonion::i(2), &Octonion::i(3), &Octonion::i(4)).is_zero());
        assert_eq!(classify_vector(&g), VectorClass::Generic);
    }

    #[test]
    fn text_roundtrip() {
        let x = Octonion::from_doubled([1, -1, 3, 0, 1, 1, -1, 1]);
        let s = x.to_string();
        assert_eq!(s, "1/2,-1/2,3/2,0/1,1/2,1/2,-1/2,1/2");
        assert_eq!(s.parse::<Octonion>().unwrap(), x);
        assert!("1,2".parse::<Octonion>().is_err());
    }

    proptest! {
        #[test]
        fn identity_element(x in half_oct()) {
            prop_assert_eq!(&Octonion::one() * &x, x.clone());
            prop_assert_eq!(&x * &Octonion::one(), x);
        }

        #[test]
        fn composition_law(x in small_oct(), y in small_oct()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn conjugation_reverses_products(x in half_oct(), y in half_oct()) {
            prop_assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
        }

        #[test]
        fn alternativity(x in half_oct(), y in half_oct()) {
            prop_assert_eq!(&x * &(&x * &y), &(&x * &x) * &y);
            prop_assert_eq!(&(&y * &x) * &x, &y * &(&x * &x));
        }

        #[test]
        fn characteristic_equation(x in half_oct()) {
            let two_re = x.re() * int(2);
            let lhs = &(&(&x * &x) - &x.scale(&two_re)) + &Octonion::real(x.norm());
            prop_assert!(lhs.is_zero());
        }

        #[test]
        fn norm_is_x_times_conjugate(x in half_oct()) {
            prop_assert_eq!(&x * &x.conj(), Octonion::real(x.norm()));
            prop_assert_eq!(&x.conj() * &x, Octonion::real(x.norm()));
        }
    }
}
