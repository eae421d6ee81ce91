//! Octonions with coordinates in ½ℤ, stored as doubled machine integers.
//!
//! Every octavian integer has half-integral standard coordinates, so this is
//! the working representation for enumeration, mod-2 reduction and the
//! lattice code. Products are exact whenever the result again lies in ½ℤ⁸,
//! which is always the case inside the ring.

use std::ops::{Add, Neg, Sub};

use crate::octonion::{Octonion, MUL_TABLE};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct HalfOct(pub [i64; 8]);

impl HalfOct {
    pub const ZERO: HalfOct = HalfOct([0; 8]);
    pub const ONE: HalfOct = HalfOct([2, 0, 0, 0, 0, 0, 0, 0]);

    pub fn from_ints(c: [i64; 8]) -> Self {
        HalfOct(c.map(|v| 2 * v))
    }

    pub fn basis(k: usize) -> Self {
        let mut v = [0; 8];
        v[k] = 2;
        HalfOct(v)
    }

    pub fn doubled(&self) -> &[i64; 8] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 8]
    }

    pub fn conj(&self) -> Self {
        let mut v = self.0.map(|c| -c);
        v[0] = self.0[0];
        HalfOct(v)
    }

    /// `4·N(x)`, always an integer.
    pub fn norm4(&self) -> i64 {
        self.0.iter().map(|c| c * c).sum()
    }

    /// `N(x)` when integral (always for ring elements).
    pub fn norm(&self) -> Option<i64> {
        let n4 = self.norm4();
        (n4 % 4 == 0).then_some(n4 / 4)
    }

    /// `2·Re(x)`.
    pub fn trace(&self) -> i64 {
        self.0[0]
    }

    /// Doubled inner product `⟨x, y⟩ = 2 Σ x_k y_k`, as `2⟨x,y⟩` to stay integral.
    pub fn inner2(&self, other: &Self) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum::<i64>()
    }

    /// `⟨x, y⟩` when integral (always for ring elements).
    pub fn inner(&self, other: &Self) -> i64 {
        let d = self.inner2(other);
        debug_assert!(d % 2 == 0);
        d / 2
    }

    /// Product with the doubled numerators, i.e. `4·(xy)` in plain coordinates.
    fn raw_mul(&self, other: &Self) -> [i64; 8] {
        let mut out = [0i64; 8];
        for a in 0..8 {
            let x = self.0[a];
            if x == 0 {
                continue;
            }
            let row = &MUL_TABLE[a];
            for b in 0..8 {
                let y = other.0[b];
                if y == 0 {
                    continue;
                }
                let (s, c) = row[b];
                out[c as usize] += s as i64 * x * y;
            }
        }
        out
    }

    /// Exact product, or `None` when it leaves ½ℤ⁸.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let raw = self.raw_mul(other);
        if raw.iter().any(|c| c % 2 != 0) {
            return None;
        }
        Some(HalfOct(raw.map(|c| c / 2)))
    }

    /// Product of ring elements.
    pub fn mul(&self, other: &Self) -> Self {
        let raw = self.raw_mul(other);
        debug_assert!(raw.iter().all(|c| c % 2 == 0), "product left ½ℤ⁸");
        HalfOct(raw.map(|c| c / 2))
    }

    pub fn scale(&self, k: i64) -> Self {
        HalfOct(self.0.map(|c| c * k))
    }

    /// Exact division by an integer, if it stays in ½ℤ⁸.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        if self.0.iter().any(|c| c % k != 0) {
            return None;
        }
        Some(HalfOct(self.0.map(|c| c / k)))
    }

    pub fn to_octonion(&self) -> Octonion {
        Octonion::from_doubled(self.0)
    }

    pub fn from_octonion(x: &Octonion) -> Option<Self> {
        x.to_doubled().map(HalfOct)
    }
}

impl Add for HalfOct {
    type Output = HalfOct;
    fn add(self, rhs: HalfOct) -> HalfOct {
        HalfOct(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for HalfOct {
    type Output = HalfOct;
    fn sub(self, rhs: HalfOct) -> HalfOct {
        HalfOct(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for HalfOct {
    type Output = HalfOct;
    fn neg(self) -> HalfOct {
        HalfOct(self.0.map(|c| -c))
    }
}
