//! Projectors on `O³`, their orbits under `p ↦ A p A` with `A = I − 2[r]`,
//! Jordan frames and generalized polygon checks.
//!
//! Matrices have octonion entries with dyadic coordinates, stored as `i128`
//! numerators over one shared power-of-two denominator in lowest terms.
//! Integer overflow is reported, never wrapped.

use std::collections::{BTreeMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::half::HalfOct;
use crate::octonion::MUL_TABLE;
use crate::scalar::{self, ExactScalar};

type Oct = [i128; 8];

const ZERO: Oct = [0; 8];

fn oct_mul(a: &Oct, b: &Oct) -> Option<Oct> {
    let mut out = [0i128; 8];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let (s, c) = MUL_TABLE[i][j];
            let p = x.checked_mul(y)?;
            let slot = &mut out[c as usize];
            *slot = if s > 0 {
                slot.checked_add(p)?
            } else {
                slot.checked_sub(p)?
            };
        }
    }
    Some(out)
}

fn oct_conj(a: &Oct) -> Oct {
    let mut c = a.map(|x| -x);
    c[0] = a[0];
    c
}

fn oct_add(a: &Oct, b: &Oct) -> Option<Oct> {
    let mut out = [0i128; 8];
    for k in 0..8 {
        out[k] = a[k].checked_add(b[k])?;
    }
    Some(out)
}

/// A 3×3 octonion matrix `num / den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OctMatrix {
    num: [[Oct; 3]; 3],
    den: i128,
}

impl OctMatrix {
    fn normalized(mut num: [[Oct; 3]; 3], mut den: i128) -> Self {
        if den < 0 {
            den = -den;
            for x in num.iter_mut().flatten().flatten() {
                *x = -*x;
            }
        }
        let mut g = den;
        for &x in num.iter().flatten().flatten() {
            g = gcd(g, x);
        }
        if g > 1 {
            for x in num.iter_mut().flatten().flatten() {
                *x /= g;
            }
            den /= g;
        }
        OctMatrix { num, den }
    }

    pub fn identity() -> Self {
        let mut num = [[ZERO; 3]; 3];
        for (k, row) in num.iter_mut().enumerate() {
            row[k][0] = 1;
        }
        OctMatrix { num, den: 1 }
    }

    pub fn entry(&self, j: usize, k: usize) -> [ExactScalar; 8] {
        self.num[j][k].map(|x| ratio(x, self.den))
    }

    /// Real parts of the entries in lowest terms, when all entries are real.
    pub fn is_real(&self) -> bool {
        self.num.iter().flatten().all(|o| o[1..].iter().all(|&x| x == 0))
    }

    /// `(self · other)_{jk} = Σ_m self_{jm} other_{mk}`.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        let mut num = [[ZERO; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                let mut acc = ZERO;
                for m in 0..3 {
                    let p = oct_mul(&self.num[j][m], &other.num[m][k])?;
                    acc = oct_add(&acc, &p)?;
                }
                num[j][k] = acc;
            }
        }
        let den = self.den.checked_mul(other.den)?;
        Some(Self::normalized(num, den))
    }

    pub fn add(&self, other: &Self) -> Option<Self> {
        let l = lcm(self.den, other.den)?;
        let (fa, fb) = (l / self.den, l / other.den);
        let mut num = [[ZERO; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                for c in 0..8 {
                    num[j][k][c] = self.num[j][k][c]
                        .checked_mul(fa)?
                        .checked_add(other.num[j][k][c].checked_mul(fb)?)?;
                }
            }
        }
        Some(Self::normalized(num, l))
    }

    pub fn is_hermitian(&self) -> bool {
        (0..3).all(|j| (0..3).all(|k| self.num[j][k] == oct_conj(&self.num[k][j])))
    }

    /// Real part of the trace.
    pub fn trace(&self) -> ExactScalar {
        let t: i128 = (0..3).map(|k| self.num[k][k][0]).sum();
        ratio(t, self.den)
    }

    /// `Re tr(self · other)`, computed without forming the product.
    pub fn re_trace_product(&self, other: &Self) -> Option<ExactScalar> {
        let mut s: i128 = 0;
        for j in 0..3 {
            for k in 0..3 {
                // Re(ab) = Σ a_0 b_0 − Σ_{i>0} a_i b_i
                let a = &self.num[j][k];
                let b = &other.num[k][j];
                let mut re = a[0].checked_mul(b[0])?;
                for c in 1..8 {
                    re = re.checked_sub(a[c].checked_mul(b[c])?)?;
                }
                s = s.checked_add(re)?;
            }
        }
        let d = self.den.checked_mul(other.den)?;
        Some(ratio(s, d))
    }
}

fn ratio(n: i128, d: i128) -> ExactScalar {
    ExactScalar::new(n.into(), d.into())
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: i128, b: i128) -> Option<i128> {
    (a / gcd(a, b)).checked_mul(b)
}

/// A rank-one Hermitian idempotent of trace 1, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(OctMatrix);

impl ProjPoint {
    /// `[x] = x† x / N(x)` for a commutative or associative `x ∈ O³`.
    pub fn of_vector(x: &[HalfOct; 3]) -> Result<Self> {
        let v = crate::octonion::OctonionVector::new(x.iter().map(HalfOct::to_octonion).collect())?;
        if !v.classify().admits_projector() {
            return Err(Error::NotAssociative);
        }
        let n4: i64 = x.iter().map(HalfOct::norm4).sum();
        if n4 == 0 {
            return Err(Error::ZeroVector);
        }
        // doubled coordinates: x̄_j x_k has numerators 4·(x̄_j x_k) over 4
        let d: Vec<Oct> = x.iter().map(|h| h.0.map(i128::from)).collect();
        let mut num = [[ZERO; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                num[j][k] = oct_mul(&oct_conj(&d[j]), &d[k]).ok_or(Error::Overflow("projector"))?;
            }
        }
        // x̄x/N = (raw/4) / (n4/4) = raw / n4
        Ok(ProjPoint(OctMatrix::normalized(num, i128::from(n4))))
    }

    pub fn matrix(&self) -> &OctMatrix {
        &self.0
    }

    pub fn is_real(&self) -> bool {
        self.0.is_real()
    }

    /// Hermitian, trace 1 and `p · p = p`.
    pub fn is_valid(&self) -> bool {
        self.0.is_hermitian() && self.0.trace() == scalar::int(1) && self.0.mul(&self.0).is_some_and(|q| q == self.0)
    }

    /// Coordinate permutation and signs: `y_{perm[k]} = signs[k] x_k`
    /// induces `p ↦ Sᵀ p S`.
    pub fn coordinate_image(&self, perm: [usize; 3], signs: [i64; 3]) -> Self {
        let mut num = [[ZERO; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                let s = i128::from(signs[j] * signs[k]);
                num[perm[j]][perm[k]] = self.0.num[j][k].map(|x| x * s);
            }
        }
        ProjPoint(OctMatrix::normalized(num, self.0.den))
    }
}

/// `A = I − 2[r]` for a commutative reflection vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjReflection {
    pub r: [HalfOct; 3],
    a: OctMatrix,
}

impl ProjReflection {
    pub fn new(r: &[HalfOct; 3]) -> Result<Self> {
        let v = crate::octonion::OctonionVector::new(r.iter().map(HalfOct::to_octonion).collect())?;
        if v.classify() > crate::octonion::VectorClass::Commutative {
            return Err(Error::Invalid(
                "projective reflections need a commutative vector".into(),
            ));
        }
        let p = ProjPoint::of_vector(r)?;
        let two = OctMatrix {
            num: p.0.num.map(|row| row.map(|o| o.map(|x| -2 * x))),
            den: p.0.den,
        };
        let a = OctMatrix::identity()
            .add(&two)
            .ok_or(Error::Overflow("reflection matrix"))?;
        Ok(ProjReflection { r: *r, a })
    }

    pub fn matrix(&self) -> &OctMatrix {
        &self.a
    }
}

static APPLY_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Outcome of an overflow-checked reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reflected {
    Point(ProjPoint),
    Overflow,
}

/// `A · (p · A)`, checked against `(A · p) · A` and for being a projector:
/// always in debug builds, on one call in 64 otherwise.
pub fn reflect_point(w: &ProjReflection, p: &ProjPoint) -> Result<Reflected> {
    let Some(right) = p.0.mul(&w.a).and_then(|pa| w.a.mul(&pa)) else {
        return Ok(Reflected::Overflow);
    };
    let check = cfg!(debug_assertions) || APPLY_COUNTER.fetch_add(1, Ordering::Relaxed) % 64 == 0;
    let out = ProjPoint(right);
    if check {
        let Some(left) = w.a.mul(&p.0).and_then(|ap| ap.mul(&w.a)) else {
            return Ok(Reflected::Overflow);
        };
        if left != out.0 {
            return Err(Error::WellDefinedness("A(pA) and (Ap)A differ".into()));
        }
        if !out.0.is_hermitian() || out.0.trace() != scalar::int(1) {
            return Err(Error::WellDefinedness("image is not a Hermitian trace-1 matrix".into()));
        }
        match out.0.mul(&out.0) {
            Some(q) if q == out.0 => {}
            Some(_) => return Err(Error::WellDefinedness("image is not idempotent".into())),
            None => return Ok(Reflected::Overflow),
        }
    }
    Ok(Reflected::Point(out))
}

/// `Re tr(½(pq + qp))`.
pub fn trace_inner(p: &ProjPoint, q: &ProjPoint) -> Result<ExactScalar> {
    let a =
        p.0.re_trace_product(&q.0)
            .ok_or(Error::Overflow("trace inner product"))?;
    let b =
        q.0.re_trace_product(&p.0)
            .ok_or(Error::Overflow("trace inner product"))?;
    Ok((a + b) / scalar::int(2))
}

/// How an orbit closure ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    Closed,
    CapExceeded,
    /// Coordinates outgrew 128-bit integers before the orbit closed.
    Overflow,
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub status: ClosureStatus,
    /// Sorted when closed; discovery order otherwise.
    pub points: Vec<ProjPoint>,
}

impl Closure {
    pub fn is_closed(&self) -> bool {
        self.status == ClosureStatus::Closed
    }
}

pub const DEFAULT_PROJECTIVE_CAP: usize = 100_000;

/// Closes the seeds under the reflections.
pub fn orbit_closure(gens: &[ProjReflection], seeds: &[ProjPoint], cap: usize) -> Result<Closure> {
    let mut seen: FxHashMap<ProjPoint, ()> = FxHashMap::default();
    let mut points = Vec::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if seen.insert(s.clone(), ()).is_none() {
            points.push(s.clone());
            queue.push_back(points.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let q = match reflect_point(g, &points[i])? {
                Reflected::Point(q) => q,
                Reflected::Overflow => {
                    return Ok(Closure {
                        status: ClosureStatus::Overflow,
                        points,
                    })
                }
            };
            if !seen.contains_key(&q) {
                if points.len() >= cap {
                    return Ok(Closure {
                        status: ClosureStatus::CapExceeded,
                        points,
                    });
                }
                seen.insert(q.clone(), ());
                points.push(q);
                queue.push_back(points.len() - 1);
            }
        }
    }
    points.sort_unstable();
    Ok(Closure {
        status: ClosureStatus::Closed,
        points,
    })
}

/// Points and blocks (sorted index triples).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGeometry {
    pub points: usize,
    pub blocks: Vec<[u32; 3]>,
}

/// All triples of pairwise orthogonal points summing to the identity.
pub fn jordan_frames(points: &[ProjPoint]) -> Result<IncidenceGeometry> {
    let index: FxHashMap<&ProjPoint, u32> = points.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let id = OctMatrix::identity();
    let zero = scalar::int(0);
    let mut blocks = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate().skip(i + 1) {
            if trace_inner(p, q)? != zero {
                continue;
            }
            let Some(pq) = p.0.add(&q.0) else { continue };
            let neg = OctMatrix {
                num: pq.num.map(|row| row.map(|o| o.map(|x| -x))),
                den: pq.den,
            };
            let Some(rest) = id.add(&neg) else { continue };
            let s = ProjPoint(rest);
            if let Some(&k) = index.get(&s) {
                if k as usize > j && trace_inner(p, &s)? == zero && trace_inner(q, &s)? == zero {
                    blocks.push([i as u32, j as u32, k]);
                }
            }
        }
    }
    blocks.sort_unstable();
    Ok(IncidenceGeometry {
        points: points.len(),
        blocks,
    })
}

/// Parameters of a generalized polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonParams {
    pub s: usize,
    pub t: usize,
    /// Incidence-graph diameter `n`.
    pub n: usize,
    pub girth: usize,
}

/// The violated axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolygonFailure {
    Empty,
    UnequalBlockSizes,
    UnequalPointDegrees,
    Disconnected,
    GirthNotTwiceDiameter { diameter: usize, girth: usize },
}

impl IncidenceGeometry {
    fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.points + self.blocks.len();
        let mut adj = vec![Vec::new(); n];
        for (b, blk) in self.blocks.iter().enumerate() {
            let bv = (self.points + b) as u32;
            for &p in blk {
                adj[p as usize].push(bv);
                adj[bv as usize].push(p);
            }
        }
        adj
    }

    /// Diameter and girth of the incidence graph by BFS from every vertex;
    /// `None` when disconnected.
    pub fn diameter_and_girth(&self) -> Option<(usize, usize)> {
        let adj = self.adjacency();
        let n = adj.len();
        let mut diameter = 0;
        let mut girth = usize::MAX;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s as u32]);
            let mut reached = 1;
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u as usize] {
                    if dist[v as usize] == u32::MAX {
                        dist[v as usize] = dist[u as usize] + 1;
                        parent[v as usize] = u;
                        reached += 1;
                        queue.push_back(v);
                    } else if parent[u as usize] != v {
                        let c = (dist[u as usize] + dist[v as usize] + 1) as usize;
                        girth = girth.min(c);
                    }
                }
            }
            if reached != n {
                return None;
            }
            diameter = diameter.max(*dist.iter().max().unwrap() as usize);
        }
        Some((diameter, girth))
    }

    pub fn polygon_check(&self) -> std::result::Result<PolygonParams, PolygonFailure> {
        if self.points == 0 || self.blocks.is_empty() {
            return Err(PolygonFailure::Empty);
        }
        let s = self.blocks[0].len() - 1;
        let mut deg = vec![0usize; self.points];
        for b in &self.blocks {
            for &p in b {
                deg[p as usize] += 1;
            }
        }
        if deg.iter().any(|&d| d != deg[0]) {
            return Err(PolygonFailure::UnequalPointDegrees);
        }
        let t = deg[0].saturating_sub(1);
        let (diameter, girth) = self.diameter_and_girth().ok_or(PolygonFailure::Disconnected)?;
        if girth != 2 * diameter {
            return Err(PolygonFailure::GirthNotTwiceDiameter { diameter, girth });
        }
        Ok(PolygonParams {
            s,
            t,
            n: diameter,
            girth,
        })
    }
}

/// Counts of `trace_inner` over unordered pairs of distinct points.
pub fn angle_multiset(points: &[ProjPoint]) -> Result<BTreeMap<String, usize>> {
    let mut counts: BTreeMap<ExactScalar, usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            *counts.entry(trace_inner(p, q)?).or_default() += 1;
        }
    }
    Ok(counts.into_iter().map(|(k, v)| (scalar::format(&k), v)).collect())
}

/// A real vector spanning a real projector.
pub fn real_vector_of(p: &ProjPoint) -> Option<[HalfOct; 3]> {
    if !p.is_real() {
        return None;
    }
    let m = &p.0.num;
    let j = (0..3).find(|&j| m[j][j][0] != 0)?;
    // row j of p is p_jj · v / |v|² scaled; use the row itself
    let row: Vec<i128> = (0..3).map(|k| m[j][k][0]).collect();
    let g = row.iter().fold(0i128, |g, &x| gcd(g, x));
    Some(std::array::from_fn(|k| HalfOct::ONE.scale((row[k] / g) as i64)))
}
