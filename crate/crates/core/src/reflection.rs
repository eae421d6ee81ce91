//! Groups generated by octonion reflections on `O³`: orbit closure,
//! permutation images, the census of reflective short vectors of
//! `Λ(λ̄, λ)`, the Suzuki chain and the two generating sets of `2·Co₁`.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::half::HalfOct;
use crate::isometry::{self, LinearIsometry};
use crate::lattice::{self, IntegerLattice};
use crate::perm::{BuildOptions, Perm, PermGroup, Progress, RandomOptions};
use crate::ring::{FrameStabilizer, QuadOrbit};

/// Default cap on vector orbits.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// Incremental rank over `Z/pZ`; a full rank modulo `p` implies full rank
/// over `Q`.
#[derive(Clone, Debug)]
pub struct RankTracker {
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

const P: u64 = 2_147_483_647;

fn modp(x: i64) -> u64 {
    x.rem_euclid(P as i64) as u64
}

fn inv_modp(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

impl RankTracker {
    pub fn new(dim: usize) -> Self {
        RankTracker { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn add(&mut self, v: &[i64]) -> bool {
        let mut w: Vec<u64> = v.iter().map(|&x| modp(x)).collect();
        for (p, row) in &self.rows {
            let c = w[*p];
            if c != 0 {
                for (x, r) in w.iter_mut().zip(row) {
                    *x = (*x + P - c * r % P) % P;
                }
            }
        }
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_modp(w[p]);
        for x in w.iter_mut() {
            *x = *x * inv % P;
        }
        self.rows.push((p, w));
        true
    }
}

/// Orbit of one vector under the maps, in discovery order.
pub fn orbit(gens: &[LinearIsometry], seed: &[i64], cap: usize) -> Result<Vec<Vec<i64>>> {
    let mut seen: FxHashSet<Vec<i64>> = FxHashSet::default();
    seen.insert(seed.to_vec());
    let mut list = vec![seed.to_vec()];
    let mut i = 0;
    let mut buf = vec![0i64; seed.len()];
    while i < list.len() {
        for g in gens {
            g.apply_into(&list[i], &mut buf)?;
            if !seen.contains(&buf) {
                if list.len() >= cap {
                    return Err(Error::OrbitCap { cap });
                }
                seen.insert(buf.clone());
                list.push(buf.clone());
            }
        }
        i += 1;
    }
    Ok(list)
}

/// A sorted list of vectors with hash lookup.
#[derive(Clone, Debug)]
pub struct Domain {
    points: Vec<Vec<i64>>,
    index: FxHashMap<Vec<i64>, u32>,
}

impl Domain {
    pub fn new(mut points: Vec<Vec<i64>>) -> Self {
        points.sort_unstable();
        points.dedup();
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        Domain { points, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn position(&self, v: &[i64]) -> Option<u32> {
        self.index.get(v).copied()
    }

    /// The permutation induced by a map preserving the domain.
    pub fn permutation(&self, g: &LinearIsometry) -> Result<Perm> {
        let images = self
            .points
            .par_iter()
            .map(|p| {
                let q = g.apply(p)?;
                self.position(&q)
                    .ok_or_else(|| Error::NotPermutation("a map moved a vector out of the domain".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Perm::from_images(images)
    }

    /// Indices of the first linearly independent points, in domain order.
    pub fn spanning_base(&self, dim: usize) -> Vec<u32> {
        let mut r = RankTracker::new(dim);
        let mut base = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            if r.add(p) {
                base.push(i as u32);
                if r.is_full() {
                    break;
                }
            }
        }
        base
    }
}

/// Options for building the permutation image.
#[derive(Clone, Default)]
pub struct GroupOptions {
    pub cap: Option<usize>,
    /// Candidates for extra seeds when the seed orbits do not span.
    pub extra_pool: Vec<Vec<i64>>,
    /// Randomized Schreier–Sims parameters; deterministic when absent.
    pub random: Option<RandomOptions>,
    /// Deterministic verification after a randomized pass.
    pub verify: bool,
    pub progress: Option<Progress>,
}

/// A linear group together with its faithful permutation image.
pub struct GeneratedGroup {
    pub domain: Domain,
    /// Orbit sizes of the given seeds (seeds in an earlier orbit skipped).
    pub seed_orbit_sizes: Vec<usize>,
    /// Orbit sizes of the extra seeds added for faithfulness.
    pub extra_orbit_sizes: Vec<usize>,
    pub generators: Vec<Perm>,
    pub group: PermGroup,
}

impl GeneratedGroup {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

/// Closes the seeds under the maps, extends by extra seeds until the points
/// span, and builds the stabilizer chain on a spanning (hence certifying)
/// base.
pub fn to_permutation_group(
    gens: &[LinearIsometry],
    seeds: &[Vec<i64>],
    opts: &GroupOptions,
) -> Result<GeneratedGroup> {
    let dim = gens
        .first()
        .map(LinearIsometry::dim)
        .or_else(|| seeds.first().map(Vec::len))
        .ok_or_else(|| Error::Invalid("no generators and no seeds".into()))?;
    let cap = opts.cap.unwrap_or(DEFAULT_ORBIT_CAP);
    let mut seen: FxHashSet<Vec<i64>> = FxHashSet::default();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut rank = RankTracker::new(dim);
    let mut seed_sizes = Vec::new();
    let mut extra_sizes = Vec::new();
    let mut absorb = |o: Vec<Vec<i64>>, seen: &mut FxHashSet<Vec<i64>>, rank: &mut RankTracker| -> Result<usize> {
        let n = o.len();
        for v in o {
            rank.add(&v);
            seen.insert(v.clone());
            all.push(v);
        }
        if all.len() > cap {
            return Err(Error::OrbitCap { cap });
        }
        Ok(n)
    };
    for s in seeds {
        if s.len() != dim {
            return Err(Error::DimensionMismatch(s.len(), dim));
        }
        if seen.contains(s) {
            continue;
        }
        let o = orbit(gens, s, cap)?;
        seed_sizes.push(absorb(o, &mut seen, &mut rank)?);
    }
    for s in &opts.extra_pool {
        if rank.is_full() {
            break;
        }
        if seen.contains(s) || !rank.clone().add(s) {
            continue;
        }
        let o = orbit(gens, s, cap)?;
        extra_sizes.push(absorb(o, &mut seen, &mut rank)?);
    }
    if !rank.is_full() {
        return Err(Error::NotSpanning(rank.rank()));
    }
    let domain = Domain::new(all);
    let perms = gens
        .iter()
        .map(|g| domain.permutation(g))
        .collect::<Result<Vec<Perm>>>()?;
    let base = domain.spanning_base(dim);
    let build = BuildOptions {
        base,
        base_certifies: true,
        random: opts.random.clone(),
        verify: opts.verify,
        progress: opts.progress.clone(),
    };
    let group = PermGroup::build(domain.len(), perms.clone(), build)?;
    Ok(GeneratedGroup {
        domain,
        seed_orbit_sizes: seed_sizes,
        extra_orbit_sizes: extra_sizes,
        generators: perms,
        group,
    })
}

/// `Λ(λ̄, λ)` and its 196560 minimal vectors.
pub struct LeechContext {
    pub lambda: HalfOct,
    pub lattice: IntegerLattice,
    pub short: Vec<Vec<i64>>,
}

impl LeechContext {
    pub fn new(lambda: &HalfOct) -> Result<Self> {
        let lattice = lattice::leech_lambda(&HalfOct::ONE, lambda)?;
        let short = lattice.short_vectors(4).vectors;
        Ok(LeechContext {
            lambda: *lambda,
            lattice,
            short,
        })
    }

    /// Reuses a previously enumerated (e.g. cached) vector list.
    pub fn with_short_vectors(lambda: &HalfOct, short: Vec<Vec<i64>>) -> Result<Self> {
        let lattice = lattice::leech_lambda(&HalfOct::ONE, lambda)?;
        Ok(LeechContext {
            lambda: *lambda,
            lattice,
            short,
        })
    }
}

/// Whether the entries pairwise commute (together with their conjugates).
pub fn entries_commute(r: &[HalfOct]) -> bool {
    for (a, x) in r.iter().enumerate() {
        for y in &r[a + 1..] {
            if x.mul(y) != y.mul(x) {
                return false;
            }
        }
    }
    true
}

/// Shape of a reflective vector by its number of nonzero entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CensusType {
    /// `(2u, 0, 0)` and permutations
    Single,
    /// `(s, ±s, 0)` and permutations
    Pair,
    /// `(±1, ±1, λ′)` and permutations
    Triple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub total: usize,
    pub commutative: usize,
    pub reflective: usize,
    /// Reflective counts of the three shapes.
    pub by_type: [usize; 3],
    /// Reflective vectors of shapes `Single` and `Pair` whose reflection is
    /// one of the 48 coordinate maps.
    pub coordinate_symmetries: usize,
    /// The reflective vectors themselves, in sorted order.
    pub reflective_vectors: Vec<Vec<i64>>,
}

/// Scans the minimal vectors of `Λ(λ̄, λ)` for commutative ones and certifies
/// which reflections stabilize the lattice.
pub fn census_commutative_short(ctx: &LeechContext) -> Result<Census> {
    let commutative: Vec<&Vec<i64>> = ctx
        .short
        .par_iter()
        .filter(|v| entries_commute(&lattice::to_octs(v)))
        .collect();
    let coords = isometry::coordinate_maps();
    let results = commutative
        .par_iter()
        .map(|v| {
            let r = lattice::to_octs(v);
            let w = isometry::reflection(&r)?;
            let ok = w.preserves_gram() && w.is_involution() && w.stabilizes(&ctx.lattice);
            let nonzero = r.iter().filter(|x| !x.is_zero()).count();
            let coord = ok && nonzero < 3 && coords.iter().any(|c| c.same_matrix(&w));
            Ok((ok, nonzero, coord))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut by_type = [0usize; 3];
    let mut reflective_vectors = Vec::new();
    let mut coordinate_symmetries = 0;
    for (v, (ok, nz, coord)) in commutative.iter().zip(&results) {
        if *ok {
            by_type[nz - 1] += 1;
            reflective_vectors.push((*v).clone());
            coordinate_symmetries += usize::from(*coord);
        }
    }
    Ok(Census {
        total: ctx.short.len(),
        commutative: commutative.len(),
        reflective: reflective_vectors.len(),
        by_type,
        coordinate_symmetries,
        reflective_vectors,
    })
}

/// `S_λ = {(2, 0, 0), (λ̄, 0, λ̄), (1, 1, λ)}`.
pub fn s_lambda(l: &HalfOct) -> [[HalfOct; 3]; 3] {
    let z = HalfOct::ZERO;
    [
        [HalfOct::ONE.scale(2), z, z],
        [l.conj(), z, l.conj()],
        [HalfOct::ONE, HalfOct::ONE, *l],
    ]
}

/// Distinct vectors of `S_{λ₁} ∪ … ∪ S_{λ_k}`, in α-coordinates.
pub fn union_of_s(lambdas: &[HalfOct]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for l in lambdas {
        for r in s_lambda(l) {
            let v = lattice::from_octs(&r).expect("S_λ lies in O³");
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

pub fn reflections_of(vectors: &[Vec<i64>]) -> Result<Vec<LinearIsometry>> {
    vectors
        .iter()
        .map(|v| isometry::reflection(&lattice::to_octs(v)))
        .collect()
}

/// Which `k` of the eight `λ′` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Selection {
    pub k: usize,
    /// For `k = 4`, the quadruple orbit.
    pub quad: QuadOrbit,
}

/// Positions (into the frame's `λ′` list) for a selection: for `k = 4` the
/// least quadruple of the requested orbit, otherwise the least `k`-subset
/// containing `λ` itself.
pub fn select_positions(stab: &FrameStabilizer, sel: Selection) -> Result<Vec<u32>> {
    if !(1..=8).contains(&sel.k) {
        return Err(Error::Invalid(format!("k must be between 1 and 8, got {}", sel.k)));
    }
    if sel.k == 4 {
        let orbit = stab
            .quadruple_orbit(sel.quad)
            .ok_or_else(|| Error::Invalid("quadruple orbits are not 14 + 42 + 14".into()))?;
        return Ok(orbit[0].clone());
    }
    let me = stab
        .lambda_primes
        .iter()
        .position(|x| *x == stab.lambda)
        .expect("λ is among its λ′") as u32;
    let mut pos = vec![me];
    pos.extend((0..8u32).filter(|&p| p != me).take(sel.k - 1));
    pos.sort_unstable();
    Ok(pos)
}

/// Generators and seeds for the k-th Suzuki chain group.
pub struct ChainInput {
    pub lambdas: Vec<HalfOct>,
    pub vectors: Vec<Vec<i64>>,
    pub reflections: Vec<LinearIsometry>,
}

pub fn chain_input(stab: &FrameStabilizer, sel: Selection) -> Result<ChainInput> {
    let pos = select_positions(stab, sel)?;
    let lambdas = stab.select(&pos);
    let vectors = union_of_s(&lambdas);
    let reflections = reflections_of(&vectors)?;
    Ok(ChainInput {
        lambdas,
        vectors,
        reflections,
    })
}

pub struct ChainResult {
    pub input: ChainInput,
    pub group: GeneratedGroup,
}

impl ChainResult {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }

    pub fn quotient_order(&self) -> BigUint {
        self.group.order() / BigUint::from(2u32)
    }
}

/// Builds the Suzuki chain group for a selection, with the Leech minimal
/// vectors as the pool of extra seeds.
pub fn suzuki_chain(
    stab: &FrameStabilizer,
    sel: Selection,
    leech_short: &[Vec<i64>],
    opts: &GroupOptions,
) -> Result<ChainResult> {
    let input = chain_input(stab, sel)?;
    let mut o = opts.clone();
    if o.extra_pool.is_empty() {
        o.extra_pool = leech_short.to_vec();
    }
    let group = to_permutation_group(&input.reflections, &input.vectors, &o)?;
    Ok(ChainResult { input, group })
}

/// Which generating set of the automorphism group of `Λ(λ̄, λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Co1Variant {
    /// Reflections in all `(±1, ±1, λ′)` and coordinate permutations, `λ′`
    /// over the whole frame.
    A,
    /// The 48 coordinate maps and the reflections in `(1, 1, λ′)` and
    /// permutations, `Re λ′ = Re λ`.
    B,
}

pub struct Co1Generators {
    /// The vectors whose reflections are used (A: all 192; B: the 24).
    pub vectors: Vec<Vec<HalfOct>>,
    /// Distinct maps, in a fixed order.
    pub maps: Vec<LinearIsometry>,
    pub reflection_count: usize,
    pub coordinate_count: usize,
}

fn place(l: HalfOct, pos: usize, a: HalfOct, b: HalfOct) -> Vec<HalfOct> {
    let mut v = vec![a, b];
    v.insert(pos, l);
    v
}

pub fn co1_generators(stab: &FrameStabilizer, variant: Co1Variant) -> Result<Co1Generators> {
    let mut vectors = Vec::new();
    let mut maps: Vec<LinearIsometry> = Vec::new();
    let mut coordinate_count = 0;
    match variant {
        Co1Variant::A => {
            for l in &stab.frame {
                for pos in (0..3).rev() {
                    for sa in [1, -1] {
                        for sb in [1, -1] {
                            vectors.push(place(*l, pos, HalfOct::ONE.scale(sa), HalfOct::ONE.scale(sb)));
                        }
                    }
                }
            }
        }
        Co1Variant::B => {
            let cm = isometry::coordinate_maps();
            coordinate_count = cm.len();
            maps.extend(cm);
            for l in &stab.lambda_primes {
                for pos in (0..3).rev() {
                    vectors.push(place(*l, pos, HalfOct::ONE, HalfOct::ONE));
                }
            }
        }
    }
    let mut reflection_count = 0;
    for v in &vectors {
        let w = isometry::reflection(v)?;
        if !maps.iter().any(|m| m.same_matrix(&w)) {
            maps.push(w);
            reflection_count += 1;
        }
    }
    Ok(Co1Generators {
        vectors,
        maps,
        reflection_count,
        coordinate_count,
    })
}

/// Outcome of testing that two generating sets generate the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutualMembership {
    /// Generators of the second set proven to lie in the first group.
    pub b_in_a: usize,
    /// Generators of the first set proven to lie in the second group.
    pub a_in_b: usize,
    pub a_count: usize,
    pub b_count: usize,
    /// Lower bounds from the (possibly incomplete) random chains.
    pub order_bound_a: BigUint,
    pub order_bound_b: BigUint,
}

impl MutualMembership {
    pub fn equal(&self) -> bool {
        self.b_in_a == self.b_count && self.a_in_b == self.a_count
    }
}

/// Random Schreier–Sims chains for both sets on a common domain, then each
/// set's generators are sifted through the other chain. A generator that
/// sifts to the identity is a product of elements of the other group, so a
/// full success proves equality whether or not the chains are complete.
pub fn mutual_membership(
    domain: &Domain,
    a: &[LinearIsometry],
    b: &[LinearIsometry],
    seed: u64,
    patience: usize,
    progress: Option<Progress>,
) -> Result<MutualMembership> {
    let dim = a.first().map_or(24, LinearIsometry::dim);
    let base = domain.spanning_base(dim);
    let pa = a.iter().map(|g| domain.permutation(g)).collect::<Result<Vec<_>>>()?;
    let pb = b.iter().map(|g| domain.permutation(g)).collect::<Result<Vec<_>>>()?;
    let mk = |gens: Vec<Perm>, s: u64| {
        PermGroup::build(
            domain.len(),
            gens,
            BuildOptions {
                base: base.clone(),
                base_certifies: true,
                random: Some(RandomOptions {
                    seed: s,
                    target: None,
                    patience,
                }),
                verify: false,
                progress: progress.clone(),
            },
        )
    };
    let ga = mk(pa.clone(), seed)?;
    let gb = mk(pb.clone(), seed.wrapping_add(1))?;
    Ok(MutualMembership {
        b_in_a: pb.iter().filter(|g| ga.contains(g)).count(),
        a_in_b: pa.iter().filter(|g| gb.contains(g)).count(),
        a_count: pa.len(),
        b_count: pb.len(),
        order_bound_a: ga.order(),
        order_bound_b: gb.order(),
    })
}

/// Progress printer for long runs.
pub fn stderr_progress(prefix: &'static str) -> Progress {
    Arc::new(move |msg: &str| eprintln!("[{prefix}] {msg}"))
}
