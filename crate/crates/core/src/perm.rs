//! Permutation groups with a base and strong generating set.
//!
//! Permutations act on the right: `p^(gh) = (p^g)^h`. A chain keeps, for each
//! base point, a Schreier tree over the strong generators fixing the earlier
//! base points. Transversal elements are never stored; they are words read
//! off the tree and evaluated pointwise, so a level costs two `u32` arrays of
//! the domain size no matter how large its orbit is.
//!
//! Sifting only tracks the images of the base points. When the caller
//! supplies a base whose pointwise stabilizer is known to be trivial (for a
//! group of linear maps, any base spanning the space), fixing every base point
//! certifies the identity and no full permutation is ever built. Otherwise the
//! final residue is materialized and compared with the identity, and the base
//! grows on demand.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm(Box<[u32]>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Validates that `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotPermutation(format!(
                    "image {x} repeated or out of range for degree {n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.0[p as usize]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&p| other.0[p as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Perm(inv.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| p == i as u32)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| self.0[p as usize] == i as u32)
    }

    /// First point moved, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.0
            .iter()
            .enumerate()
            .find(|(i, &p)| p != *i as u32)
            .map(|(i, _)| i as u32)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 32 {
            write!(f, "Perm{:?}", &self.0[..])
        } else {
            write!(f, "Perm(degree {})", self.0.len())
        }
    }
}

/// Orbits of the group generated by `gens` on `0..n`, each sorted, listed by
/// least element.
pub fn orbits(n: usize, gens: &[Perm]) -> Vec<Vec<u32>> {
    let mut label = vec![NONE; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start] != NONE {
            continue;
        }
        let id = out.len() as u32;
        label[start] = id;
        let mut orbit = vec![start as u32];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in gens {
                let q = g.apply(p);
                if label[q as usize] == NONE {
                    label[q as usize] = id;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Orbit of an ordered tuple of points under the generators.
pub fn tuple_orbit_len(gens: &[Perm], tuple: &[u32]) -> usize {
    let mut seen: FxHashMap<Vec<u32>, ()> = FxHashMap::default();
    seen.insert(tuple.to_vec(), ());
    let mut queue = vec![tuple.to_vec()];
    let mut i = 0;
    while i < queue.len() {
        let t = queue[i].clone();
        for g in gens {
            let img: Vec<u32> = t.iter().map(|&p| g.apply(p)).collect();
            if seen.insert(img.clone(), ()).is_none() {
                queue.push(img);
            }
        }
        i += 1;
    }
    queue.len()
}

pub type Progress = Arc<dyn Fn(&str) + Send + Sync>;

#[derive(Clone)]
pub struct RandomOptions {
    pub seed: u64,
    /// Stop as soon as the order reaches this value.
    pub target: Option<BigUint>,
    /// Stop after this many consecutive random elements sift.
    pub patience: usize,
}

#[derive(Clone, Default)]
pub struct BuildOptions {
    /// Initial base points.
    pub base: Vec<u32>,
    /// Whether the pointwise stabilizer of `base` is known to be trivial.
    pub base_certifies: bool,
    /// Run randomized Schreier–Sims first.
    pub random: Option<RandomOptions>,
    /// Run the deterministic Schreier–Sims pass (always on without `random`).
    pub verify: bool,
    pub progress: Option<Progress>,
}

struct Gen {
    perm: Perm,
    inv: Option<Perm>,
    /// Number of leading base points fixed.
    depth: usize,
}

impl Gen {
    fn inv(&self) -> &Perm {
        self.inv.as_ref().unwrap_or(&self.perm)
    }
}

struct Level {
    point: u32,
    gens: Vec<u32>,
    orbit: Vec<u32>,
    parent: Vec<u32>,
    edge: Vec<u32>,
    dirty: bool,
}

impl Level {
    fn new(point: u32) -> Self {
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            parent: Vec::new(),
            edge: Vec::new(),
            dirty: true,
        }
    }

    #[inline]
    fn contains(&self, p: u32) -> bool {
        p == self.point || self.parent.get(p as usize).is_some_and(|&q| q != NONE)
    }
}

/// Element handed to the sifting routine.
enum Elem<'a> {
    Perm(&'a Perm),
    /// `u_p · g · u_{p^g}⁻¹` at a level.
    Schreier {
        level: usize,
        path: &'a [u32],
        gen: u32,
        target: u32,
    },
}

/// A permutation group with a stabilizer chain.
pub struct PermGroup {
    degree: usize,
    original: usize,
    gens: Vec<Gen>,
    levels: Vec<Level>,
    certifying: bool,
    verified: bool,
    checked: FxHashMap<(usize, u32), Vec<u64>>,
    progress: Option<Progress>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.original)
            .field("order", &self.order())
            .field("verified", &self.verified)
            .finish()
    }
}

impl PermGroup {
    /// Deterministic Schreier–Sims with an adaptive base.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::build(degree, generators, BuildOptions::default())
    }

    pub fn build(degree: usize, generators: Vec<Perm>, opts: BuildOptions) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DimensionMismatch(g.degree(), degree));
            }
        }
        let mut base = opts.base.clone();
        if base.is_empty() {
            if opts.base_certifies {
                return Err(Error::Invalid("an empty base cannot certify".into()));
            }
            if let Some(p) = generators.iter().find_map(Perm::first_moved) {
                base.push(p);
            } else if degree > 0 {
                base.push(0);
            }
        }
        let mut grp = PermGroup {
            degree,
            original: generators.len(),
            gens: Vec::new(),
            levels: base.iter().map(|&b| Level::new(b)).collect(),
            certifying: opts.base_certifies,
            verified: false,
            checked: FxHashMap::default(),
            progress: opts.progress.clone(),
        };
        for g in generators {
            let depth = grp.fixed_prefix(&g);
            let inv = (!g.is_involution()).then(|| g.inverse());
            grp.gens.push(Gen { perm: g, inv, depth });
        }
        if grp.levels.is_empty() {
            grp.verified = true;
            return Ok(grp);
        }
        if let Some(r) = &opts.random {
            grp.random_schreier_sims(r);
        }
        if opts.random.is_none() || opts.verify {
            grp.schreier_sims();
            grp.verified = true;
        }
        Ok(grp)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> impl Iterator<Item = &Perm> {
        self.gens[..self.original].iter().map(|g| &g.perm)
    }

    /// Whether the deterministic pass certified the chain. Otherwise
    /// [`Self::order`] is only a lower bound.
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn strong_generator_count(&self) -> usize {
        self.gens.len()
    }

    /// Generators of the pointwise stabilizer of the first `level` base points.
    pub fn stabilizer_generators(&self, level: usize) -> Vec<Perm> {
        if level == 0 {
            return self.generators().cloned().collect();
        }
        self.gens
            .iter()
            .filter(|g| g.depth >= level)
            .map(|g| g.perm.clone())
            .collect()
    }

    /// Membership test by sifting. Exact when the chain is verified; a
    /// positive answer is always a proof of membership.
    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift_elem(&Elem::Perm(g), 0).is_none()
    }

    fn fixed_prefix(&self, g: &Perm) -> usize {
        self.levels.iter().take_while(|l| g.apply(l.point) == l.point).count()
    }

    fn report(&self, msg: &str) {
        if let Some(p) = &self.progress {
            p(msg);
        }
    }

    fn level_gens(&self, l: usize) -> Vec<u32> {
        if l == 0 {
            (0..self.original as u32).collect()
        } else {
            (0..self.gens.len() as u32)
                .filter(|&i| self.gens[i as usize].depth >= l)
                .collect()
        }
    }

    fn ensure_tree(&mut self, l: usize) {
        if !self.levels[l].dirty {
            return;
        }
        let gens = self.level_gens(l);
        let n = self.degree;
        let point = self.levels[l].point;
        let mut parent = std::mem::take(&mut self.levels[l].parent);
        let mut edge = std::mem::take(&mut self.levels[l].edge);
        parent.clear();
        parent.resize(n, NONE);
        edge.clear();
        edge.resize(n, NONE);
        parent[point as usize] = point;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let q = orbit[i];
            for &g in &gens {
                let p = self.gens[g as usize].perm.apply(q);
                if parent[p as usize] == NONE {
                    parent[p as usize] = q;
                    edge[p as usize] = g;
                    orbit.push(p);
                }
            }
            i += 1;
        }
        let lv = &mut self.levels[l];
        lv.gens = gens;
        lv.orbit = orbit;
        lv.parent = parent;
        lv.edge = edge;
        lv.dirty = false;
    }

    fn ensure_all_trees(&mut self) {
        for l in 0..self.levels.len() {
            self.ensure_tree(l);
        }
    }

    /// `x^(u_p⁻¹)` at level `l`.
    #[inline]
    fn apply_inverse_transversal(&self, l: usize, mut p: u32, mut x: u32) -> u32 {
        let lv = &self.levels[l];
        while p != lv.point {
            let g = lv.edge[p as usize];
            x = self.gens[g as usize].inv().apply(x);
            p = lv.parent[p as usize];
        }
        x
    }

    /// Generator indices along the tree path from the root to `p`.
    fn path(&self, l: usize, mut p: u32) -> Vec<u32> {
        let lv = &self.levels[l];
        let mut path = Vec::new();
        while p != lv.point {
            path.push(lv.edge[p as usize]);
            p = lv.parent[p as usize];
        }
        path.reverse();
        path
    }

    fn elem_image(&self, e: &Elem, x: u32) -> u32 {
        match e {
            Elem::Perm(g) => g.apply(x),
            Elem::Schreier {
                level,
                path,
                gen,
                target,
            } => {
                let mut y = x;
                for &g in path.iter() {
                    y = self.gens[g as usize].perm.apply(y);
                }
                y = self.gens[*gen as usize].perm.apply(y);
                self.apply_inverse_transversal(*level, *target, y)
            }
        }
    }

    /// Sifts the element whose base images are `imgs`, starting at `start`.
    /// On success every entry of `imgs` ends as its base point and the
    /// visited transversal points are returned through `trace`. On failure
    /// returns the failing level.
    fn sift_images_traced(&self, start: usize, imgs: &mut [u32], trace: &mut Vec<(usize, u32)>) -> Option<usize> {
        for l in start..self.levels.len() {
            let p = imgs[l];
            let lv = &self.levels[l];
            if p == lv.point {
                continue;
            }
            if !lv.contains(p) {
                return Some(l);
            }
            trace.push((l, p));
            for t in l + 1..imgs.len() {
                imgs[t] = self.apply_inverse_transversal(l, p, imgs[t]);
            }
            imgs[l] = lv.point;
        }
        None
    }

    /// Full permutation of the element followed by the traced inverse
    /// transversals.
    fn materialize(&self, e: &Elem, trace: &[(usize, u32)]) -> Perm {
        let imgs: Vec<u32> = (0..self.degree as u32)
            .map(|x| {
                let mut y = self.elem_image(e, x);
                for &(l, p) in trace {
                    y = self.apply_inverse_transversal(l, p, y);
                }
                y
            })
            .collect();
        Perm(imgs.into_boxed_slice())
    }

    /// Sifts an element from level `start`; returns the residue and its
    /// depth if it is not in the group described by the chain.
    fn sift_elem(&self, e: &Elem, start: usize) -> Option<(Perm, usize)> {
        let mut imgs: Vec<u32> = self
            .levels
            .iter()
            .enumerate()
            .map(|(t, l)| {
                if t < start {
                    l.point
                } else {
                    self.elem_image(e, l.point)
                }
            })
            .collect();
        let mut trace = Vec::new();
        match self.sift_images_traced(start, &mut imgs, &mut trace) {
            Some(l) => {
                let r = self.materialize(e, &trace);
                Some((r, l))
            }
            None if self.certifying => None,
            None => {
                let r = self.materialize(e, &trace);
                if r.is_identity() {
                    None
                } else {
                    let depth = self.levels.len();
                    Some((r, depth))
                }
            }
        }
    }

    /// Adds a residue with the given depth, extending the base if needed.
    /// Returns the depth.
    fn add_generator(&mut self, r: Perm, depth: usize) -> usize {
        if depth == self.levels.len() {
            let p = r.first_moved().expect("nonidentity residue");
            self.levels.push(Level::new(p));
            let old = depth;
            for g in 0..self.gens.len() {
                if self.gens[g].depth == old && self.gens[g].perm.apply(p) == p {
                    self.gens[g].depth = old + 1;
                }
            }
        }
        let inv = (!r.is_involution()).then(|| r.inverse());
        self.gens.push(Gen { perm: r, inv, depth });
        for l in 1..=depth {
            self.levels[l].dirty = true;
        }
        depth
    }

    fn random_schreier_sims(&mut self, opts: &RandomOptions) {
        self.ensure_all_trees();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let originals: Vec<Perm> = self.generators().cloned().collect();
        if originals.is_empty() {
            return;
        }
        // product replacement state
        let slots = originals.len().max(10);
        let mut state: Vec<Perm> = (0..slots).map(|i| originals[i % originals.len()].clone()).collect();
        let mut acc = Perm::identity(self.degree);
        let step = |state: &mut Vec<Perm>, acc: &mut Perm, rng: &mut ChaCha8Rng| {
            let i = rng.gen_range(0..state.len());
            let mut j = rng.gen_range(0..state.len() - 1);
            if j >= i {
                j += 1;
            }
            state[i] = if rng.gen_bool(0.5) {
                state[i].then(&state[j])
            } else {
                state[j].then(&state[i])
            };
            *acc = acc.then(&state[i]);
        };
        for _ in 0..50 {
            step(&mut state, &mut acc, &mut rng);
        }
        let mut streak = 0;
        let mut tried = 0usize;
        loop {
            if let Some(t) = &opts.target {
                if &self.order() >= t {
                    break;
                }
            }
            if streak >= opts.patience {
                break;
            }
            step(&mut state, &mut acc, &mut rng);
            tried += 1;
            let g = acc.clone();
            match self.sift_elem(&Elem::Perm(&g), 0) {
                None => streak += 1,
                Some((r, depth)) => {
                    streak = 0;
                    self.add_generator(r, depth);
                    self.ensure_all_trees();
                    self.report(&format!(
                        "random sift {tried}: order now {} (base length {})",
                        self.order(),
                        self.levels.len()
                    ));
                }
            }
        }
    }

    /// Deterministic Schreier–Sims: every Schreier generator at every level
    /// sifts through the chain below it.
    fn schreier_sims(&mut self) {
        let mut l = self.levels.len() as isize - 1;
        while l >= 0 {
            let lvl = l as usize;
            self.ensure_tree(lvl);
            match self.check_level(lvl) {
                Some(depth) => {
                    l = depth as isize;
                }
                None => l -= 1,
            }
        }
        self.ensure_all_trees();
    }

    fn check_level(&mut self, l: usize) -> Option<usize> {
        for lv in l + 1..self.levels.len() {
            self.ensure_tree(lv);
        }
        let words = self.degree.div_ceil(64);
        let orbit = self.levels[l].orbit.clone();
        let gens = self.levels[l].gens.clone();
        let big = orbit.len() * gens.len() > 200_000;
        let mut bits: Vec<Vec<u64>> = gens
            .iter()
            .map(|&g| self.checked.remove(&(l, g)).unwrap_or_else(|| vec![0u64; words]))
            .collect();
        let mut done = 0usize;
        let mut found = None;
        'scan: for &p in &orbit {
            let w = p as usize;
            let mut path: Option<Vec<u32>> = None;
            for (k, &g) in gens.iter().enumerate() {
                if bits[k][w / 64] >> (w % 64) & 1 == 1 {
                    continue;
                }
                bits[k][w / 64] |= 1 << (w % 64);
                done += 1;
                if big && done % 500_000 == 0 {
                    self.report(&format!("verifying level {l}: {done} Schreier generators sifted"));
                }
                let lv = &self.levels[l];
                let q = self.gens[g as usize].perm.apply(p);
                if lv.parent[q as usize] == p && lv.edge[q as usize] == g {
                    continue;
                }
                let path = path.get_or_insert_with(|| self.path(l, p));
                let e = Elem::Schreier {
                    level: l,
                    path,
                    gen: g,
                    target: q,
                };
                if let Some(res) = self.sift_elem(&e, l + 1) {
                    found = Some(res);
                    break 'scan;
                }
            }
        }
        for (k, &g) in gens.iter().enumerate() {
            self.checked.insert((l, g), std::mem::take(&mut bits[k]));
        }
        let (r, depth) = found?;
        let d = self.add_generator(r, depth);
        if self.progress.is_some() {
            let order = self.order_lower_bound();
            self.report(&format!("new strong generator at depth {d}; order now {order}"));
        }
        Some(d)
    }

    fn order_lower_bound(&mut self) -> BigUint {
        self.ensure_all_trees();
        self.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Perm {
        Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap()
    }

    fn transposition(n: usize, a: u32, b: u32) -> Perm {
        let mut v: Vec<u32> = (0..n as u32).collect();
        v.swap(a as usize, b as usize);
        Perm::from_images(v).unwrap()
    }

    #[test]
    fn perm_basics() {
        let c = cycle(5);
        assert_eq!(c.then(&c.inverse()), Perm::identity(5));
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(transposition(4, 1, 2).is_involution());
        assert_eq!(orbits(6, &[transposition(6, 0, 3)]).len(), 5);
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for n in 3..9usize {
            let s = PermGroup::new(n, vec![cycle(n), transposition(n, 0, 1)]).unwrap();
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(s.order(), BigUint::from(fact));
            assert!(s.contains(&transposition(n, 2, n as u32 - 1)));
        }
        // A_6 from 3-cycles
        let three = |a: u32, b: u32, c: u32| {
            let mut v: Vec<u32> = (0..6).collect();
            v[a as usize] = b;
            v[b as usize] = c;
            v[c as usize] = a;
            Perm::from_images(v).unwrap()
        };
        let a6 = PermGroup::new(6, vec![three(0, 1, 2), three(1, 2, 3), three(2, 3, 4), three(3, 4, 5)]).unwrap();
        assert_eq!(a6.order(), BigUint::from(360u32));
        assert!(!a6.contains(&transposition(6, 0, 1)));
    }

    #[test]
    fn random_then_verified_agrees() {
        let n = 9;
        let gens = vec![cycle(n), transposition(n, 0, 1)];
        let det = PermGroup::new(n, gens.clone()).unwrap();
        let rnd = PermGroup::build(
            n,
            gens,
            BuildOptions {
                random: Some(RandomOptions {
                    seed: 7,
                    target: None,
                    patience: 30,
                }),
                verify: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(det.order(), rnd.order());
        assert!(rnd.is_verified());
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(4, vec![Perm::identity(4)]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        let g = PermGroup::new(4, vec![]).unwrap();
        assert_eq!(g.order(), BigUint::one());
    }

    #[test]
    fn tuple_orbits() {
        let gens = vec![cycle(5), transposition(5, 0, 1)];
        assert_eq!(tuple_orbit_len(&gens, &[0, 1]), 20);
    }
}
