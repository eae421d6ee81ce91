//! One set of commutative vectors, two actions: the reflection group on `O³`
//! with its spherical orbit, and the projector orbit in the projective plane
//! with its Jordan-frame geometry.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::half::HalfOct;
use crate::lattice;
use crate::projective::{
    self, ClosureStatus, IncidenceGeometry, PolygonFailure, PolygonParams, ProjPoint, ProjReflection,
};
use crate::reflection::{self, GroupOptions, Selection};
use crate::ring::{FrameStabilizer, QuadOrbit};

/// The projective side of a construction.
#[derive(Clone, Debug)]
pub struct ProjectiveSide {
    pub status: ClosureStatus,
    pub points: Vec<ProjPoint>,
    /// Present only when the closure finished.
    pub geometry: Option<IncidenceGeometry>,
    pub polygon: Option<std::result::Result<PolygonParams, PolygonFailure>>,
}

impl ProjectiveSide {
    /// Whether the geometry is a generalized hexagon.
    pub fn is_hexagon(&self) -> bool {
        matches!(self.polygon, Some(Ok(p)) if p.n == 6 && p.girth == 12)
    }

    pub fn angle_multiset(&self) -> Result<BTreeMap<String, usize>> {
        projective::angle_multiset(&self.points)
    }
}

fn as_triple(v: &[i64]) -> [HalfOct; 3] {
    let o = lattice::to_octs(v);
    [o[0], o[1], o[2]]
}

/// Closes the projectors of `vectors` under their own reflections and, if
/// the closure finishes, extracts and checks the Jordan-frame geometry.
pub fn projective_side(vectors: &[Vec<i64>], cap: usize) -> Result<ProjectiveSide> {
    if vectors.iter().any(|v| v.len() != 24) {
        return Err(Error::Invalid("projective constructions need vectors in O³".into()));
    }
    let triples: Vec<[HalfOct; 3]> = vectors.iter().map(|v| as_triple(v)).collect();
    let gens = triples.iter().map(ProjReflection::new).collect::<Result<Vec<_>>>()?;
    let seeds = triples.iter().map(ProjPoint::of_vector).collect::<Result<Vec<_>>>()?;
    let closure = projective::orbit_closure(&gens, &seeds, cap)?;
    let (geometry, polygon) = if closure.is_closed() {
        let g = projective::jordan_frames(&closure.points)?;
        let p = g.polygon_check();
        (Some(g), Some(p))
    } else {
        (None, None)
    };
    Ok(ProjectiveSide {
        status: closure.status,
        points: closure.points,
        geometry,
        polygon,
    })
}

/// Both sides of the construction for one vector set.
pub struct Construction {
    pub vectors: Vec<Vec<i64>>,
    pub spherical_orbit_sizes: Vec<usize>,
    pub group_order: BigUint,
    pub projective: ProjectiveSide,
}

impl Construction {
    pub fn spherical_orbit(&self) -> usize {
        self.spherical_orbit_sizes.iter().sum()
    }
}

pub fn common_construction(
    vectors: &[Vec<i64>],
    extra_pool: &[Vec<i64>],
    opts: &GroupOptions,
    projective_cap: usize,
) -> Result<Construction> {
    let reflections = reflection::reflections_of(vectors)?;
    let mut o = opts.clone();
    if o.extra_pool.is_empty() {
        o.extra_pool = extra_pool.to_vec();
    }
    let group = reflection::to_permutation_group(&reflections, vectors, &o)?;
    let projective = projective_side(vectors, projective_cap)?;
    Ok(Construction {
        vectors: vectors.to_vec(),
        spherical_orbit_sizes: group.seed_orbit_sizes.clone(),
        group_order: group.order(),
        projective,
    })
}

/// The projective side for the first `k` frame elements (`k = 4`: a
/// quadruple orbit representative).
pub fn hexagon(stab: &FrameStabilizer, sel: Selection, cap: usize) -> Result<ProjectiveSide> {
    let input = reflection::chain_input(stab, sel)?;
    projective_side(&input.vectors, cap)
}

/// Outcome for each quadruple orbit, in the order 14a, 42, 14b.
pub struct SteinerSelection {
    pub outcomes: Vec<(QuadOrbit, ProjectiveSide)>,
}

impl SteinerSelection {
    /// The 14-orbits whose representative gives a generalized hexagon.
    pub fn hexagonal(&self) -> Vec<QuadOrbit> {
        self.outcomes
            .iter()
            .filter(|(q, side)| *q != QuadOrbit::B42 && side.is_hexagon())
            .map(|(q, _)| *q)
            .collect()
    }
}

pub fn select_hexagonal_steiner(stab: &FrameStabilizer, cap: usize) -> Result<SteinerSelection> {
    let mut outcomes = Vec::new();
    for quad in [QuadOrbit::A14, QuadOrbit::B42, QuadOrbit::C14] {
        let side = hexagon(stab, Selection { k: 4, quad }, cap)?;
        outcomes.push((quad, side));
    }
    Ok(SteinerSelection { outcomes })
}

/// Real vectors spanning the real points of a projector set.
pub fn real_subplane(points: &[ProjPoint]) -> Vec<Vec<i64>> {
    points
        .iter()
        .filter_map(projective::real_vector_of)
        .map(|v| lattice::from_octs(&v).expect("real vectors have integer entries"))
        .collect()
}
