use std::collections::BTreeSet;

use anyhow::{anyhow, bail, Result};
use num_bigint::BigUint;
use octavian::construction::{self, ProjectiveSide};
use octavian::half::HalfOct;
use octavian::lattice::{self, IntegerLattice, Side, Translation};
use octavian::mod2::{self, Residue};
use octavian::perm::RandomOptions;
use octavian::reflection::{self, Co1Variant, Domain, GroupOptions, LeechContext, Selection};
use octavian::ring::{self, FrameStabilizer, QuadOrbit};
use serde_json::{json, Map, Value};

use crate::report::{big, Report};
use crate::{cache, Config, Variant};

const SHORT_VECTOR_COUNT: usize = 196560;
const CO1_ORDER: &str = "4157776806543360000";

/// Orders of the chain groups for k = 1..6.
const CHAIN_ORDERS: [&str; 6] = [
    "336",
    "12096",
    "1209600",
    "503193600",
    "2690072985600",
    "8315553613086720000",
];

const CHAIN_ANCHORS: [&str; 6] = [
    "k=1: 2 x PSL(2,7), 42 vectors on the sphere",
    "k=2: 2 x PSU(3,3)",
    "k=3: 2 x HJ",
    "k=4: 2 x G2(4), orbit of the 196560 minimal vectors",
    "k=5: 6.Suz",
    "k=6: 2.Co1",
];

fn snapshot(cfg: &Config) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("lambda_index".into(), json!(cfg.lambda_index));
    m.insert("unit_index".into(), json!(cfg.unit_index));
    m.insert("seed".into(), json!(cfg.seed));
    m.insert("orbit_cap".into(), json!(cfg.orbit_cap));
    m.insert("projective_cap".into(), json!(cfg.projective_cap));
    m
}

fn lambda(cfg: &Config) -> Result<HalfOct> {
    Ok(ring::lambda(cfg.lambda_index)?)
}

fn oct_string(x: &HalfOct) -> String {
    x.to_octonion().to_string()
}

fn progress() -> Option<octavian::perm::Progress> {
    Some(reflection::stderr_progress("octavian"))
}

/// Vectors of one norm in a lattice, from the cache when possible. The
/// cache key records λ, the unit and the norm.
fn cached_vectors(
    cfg: &Config,
    r: &mut Report,
    lat: &IntegerLattice,
    unit: Option<usize>,
    norm: i64,
) -> Result<Vec<Vec<i64>>> {
    let unit = unit.map_or_else(|| "one".to_string(), |u| u.to_string());
    let key = format!("leech-lambda{}-unit{unit}-norm{norm}", cfg.lambda_index);
    if let Some(dir) = &cfg.cache_dir {
        let valid = |v: &[Vec<i64>]| {
            v.iter().all(|x| x.len() == lat.dim() && lattice::norm(x) == norm)
                && (norm != 4 || v.len() == SHORT_VECTOR_COUNT)
        };
        if let Some(vectors) = cache::load(dir, &key, valid) {
            eprintln!("loaded {} vectors from the cache", vectors.len());
            return Ok(vectors);
        }
    }
    let vectors = r.timed("short_vectors", || lat.short_vectors(norm).vectors);
    if let Some(dir) = &cfg.cache_dir {
        cache::store(dir, &key, &vectors)?;
    }
    Ok(vectors)
}

/// `Λ(λ̄, λ)` with its minimal vectors.
fn leech_context(cfg: &Config, r: &mut Report) -> Result<LeechContext> {
    let l = lambda(cfg)?;
    let lat = lattice::leech_lambda(&HalfOct::ONE, &l)?;
    let short = cached_vectors(cfg, r, &lat, None, 4)?;
    Ok(LeechContext::with_short_vectors(&l, short)?)
}

fn unit(cfg: &Config) -> Result<HalfOct> {
    Ok(match cfg.unit_index {
        Some(i) => ring::unit(i)?,
        None => HalfOct::ONE,
    })
}

fn stabilizer(cfg: &Config, report: &mut Report) -> Result<FrameStabilizer> {
    let l = lambda(cfg)?;
    Ok(report.timed("frame_stabilizer", || ring::frame_stabilizer(&l))?)
}

fn group_opts(cfg: &Config) -> GroupOptions {
    GroupOptions {
        cap: Some(cfg.orbit_cap),
        ..Default::default()
    }
}

// ---------------------------------------------------------------------------

pub fn verify_ring(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("verify ring", snapshot(cfg));
    r.claim("units", 240, ring::units().len(), "240 units of O");
    r.claim("norm2_elements", 2160, ring::roots2().len(), "2160 elements of norm 2");
    r.claim(
        "residue_classes",
        json!([1, 120, 135]),
        json!(mod2::class_histogram()),
        "O/2O = 1 + 240/2 + 2160/16 classes",
    );
    r.claim(
        "norm_class_histogram",
        json!([1, 1, 126, 56, 56, 126, 126, 576, 576, 756]),
        json!(ring::class_histogram()),
        "minimal polynomials of norm at most 2",
    );
    let basis = ring::canonical_basis();
    r.claim(
        "gram_determinant",
        big(1),
        big(basis.determinant()),
        "alpha basis is unimodular",
    );
    r.claim(
        "e8_diagram",
        true,
        basis.realizes_e8_diagram(),
        "alpha basis realizes the E8 Dynkin diagram",
    );
    r.claim(
        "highest_root",
        oct_string(&HalfOct::ONE.scale(-1)),
        basis.highest_root().to_string(),
        "weighted sum (2,3,4,6,5,4,3,2) of the alpha basis is -1",
    );
    let aut = r.timed("aut_group", ring::aut_group)?;
    r.claim("aut_order", big(12096), big(aut.order()), "|Aut(O)| = 12096");
    let conj = ring::conjugation_subgroup()?;
    r.claim(
        "conjugation_order",
        big(6048),
        big(conj.order()),
        "conjugations by order-3 units give G2(2)'",
    );
    r.claim(
        "basic_triple_orbit",
        12096,
        ring::basic_triple_orbit_len()?,
        "Aut(O) is regular on basic triples in O",
    );
    let stab = stabilizer(cfg, &mut r)?;
    r.result("lambda", oct_string(&stab.lambda));
    r.result(
        "lambda_primes",
        stab.lambda_primes.iter().map(oct_string).collect::<Vec<_>>(),
    );
    r.claim(
        "stabilizer",
        big(168),
        big(stab.group.order()),
        "stabilizer of lambda + 2O has type PSL(2,7)",
    );
    r.claim(
        "lambda_orbit",
        8,
        stab.lambda_orbit().len(),
        "transitive on the eight lambda' in lambda + 2O",
    );
    let orbits = stab.quadruple_orbits();
    let mut sizes: Vec<usize> = orbits.iter().map(|(_, o)| o.len()).collect();
    sizes.sort_unstable();
    r.claim(
        "quadruple_orbits",
        json!([14, 14, 42]),
        json!(sizes),
        "orbits on quadruples of lambda'",
    );
    for (label, orbit) in &orbits {
        r.result(&format!("quadruples_{}", label.label()), json!(orbit));
    }
    for q in [QuadOrbit::A14, QuadOrbit::C14] {
        let steiner = stab.quadruple_orbit(q).is_some_and(|o| ring::is_steiner_3_4_8(&o));
        r.claim(
            &format!("steiner_{}", q.label()),
            true,
            steiner,
            "each 14-orbit is a Steiner system S(3,4,8)",
        );
    }
    Ok(r)
}

pub fn verify_mod2(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("verify mod2", snapshot(cfg));
    let iso = mod2::isotropic_graph();
    let params = |p: Option<(usize, usize, usize, usize)>| json!(p.map(|(a, b, c, d)| [a, b, c, d]));
    r.claim(
        "isotropic_srg",
        json!([135, 70, 37, 35]),
        params(iso.parameters()),
        "isotropic graph is srg(135,70,37,35)",
    );
    let cliques = r.timed("cliques", || iso.maximal_cliques());
    r.claim(
        "cliques",
        270,
        cliques.len(),
        "270 maximal cliques, one per E8 sublattice",
    );
    let sizes: BTreeSet<usize> = cliques.iter().map(Vec::len).collect();
    r.claim(
        "clique_sizes",
        json!([15]),
        json!(sizes),
        "each clique has 16 elements with 0",
    );
    let closed = cliques.iter().all(|k| {
        let set: Vec<Residue> = k.iter().map(|&i| iso.vertices[i]).collect();
        mod2::is_xor_closed(&set)
    });
    r.claim(
        "cliques_are_subspaces",
        true,
        closed,
        "clique with 0 is a 4-dimensional F2 space",
    );
    let m = mod2::match_cliques(&iso, &cliques);
    r.result("cliques_matched_by_Os", m.matched_left);
    r.result("cliques_matched_by_sO", m.matched_right);
    r.claim(
        "cliques_hit_once",
        270,
        m.hit_once,
        "cliques are the images of Os and sO",
    );
    let odd = mod2::odd_sum_graph();
    r.claim(
        "odd_sum_srg",
        json!([135, 64, 28, 32]),
        params(odd.parameters()),
        "odd-sum graph is srg(135,64,28,32)",
    );
    r.claim(
        "directed_edges",
        8640,
        odd.directed_edge_count(),
        "8640 = 72 x 120 directed edges",
    );
    r.claim(
        "odd_sum_is_complement",
        true,
        odd.is_complement_of(&iso),
        "N(s+s') odd iff <s,s'> odd",
    );
    Ok(r)
}

pub fn leech_build(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("leech build", snapshot(cfg));
    let l = lambda(cfg)?;
    let u = unit(cfg)?;
    r.result("lambda", oct_string(&l));
    r.result("unit", oct_string(&u));
    let phi = lattice::e8_sublattice(Side::Left, &l.conj())?;
    let psi = lattice::e8_sublattice(Side::Left, &l)?;
    r.claim(
        "Os_even_unimodular",
        true,
        psi.is_even_unimodular(),
        "Os is an E8 lattice",
    );
    r.claim("Os_roots", 240, psi.short_vectors(2).len(), "Os has 240 roots");
    r.claim(
        "intersection_is_2O",
        true,
        phi.intersect(&psi)? == IntegerLattice::twice(1),
        "O lambda-bar and O lambda meet in 2O",
    );
    r.claim(
        "intersection_dual_route",
        true,
        phi.intersect_general(&psi)? == IntegerLattice::twice(1),
        "O lambda-bar and O lambda meet in 2O",
    );
    r.claim(
        "sum_is_O",
        true,
        phi.sum(&psi)? == IntegerLattice::ambient(1),
        "O lambda-bar + O lambda = O",
    );
    let leech = r.timed("build", || lattice::leech_lambda(&u, &l))?;
    r.claim(
        "even_unimodular",
        true,
        leech.is_even_unimodular(),
        "Lambda(lambda-bar, lambda) is a Leech lattice",
    );
    r.claim(
        "det_half_gram",
        "1",
        leech.det_half_gram().to_string(),
        "Lambda is unimodular",
    );
    let twos = ring::alphas()
        .iter()
        .all(|a| leech.contains_octs(&[a.scale(2), HalfOct::ZERO, HalfOct::ZERO]));
    r.claim("contains_2a00", true, twos, "Lambda contains (2a, 0, 0)");
    r.claim("min_norm", 4, leech.min_norm(), "Lambda has no vectors of norm 2");
    if u != HalfOct::ONE {
        let ub = u.conj();
        let direct = lattice::leech(&ub.mul(&l.conj()), &ub.mul(&l))?;
        r.claim(
            "translation_law",
            true,
            direct == leech,
            "L_u Lambda(s, s') = Lambda(L_u-bar s, L_u-bar s')",
        );
    }
    r.result("basis", json!(leech.basis()));
    r.result("gram", json!(leech.gram()));
    Ok(r)
}

fn check_norm(norm: i64) -> Result<()> {
    if norm <= 0 || norm % 2 != 0 {
        bail!("the lattice is even; norm must be a positive even integer, got {norm}");
    }
    Ok(())
}

/// Counts without storing, so larger norms stay within memory.
pub fn leech_count(cfg: &Config, norm: i64) -> Result<Report> {
    check_norm(norm)?;
    let mut r = Report::new("leech shortvectors", snapshot(cfg));
    r.config.insert("norm".into(), json!(norm));
    let lat = lattice::leech_lambda(&unit(cfg)?, &lambda(cfg)?)?;
    let count = r.timed("count", || lat.count_vectors(norm));
    r.result("count", count);
    if norm == 4 {
        r.claim(
            "count",
            SHORT_VECTOR_COUNT as u64,
            count,
            "196560 minimal vectors, 98280 lines",
        );
    }
    Ok(r)
}

pub fn leech_shortvectors(cfg: &Config, norm: i64) -> Result<Report> {
    check_norm(norm)?;
    let mut r = Report::new("leech shortvectors", snapshot(cfg));
    r.config.insert("norm".into(), json!(norm));
    let lat = lattice::leech_lambda(&unit(cfg)?, &lambda(cfg)?)?;
    let vectors = cached_vectors(cfg, &mut r, &lat, cfg.unit_index, norm)?;
    let set: BTreeSet<&Vec<i64>> = vectors.iter().collect();
    r.result("count", vectors.len());
    if norm == 4 {
        r.claim(
            "count",
            SHORT_VECTOR_COUNT,
            vectors.len(),
            "196560 minimal vectors, 98280 lines",
        );
    }
    r.claim(
        "distinct",
        vectors.len(),
        set.len(),
        "enumeration lists each vector once",
    );
    r.claim(
        "closed_under_negation",
        true,
        vectors
            .iter()
            .all(|v| set.contains(&v.iter().map(|x| -x).collect::<Vec<_>>())),
        "vectors come in +- pairs",
    );
    r.claim(
        "norm",
        true,
        vectors.iter().all(|v| lattice::norm(v) == norm),
        "every vector has the requested norm",
    );
    let members = r.timed("membership", || vectors.iter().all(|v| lat.contains(v)));
    r.claim("in_lattice", true, members, "vectors lie in the lattice");
    if let Some(v) = vectors.first() {
        r.result(
            "first",
            json!(lattice::to_octs(v).iter().map(oct_string).collect::<Vec<_>>()),
        );
    }
    Ok(r)
}

pub fn leech_reflections(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("leech reflections", snapshot(cfg));
    let ctx = leech_context(cfg, &mut r)?;
    let census = r.timed("census", || reflection::census_commutative_short(&ctx))?;
    r.claim(
        "short_vectors",
        SHORT_VECTOR_COUNT,
        census.total,
        "196560 minimal vectors",
    );
    r.claim(
        "commutative",
        2520,
        census.commutative,
        "2520 commutative minimal vectors",
    );
    r.claim(
        "reflective",
        2352,
        census.reflective,
        "2352 reflections are lattice automorphisms",
    );
    r.claim(
        "by_type",
        json!([720, 1440, 192]),
        json!(census.by_type),
        "types (2u,0,0), (s,+-s,0), (+-1,+-1,lambda')",
    );
    r.result("coordinate_symmetries", census.coordinate_symmetries);
    Ok(r)
}

pub fn leech_orbit8640(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("leech orbit8640", snapshot(cfg));
    let first_per_class = |xs: &[HalfOct]| -> Result<Vec<HalfOct>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for x in xs {
            if seen.insert(mod2::reduce_half(x)?) {
                out.push(*x);
            }
        }
        Ok(out)
    };
    let lambdas = first_per_class(ring::lambdas())?;
    let units = first_per_class(ring::units())?;
    r.claim("lambda_classes", 72, lambdas.len(), "72 choices of lambda modulo 2O");
    r.claim("unit_classes", 120, units.len(), "120 choices of u modulo 2O");
    let mut pairs = BTreeSet::new();
    for u in &units {
        let ub = u.conj();
        for l in &lambdas {
            let s = mod2::reduce_half(&Translation::L.apply(&ub, &l.conj()))?;
            let t = mod2::reduce_half(&Translation::L.apply(&ub, l))?;
            pairs.insert((s, t));
        }
    }
    let odd = mod2::odd_sum_graph();
    let mut edges = BTreeSet::new();
    for i in 0..odd.vertex_count() {
        for j in 0..odd.vertex_count() {
            if odd.adjacent(i, j) {
                edges.insert((odd.vertices[i], odd.vertices[j]));
            }
        }
    }
    r.claim("distinct_pairs", 8640, pairs.len(), "8640 = 72 x 120 lattices");
    r.claim(
        "pairs_are_directed_edges",
        true,
        pairs == edges,
        "each directed edge s -> s' is one Lambda(s, s')",
    );
    let translations = r.timed("translation_group", lattice::translation_group)?;
    r.result("translation_group_order", big(translations.order()));
    Ok(r)
}

fn chain_result(
    cfg: &Config,
    r: &mut Report,
    stab: &FrameStabilizer,
    ctx: &LeechContext,
    k: usize,
    quad: QuadOrbit,
) -> Result<reflection::ChainResult> {
    let mut opts = group_opts(cfg);
    if k >= 5 {
        opts.random = Some(RandomOptions {
            seed: cfg.seed,
            target: Some(CHAIN_ORDERS[k - 1].parse().expect("order literal")),
            patience: 40,
        });
        opts.verify = true;
        opts.progress = progress();
    }
    Ok(r.timed("group", || {
        reflection::suzuki_chain(stab, Selection { k, quad }, &ctx.short, &opts)
    })?)
}

pub fn suzuki(cfg: &Config, k: usize, quad: &str) -> Result<Report> {
    if !(1..=6).contains(&k) {
        bail!("k must be in 1..6, got {k}");
    }
    let quad = QuadOrbit::parse(quad)?;
    let mut r = Report::new("suzuki", snapshot(cfg));
    r.config.insert("k".into(), json!(k));
    r.config.insert("quad_orbit".into(), json!(quad.label()));
    let stab = stabilizer(cfg, &mut r)?;
    let ctx = leech_context(cfg, &mut r)?;
    let res = chain_result(cfg, &mut r, &stab, &ctx, k, quad)?;
    r.result("lambdas", res.input.lambdas.iter().map(oct_string).collect::<Vec<_>>());
    r.result("generator_count", res.input.reflections.len());
    r.result("vector_orbit_sizes", json!(res.group.seed_orbit_sizes));
    r.result("extra_orbit_sizes", json!(res.group.extra_orbit_sizes));
    r.result("group_order", big(res.order()));
    r.result("quotient_order", big(res.quotient_order()));
    r.claim(
        "group_order",
        big(CHAIN_ORDERS[k - 1]),
        big(res.order()),
        CHAIN_ANCHORS[k - 1],
    );
    if k == 4 {
        r.claim(
            "vector_orbit",
            json!([SHORT_VECTOR_COUNT]),
            json!(res.group.seed_orbit_sizes),
            "the orbit of S is the set of minimal vectors",
        );
    }
    Ok(r)
}

pub fn co1(cfg: &Config, variant: Variant, confirm_order: bool, compare: bool) -> Result<Report> {
    let mut r = Report::new("co1", snapshot(cfg));
    r.config
        .insert("variant".into(), json!(if variant == Variant::A { "A" } else { "B" }));
    r.config.insert("confirm_order".into(), json!(confirm_order));
    r.config.insert("compare".into(), json!(compare));
    let stab = stabilizer(cfg, &mut r)?;
    let ctx = leech_context(cfg, &mut r)?;
    let lib_variant = |v: Variant| if v == Variant::A { Co1Variant::A } else { Co1Variant::B };
    let gens = reflection::co1_generators(&stab, lib_variant(variant))?;
    r.result("vectors", gens.vectors.len());
    r.result("distinct_maps", gens.maps.len());
    r.result("distinct_reflections", gens.reflection_count);
    r.result("coordinate_maps", gens.coordinate_count);
    match variant {
        Variant::A => r.claim(
            "reflection_vectors",
            192,
            gens.vectors.len(),
            "reflections in all (+-1, +-1, lambda') and permutations",
        ),
        Variant::B => {
            r.claim(
                "coordinate_maps",
                48,
                gens.coordinate_count,
                "48 coordinate permutations and sign changes",
            );
            r.claim(
                "reflection_vectors",
                24,
                gens.vectors.len(),
                "reflections in (1, 1, lambda') and permutations",
            );
        }
    }
    let domain = Domain::new(ctx.short.clone());
    let permute = gens.maps.iter().all(|g| domain.permutation(g).is_ok());
    r.claim(
        "automorphisms",
        true,
        permute,
        "every generator permutes the minimal vectors",
    );
    if compare {
        let other = reflection::co1_generators(
            &stab,
            lib_variant(if variant == Variant::A { Variant::B } else { Variant::A }),
        )?;
        let m = r.timed("compare", || {
            reflection::mutual_membership(&domain, &gens.maps, &other.maps, cfg.seed, 30, progress())
        })?;
        r.result("other_in_this", m.b_in_a);
        r.result("this_in_other", m.a_in_b);
        r.claim(
            "equal_groups",
            true,
            m.equal(),
            "both generating sets give the automorphism group of Lambda",
        );
    }
    if confirm_order {
        let opts = GroupOptions {
            cap: Some(cfg.orbit_cap),
            extra_pool: ctx.short.clone(),
            random: Some(RandomOptions {
                seed: cfg.seed,
                target: Some(two_co1()),
                patience: 40,
            }),
            verify: true,
            progress: progress(),
        };
        let g = r.timed("order", || {
            reflection::to_permutation_group(&gens.maps, &ctx.short[..1], &opts)
        })?;
        r.result("vector_orbit_sizes", json!(g.seed_orbit_sizes));
        r.claim(
            "order",
            big(two_co1()),
            big(g.order()),
            "the automorphism group of Lambda is 2.Co1",
        );
    }
    Ok(r)
}

fn two_co1() -> BigUint {
    let c: BigUint = CO1_ORDER.parse().expect("order literal");
    c * 2u32
}

fn side_json(side: &ProjectiveSide) -> Result<Value> {
    let status = match side.status {
        octavian::projective::ClosureStatus::Closed => "closed",
        octavian::projective::ClosureStatus::CapExceeded => "cap_exceeded",
        octavian::projective::ClosureStatus::Overflow => "overflow",
    };
    let mut v = json!({
        "status": status,
        "points": side.points.len(),
    });
    if let Some(g) = &side.geometry {
        v["blocks"] = json!(g.blocks.len());
        match &side.polygon {
            Some(Ok(p)) => {
                v["s"] = json!(p.s);
                v["t"] = json!(p.t);
                v["diameter"] = json!(p.n);
                v["girth"] = json!(p.girth);
            }
            Some(Err(f)) => v["polygon_failure"] = json!(format!("{f:?}")),
            None => {}
        }
        v["angle_multiset"] = json!(side.angle_multiset()?);
    }
    Ok(v)
}

fn hexagon_claims(r: &mut Report, side: &ProjectiveSide, expected: [usize; 6], anchor: &'static str) {
    let computed = match (&side.geometry, &side.polygon) {
        (Some(g), Some(Ok(p))) => json!([side.points.len(), g.blocks.len(), p.s, p.t, p.n, p.girth]),
        _ => json!([side.points.len(), side.geometry.as_ref().map(|g| g.blocks.len())]),
    };
    r.claim("points_blocks_s_t_diameter_girth", json!(expected), computed, anchor);
}

/// Runs all three quadruple orbits and returns the requested one (default:
/// the hexagonal 14-orbit).
fn quadruple_sides(
    cfg: &Config,
    r: &mut Report,
    stab: &FrameStabilizer,
    requested: Option<&str>,
) -> Result<(QuadOrbit, ProjectiveSide)> {
    let sel = r.timed("steiner_selection", || {
        construction::select_hexagonal_steiner(stab, cfg.projective_cap)
    })?;
    let hex = sel.hexagonal();
    r.result("hexagonal_orbits", hex.iter().map(|q| q.label()).collect::<Vec<_>>());
    r.claim(
        "hexagonal_14_orbits",
        1,
        hex.len(),
        "exactly one of the two 14-orbits gives Gh(2,8)",
    );
    let side_42 = &sel
        .outcomes
        .iter()
        .find(|(q, _)| *q == QuadOrbit::B42)
        .expect("three orbits")
        .1;
    r.claim(
        "orbit_42_is_hexagon",
        false,
        side_42.is_hexagon(),
        "the 42-orbit does not give Gh(2,8)",
    );
    let quad = match requested {
        Some(s) => QuadOrbit::parse(s)?,
        None => *hex.first().ok_or_else(|| anyhow!("no hexagonal quadruple orbit"))?,
    };
    let side = sel
        .outcomes
        .into_iter()
        .find(|(q, _)| *q == quad)
        .map(|(_, s)| s)
        .expect("three orbits");
    Ok((quad, side))
}

pub fn hexagon(cfg: &Config, k: usize, quad: Option<&str>) -> Result<Report> {
    let mut r = Report::new("hexagon", snapshot(cfg));
    r.config.insert("k".into(), json!(k));
    r.config.insert("quad_orbit".into(), json!(quad));
    let stab = stabilizer(cfg, &mut r)?;
    let side = if k == 4 {
        let (q, side) = quadruple_sides(cfg, &mut r, &stab, quad)?;
        r.result("quad_orbit", q.label());
        side
    } else {
        let sel = Selection {
            k,
            quad: QuadOrbit::A14,
        };
        r.timed("closure", || construction::hexagon(&stab, sel, cfg.projective_cap))?
    };
    r.result("geometry", side_json(&side)?);
    match k {
        1 => hexagon_claims(&mut r, &side, [21, 14, 2, 1, 6, 12], "Gh(2,1) on 21 points"),
        2 => hexagon_claims(&mut r, &side, [63, 63, 2, 2, 6, 12], "Gh(2,2) on 63 points"),
        4 if side.is_hexagon() || quad.is_none() => {
            hexagon_claims(&mut r, &side, [819, 2457, 2, 8, 6, 12], "Gh(2,8) on 819 points")
        }
        _ => {}
    }
    Ok(r)
}

pub fn construction(cfg: &Config, k: usize, quad: Option<&str>) -> Result<Report> {
    let mut r = Report::new("construction", snapshot(cfg));
    r.config.insert("k".into(), json!(k));
    r.config.insert("quad_orbit".into(), json!(quad));
    let stab = stabilizer(cfg, &mut r)?;
    let ctx = leech_context(cfg, &mut r)?;
    let q = match quad {
        Some(s) => QuadOrbit::parse(s)?,
        None if k == 4 => quadruple_sides(cfg, &mut r, &stab, None)?.0,
        None => QuadOrbit::A14,
    };
    let input = reflection::chain_input(&stab, Selection { k, quad: q })?;
    let c = r.timed("construction", || {
        construction::common_construction(&input.vectors, &ctx.short, &group_opts(cfg), cfg.projective_cap)
    })?;
    r.result("quad_orbit", q.label());
    r.result("vectors", c.vectors.len());
    r.result("spherical_orbit_sizes", json!(c.spherical_orbit_sizes));
    r.result("group_order", big(&c.group_order));
    r.result("projective", side_json(&c.projective)?);
    r.claim(
        "group_order",
        big(CHAIN_ORDERS[k - 1]),
        big(&c.group_order),
        CHAIN_ANCHORS[k - 1],
    );
    match k {
        1 => {
            r.claim("spherical_orbit", 42, c.spherical_orbit(), "a 42 point design");
            r.claim(
                "projective_points",
                21,
                c.projective.points.len(),
                "the 21 points of Gh(2,1)",
            );
            let real = construction::real_subplane(&c.projective.points);
            r.claim(
                "real_points",
                9,
                real.len(),
                "nine points in the real projective subplane",
            );
            let refl = reflection::reflections_of(&real)?;
            let opts = GroupOptions {
                extra_pool: ctx.short.clone(),
                ..group_opts(cfg)
            };
            let g = reflection::to_permutation_group(&refl, &real, &opts)?;
            r.claim(
                "real_group_order",
                big(48),
                big(g.order()),
                "coordinate group 2 x S4 of order 48",
            );
        }
        2 => r.claim(
            "projective_points",
            63,
            c.projective.points.len(),
            "the 63 points of Gh(2,2)",
        ),
        4 => {
            r.claim(
                "spherical_orbit",
                SHORT_VECTOR_COUNT,
                c.spherical_orbit(),
                "the orbit is the set of minimal vectors",
            );
            if c.projective.is_hexagon() || quad.is_none() {
                r.claim(
                    "projective_points",
                    819,
                    c.projective.points.len(),
                    "the 819 points of Gh(2,8)",
                );
            }
        }
        _ => {}
    }
    Ok(r)
}
