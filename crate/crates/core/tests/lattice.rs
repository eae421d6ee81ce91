use std::io::Cursor;

use num_rational::BigRational;
use octavian::lattice::{self, IntegerLattice, Side, Translation};
use octavian::{ring, shortvec_io, Error, HalfOct};

fn lambda0() -> HalfOct {
    ring::lambda(0).unwrap()
}

#[test]
fn leech_is_even_unimodular_without_roots() {
    let l = lambda0();
    let leech = lattice::leech(&l.conj(), &l).unwrap();
    assert_eq!(leech.dim(), 24);
    assert!(leech.is_even_unimodular());
    assert!(leech.contains_twice());
    assert_eq!(leech.count_vectors(2), 0);
    assert_eq!(leech.min_norm(), 4);
}

#[test]
fn sublattice_arguments_are_checked() {
    let err = lattice::e8_sublattice(Side::Left, &HalfOct::ONE).unwrap_err();
    assert!(matches!(err, Error::WrongNorm { .. }));
    let err = lattice::e8_sublattice(Side::Right, &HalfOct([1, 1, 0, 0, 0, 0, 0, 0])).unwrap_err();
    assert!(matches!(err, Error::NotInRing(_)));

    let l = lambda0();
    assert_eq!(lattice::leech(&l, &l).unwrap_err(), Error::NotComplementary);
}

#[test]
fn e8_sublattices_of_norm_two_have_index_sixteen() {
    for s in ring::roots2().iter().step_by(97) {
        for side in [Side::Left, Side::Right] {
            let phi = lattice::e8_sublattice(side, s).unwrap();
            assert!(phi.contains_twice());
            let rank = phi.f2_image().len() as u32;
            assert_eq!(rank, 4);
            // det Φ = [O : Φ]² det O with [O : Φ] = 2^(8 - rank)
            let index = 2i64.pow(8 - rank);
            let ambient = IntegerLattice::ambient(1).det_half_gram();
            assert_eq!(
                phi.det_half_gram(),
                ambient * BigRational::from_integer((index * index).into())
            );
        }
    }
}

#[test]
fn translation_keeps_vectors_inside() {
    let l = lambda0();
    let base = lattice::leech(&l.conj(), &l).unwrap();
    let u = ring::unit(17).unwrap();
    let moved = lattice::translate(Translation::L, &u, &base).unwrap();
    assert_eq!(moved, lattice::leech_lambda(&u, &l).unwrap());
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    for _ in 0..50 {
        let v = base.random_vector(&mut rng);
        let image = lattice::translate_vec(Translation::L, &u, &lattice::to_octs(&v));
        assert!(moved.contains_octs(&image));
    }
    assert!(lattice::translate(Translation::B, &ring::roots2()[0], &base).is_err());
}

#[test]
fn ambient_and_twice() {
    let o = IntegerLattice::ambient(1);
    let two = IntegerLattice::twice(1);
    assert!(!o.is_even_unimodular());
    assert_eq!(
        o.gram().iter().enumerate().map(|(i, r)| r[i]).collect::<Vec<_>>(),
        vec![2; 8]
    );
    assert_eq!(o.intersect(&two).unwrap(), two);
    assert_eq!(o.sum(&two).unwrap(), o);
    assert_eq!(two.intersect_general(&o).unwrap(), two);
}

fn sample_vectors() -> Vec<Vec<i64>> {
    let l = lambda0();
    let leech = lattice::leech(&l.conj(), &l).unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
    (0..40).map(|_| leech.random_vector(&mut rng)).collect()
}

#[test]
fn cache_format_round_trips() {
    let vectors = sample_vectors();
    let mut buf = Vec::new();
    shortvec_io::write_vectors(&mut buf, &vectors).unwrap();
    assert_eq!(&buf[..6], shortvec_io::MAGIC);
    assert_eq!(buf.len(), 6 + 24 + 40 * 24 * 8);
    assert_eq!(shortvec_io::read_vectors(Cursor::new(&buf)).unwrap(), vectors);
}

#[test]
fn cache_format_rejects_damage() {
    let mut buf = Vec::new();
    shortvec_io::write_vectors(&mut buf, &sample_vectors()).unwrap();

    let mut foreign = buf.clone();
    foreign[..6].copy_from_slice(b"OCTAV0");
    assert!(matches!(
        shortvec_io::read_vectors(Cursor::new(&foreign)),
        Err(Error::Parse(_))
    ));

    let cut = &buf[..buf.len() - 5];
    assert!(matches!(
        shortvec_io::read_vectors(Cursor::new(cut)),
        Err(Error::Parse(_))
    ));

    let mut odd_dim = buf.clone();
    odd_dim[14..22].copy_from_slice(&23u64.to_le_bytes());
    assert!(shortvec_io::read_vectors(Cursor::new(&odd_dim)).is_err());

    let empty = shortvec_io::read_vectors(Cursor::new(&buf[..0])).unwrap_err();
    assert!(empty.to_string().contains("truncated"));
}

#[test]
fn translation_group_order() {
    let g = lattice::translation_group().unwrap();
    // the rotation subgroup of W(E8), whose order is the product of the degrees
    let weyl: u64 = [2u64, 8, 12, 14, 18, 20, 24, 30].iter().product();
    assert_eq!(g.order(), (weyl / 2).into());
}

#[test]
fn translations_of_os() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
    let units = ring::units();
    let roots = ring::roots2();
    for _ in 0..20 {
        let u = units[rand::Rng::gen_range(&mut rng, 0..units.len())];
        let s = roots[rand::Rng::gen_range(&mut rng, 0..roots.len())];
        let os = lattice::e8_sublattice(Side::Left, &s).unwrap();
        let left = |t: &HalfOct| lattice::e8_sublattice(Side::Left, t).unwrap();
        assert_eq!(lattice::translate(Translation::L, &u, &os).unwrap(), left(&u.conj().mul(&s)));
        assert_eq!(lattice::translate(Translation::R, &u, &os).unwrap(), left(&u.mul(&s).mul(&u)));
        assert_eq!(lattice::translate(Translation::B, &u, &os).unwrap(), left(&s.mul(&u)));
    }
    let os = lattice::e8_sublattice(Side::Left, &roots[0]).unwrap();
    assert_eq!(lattice::translate(Translation::B, &HalfOct::ONE, &os).unwrap(), os);
}

fn congruent(a: &HalfOct, b: &HalfOct) -> bool {
    (*a - *b).div_exact(2).is_some_and(|h| ring::contains_half(&h))
}

#[test]
fn leech_depends_on_classes_mod_two() {
    let l = lambda0();
    let base = lattice::leech(&l.conj(), &l).unwrap();
    // other norm-2 members of the same classes
    let same: Vec<(HalfOct, HalfOct)> = ring::roots2()
        .iter()
        .flat_map(|a| ring::roots2().iter().map(move |b| (*a, *b)))
        .filter(|(a, b)| {
            congruent(a, &l.conj()) && congruent(b, &l)
        })
        .filter(|(a, b)| (*a, *b) != (l.conj(), l))
        .step_by(17)
        .take(8)
        .collect();
    assert!(!same.is_empty());
    for (a, b) in same {
        assert_eq!(lattice::leech(&a, &b).unwrap(), base);
    }
    let other = ring::lambda(1).unwrap();
    if let Ok(lat) = lattice::leech(&other.conj(), &other) {
        assert_eq!(lat == base, congruent(&other, &l));
    }
}
