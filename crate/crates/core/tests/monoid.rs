mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use camring::arrangement::{FlatId, IntersectionPoset};
use camring::monoid::{Letter, LchWord, Monoid, MonoidElement};
use camring::reflection::GroupAction;
use camring::strata::{restrict_basis, Coefficients, CohomologyRing, RingElement};
use common::*;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every terminal multiset reachable by merging any sub-multiset with an
/// irreducible meet, in any order.
fn terminals(p: &IntersectionPoset, flats: Vec<FlatId>, memo: &mut BTreeMap<Vec<FlatId>, BTreeSet<Vec<FlatId>>>) -> BTreeSet<Vec<FlatId>> {
    if let Some(t) = memo.get(&flats) {
        return t.clone();
    }
    let mut out = BTreeSet::new();
    for size in 2..=flats.len() {
        for subset in (0..flats.len()).combinations(size) {
            let z = p.join_all(subset.iter().map(|&k| flats[k]));
            if p.is_irreducible(z) {
                let mut rest: Vec<FlatId> = (0..flats.len()).filter(|k| !subset.contains(k)).map(|k| flats[k]).collect();
                rest.push(z);
                rest.sort_unstable();
                out.extend(terminals(p, rest, memo));
            }
        }
    }
    if out.is_empty() {
        out.insert(flats.clone());
    }
    memo.insert(flats, out.clone());
    out
}

#[test]
fn every_merge_order_reaches_the_normal_form() {
    for f in small_builtins() {
        let p = &f.poset;
        if p.arrangement().len() > 10 {
            continue;
        }
        let m = Monoid::new(p);
        let irr = p.irreducible_flats();
        let mut memo = BTreeMap::new();
        let mut words = 0;
        for k in 1..=4 {
            for word in irr.iter().copied().combinations_with_replacement(k) {
                let letters: Vec<Letter> =
                    word.iter().map(|&x| Letter { flat: x, mu: p.flat(x).codim() as u32 }).collect();
                let ends = terminals(p, word.clone(), &mut memo);
                assert_eq!(ends.len(), 1, "{}: {word:?} reaches {ends:?}", f.name);
                let nf = m.normalize(letters.clone());
                let flats: Vec<FlatId> = nf.letters().iter().map(|l| l.flat).sorted().collect();
                assert_eq!(&flats, ends.first().unwrap(), "{}: {word:?}", f.name);
                assert_eq!(nf.letters(), grouped_normal_form(p, &letters), "{}: {word:?}", f.name);
                words += 1;
            }
        }
        assert!(words > 0);
    }
}

#[test]
fn sigma3_single_relation() {
    let f = sigma(3);
    let p = &f.poset;
    let m = Monoid::new(p);
    let h = |l: &str| m.letter(flat_with_hyperplanes(p, &[l]), 1).unwrap();
    let (x, y, z) = (h("a12"), h("a13"), h("a23"));
    let xy = m.multiply(&x, &y);
    assert_eq!(xy, m.multiply(&y, &z));
    assert_eq!(xy, m.multiply(&x, &z));
    let top = p.len() - 1;
    assert_eq!(xy.letters(), &[Letter { flat: top, mu: 2 }]);
    for s in 0..p.len() {
        let r = restrict_basis(p, &xy, s);
        if s == top {
            assert_eq!(r, Some(vec![2]));
        } else {
            assert_eq!(r, None);
        }
    }
}

#[test]
fn sigma5_merges() {
    let f = sigma(5);
    let p = &f.poset;
    let m = Monoid::new(p);
    let a = m.letter(flat_with_hyperplanes(p, &["a12"]), 1).unwrap();
    let b = m.letter(flat_with_hyperplanes(p, &["a23", "a34"]), 7).unwrap();
    let c = m.letter(flat_with_hyperplanes(p, &["a34", "a45"]), 7).unwrap();
    let merged = m.letter(flat_with_hyperplanes(p, &["a12", "a23", "a34"]), 8).unwrap();
    assert_eq!(m.multiply(&a, &b), merged);
    let ac = m.multiply(&a, &c);
    assert_eq!(ac.letters().len(), 2);
    assert_eq!(ac.weight(), 8);
    assert!(m.is_normal(&ac));
}

fn restriction_vector(p: &IntersectionPoset, e: &MonoidElement) -> Vec<Option<Vec<u32>>> {
    (0..p.len()).map(|y| restrict_basis(p, e, y)).collect()
}

#[test]
fn normal_forms_are_separated_by_restriction() {
    for f in small_builtins() {
        let m = Monoid::new(&f.poset);
        let mut seen = HashSet::new();
        for level in m.enumerate(4) {
            for e in level {
                assert!(seen.insert(restriction_vector(&f.poset, &e)), "{}: {e}", f.name);
            }
        }
    }
}

fn random_element(m: &Monoid<'_>, rng: &mut rand::rngs::StdRng, max_letters: usize) -> MonoidElement {
    let letters = m.letters_up_to(4);
    let k = rng.gen_range(0..=max_letters);
    m.normalize((0..k).map(|_| *letters.choose(rng).unwrap()).collect())
}

#[test]
fn products_are_graded_associative_and_meet_supports() {
    let mut rng = rng(3);
    for f in [sigma(4), b(3)] {
        let p = &f.poset;
        let m = Monoid::new(p);
        for _ in 0..300 {
            let (a, b, c) = (random_element(&m, &mut rng, 3), random_element(&m, &mut rng, 3), random_element(&m, &mut rng, 3));
            let ab = m.multiply(&a, &b);
            assert_eq!(ab.degree(), a.degree() + b.degree());
            assert_eq!(ab, m.multiply(&b, &a));
            assert_eq!(m.multiply(&ab, &c), m.multiply(&a, &m.multiply(&b, &c)));
            assert_eq!(m.support(&ab), p.join(m.support(&a), m.support(&b)));
            assert!(m.is_normal(&ab));
        }
    }
}

#[test]
fn group_acts_by_automorphisms_on_the_right() {
    let mut rng = rng(4);
    for f in [sigma(4), b(3)] {
        let act = GroupAction::new(&f.group, &f.poset).unwrap();
        let m = Monoid::new(&f.poset);
        let order = f.group.order();
        for _ in 0..200 {
            let (a, b) = (random_element(&m, &mut rng, 3), random_element(&m, &mut rng, 3));
            let (v, w) = (rng.gen_range(0..order), rng.gen_range(0..order));
            let ab = m.multiply(&a, &b);
            assert_eq!(m.w_act(&act, w, &ab), m.multiply(&m.w_act(&act, w, &a), &m.w_act(&act, w, &b)));
            assert_eq!(m.w_act(&act, w, &m.w_act(&act, v, &a)), m.w_act(&act, f.group.mul(v, w), &a));
            assert_eq!(m.w_act(&act, f.group.identity(), &a), a);
        }
    }
}

fn word_value(ring: &CohomologyRing<'_>, w: &LchWord) -> RingElement {
    let mut out = ring.one();
    for (&x, &k) in &w.letters {
        let c = ring.fundamental_class(x).unwrap();
        out = ring.multiply(&out, &ring.power(&c, k).unwrap()).unwrap();
    }
    out
}

#[test]
fn lch_maps_are_mutually_inverse() {
    let mut rng = rng(5);
    for f in small_builtins() {
        let p = &f.poset;
        let m = Monoid::new(p);
        let ring = CohomologyRing::new(p, Coefficients::Q);
        for level in m.enumerate(4) {
            for e in level {
                let w = m.to_lch(&e);
                assert_eq!(m.from_lch(&w).unwrap(), e, "{}", f.name);
                assert_eq!(word_value(&ring, &w), ring.basis_element(&e));
            }
        }
        for _ in 0..50 {
            let mut w = LchWord::default();
            for _ in 0..rng.gen_range(0..4) {
                w.push(rng.gen_range(1..p.len()), rng.gen_range(1..=2));
            }
            let e = m.from_lch(&w).unwrap();
            assert_eq!(ring.basis_element(&e), word_value(&ring, &w));
            assert_eq!(word_value(&ring, &m.to_lch(&e)), word_value(&ring, &w));
        }
    }
}

#[test]
fn enumeration_is_closed_under_the_action() {
    for f in [sigma(3), sigma(4), b(2)] {
        let act = GroupAction::new(&f.group, &f.poset).unwrap();
        let m = Monoid::new(&f.poset);
        for (level, orbits) in m.enumerate(5).into_iter().zip(m.orbit_enumerate(&act, 5)) {
            let union: BTreeSet<MonoidElement> = orbits.iter().flatten().cloned().collect();
            assert_eq!(union, level.iter().cloned().collect());
            assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), level.len());
        }
    }
}
