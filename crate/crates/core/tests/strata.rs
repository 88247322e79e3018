mod common;

use std::collections::BTreeSet;

use camring::arrangement::{FlatId, IntersectionPoset};
use camring::exactlin::{rat, ratio, Rational, RationalMatrix, Subspace};
use camring::monoid::{Letter, MonoidElement};
use camring::reflection::GroupAction;
use camring::strata::{discriminant_check, restrict_basis, Coefficients, CohomologyRing, RingElement};
use camring::Error;
use common::*;
use itertools::Itertools;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn betti_formulas_match_enumeration_through_degree_12() {
    for f in small_builtins() {
        let act = GroupAction::new(&f.group, &f.poset).unwrap();
        let ring = CohomologyRing::with_group(&act, Coefficients::Q);
        let m = ring.monoid();
        let counts: Vec<usize> = m.enumerate(6).iter().map(Vec::len).collect();
        assert_eq!(ring.betti_c(6), counts, "{}", f.name);
        let orbits: Vec<usize> = m.orbit_enumerate(&act, 6).iter().map(Vec::len).collect();
        assert_eq!(ring.betti_m(6).unwrap(), orbits, "{}", f.name);
    }
}

#[test]
fn small_betti_tables() {
    let s2 = sigma(2);
    let act = GroupAction::new(&s2.group, &s2.poset).unwrap();
    let ring = CohomologyRing::with_group(&act, Coefficients::Q);
    assert_eq!(ring.betti_m(8).unwrap(), vec![1; 9]);
    assert_eq!(ring.betti_c(4), vec![1; 5]);
    let s3 = sigma(3);
    let act = GroupAction::new(&s3.group, &s3.poset).unwrap();
    let ring = CohomologyRing::with_group(&act, Coefficients::Q);
    assert_eq!(ring.betti_m(3).unwrap(), vec![1, 1, 2, 2]);
    // t only in degree 0, then one class per line and one for the point
    assert_eq!(ring.betti_c(4), vec![1, 3, 4, 4, 4]);
}

fn random_element(ring: &CohomologyRing<'_>, rng: &mut StdRng, max_weight: u32) -> RingElement {
    let letters = ring.monoid().letters_up_to(max_weight);
    let terms: Vec<(MonoidElement, Rational)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let ls: Vec<Letter> = (0..rng.gen_range(0..=2)).map(|_| *letters.choose(rng).unwrap()).collect();
            (ring.monoid().normalize(ls), ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
        })
        .collect();
    ring.from_terms(terms).unwrap()
}

#[test]
fn monoid_product_is_the_stratumwise_product() {
    let mut rng = rng(21);
    let fixtures = small_builtins();
    let mut pairs = 0;
    while pairs < 1000 {
        let f = &fixtures[pairs % fixtures.len()];
        let ring = CohomologyRing::new(&f.poset, Coefficients::Q);
        let (x, y) = (random_element(&ring, &mut rng, 3), random_element(&ring, &mut rng, 3));
        let xy = ring.multiply(&x, &y).unwrap();
        for s in 0..f.poset.len() {
            assert_eq!(xy.restriction()[s], x.restriction()[s].mul(&y.restriction()[s]), "{} stratum {s}", f.name);
        }
        pairs += 1;
    }
}

#[test]
fn restriction_is_faithful_on_bases() {
    for f in small_builtins() {
        let ring = CohomologyRing::new(&f.poset, Coefficients::Q);
        let basis: Vec<MonoidElement> = ring.monoid().enumerate(4).into_iter().flatten().collect();
        // images as vectors over (stratum, monomial) pairs
        let keys: Vec<(FlatId, Vec<u32>)> = basis
            .iter()
            .flat_map(|e| (0..f.poset.len()).filter_map(|y| restrict_basis(&f.poset, e, y).map(|m| (y, m))))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rows: Vec<Vec<Rational>> = basis
            .iter()
            .map(|e| {
                let r = ring.basis_element(e);
                keys.iter().map(|(y, m)| r.restriction()[*y].coefficient(m)).collect()
            })
            .collect();
        let rank = RationalMatrix::from_rows(&rows, keys.len()).unwrap().rank();
        assert_eq!(rank, basis.len(), "{}", f.name);
    }
}

fn minimal_sets(p: &IntersectionPoset, x: FlatId) -> Vec<Vec<usize>> {
    let c = p.flat(x).codim();
    p.flat(x).hyperplanes.iter().copied().combinations(c).filter(|s| p.closure(s) == x).collect()
}

#[test]
fn letter_classes_do_not_depend_on_choices() {
    for f in small_builtins() {
        let p = &f.poset;
        let ring = CohomologyRing::new(p, Coefficients::Q);
        for x in p.irreducible_flats() {
            let c = p.flat(x).codim() as u32;
            for mu in c..=c + 2 {
                let expect = ring.basis_element(&ring.monoid().letter(x, mu).unwrap());
                for set in minimal_sets(p, x) {
                    for &a in &p.flat(x).hyperplanes {
                        assert_eq!(ring.class_of_with(x, mu, &set, Some(a)).unwrap(), expect, "{} flat {x}", f.name);
                    }
                }
            }
        }
        // a set that does not cut out the flat is refused
        let top = p.len() - 1;
        if p.flat(top).codim() > 1 {
            assert!(ring.class_of_with(top, p.flat(top).codim() as u32, &[0], Some(0)).is_err());
        }
    }
}

#[test]
fn transverse_fundamental_classes_multiply() {
    for f in small_builtins() {
        let p = &f.poset;
        let ring = CohomologyRing::new(p, Coefficients::Q);
        let mut seen = 0;
        for x in 0..p.len() {
            for y in 0..p.len() {
                let z = p.join(x, y);
                if p.flat(z).codim() != p.flat(x).codim() + p.flat(y).codim() {
                    continue;
                }
                let prod = ring.multiply(&ring.fundamental_class(x).unwrap(), &ring.fundamental_class(y).unwrap()).unwrap();
                assert_eq!(prod, ring.fundamental_class(z).unwrap(), "{}: {x} {y}", f.name);
                seen += usize::from(x != 0 && y != 0);
            }
        }
        assert!(seen > 0 || p.arrangement().rank() < 2, "{}", f.name);
    }
}

#[test]
fn action_intertwines_restrictions() {
    let mut rng = rng(22);
    for f in [sigma(4), b(3), sigma(5)] {
        let p = &f.poset;
        let act = GroupAction::new(&f.group, p).unwrap();
        let ring = CohomologyRing::with_group(&act, Coefficients::Q);
        let basis: Vec<MonoidElement> = ring.monoid().enumerate(4).into_iter().flatten().collect();
        for _ in 0..100 {
            let e = basis.choose(&mut rng).unwrap();
            let w = rng.gen_range(0..f.group.order());
            let ew = ring.monoid().w_act(&act, w, e);
            for y in 0..p.len() {
                let wy = act.act_flat(w, y);
                // component i of y is carried by w onto component sigma[i] of wy
                let sigma: Vec<usize> = p
                    .flat(y)
                    .components
                    .iter()
                    .map(|b| {
                        let mut img: Vec<usize> = b.iter().map(|&h| act.act_hyperplane(w, h)).collect();
                        img.sort_unstable();
                        p.flat(wy).components.iter().position(|c| c == &img).unwrap()
                    })
                    .collect();
                let lhs = restrict_basis(p, &ew, y);
                let rhs = restrict_basis(p, e, wy).map(|m| sigma.iter().map(|&j| m[j]).collect::<Vec<u32>>());
                assert_eq!(lhs, rhs, "{} w={w} y={y}", f.name);
            }
            // right action on ring elements
            let v = rng.gen_range(0..f.group.order());
            let x = ring.basis_element(e);
            assert_eq!(ring.act(w, &ring.act(v, &x).unwrap()).unwrap(), ring.act(f.group.mul(v, w), &x).unwrap());
        }
    }
}

#[test]
fn integer_and_rational_structure_constants_agree() {
    for f in small_builtins() {
        let p = &f.poset;
        let rq = CohomologyRing::new(p, Coefficients::Q);
        let rz = CohomologyRing::new(p, Coefficients::Z);
        let levels = rq.monoid().enumerate(4);
        for (d1, l1) in levels.iter().enumerate() {
            for l2 in &levels[..=4 - d1] {
                for a in l1 {
                    for b in l2 {
                        let q = rq.multiply(&rq.basis_element(a), &rq.basis_element(b)).unwrap();
                        let z = rz.multiply(&rz.basis_element(a), &rz.basis_element(b)).unwrap();
                        assert_eq!(q.terms(), z.terms());
                        assert!(z.terms().values().all(Rational::is_integer));
                    }
                }
            }
        }
    }
}

#[test]
fn induced_restriction_kernel_for_sigma3() {
    let f = sigma(3);
    let p = &f.poset;
    let ring = CohomologyRing::new(p, Coefficients::Q);
    let x = flat_with_hyperplanes(p, &["a12"]);
    let ind = ring.restriction_to_induced(x).unwrap();
    let target = CohomologyRing::new(&ind.target, Coefficients::Q);
    let source: Vec<MonoidElement> = ring.monoid().enumerate(4).into_iter().flatten().collect();
    let tbasis: Vec<MonoidElement> = target.monoid().enumerate(4).into_iter().flatten().collect();
    let columns: Vec<Vec<Rational>> = source
        .iter()
        .map(|e| {
            let img = ind.apply(&target, &ring.basis_element(e)).unwrap();
            tbasis.iter().map(|t| img.coefficient(t)).collect()
        })
        .collect();
    let m = RationalMatrix::from_rows(&columns, tbasis.len()).unwrap().transpose();
    let kernel = Subspace::span(source.len(), &m.kernel()).unwrap();
    // elements supported off L(A_X): some letter lies on a flat not below X
    let below: BTreeSet<FlatId> = (0..p.len()).filter(|&y| p.leq(y, x)).collect();
    let outside: Vec<Vec<Rational>> = source
        .iter()
        .enumerate()
        .filter(|(_, e)| e.letters().iter().any(|l| !below.contains(&l.flat)))
        .map(|(i, _)| (0..source.len()).map(|j| rat(i64::from(i == j))).collect())
        .collect();
    assert_eq!(kernel, Subspace::span(source.len(), &outside).unwrap());
    // t and the a12 line survive, the other lines and the point die
    assert_eq!(ind.complement(p).len(), 3);
    assert_eq!(kernel.dim(), source.len() - tbasis.len());
}

#[test]
fn whitney_product_formula_for_symmetric_groups() {
    for n in 2..=5 {
        let f = sigma(n);
        let p = &f.poset;
        let ring = CohomologyRing::new(p, Coefficients::Q);
        let mut valid = 0;
        for y in 0..p.len() {
            for z in y..p.len() {
                match ring.splitting(y, z) {
                    Ok(_) => {
                        assert!(ring.whitney_check(y, z).unwrap(), "S{n}: {y} {z}");
                        valid += 1;
                    }
                    Err(e) => assert!(matches!(e, Error::DecompositionHypothesis(_))),
                }
            }
        }
        assert!(valid >= p.len(), "S{n}");
    }
}

#[test]
fn point_classification() {
    let f = sigma(2);
    let act = GroupAction::new(&f.group, &f.poset).unwrap();
    assert_eq!(CohomologyRing::with_group(&act, Coefficients::Q).point_classification().unwrap().len(), 2);
    for f in small_builtins() {
        let act = GroupAction::new(&f.group, &f.poset).unwrap();
        let ring = CohomologyRing::with_group(&act, Coefficients::Q);
        let info = ring.point_classification().unwrap();
        assert_eq!(info.len(), act.flat_orbits().len());
        for s in info {
            let x = s.flat;
            assert_eq!(s.torus_rank, f.poset.flat(x).components.len());
            assert_eq!(s.codim, f.poset.flat(x).codim());
            let setwise = (0..f.group.order())
                .filter(|&w| f.poset.flat(x).subspace.image(f.group.element(w)).unwrap() == f.poset.flat(x).subspace)
                .count();
            assert_eq!(s.component_group_order * act.pointwise_stabilizer(x).unwrap().len(), setwise);
        }
    }
    let f = sigma(3);
    let act = GroupAction::new(&f.group, &f.poset).unwrap();
    let info = CohomologyRing::with_group(&act, Coefficients::Q).point_classification().unwrap();
    assert_eq!(info.iter().map(|s| s.torus_rank).collect::<Vec<_>>(), vec![0, 1, 1]);
    assert_eq!(info.iter().map(|s| s.component_group_order).collect::<Vec<_>>(), vec![6, 1, 1]);
}

#[test]
fn invariant_bases_are_orbit_sums() {
    for f in [sigma(3), sigma(4), b(2), b(3)] {
        let act = GroupAction::new(&f.group, &f.poset).unwrap();
        let ring = CohomologyRing::with_group(&act, Coefficients::Q);
        let betti = ring.betti_m(4).unwrap();
        for d in 0..=4 {
            let basis = ring.invariant_basis(d, false).unwrap();
            assert_eq!(basis.len(), betti[d as usize]);
            let mut support = BTreeSet::new();
            for x in &basis {
                for g in 0..f.group.order() {
                    assert_eq!(&ring.act(g, x).unwrap(), x);
                }
                // disjoint supports make the orbit sums independent
                for e in x.terms().keys() {
                    assert!(support.insert(e.clone()));
                }
            }
            assert_eq!(support.len(), ring.monoid().enumerate(d)[d as usize].len());
        }
    }
    // the averaged degree-2 generator for S3 is a third of the hyperplane sum
    let f = sigma(3);
    let act = GroupAction::new(&f.group, &f.poset).unwrap();
    let ring = CohomologyRing::with_group(&act, Coefficients::Q);
    let x = &ring.invariant_basis(1, true).unwrap()[0];
    let hs: Vec<RingElement> = (0..3).map(|h| ring.class_of_hyperplane(h).unwrap()).collect();
    assert_eq!(x, &ring.scale(&ring.sum(&hs).unwrap(), &ratio(1, 3)).unwrap());
}

#[test]
fn discriminant_assignment_for_gl3() {
    let f = sigma(3);
    let act = GroupAction::new(&f.group, &f.poset).unwrap();
    let ring = CohomologyRing::with_group(&act, Coefficients::Q);
    // no relations among x, y below degree 8
    let low = discriminant_check(&ring, 3, &rat(1), 3).unwrap();
    assert!(low.relations.is_empty());
    assert!(low.holds());
    let full = discriminant_check(&ring, 3, &rat(1), 4).unwrap();
    assert_eq!(full.relations.len(), 1);
    assert!(full.holds());
    // the degree-8 relation only survives because c^4 = 0
    let rel = &full.relations[0];
    let value: Rational = rel.iter().fold(Rational::zero(), |acc, (i, j, c)| {
        acc + c * (0..*i).fold(rat(1), |a, _| a * rat(-6)) * (0..*j).fold(rat(1), |a, _| a * rat(6))
    });
    assert!(!value.is_zero());
    assert!(!discriminant_check(&ring, 4, &rat(1), 4).unwrap().holds());
    // other q scale homogeneously
    assert!(discriminant_check(&ring, 3, &ratio(-5, 2), 4).unwrap().holds());
}

#[test]
fn bare_arrangement_mode() {
    let f = sigma(3);
    let ring = CohomologyRing::new(&f.poset, Coefficients::Q);
    assert_eq!(ring.betti_c(2), vec![1, 3, 4]);
    assert!(ring.betti_m(2).is_err());
    assert!(ring.invariant_basis(1, false).is_err());
}
