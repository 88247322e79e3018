use std::collections::{BTreeMap, VecDeque};

use camring::exactlin::{rat, Rational, RationalMatrix};
use camring::higgs::{Convention, HiggsModel, RelationSign, RootDatum};
use camring::monoid::MonoidElement;
use camring::strata::{Coefficients, CohomologyRing};
use camring::Error;

fn conventions() -> Vec<Convention> {
    let mut out = Vec::new();
    for s in [rat(1), rat(2), Rational::new((-1).into(), 3.into())] {
        for sign in [RelationSign::Plus, RelationSign::Minus] {
            out.push(Convention { pairing_scale: s.clone(), sign });
        }
    }
    out
}

fn b2(conv: Convention) -> RootDatum {
    RootDatum::new(
        vec![vec![rat(1), rat(-1)], vec![rat(0), rat(1)]],
        vec![vec![rat(1), rat(-1)], vec![rat(0), rat(2)]],
        conv,
    )
    .unwrap()
}

#[test]
fn sl2_tables_under_every_convention() {
    for conv in conventions() {
        let d = RootDatum::sl2(conv.clone());
        let h = HiggsModel::new(&d).unwrap();
        assert_eq!(h.hc_betti(3), vec![1, 2, 2, 2], "{conv:?}");
        assert_eq!(h.h_betti(4).unwrap(), vec![1, 1, 2, 1, 2], "{conv:?}");
        assert!(h.kernel_property().unwrap());
    }
}

#[test]
fn sl2_group_law_through_degree_8() {
    for conv in [Convention::default(), Convention::paper_sl2()] {
        let d = RootDatum::sl2(conv);
        assert!(HiggsModel::new(&d).unwrap().group_law_holds(4));
    }
}

/// `Q[a, χ]` modulo one quadratic relation `a² = c·aχ` has dimension 2 in
/// every positive degree; check the relation holds in the image.
#[test]
fn sl2_closed_stratum_relation() {
    for (conv, c) in [(Convention::paper_sl2(), rat(1)), (Convention::default(), rat(-2))] {
        let d = RootDatum::sl2(conv);
        let h = HiggsModel::new(&d).unwrap();
        let a = h.monoid().letter(d.poset().hyperplane_flat(0), 1).unwrap();
        let a2 = h.monoid().multiply(&a, &a);
        let lhs = h.image(&h.basis_tensor(&a2, &[0]));
        let rhs = h.image(&h.basis_tensor(&a, &[1]));
        assert!(!lhs.is_empty());
        let scaled: BTreeMap<_, _> = rhs.into_iter().map(|(k, v)| (k, v * &c)).collect();
        assert_eq!(lhs, scaled);
    }
}

#[test]
fn presentation_matches_image_through_degree_6() {
    for d in [RootDatum::sl2(Convention::default()), RootDatum::sl3(Convention::default()), b2(Convention::paper_sl2())] {
        let h = HiggsModel::new(&d).unwrap();
        assert_eq!(h.presentation_betti(3).unwrap(), h.hc_betti(3));
        assert!(h.kernel_property().unwrap());
    }
}

#[test]
fn dimensions_do_not_depend_on_convention() {
    for make in [RootDatum::sl3 as fn(Convention) -> RootDatum, b2] {
        let base = make(Convention::default());
        let hb = HiggsModel::new(&base).unwrap();
        let (hc, h) = (hb.hc_betti(2), hb.h_betti(2).unwrap());
        for conv in conventions() {
            let d = make(conv);
            let m = HiggsModel::new(&d).unwrap();
            assert_eq!(m.hc_betti(2), hc);
            assert_eq!(m.h_betti(2).unwrap(), h);
        }
    }
}

#[test]
fn stratum_quotients_have_the_expected_size() {
    for d in [RootDatum::sl2(Convention::default()), RootDatum::sl3(Convention::paper_sl2()), b2(Convention::default())] {
        let h = HiggsModel::new(&d).unwrap();
        for (x, s) in h.strata().iter().enumerate() {
            let k = d.poset().component_count(x);
            assert_eq!((s.u_count, s.chi_count), (k, d.dim()));
            let rank = if s.relations.is_empty() {
                0
            } else {
                RationalMatrix::from_rows(&s.relations, s.nvars()).unwrap().rank()
            };
            assert_eq!(s.relation_rank(), rank);
            assert_eq!(s.quotient_dim(1), k + d.dim() - rank);
        }
        // the open stratum has no relations
        assert!(h.stratum(0).relations.is_empty());
    }
}

#[test]
fn h_dominates_the_monoid_invariants() {
    for d in [RootDatum::sl2(Convention::default()), RootDatum::sl3(Convention::default()), b2(Convention::default())] {
        let h = HiggsModel::new(&d).unwrap();
        let ring = CohomologyRing::with_group(h.action(), Coefficients::Q);
        let hb = h.h_betti(3).unwrap();
        let mb = ring.betti_m(3).unwrap();
        assert!(hb.iter().zip(&mb).all(|(a, b)| a >= b), "{hb:?} vs {mb:?}");
        assert!(h.hc_betti(3).iter().zip(&hb).all(|(a, b)| a >= b));
    }
}

/// Word length in the simple reflections, by breadth-first search.
fn lengths(d: &RootDatum) -> Vec<usize> {
    let g = d.group();
    let simple: Vec<usize> = (0..d.rank())
        .map(|i| {
            let (a, c) = (&d.simple_roots()[i], &d.simple_coroots()[i]);
            let n = d.dim();
            let mut m = RationalMatrix::identity(n);
            for r in 0..n {
                for s in 0..n {
                    m.set(r, s, m.get(r, s) - &c[r] * &a[s]);
                }
            }
            g.id_of(&m).unwrap()
        })
        .collect();
    let mut len = vec![usize::MAX; g.order()];
    len[g.identity()] = 0;
    let mut q = VecDeque::from([g.identity()]);
    while let Some(w) = q.pop_front() {
        for &s in &simple {
            let v = g.mul(w, s);
            if len[v] == usize::MAX {
                len[v] = len[w] + 1;
                q.push_back(v);
            }
        }
    }
    len
}

#[test]
fn inversion_sets_have_the_length_of_w() {
    for (d, longest) in [(RootDatum::sl3(Convention::default()), 3), (b2(Convention::default()), 4)] {
        let len = lengths(&d);
        for w in 0..d.group().order() {
            assert_eq!(d.inversion_set(w).len(), len[w]);
        }
        assert_eq!(len.iter().max(), Some(&longest));
        assert_eq!(d.positive_roots().len(), longest);
        assert!(d.inversion_set(d.group().identity()).is_empty());
    }
}

#[test]
fn twisted_classes_form_a_cocycle() {
    for d in [RootDatum::sl3(Convention::default()), b2(Convention::paper_sl2())] {
        let g = d.group();
        let ring = CohomologyRing::new(d.poset(), Coefficients::Q);
        let act = camring::reflection::GroupAction::new(g, d.poset()).unwrap();
        let ring_w = CohomologyRing::with_group(&act, Coefficients::Q);
        for i in 0..d.dim() {
            let chi = d.character(i);
            assert!(d.tilde_chi(&ring, g.identity(), &chi).unwrap().is_zero());
            for v in 0..g.order() {
                for w in 0..g.order() {
                    // χ̃_{vw}(χ) = χ̃_v(χ)·w + χ̃_w(χ^v)
                    let lhs = d.tilde_chi(&ring_w, g.mul(v, w), &chi).unwrap();
                    let first = ring_w.act(w, &d.tilde_chi(&ring_w, v, &chi).unwrap()).unwrap();
                    let second = d.tilde_chi(&ring_w, w, &d.chi_w(v, &chi)).unwrap();
                    assert_eq!(lhs, ring_w.add(&first, &second).unwrap(), "v={v} w={w} χ{i}");
                }
            }
        }
    }
}

#[test]
fn sl3_group_law_and_invariants() {
    let d = RootDatum::sl3(Convention::paper_sl2());
    let h = HiggsModel::new(&d).unwrap();
    assert!(h.group_law_holds(2));
    let hb = h.h_betti(2).unwrap();
    assert_eq!(hb[0], 1);
    // degree 2: invariant characters vanish for sl3, the hyperplane sum survives
    assert_eq!(hb[1], 1);
}

#[test]
fn custom_datum_equals_builtin() {
    let custom = RootDatum::new(vec![vec![rat(2)]], vec![vec![rat(1)]], Convention::paper_sl2()).unwrap();
    let builtin = RootDatum::sl2(Convention::paper_sl2());
    let (a, b) = (HiggsModel::new(&custom).unwrap(), HiggsModel::new(&builtin).unwrap());
    assert_eq!(a.hc_betti(4), b.hc_betti(4));
    assert_eq!(a.h_betti(4).unwrap(), b.h_betti(4).unwrap());
    let t = a.basis_tensor(&MonoidElement::identity(), &[2]);
    assert_eq!(a.twisted_action(1, &t), b.twisted_action(1, &t));
}

#[test]
fn invalid_data_are_named() {
    let zero_scale = Convention { pairing_scale: rat(0), sign: RelationSign::Plus };
    assert!(matches!(RootDatum::new(vec![vec![rat(2)]], vec![vec![rat(1)]], zero_scale), Err(Error::InvalidDatum(_))));
    let dependent = RootDatum::new(
        vec![vec![rat(2), rat(0)], vec![rat(-2), rat(0)]],
        vec![vec![rat(1), rat(0)], vec![rat(-1), rat(0)]],
        Convention::default(),
    );
    assert!(matches!(dependent, Err(Error::InvalidDatum(_))));
    let ragged = RootDatum::new(vec![vec![rat(2)]], vec![vec![rat(1), rat(0)]], Convention::default());
    assert!(matches!(ragged, Err(Error::InvalidDatum(_))));
}
