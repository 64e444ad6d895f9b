mod common;

use adhesive::colimit::{
    basic_lemma_squares, check_factorization, cokernel_pair, intersection, is_regular_mono, kernel_pair,
    regular_mono_holds, stable_factorization, stably_jointly_epi, union_effective,
};
use adhesive::instances::gen;
use adhesive::{Category, Kind, Square, StructCat};
use common::set_map;

#[test]
fn kernel_pair_of_a_map_to_the_point_is_the_square() {
    let cat = StructCat::finset();
    let kp = kernel_pair(&cat, &set_map(&cat, 2, 1, &[0, 0])).unwrap();
    assert_eq!(kp.p1.dom.sorts, vec![4]);
    let inj = set_map(&cat, 2, 3, &[2, 0]);
    let kp = kernel_pair(&cat, &inj).unwrap();
    assert!(cat.is_iso(&kp.p1) && cat.is_iso(&kp.p2));
}

#[test]
fn kernel_pair_of_an_edge_collapse_is_a_pullback() {
    let cat = StructCat::fingraph();
    let g = cat.graph(2, &[(0, 1)]).unwrap();
    let loop1 = cat.graph(1, &[(0, 0)]).unwrap();
    let f = cat.morphism(&g, &loop1, vec![vec![0, 0], vec![0]]).unwrap();
    let kp = kernel_pair(&cat, &f).unwrap();
    // 4 vertex pairs, 1 edge pair
    assert_eq!(kp.p1.dom.sorts, vec![4, 1]);
    assert!(common::is_pullback(Kind::FinGraph, &Square::new(kp.p1, kp.p2, f.clone(), f)));
}

#[test]
fn cokernel_pairs() {
    let cat = StructCat::finset();
    let cp = cokernel_pair(&cat, &set_map(&cat, 1, 2, &[0])).unwrap();
    assert_eq!(cp.i.cod.sorts, vec![3]);
    assert_ne!(cp.i, cp.j);
    let id = cat.identity(&cat.set(2));
    let cp = cokernel_pair(&cat, &id).unwrap();
    assert!(cat.is_iso(&cp.i) && cp.i == cp.j);

    let rel = StructCat::relset();
    let a = rel.relation(2, &[(0, 1)]).unwrap();
    let m = rel.map(&rel.relation(1, &[]).unwrap(), &a, &[0]).unwrap();
    let cp = cokernel_pair(&rel, &m).unwrap();
    assert_eq!(cp.i.cod.sorts, vec![3]);
    assert_ne!(cp.i.maps[0][1], cp.j.maps[0][1]);
    assert!(common::is_pushout(Kind::RelSet, &Square::new(m.clone(), m, cp.i, cp.j)));
}

#[test]
fn regular_monos_in_relset_reflect_the_relation() {
    let cat = StructCat::relset();
    let x = cat.relation(2, &[(0, 1)]).unwrap();
    let bare = cat.map(&cat.relation(2, &[]).unwrap(), &x, &[0, 1]).unwrap();
    let w = is_regular_mono(&cat, &bare).unwrap();
    assert!(!w.passed());
    assert!(cat.is_mono(&bare));
    let point = cat.map(&cat.relation(1, &[]).unwrap(), &x, &[1]).unwrap();
    assert!(is_regular_mono(&cat, &point).unwrap().passed());
    let collapse = cat.map(&cat.relation(2, &[]).unwrap(), &cat.relation(1, &[]).unwrap(), &[0, 0]).unwrap();
    assert!(!is_regular_mono(&cat, &collapse).unwrap().passed());
}

#[test]
fn regular_mono_matches_the_reflecting_oracle_on_random_relset_maps() {
    let cat = StructCat::relset();
    let mut rng = common::rng(11);
    let mut done = 0;
    while done < 300 {
        let (x, y) = (gen::object(&cat, 3, &mut rng), gen::object(&cat, 3, &mut rng));
        let Some(h) = gen::hom(&cat, &x, &y, &mut rng) else { continue };
        assert_eq!(regular_mono_holds(&cat, &h).unwrap(), common::is_regular_mono(Kind::RelSet, &h), "{h:?}");
        done += 1;
    }
}

#[test]
fn intersections() {
    let cat = StructCat::finset();
    let (i, _) = intersection(&cat, &set_map(&cat, 2, 3, &[0, 1]), &set_map(&cat, 2, 3, &[1, 2])).unwrap();
    assert_eq!(i.maps[0], vec![1]);
    let (i, _) = intersection(&cat, &set_map(&cat, 1, 3, &[0]), &set_map(&cat, 1, 3, &[2])).unwrap();
    assert_eq!(i.dom.sorts, vec![0]);
    assert!(intersection(&cat, &set_map(&cat, 1, 3, &[0]), &set_map(&cat, 1, 2, &[0])).is_err());

    let g = StructCat::fingraph();
    let x = g.graph(3, &[(0, 1), (1, 2)]).unwrap();
    let e = g.graph(2, &[(0, 1)]).unwrap();
    let left = g.morphism(&e, &x, vec![vec![0, 1], vec![0]]).unwrap();
    let right = g.morphism(&e, &x, vec![vec![1, 2], vec![1]]).unwrap();
    let (i, _) = intersection(&g, &left, &right).unwrap();
    assert_eq!(i.dom.sorts, vec![1, 0]);
    assert_eq!(i.maps[0], vec![1]);
}

#[test]
fn unions() {
    let cat = StructCat::finset();
    let (u, w) = union_effective(&cat, &set_map(&cat, 2, 3, &[0, 1]), &set_map(&cat, 2, 3, &[1, 2])).unwrap();
    assert!(w.passed());
    assert!(cat.is_iso(&u.unwrap()));
    let small = set_map(&cat, 1, 3, &[1]);
    let big = set_map(&cat, 2, 3, &[0, 1]);
    let (u, _) = union_effective(&cat, &small, &big).unwrap();
    let u = u.unwrap();
    assert_eq!(u.dom.sorts, vec![2]);
    let mut image = u.maps[0].clone();
    image.sort_unstable();
    assert_eq!(image, vec![0, 1]);

    let rel = StructCat::relset();
    let x = rel.relation(2, &[(0, 1)]).unwrap();
    let pt = rel.relation(1, &[]).unwrap();
    let (u, w) = union_effective(&rel, &rel.map(&pt, &x, &[0]).unwrap(), &rel.map(&pt, &x, &[1]).unwrap()).unwrap();
    assert!(w.passed());
    let u = u.unwrap();
    assert!(u.dom.rel.is_empty());
    assert!(!regular_mono_holds(&rel, &u).unwrap());
}

#[test]
fn basic_lemma_example_counts() {
    let cat = StructCat::finset();
    let (data, w) = basic_lemma_squares(&cat, &set_map(&cat, 2, 3, &[0, 1]), &set_map(&cat, 2, 1, &[0, 0])).unwrap();
    assert!(w.passed());
    let a2 = data.kernel_g.p1.dom.sorts[0];
    let c2 = data.kernel_f.p1.dom.sorts[0];
    assert_eq!((a2, c2), (5, 4));
    for sq in &data.squares {
        assert!(common::is_pushout(Kind::FinSet, sq) && common::is_pullback(Kind::FinSet, sq));
    }
    let (_, w) = basic_lemma_squares(&cat, &set_map(&cat, 1, 2, &[1]), &set_map(&cat, 1, 2, &[0])).unwrap();
    assert!(w.passed());
}

#[test]
fn basic_lemma_on_random_graphs() {
    let cat = StructCat::fingraph();
    let mut rng = common::rng(12);
    for _ in 0..100 {
        let m = gen::mono(&cat, 2, 2, true, &mut rng);
        let b = gen::object(&cat, 2, &mut rng);
        let Some(f) = gen::hom(&cat, &m.dom, &b, &mut rng) else { continue };
        let (data, w) = basic_lemma_squares(&cat, &m, &f).unwrap();
        assert!(w.passed(), "{w:?}");
        for sq in &data.squares {
            assert!(common::is_pushout(Kind::FinGraph, sq) && common::is_pullback(Kind::FinGraph, sq));
        }
    }
}

#[test]
fn factorization_of_two_points() {
    let cat = StructCat::finset();
    let t = stable_factorization(&cat, &set_map(&cat, 1, 3, &[0]), &set_map(&cat, 1, 3, &[1])).unwrap();
    assert!(cat.is_iso(&t.e));
    let mut image = t.n.maps[0].clone();
    image.sort_unstable();
    assert_eq!(image, vec![0, 1]);
    assert!(check_factorization(&cat, &t, 3).unwrap().passed());
    assert_eq!(cat.compose(&t.e, &t.n).unwrap(), t.union);

    let m = set_map(&cat, 2, 3, &[2, 0]);
    let t = stable_factorization(&cat, &m, &m).unwrap();
    assert!(cat.is_iso(&t.e));
    assert!(cat.factor_through(&m, &t.n).is_some_and(|u| cat.is_iso(&u)));
}

#[test]
fn factorization_trace_in_relset() {
    let cat = StructCat::relset();
    let x = cat.relation(2, &[(0, 1)]).unwrap();
    let pt = cat.relation(1, &[]).unwrap();
    let t = stable_factorization(&cat, &cat.map(&pt, &x, &[0]).unwrap(), &cat.map(&pt, &x, &[1]).unwrap()).unwrap();
    assert!(cat.is_iso(&t.n));
    assert_eq!(t.n.dom.rel, vec![(0, 1)]);
    assert!(cat.is_epi(&t.e) && !cat.is_iso(&t.e));
    assert!(regular_mono_holds(&cat, &t.n).unwrap());
    let v = t.to_json(&cat);
    for key in ["i", "j", "X1", "X2", "ell", "e1", "e2", "q", "k", "Y", "n", "e"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn factorization_rejects_non_regular_inputs() {
    let cat = StructCat::relset();
    let x = cat.relation(2, &[(0, 1)]).unwrap();
    let bare = cat.map(&cat.relation(2, &[]).unwrap(), &x, &[0, 1]).unwrap();
    let id = cat.identity(&x);
    assert!(stable_factorization(&cat, &bare, &id).is_err());
}

#[test]
fn jointly_epi_examples() {
    let cat = StructCat::finset();
    let w = stably_jointly_epi(&cat, &set_map(&cat, 2, 3, &[0, 1]), &set_map(&cat, 2, 1, &[0, 0]), 3).unwrap();
    assert!(w.passed());
    let w = stably_jointly_epi(&cat, &set_map(&cat, 1, 2, &[0]), &set_map(&cat, 1, 3, &[2]), 2).unwrap();
    assert!(w.passed());
    let rel = StructCat::relset();
    let x = rel.relation(2, &[(0, 1)]).unwrap();
    let bare = rel.map(&rel.relation(2, &[]).unwrap(), &x, &[0, 1]).unwrap();
    assert!(stably_jointly_epi(&rel, &bare, &rel.identity(&bare.dom), 2).is_err());
}
