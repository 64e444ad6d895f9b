mod common;

use adhesive::instances::gen;
use adhesive::universal::{is_pullback, is_pushout, paste, paste_check, pullback_holds, pushout_holds, PasteMode};
use adhesive::{Category, Kind, Square, StructCat};
use common::{all_tables, set_map};

#[test]
fn finset_pushout_verdicts_match_the_quotient_oracle() {
    let cat = StructCat::finset();
    let mut checked = 0;
    for c in 0..=2 {
        for a in 0..=2 {
            for b in 0..=2 {
                for mt in all_tables(c, a) {
                    for ft in all_tables(c, b) {
                        for d in 0..=3 {
                            for gt in all_tables(a, d) {
                                for nt in all_tables(b, d) {
                                    let sq = Square::new(
                                        set_map(&cat, c, a, &mt),
                                        set_map(&cat, c, b, &ft),
                                        set_map(&cat, a, d, &gt),
                                        set_map(&cat, b, d, &nt),
                                    );
                                    if sq.check(&cat).is_err() {
                                        continue;
                                    }
                                    checked += 1;
                                    assert_eq!(
                                        pushout_holds(&cat, &sq).unwrap(),
                                        common::is_pushout(Kind::FinSet, &sq),
                                        "{sq:?}"
                                    );
                                    assert_eq!(
                                        pullback_holds(&cat, &sq).unwrap(),
                                        common::is_pullback(Kind::FinSet, &sq),
                                        "{sq:?}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // commuting squares with |C|,|A|,|B| ≤ 2 and |D| ≤ 3
    assert_eq!(checked, 832);
}

/// Commuting squares near the canonical ones: the canonical pushout followed
/// by a random map out of `D`, and the canonical pullback preceded by a
/// random map into `P`.
fn perturbed_squares(kind: Kind, seed: u64, count: usize) {
    let cat = StructCat::new(kind);
    let mut rng = common::rng(seed);
    let (mut pushouts, mut pullbacks) = (0, 0);
    while pushouts < count || pullbacks < count {
        let m = gen::mono(&cat, 2, 2, kind == Kind::RelSet, &mut rng);
        let b = gen::object(&cat, 2, &mut rng);
        let Some(f) = gen::hom(&cat, &m.dom, &b, &mut rng) else { continue };
        if cat.admits_pushout(&m) {
            let po = cat.pushout(&m, &f).unwrap();
            let d2 = gen::object(&cat, 3, &mut rng);
            let after = if rand::Rng::gen_bool(&mut rng, 0.5) {
                Some(cat.identity(&po.left.cod))
            } else {
                gen::hom(&cat, &po.left.cod, &d2, &mut rng)
            };
            if let Some(h) = after {
                let sq = Square::new(m.clone(), f.clone(), cat.then(&po.left, &h), cat.then(&po.right, &h));
                assert_eq!(pushout_holds(&cat, &sq).unwrap(), common::is_pushout(kind, &sq), "{sq:?}");
                pushouts += 1;
            }
        }
        let (a, d) = (gen::object(&cat, 2, &mut rng), gen::object(&cat, 2, &mut rng));
        let (Some(g), Some(n)) = (gen::hom(&cat, &a, &d, &mut rng), gen::hom(&cat, &b, &d, &mut rng)) else { continue };
        let pb = cat.pullback(&g, &n).unwrap();
        let p2 = gen::object(&cat, 2, &mut rng);
        let before = if rand::Rng::gen_bool(&mut rng, 0.5) {
            Some(cat.identity(&pb.left.dom))
        } else {
            gen::hom(&cat, &p2, &pb.left.dom, &mut rng)
        };
        if let Some(h) = before {
            let sq = Square::new(cat.then(&h, &pb.left), cat.then(&h, &pb.right), g, n);
            assert_eq!(pullback_holds(&cat, &sq).unwrap(), common::is_pullback(kind, &sq), "{sq:?}");
            pullbacks += 1;
        }
    }
}

#[test]
fn fingraph_verdicts_match_the_sortwise_oracle() {
    perturbed_squares(Kind::FinGraph, 21, 300);
}

#[test]
fn relset_verdicts_match_the_relational_oracle() {
    perturbed_squares(Kind::RelSet, 22, 300);
}

#[test]
fn product_over_terminal_is_a_pullback_and_the_diagonal_is_not() {
    let cat = StructCat::finset();
    let g = set_map(&cat, 2, 1, &[0, 0]);
    let n = g.clone();
    let product =
        Square::new(set_map(&cat, 4, 2, &[0, 0, 1, 1]), set_map(&cat, 4, 2, &[0, 1, 0, 1]), g.clone(), n.clone());
    assert!(is_pullback(&cat, &product).unwrap().passed());
    let diagonal = Square::new(set_map(&cat, 2, 2, &[0, 1]), set_map(&cat, 2, 2, &[0, 1]), g, n);
    let w = is_pullback(&cat, &diagonal).unwrap();
    assert!(!w.passed());
    assert!(w.counterexample.is_some());
}

#[test]
fn gluing_two_points_along_one() {
    let cat = StructCat::finset();
    let sq = Square::new(
        set_map(&cat, 1, 2, &[0]),
        set_map(&cat, 1, 2, &[0]),
        set_map(&cat, 2, 3, &[0, 1]),
        set_map(&cat, 2, 3, &[0, 2]),
    );
    assert!(is_pushout(&cat, &sq).unwrap().passed());
    let id = cat.identity(&cat.set(2));
    assert!(is_pushout(&cat, &Square::new(id.clone(), id.clone(), id.clone(), id)).unwrap().passed());
}

#[test]
fn acyclic_example_square_is_a_pushout_but_not_a_pullback() {
    let cat = StructCat::acyclicrel();
    let c = cat.relation(2, &[]).unwrap();
    let a = cat.relation(3, &[(0, 1), (1, 2)]).unwrap();
    let m = cat.map(&c, &a, &[0, 2]).unwrap();
    let f = cat.to_terminal(&c);
    let g = cat.to_terminal(&a);
    let n = cat.identity(&cat.terminal());
    let sq = Square::new(m, f, g, n);
    assert!(is_pushout(&cat, &sq).unwrap().passed());
    assert!(!is_pullback(&cat, &sq).unwrap().passed());
}

#[test]
fn stacked_product_squares_paste() {
    let cat = StructCat::finset();
    // 2×1 → 1 over 1, then 1 → 1 over 1
    let left = Square::new(
        set_map(&cat, 2, 2, &[0, 1]),
        set_map(&cat, 2, 1, &[0, 0]),
        set_map(&cat, 2, 1, &[0, 0]),
        cat.identity(&cat.set(1)),
    );
    let right = Square::new(
        cat.identity(&cat.set(1)),
        cat.identity(&cat.set(1)),
        cat.identity(&cat.set(1)),
        cat.identity(&cat.set(1)),
    );
    assert!(paste_check(&cat, &left, &right, PasteMode::Pullback).unwrap().passed());
}

#[test]
fn random_composable_pullback_pairs_paste() {
    let cat = StructCat::finset();
    let mut rng = common::rng(5);
    let mut done = 0;
    while done < 200 {
        let [a, d, b2, e] = [0; 4].map(|_| gen::object(&cat, 3, &mut rng));
        let (Some(g), Some(g2), Some(n2)) =
            (gen::hom(&cat, &a, &d, &mut rng), gen::hom(&cat, &d, &e, &mut rng), gen::hom(&cat, &b2, &e, &mut rng))
        else {
            continue;
        };
        let outer_pb = cat.pullback(&g2, &n2).unwrap();
        let right = Square::new(outer_pb.left.clone(), outer_pb.right, g2, n2);
        let inner_pb = cat.pullback(&g, &outer_pb.left).unwrap();
        let left = Square::new(inner_pb.left, inner_pb.right, g, outer_pb.left);
        assert!(paste_check(&cat, &left, &right, PasteMode::Pullback).unwrap().passed());
        let outer = paste(&cat, &left, &right).unwrap();
        assert!(common::is_pullback(Kind::FinSet, &outer));
        assert!(pullback_holds(&cat, &outer).unwrap());
        done += 1;
    }
}

#[test]
fn stacked_graph_pushouts_along_monos_paste() {
    let cat = StructCat::fingraph();
    let mut rng = common::rng(6);
    for _ in 0..100 {
        let m = gen::mono(&cat, 2, 2, true, &mut rng);
        let b = gen::object(&cat, 2, &mut rng);
        let Some(f) = gen::hom(&cat, &m.dom, &b, &mut rng) else { continue };
        let po = cat.pushout(&m, &f).unwrap();
        let left = Square::new(m, f, po.left, po.right.clone());
        let b2 = gen::object(&cat, 2, &mut rng);
        let Some(f2) = gen::hom(&cat, &po.right.dom, &b2, &mut rng) else { continue };
        let po2 = cat.pushout(&po.right, &f2).unwrap();
        let right = Square::new(po.right, f2, po2.left, po2.right);
        assert!(paste_check(&cat, &left, &right, PasteMode::Pushout).unwrap().passed());
        assert!(pushout_holds(&cat, &paste(&cat, &left, &right).unwrap()).unwrap());
    }
}

#[test]
fn mismatched_edges_do_not_paste() {
    let cat = StructCat::finset();
    let id1 = cat.identity(&cat.set(1));
    let id2 = cat.identity(&cat.set(2));
    let a = Square::new(id1.clone(), id1.clone(), id1.clone(), id1);
    let b = Square::new(id2.clone(), id2.clone(), id2.clone(), id2);
    assert_eq!(paste(&cat, &a, &b).unwrap_err(), adhesive::CatError::EdgeMismatch);
}
