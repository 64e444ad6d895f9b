mod common;

use adhesive::adhesion::cancellation::random_config;
use adhesive::adhesion::{
    cancellation_lemma_check, classify, is_adhesive_morphism, is_pre_adhesive, is_stable_pushout, is_van_kampen,
    mono_coherence, pullback_cube,
};
use adhesive::probe::ProbeSet;
use adhesive::replay::replay;
use adhesive::universal::is_pullback;
use adhesive::{suites, Category, Kind, Square, StructCat};
use common::set_map;

fn pushout_square(cat: &StructCat, m: adhesive::Hom, f: adhesive::Hom) -> Square<adhesive::Hom> {
    let po = cat.pushout(&m, &f).unwrap();
    Square::new(m, f, po.left, po.right)
}

fn acyclic_square() -> (StructCat, Square<adhesive::Hom>) {
    let cat = StructCat::acyclicrel();
    let c = cat.relation(2, &[]).unwrap();
    let a = cat.relation(3, &[(0, 1), (1, 2)]).unwrap();
    let m = cat.map(&c, &a, &[0, 2]).unwrap();
    let f = cat.to_terminal(&c);
    let sq = pushout_square(&cat, m, f);
    (cat, sq)
}

#[test]
fn identity_probe_gives_the_bottom_face_back() {
    let cat = StructCat::finset();
    let sq = pushout_square(&cat, set_map(&cat, 1, 2, &[0]), set_map(&cat, 1, 2, &[1]));
    let id = cat.identity(&sq.g.cod);
    let cube = pullback_cube(&cat, &sq, &id).unwrap();
    for h in [&cube.a, &cube.b, &cube.c, &cube.d] {
        assert!(cat.is_iso(h));
    }
    assert!(common::is_pushout(Kind::FinSet, &cube.top));
    assert!(pullback_cube(&cat, &sq, &cat.identity(&cat.set(1))).is_err());

    let (e, esq) = acyclic_square();
    let cube = pullback_cube(&e, &esq, &e.identity(&esq.g.cod)).unwrap();
    assert!(adhesive::universal::pushout_holds(&e, &cube.top).unwrap());
}

#[test]
fn every_probe_of_a_finset_pushout_along_a_mono_stays_a_pushout() {
    let cat = StructCat::finset();
    let sq = pushout_square(&cat, set_map(&cat, 2, 3, &[0, 2]), set_map(&cat, 2, 1, &[0, 0]));
    for d in adhesive::probe::probes_into(&cat, &sq.g.cod, 3).unwrap() {
        let cube = pullback_cube(&cat, &sq, &d).unwrap();
        assert!(common::is_pushout(Kind::FinSet, &cube.top));
        for face in [cube.left(), cube.back(), cube.front(), cube.right()] {
            assert!(common::is_pullback(Kind::FinSet, &face));
        }
    }
}

#[test]
fn stable_and_van_kampen_examples() {
    let cat = StructCat::finset();
    let sq = pushout_square(&cat, set_map(&cat, 1, 2, &[1]), set_map(&cat, 1, 2, &[0]));
    let probes = ProbeSet::exhaustive(&cat, &sq.g.cod, 3).unwrap();
    assert!(is_stable_pushout(&cat, &sq, &probes).unwrap().passed());
    assert!(is_van_kampen(&cat, &sq, &probes, 2).unwrap().passed());

    let id = cat.identity(&cat.set(2));
    let trivial = Square::new(id.clone(), id.clone(), id.clone(), id);
    let probes = ProbeSet::exhaustive(&cat, &cat.set(2), 3).unwrap();
    assert!(is_stable_pushout(&cat, &trivial, &probes).unwrap().passed());
    assert!(is_van_kampen(&cat, &trivial, &probes, 2).unwrap().passed());

    let not_po = Square::new(
        set_map(&cat, 0, 1, &[]),
        set_map(&cat, 0, 1, &[]),
        set_map(&cat, 1, 1, &[0]),
        set_map(&cat, 1, 1, &[0]),
    );
    assert!(is_stable_pushout(&cat, &not_po, &probes).is_err());
}

#[test]
fn graph_pushouts_along_monos_are_stable_under_random_probes() {
    use rand::Rng;
    let cat = StructCat::fingraph();
    let mut rng = common::rng(31);
    for _ in 0..20 {
        let m = adhesive::instances::gen::mono(&cat, 2, 2, true, &mut rng);
        let b = adhesive::instances::gen::object(&cat, 2, &mut rng);
        let Some(f) = adhesive::instances::gen::hom(&cat, &m.dom, &b, &mut rng) else { continue };
        let sq = pushout_square(&cat, m, f);
        let mut probes = Vec::new();
        while probes.len() < 25 {
            let size = rng.gen_range(0..=3);
            let x = adhesive::instances::gen::object(&cat, size, &mut rng);
            if let Some(d) = adhesive::instances::gen::hom(&cat, &x, &sq.g.cod, &mut rng) {
                probes.push(d);
            }
        }
        assert!(is_stable_pushout(&cat, &sq, &ProbeSet::supplied(probes)).unwrap().passed());
    }
}

#[test]
fn morphism_level_examples() {
    let cat = StructCat::finset();
    assert!(is_pre_adhesive(&cat, &set_map(&cat, 1, 3, &[2]), 2).unwrap().passed());
    assert!(is_adhesive_morphism(&cat, &set_map(&cat, 2, 3, &[0, 1]), 2).unwrap().passed());
    for kind in [Kind::FinSet, Kind::RelSet, Kind::AcyclicRel] {
        let c = StructCat::new(kind);
        let x = if kind == Kind::FinSet { c.set(2) } else { c.relation(2, &[(0, 1)]).unwrap() };
        assert!(is_adhesive_morphism(&c, &c.identity(&x), 2).unwrap().passed(), "{kind:?}");
    }
    let (e, sq) = acyclic_square();
    let w = is_adhesive_morphism(&e, &sq.m, 3).unwrap();
    assert!(!w.passed());
    assert!(!is_pre_adhesive(&e, &sq.m, 3).unwrap().passed());
}

#[test]
fn classification_at_bound_three() {
    let finset = classify(&StructCat::finset(), 3).unwrap();
    assert!(finset.adhesive.holds() && finset.rm_adhesive.holds() && finset.q_adhesive.holds());

    let relset = classify(&StructCat::relset(), 3).unwrap();
    assert!(relset.q_adhesive.holds());
    assert!(!relset.rm_adhesive.holds());
    assert!(!relset.adhesive.holds());
    let w = relset.rm_adhesive.witness.as_ref().unwrap();
    assert_eq!(w.check, "regular_union");

    let acyclic = classify(&StructCat::acyclicrel(), 3).unwrap();
    assert!(!acyclic.q_adhesive.holds() && !acyclic.rm_adhesive.holds() && !acyclic.adhesive.holds());
}

#[test]
fn rm_refuted_whenever_q_is() {
    for kind in [Kind::FinSet, Kind::FinGraph, Kind::RelSet] {
        let c = classify(&StructCat::new(kind), 2).unwrap();
        assert!(c.q_adhesive.holds() || !c.rm_adhesive.holds());
        assert!(c.q_adhesive.holds() || !c.adhesive.holds());
    }
}

#[test]
fn refutations_persist_at_larger_bounds() {
    // ({0,1},{0R1}) has size 3, so nothing is refuted below bound 3
    assert!(classify(&StructCat::relset(), 2).unwrap().rm_adhesive.holds());
    let small = classify(&StructCat::relset(), 3).unwrap();
    let w = small.rm_adhesive.witness.clone().expect("refuted at bound 3");
    assert!(replay(&w).unwrap()["reproduced"].as_bool().unwrap());
    let large = classify(&StructCat::relset(), 4).unwrap();
    assert!(!large.rm_adhesive.holds());
}

#[test]
fn the_three_conditions_agree() {
    for kind in [Kind::FinSet, Kind::FinGraph] {
        let c = mono_coherence(&StructCat::new(kind), 2).unwrap();
        assert!(c.agree(), "{kind:?}");
        assert!(c.all_van_kampen);
    }
}

#[test]
fn finset_pushout_suite_counts() {
    // one mono per (|C|, |A|) with |A| ≤ 3, times every map out of C into a
    // set of size ≤ 3
    let expected: usize = (0..=3u32)
        .map(|c| {
            let monos = 4 - c as usize;
            let maps: usize = (0..=3usize).map(|b| b.pow(c)).sum();
            monos * maps
        })
        .sum();
    assert_eq!(expected, 98);
    let out = suites::pushouts_along_monos(&StructCat::finset(), 3).unwrap();
    assert_eq!(out.cases, expected);
    assert!(out.passed());
}

#[test]
fn cancellation_examples() {
    let cat = StructCat::finset();
    let mut rng = common::rng(41);
    for _ in 0..50 {
        let cfg = random_config(&cat, 2, &mut rng).unwrap();
        let w = cancellation_lemma_check(&cat, &cfg, 2).unwrap();
        assert!(w.passed());
        assert!(common::is_pullback(Kind::FinSet, &cfg.right_square()));
        let back = adhesive::adhesion::CancellationConfig::from_json(&cat, &cfg.to_json(&cat)).unwrap();
        assert_eq!(back, cfg);
    }
}

#[test]
fn degenerate_cancellation_configuration() {
    let cat = StructCat::finset();
    let a = cat.set(2);
    let id = cat.identity(&a);
    let f = set_map(&cat, 2, 1, &[0, 0]);
    let cfg = adhesive::adhesion::CancellationConfig {
        pushout: Square::new(id.clone(), id.clone(), id.clone(), id.clone()),
        f: f.clone(),
        q: cat.identity(&cat.set(1)),
        p: id.clone(),
        f_prime: f,
        p_i: [id.clone(), id.clone()],
        a_i_prime: [id.clone(), id],
    };
    assert!(cancellation_lemma_check(&cat, &cfg, 2).unwrap().passed());
}

#[test]
fn broken_cancellation_hypotheses_are_rejected() {
    let cat = StructCat::finset();
    let mut rng = common::rng(42);
    let mut cfg = random_config(&cat, 2, &mut rng).unwrap();
    let bad = Square::new(
        set_map(&cat, 0, 1, &[]),
        set_map(&cat, 0, 1, &[]),
        set_map(&cat, 1, 1, &[0]),
        set_map(&cat, 1, 1, &[0]),
    );
    cfg.pushout = bad;
    assert!(cancellation_lemma_check(&cat, &cfg, 2).is_err());
}

#[test]
fn acyclic_square_is_flagged_not_a_pullback() {
    let (e, sq) = acyclic_square();
    assert_eq!(sq.g.cod, e.terminal());
    assert!(!is_pullback(&e, &sq).unwrap().passed());
}
