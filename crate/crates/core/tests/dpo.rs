mod common;

use adhesive::dpo::{
    complement_uniqueness, dpo_step, host_from_json, pushout_complement, random_case, ComplementOutcome, Rule, Step,
};
use adhesive::{suites, Category, Kind, StructCat};
use serde_json::Value;

fn data(name: &str) -> Value {
    let path = format!("{}/data/rewriting/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn load(rule: &str, host: &str) -> (StructCat, Rule, adhesive::Structure, Option<adhesive::Hom>) {
    let cat = StructCat::fingraph();
    let rule = Rule::from_json(&cat, &data(rule)).unwrap();
    let (g, m) = host_from_json(&cat, &rule, &data(host)).unwrap();
    (cat, rule, g, m)
}

fn applied(step: Step) -> Box<adhesive::dpo::Derivation> {
    match step {
        Step::Applied(d) => d,
        Step::Inapplicable(why) => panic!("inapplicable: {why}"),
    }
}

#[test]
fn identity_leg_keeps_the_host() {
    let cat = StructCat::fingraph();
    let l = cat.graph(2, &[(0, 1)]).unwrap();
    let g = cat.graph(3, &[(0, 1), (1, 2)]).unwrap();
    let rule = Rule::identity(&cat, &l);
    let m = cat.morphism(&l, &g, vec![vec![1, 2], vec![1]]).unwrap();
    let ComplementOutcome::Found(c) = pushout_complement(&cat, &rule.l, &m).unwrap() else { panic!() };
    assert!(cat.is_iso(&c.d));
    let d = applied(dpo_step(&cat, &rule, &m).unwrap());
    assert!(cat.find_iso(d.result(), &g).is_some());
    assert!(d.certified());
}

#[test]
fn deleting_an_edge_keeps_its_endpoints() {
    let cat = StructCat::fingraph();
    let k = cat.graph(2, &[]).unwrap();
    let l = cat.graph(2, &[(0, 1)]).unwrap();
    let leg = cat.morphism(&k, &l, vec![vec![0, 1], vec![]]).unwrap();
    let rule = Rule::new(&cat, leg.clone(), leg).unwrap();
    let g = cat.graph(3, &[(0, 1), (1, 2)]).unwrap();
    let m = cat.morphism(&l, &g, vec![vec![0, 1], vec![0]]).unwrap();
    let ComplementOutcome::Found(c) = pushout_complement(&cat, &rule.l, &m).unwrap() else { panic!() };
    assert_eq!(c.d.dom.sorts, vec![3, 1]);
    assert!(common::is_pushout(Kind::FinGraph, &c.square(&rule.l, &m)));
}

#[test]
fn shipped_delete_edge_rule_applies() {
    let (cat, rule, g, _) = load("delete_edge", "triangle");
    for m in cat.hom(rule.lhs(), &g) {
        let d = applied(dpo_step(&cat, &rule, &m).unwrap());
        assert_eq!(d.result().sorts[1] + 1, g.sorts[1]);
    }
}

#[test]
fn dangling_edge_blocks_vertex_deletion() {
    let (cat, rule, _, m) = load("delete_vertex", "dangling");
    let m = m.unwrap();
    assert!(matches!(pushout_complement(&cat, &rule.l, &m).unwrap(), ComplementOutcome::NoComplement(_)));
    assert!(matches!(dpo_step(&cat, &rule, &m).unwrap(), Step::Inapplicable(_)));
    let w = complement_uniqueness(&cat, &rule.l, &m, cat.size(&m.cod)).unwrap();
    assert!(w.passed());
    assert_eq!(w.detail.unwrap()["complements_found"], 0);
}

#[test]
fn contracting_a_path_of_length_two() {
    let (cat, rule, g, m) = load("contract_path", "path2");
    let d = applied(dpo_step(&cat, &rule, &m.unwrap()).unwrap());
    let single_edge = cat.graph(2, &[(0, 1)]).unwrap();
    assert!(cat.find_iso(d.result(), &single_edge).is_some());
    assert_eq!(g.sorts, vec![3, 2]);
    assert!(d.certified());
    assert!(common::is_pushout(Kind::FinGraph, &d.left) && common::is_pullback(Kind::FinGraph, &d.left));
    assert!(common::is_pushout(Kind::FinGraph, &d.right) && common::is_pullback(Kind::FinGraph, &d.right));
}

#[test]
fn identity_rule_on_the_triangle() {
    let (cat, rule, g, _) = load("identity_edge", "triangle");
    let matches = cat.hom(rule.lhs(), &g);
    assert_eq!(matches.len(), 3);
    for m in &matches {
        let d = applied(dpo_step(&cat, &rule, m).unwrap());
        assert!(cat.find_iso(d.result(), &g).is_some());
        assert!(complement_uniqueness(&cat, &rule.l, m, cat.size(&g)).unwrap().passed());
    }
}

#[test]
fn rules_round_trip_and_reject_non_monic_legs() {
    let cat = StructCat::fingraph();
    let rule = Rule::from_json(&cat, &data("contract_path")).unwrap();
    let again = Rule::from_json(&cat, &rule.to_json(&cat)).unwrap();
    assert_eq!(again.l, rule.l);
    assert_eq!(again.r, rule.r);

    let k = cat.graph(2, &[]).unwrap();
    let one = cat.graph(1, &[]).unwrap();
    let fold = cat.morphism(&k, &one, vec![vec![0, 0], vec![]]).unwrap();
    assert!(Rule::new(&cat, fold.clone(), fold).is_err());
    assert!(Rule::from_json(&StructCat::relset(), &data("contract_path")).is_err());
}

#[test]
fn random_cases_have_unique_certified_complements() {
    let cat = StructCat::fingraph();
    let mut rng = common::rng(51);
    for _ in 0..30 {
        let (rule, m) = random_case(&cat, &mut rng).unwrap();
        let w = complement_uniqueness(&cat, &rule.l, &m, cat.size(&m.cod).min(5)).unwrap();
        assert!(w.passed(), "{w:?}");
        if let Step::Applied(d) = dpo_step(&cat, &rule, &m).unwrap() {
            assert!(d.certified());
            assert!(common::is_pushout(Kind::FinGraph, &d.left));
        }
    }
}

#[test]
fn uniqueness_suite_runs_on_finset_too() {
    let out = suites::dpo_uniqueness(&StructCat::finset(), 20, 3).unwrap();
    assert!(out.passed());
    assert_eq!(out.cases, 20);
}
