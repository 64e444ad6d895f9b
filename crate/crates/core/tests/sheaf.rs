use adhesive::presentation::Presentation;
use adhesive::presheaf::{for_each_presheaf, Presheaf, SetFunctor};
use adhesive::sheaf::check::{j_sheaf_failure, simplified_outcome};
use adhesive::sheaf::demo::{demo_site_json, Demo, REFUTATION_5, UNSEPARATED_5};
use adhesive::sheaf::{embedding_report, is_j_sheaf, is_k_separated, simplified_sheaf_check, Site};
use adhesive::{CatError, StructCat};
use serde_json::{json, Value};

fn site(which: Demo) -> Site<Presentation> {
    Site::from_json(&serde_json::from_str(which.shipped()).unwrap()).unwrap()
}

/// `F(D) → F(A) ×_{F(C)} F(B)` is a bijection, from the raw tables.
fn sends_square_to_pullback(site: &Site<Presentation>, f: &dyn SetFunctor<Presentation>) -> bool {
    let p = &site.cat;
    site.squares.iter().all(|sq| {
        let [fm, ff, fg, fnn] = [sq.m, sq.f, sq.g, sq.n].map(|a| f.act(p, &a).unwrap());
        let mut pairs = Vec::new();
        for a in 0..fm.len() {
            for b in 0..ff.len() {
                if fm[a] == ff[b] {
                    pairs.push((a, b));
                }
            }
        }
        let mut image: Vec<_> = (0..fg.len()).map(|d| (fg[d], fnn[d])).collect();
        image.sort_unstable();
        image.dedup();
        image.len() == fg.len() && image == pairs
    })
}

#[test]
fn shipped_demos_match_their_construction() {
    for which in [Demo::FourObject, Demo::FiveObject] {
        let shipped: Value = serde_json::from_str(which.shipped()).unwrap();
        assert_eq!(shipped, demo_site_json(which).unwrap(), "{}", which.file_name());
        assert_eq!(site(which).squares.len(), 1);
    }
    assert_eq!(site(Demo::FourObject).cat.object_names().len(), 4);
    assert_eq!(site(Demo::FiveObject).cat.object_names().len(), 5);
}

#[test]
fn representables_and_the_terminal_presheaf_pass_everything() {
    for which in [Demo::FourObject, Demo::FiveObject] {
        let s = site(which);
        let p = &s.cat;
        let mut all: Vec<Presheaf> = (0..p.object_names().len()).map(|x| Presheaf::representable(p, x)).collect();
        all.push(Presheaf::terminal(p));
        for f in &all {
            assert!(is_j_sheaf(&s, f).unwrap().passed());
            assert!(simplified_sheaf_check(&s, f).unwrap().passed());
            assert!(is_k_separated(&s, f).unwrap().passed());
            assert!(sends_square_to_pullback(&s, f));
        }
    }
}

#[test]
fn refutation_presheaf_fails_the_sheaf_condition_only() {
    let s = site(Demo::FiveObject);
    let f = Presheaf::from_json(&s.cat, &serde_json::from_str(REFUTATION_5).unwrap()).unwrap();
    assert!(!is_j_sheaf(&s, &f).unwrap().passed());
    assert!(!simplified_sheaf_check(&s, &f).unwrap().passed());
    assert!(!sends_square_to_pullback(&s, &f));
    assert!(is_k_separated(&s, &f).unwrap().passed());
}

#[test]
fn unseparated_presheaf_is_a_sheaf_outside_the_hypothesis() {
    let s = site(Demo::FiveObject);
    let f = Presheaf::from_json(&s.cat, &serde_json::from_str(UNSEPARATED_5).unwrap()).unwrap();
    assert!(is_j_sheaf(&s, &f).unwrap().passed());
    assert!(!is_k_separated(&s, &f).unwrap().passed());
    assert!(matches!(simplified_sheaf_check(&s, &f), Err(CatError::HypothesisFailed(_))));
}

#[test]
fn pullback_form_agrees_with_the_raw_oracle_on_small_presheaves() {
    let s = site(Demo::FourObject);
    let (mut agreed, mut outside) = (0, 0);
    let visited = for_each_presheaf(&s.cat, 2, |f| {
        match simplified_outcome(&s, f) {
            Ok((simple, _)) => {
                assert_eq!(simple.is_none(), sends_square_to_pullback(&s, f));
                assert_eq!(simple.is_none(), j_sheaf_failure(&s, f).unwrap().is_none());
                agreed += 1;
            }
            Err(CatError::HypothesisFailed(_)) => outside += 1,
            Err(e) => panic!("{e}"),
        }
        true
    });
    assert_eq!(visited, agreed + outside);
    assert!(agreed > 0 && outside > 0);
}

#[test]
fn a_site_without_squares_has_no_families() {
    let mut v: Value = serde_json::from_str(Demo::FourObject.shipped()).unwrap();
    v.as_object_mut().unwrap().remove("squares");
    let s = Site::from_json(&v).unwrap();
    assert!(s.j_families().unwrap().families.is_empty());
    assert!(s.k_families().unwrap().families.is_empty());
    let anything = Presheaf::representable(&s.cat, 0);
    assert!(is_j_sheaf(&s, &anything).unwrap().passed());
}

#[test]
fn declared_squares_must_be_pushouts() {
    let mut v: Value = serde_json::from_str(Demo::FourObject.shipped()).unwrap();
    let sq = v["squares"][0].clone();
    v["squares"] = json!([{ "m": sq["m"], "f": sq["f"], "g": sq["g"], "n": sq["g"] }]);
    assert!(matches!(Site::from_json(&v), Err(CatError::InvalidSquare(_)) | Err(CatError::Parse(_))));
}

#[test]
fn embedding_reports() {
    let finset = embedding_report(&StructCat::finset(), 2).unwrap();
    assert_eq!(finset["topos_path"]["representables_are_j_sheaves"], json!(true));
    assert_eq!(finset["yoneda_preserves_declared_pushouts_as_pullbacks"], json!(true));

    let relset = embedding_report(&StructCat::relset(), 2).unwrap();
    assert_eq!(relset["quasitopos_path"]["representables_are_k_separated"], json!(true));
    assert_eq!(relset["quasitopos_path"]["representables_are_j_sheaves"], json!(true));
}

#[test]
fn acyclic_embedding_flags_the_non_pullback_square() {
    let e = StructCat::acyclicrel();
    let r = embedding_report(&e, 3).unwrap();
    assert_eq!(r["yoneda_preserves_declared_pushouts_as_pullbacks"], json!(false));
    assert!(r.get("expected").is_some());
    let c = e.relation(2, &[]).unwrap();
    let a = e.relation(3, &[(0, 1), (1, 2)]).unwrap();
    let m = e.map(&c, &a, &[0, 2]).unwrap();
    let f = e.to_terminal(&c);
    let po = adhesive::Category::pushout(&e, &m, &f).unwrap();
    let sq = adhesive::Square::new(m, f, po.left, po.right).to_json(&e);
    let flagged = r["flagged"].as_array().unwrap();
    assert!(flagged.iter().any(|x| x["square"] == sq));
}
