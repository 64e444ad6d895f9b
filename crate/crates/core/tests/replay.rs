use adhesive::replay::{collect_witnesses, differences, replay, rerun};
use adhesive::report::{self, RunConfig};
use adhesive::sheaf::demo::{Demo, REFUTATION_5};
use adhesive::{StructCat, Verdict};
use serde_json::{json, Value};

fn cfg() -> RunConfig {
    RunConfig { bound: 3, seed: 0, timing: false }
}

fn all_replay(report: &Value) -> usize {
    let ws = collect_witnesses(report);
    for w in &ws {
        let r = replay(w).unwrap();
        assert_eq!(r["reproduced"], json!(true), "{}: {}", w.check, r);
    }
    ws.len()
}

#[test]
fn classification_witnesses_replay() {
    all_replay(&report::classify_report(&StructCat::finset(), &cfg()).unwrap());
    let relset = report::classify_report(&StructCat::relset(), &cfg()).unwrap();
    assert!(all_replay(&relset) > 0);
}

#[test]
fn reproduction_witnesses_replay() {
    for name in ["e-counterexample", "relset-union", "factorization"] {
        let (ok, r) = report::reproduce(name, &cfg()).unwrap();
        assert!(ok, "{name}");
        assert!(all_replay(&r) > 0, "{name}");
    }
}

#[test]
fn sheaf_and_dpo_witnesses_replay() {
    let site = report::site_from_json(&serde_json::from_str(Demo::FiveObject.shipped()).unwrap()).unwrap();
    let p: Value = serde_json::from_str(REFUTATION_5).unwrap();
    let r = report::sheaf_report(&site, Some(&p), &cfg()).unwrap();
    assert!(all_replay(&r) >= 2);

    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/rewriting/");
    let read = |n: &str| -> Value {
        serde_json::from_str(&std::fs::read_to_string(format!("{dir}{n}.json")).unwrap()).unwrap()
    };
    let r = report::dpo_report(&read("contract_path"), &read("path2"), &cfg()).unwrap();
    assert!(all_replay(&r) > 0);
}

#[test]
fn tampering_is_detected() {
    let (_, r) = report::reproduce("e-counterexample", &cfg()).unwrap();
    let ws = collect_witnesses(&r);
    let w = ws.iter().find(|w| w.verdict == Verdict::Fail).expect("a failing witness");

    let mut flipped = w.clone();
    flipped.verdict = Verdict::Pass;
    flipped.counterexample = None;
    let diff = differences(&flipped, &rerun(&flipped).unwrap());
    assert!(diff.contains(&"verdict"));
    assert_eq!(replay(&flipped).unwrap()["reproduced"], json!(false));

    let mut noted = w.clone();
    noted.note = Some("ignored".into());
    assert_eq!(replay(&noted).unwrap()["reproduced"], json!(true));

    let mut unknown = w.clone();
    unknown.check = "no_such_check".into();
    assert!(rerun(&unknown).is_err());
}

#[test]
fn whole_reports_replay_through_the_report_entry_point() {
    let (_, r) = report::reproduce("relset-union", &cfg()).unwrap();
    let (ok, summary) = report::replay_report(&r).unwrap();
    assert!(ok, "{summary}");
    assert!(report::replay_report(&json!({ "nothing": [] })).is_err());
}

#[test]
fn reports_are_deterministic() {
    let a = report::to_json_text(&report::reproduce("basic-lemma", &cfg()).unwrap().1);
    let b = report::to_json_text(&report::reproduce("basic-lemma", &cfg()).unwrap().1);
    assert_eq!(a, b);
    let other = RunConfig { seed: 1, ..cfg() };
    let c = report::to_json_text(&report::reproduce("basic-lemma", &other).unwrap().1);
    assert!(report::reproduce("basic-lemma", &other).unwrap().0);
    assert_ne!(a, c);
}
