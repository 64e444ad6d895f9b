//! One line per acceptance criterion. Lines go straight to stdout so they
//! show even when the harness captures test output.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use adhesive::adhesion::{classify, mono_coherence};
use adhesive::colimit::{cokernel_pair, regular_mono_holds, union_effective};
use adhesive::replay::{collect_witnesses, replay};
use adhesive::report::{self, RunConfig};
use adhesive::sheaf::demo::Demo;
use adhesive::sheaf::Site;
use adhesive::suites::{self, SuiteOutcome};
use adhesive::universal::{pullback_holds, pushout_holds};
use adhesive::{Category, Kind, Square, StructCat};
use serde_json::Value;

const SEED: u64 = 0;
const BOUND: usize = 3;
const EXHAUSTIVE_LIMIT: Duration = Duration::from_secs(5 * 60);
const SHEAF_LIMIT: Duration = Duration::from_secs(2 * 60);

fn line(id: u32, name: &str, ok: bool, detail: String) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {id:>2} {verdict} {name}: {detail}").unwrap();
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn summary(s: &SuiteOutcome) -> String {
    format!("{} {} cases, {} failures", s.suite, s.cases, s.failures)
}

#[test]
fn c01_finset_pushouts_along_monos() {
    let start = Instant::now();
    let s = suites::pushouts_along_monos(&StructCat::finset(), BOUND).unwrap();
    let t = start.elapsed();
    line(
        1,
        "finset exhaustive pushouts along monos",
        s.passed() && t <= EXHAUSTIVE_LIMIT,
        format!("{} in {t:.1?}", summary(&s)),
    );
}

#[test]
fn c02_three_conditions_agree() {
    let mut parts = Vec::new();
    let mut ok = true;
    for kind in [Kind::FinSet, Kind::FinGraph] {
        let c = mono_coherence(&StructCat::new(kind), BOUND).unwrap();
        ok &= c.agree();
        parts.push(format!("{}: {:?}", kind.name(), c));
    }
    line(2, "pre-adhesive, adhesive and van Kampen verdicts agree", ok, parts.join("; "));
}

#[test]
fn c03_acyclic_counterexample() {
    let e = StructCat::acyclicrel();
    let c = e.relation(2, &[]).unwrap();
    let a = e.relation(3, &[(0, 1), (1, 2)]).unwrap();
    let m = e.map(&c, &a, &[0, 2]).unwrap();
    let f = e.to_terminal(&c);
    let po = e.pushout(&m, &f).unwrap();
    let corner = po.left.cod.clone();
    let terminal = corner == e.terminal();
    let sq = Square::new(m.clone(), f, po.left, po.right);
    let is_po = pushout_holds(&e, &sq).unwrap();
    let is_pb = pullback_holds(&e, &sq).unwrap();
    let regular = regular_mono_holds(&e, &m).unwrap();
    line(
        3,
        "acyclic relation pushout is terminal and not a pullback",
        terminal && is_po && !is_pb && regular,
        format!("corner terminal {terminal}, pushout {is_po}, pullback {is_pb}, m regular {regular}"),
    );
}

#[test]
fn c04_relset_split_verdict() {
    let rel = StructCat::relset();
    let cls = classify(&rel, BOUND).unwrap();
    let x = rel.relation(2, &[(0, 1)]).unwrap();
    let pt = rel.relation(1, &[]).unwrap();
    let (m1, m2) = (rel.map(&pt, &x, &[0]).unwrap(), rel.map(&pt, &x, &[1]).unwrap());
    let (u, _) = union_effective(&rel, &m1, &m2).unwrap();
    let u = u.expect("union exists");
    // the equalizer of the cokernel pair is the agreement set with the
    // induced relation; u is regular iff its domain matches it
    let cp = cokernel_pair(&rel, &u).unwrap();
    let agree: Vec<usize> = (0..u.cod.sorts[0]).filter(|&y| cp.i.maps[0][y] == cp.j.maps[0][y]).collect();
    let induced = u.cod.rel.iter().filter(|(y, z)| agree.contains(y) && agree.contains(z)).count();
    let equalizer_matches = agree.len() == u.dom.sorts[0] && induced == u.dom.rel.len();
    let union_regular = regular_mono_holds(&rel, &u).unwrap();
    let oracle_regular = common::is_regular_mono(Kind::RelSet, &u);
    let inputs_regular = regular_mono_holds(&rel, &m1).unwrap() && regular_mono_holds(&rel, &m2).unwrap();
    let witness = cls.rm_adhesive.witness.as_ref().map(|w| w.check.clone());
    let ok = cls.q_adhesive.holds()
        && !cls.rm_adhesive.holds()
        && witness.as_deref() == Some("regular_union")
        && inputs_regular
        && !union_regular
        && !oracle_regular
        && !equalizer_matches;
    line(
        4,
        "relset q-adhesive verified, rm-adhesive refuted",
        ok,
        format!(
            "q {}, rm {} ({witness:?}), union of the two points regular {union_regular}, reflecting oracle {oracle_regular}, cokernel-pair oracle {equalizer_matches}",
            cls.q_adhesive.status, cls.rm_adhesive.status
        ),
    );
}

#[test]
fn c05_regular_mono_oracle() {
    let a = suites::regular_mono_exhaustive(&StructCat::finset(), BOUND).unwrap();
    let b = suites::regular_mono_exhaustive(&StructCat::fingraph(), BOUND).unwrap();
    let c = suites::regular_mono_random(&StructCat::relset(), 500, SEED).unwrap();
    let ok = a.passed() && b.passed() && c.passed() && c.cases == 500;
    line(5, "regular monos", ok, [summary(&a), summary(&b), summary(&c)].join("; "));
}

#[test]
fn c06_cancellation() {
    let a = suites::cancellation(&StructCat::finset(), 500, BOUND, SEED).unwrap();
    let b = suites::cancellation(&StructCat::fingraph(), 200, BOUND, SEED).unwrap();
    let ok = a.passed() && b.passed() && a.cases == 500 && b.cases == 200;
    line(6, "cancellation right square is a pullback", ok, format!("{}; {}", summary(&a), summary(&b)));
}

#[test]
fn c07_basic_lemma() {
    let a = suites::basic_lemma(&StructCat::finset(), 200, SEED).unwrap();
    let b = suites::basic_lemma(&StructCat::fingraph(), 200, SEED).unwrap();
    let counted = a.detail.as_ref().and_then(|d| d["kernel_pair_count_checked"].as_u64());
    let ok = a.passed() && b.passed() && a.cases == 200 && b.cases == 200 && counted == Some(200);
    line(
        7,
        "four squares are pushouts and pullbacks",
        ok,
        format!("{}; {}; counts checked {counted:?}", summary(&a), summary(&b)),
    );
}

#[test]
fn c08_stable_factorization() {
    let s = suites::factorization(200, BOUND, SEED).unwrap();
    line(8, "stable factorization matches the image factorization", s.passed() && s.cases == 200, summary(&s));
}

#[test]
fn c09_stably_jointly_epi() {
    let a = suites::jointly_epi_exhaustive(&StructCat::finset(), BOUND).unwrap();
    let b = suites::jointly_epi_random(&StructCat::relset(), 200, BOUND, SEED).unwrap();
    let ok = a.passed() && b.passed() && b.cases == 200;
    line(9, "delta and m2 stay jointly epi", ok, format!("{}; {}", summary(&a), summary(&b)));
}

#[test]
fn c10_sheaf_equivalence() {
    let start = Instant::now();
    let site = Site::from_json(&serde_json::from_str(Demo::FourObject.shipped()).unwrap()).unwrap();
    let s = suites::sheaf_equivalence(&site, 2).unwrap();
    let t = start.elapsed();
    let reps = s.detail.as_ref().and_then(|d| d["representables"].as_array().cloned()).unwrap_or_default();
    let reps_ok = !reps.is_empty()
        && reps.iter().all(|r| r["j_sheaf"] == Value::Bool(true) && r["k_separated"] == Value::Bool(true));
    let ok = s.passed() && reps_ok && t <= SHEAF_LIMIT;
    line(
        10,
        "sheaf condition agrees with its pullback form",
        ok,
        format!("{} in {t:.1?}, {}", summary(&s), s.detail.clone().unwrap_or_default()),
    );
}

#[test]
fn c11_dpo_uniqueness() {
    let s = suites::dpo_uniqueness(&StructCat::fingraph(), 100, SEED).unwrap();
    line(
        11,
        "pushout complements are unique and derivations certify",
        s.passed() && s.cases == 100,
        format!("{}, {}", summary(&s), s.detail.clone().unwrap_or_default()),
    );
}

fn reports(cfg: &RunConfig) -> Vec<String> {
    let mut out = Vec::new();
    for name in report::REPRODUCTIONS {
        out.push(report::to_json_text(&report::reproduce(name, cfg).unwrap().1));
    }
    for kind in [Kind::FinSet, Kind::RelSet] {
        out.push(report::to_json_text(&report::classify_report(&StructCat::new(kind), cfg).unwrap()));
    }
    let site = report::site_from_json(&serde_json::from_str(Demo::FiveObject.shipped()).unwrap()).unwrap();
    out.push(report::to_json_text(&report::sheaf_report(&site, None, cfg).unwrap()));
    out
}

#[test]
fn c12_determinism_and_replay() {
    let cfg = RunConfig { bound: BOUND, seed: SEED, timing: false };
    let first = reports(&cfg);
    let second = reports(&cfg);
    let identical = first == second;
    let (mut replayed, mut reproduced) = (0, 0);
    for text in &first {
        let v: Value = serde_json::from_str(text).unwrap();
        for w in collect_witnesses(&v) {
            replayed += 1;
            if replay(&w).unwrap()["reproduced"] == Value::Bool(true) {
                reproduced += 1;
            }
        }
    }
    let ok = identical && replayed > 0 && reproduced == replayed;
    line(
        12,
        "byte-identical reports, every witness replays",
        ok,
        format!("{} reports identical {identical}, {reproduced}/{replayed} witnesses reproduced", first.len()),
    );
}
