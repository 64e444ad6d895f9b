//! Whole-run reports: classification, scripted reproductions, sheaf and
//! rewriting runs, and witness replay. Reports are plain JSON values with a
//! fixed key order, so a fixed seed gives byte-identical output.

use std::time::Instant;

use serde_json::{json, Value};

use crate::adhesion::classify::{classify, regular_union_failure};
use crate::adhesion::is_adhesive_morphism;
use crate::adhesion::vk::{is_stable_pushout, is_van_kampen};
use crate::category::Category;
use crate::colimit::{check_factorization, is_regular_mono, stable_factorization, union_effective};
use crate::diagram::Square;
use crate::dpo::{complement_uniqueness, dpo_step, host_from_json, Rule, Step};
use crate::error::{CatError, Result};
use crate::instances::{Kind, StructCat};
use crate::presentation::Presentation;
use crate::presheaf::{presheaf_from_json, Representable, SetFunctor};
use crate::probe::ProbeSet;
use crate::replay::{collect_witnesses, replay};
use crate::sheaf::{embedding_report, is_j_sheaf, is_k_separated, simplified_sheaf_check, Site};
use crate::suites::{self, SuiteOutcome};
use crate::universal::{is_pullback, is_pushout};
use crate::witness::Witness;

pub const REPRODUCTIONS: [&str; 5] =
    ["e-counterexample", "relset-union", "vk-biconditional", "basic-lemma", "factorization"];

/// Largest host size the rewriting command searches for alternative
/// complements in.
pub const DPO_SEARCH_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub bound: usize,
    pub seed: u64,
    /// Adds wall-clock time to reports, which makes them nondeterministic.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { bound: 3, seed: 0, timing: false }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bound == 0 {
            return Err(CatError::Invalid("bound must be at least 1".into()));
        }
        Ok(())
    }

    fn stamp(&self, mut report: Value, start: Instant) -> Value {
        if self.timing {
            report["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
        }
        report
    }
}

fn wjson(w: &Witness) -> Value {
    serde_json::to_value(w).expect("witness serializes")
}

fn suite_json(s: &SuiteOutcome) -> Value {
    serde_json::to_value(s).expect("suite serializes")
}

/// A built-in instance by name, or a JSON file naming one (`"relset"` or
/// `{"category": "relset"}`).
pub fn instance_from_json(v: &Value) -> Result<StructCat> {
    let name = v.as_str().or_else(|| v.get("category").and_then(Value::as_str));
    name.and_then(Kind::from_name)
        .map(StructCat::new)
        .ok_or_else(|| CatError::Parse("expected an instance name: finset, fingraph, relset or acyclicrel".into()))
}

pub fn classify_report(cat: &StructCat, cfg: &RunConfig) -> Result<Value> {
    cfg.validate()?;
    let start = Instant::now();
    let c = classify(cat, cfg.bound)?;
    let report = json!({
        "command": "classify",
        "category": cat.descriptor(),
        "bound": cfg.bound,
        "verdicts": {
            "adhesive": c.adhesive.status,
            "rm_adhesive": c.rm_adhesive.status,
            "q_adhesive": c.q_adhesive.status,
        },
        "classification": c,
    });
    Ok(cfg.stamp(report, start))
}

/// A scripted reproduction: whether the expected outcome was observed, and
/// the report.
pub fn reproduce(name: &str, cfg: &RunConfig) -> Result<(bool, Value)> {
    cfg.validate()?;
    let start = Instant::now();
    let (ok, mut report) = match name {
        "e-counterexample" => e_counterexample(cfg)?,
        "relset-union" => relset_union(cfg)?,
        "vk-biconditional" => vk_biconditional(cfg)?,
        "basic-lemma" => basic_lemma(cfg)?,
        "factorization" => factorization(cfg)?,
        other => {
            return Err(CatError::Parse(format!(
                "unknown reproduction `{other}`; expected one of {}",
                REPRODUCTIONS.join(", ")
            )))
        }
    };
    let head = json!({ "command": "reproduce", "name": name, "bound": cfg.bound, "expected_observed": ok });
    let mut merged = head.as_object().expect("object").clone();
    merged.append(report.as_object_mut().expect("reproductions build objects"));
    Ok((ok, cfg.stamp(Value::Object(merged), start)))
}

/// In the acyclic-relation category, the pushout of the discrete two-point
/// subobject of the 3-chain along the map to the terminal object is the
/// terminal object, and the square is not a pullback.
fn e_counterexample(cfg: &RunConfig) -> Result<(bool, Value)> {
    let cat = StructCat::acyclicrel();
    let c = cat.relation(2, &[])?;
    let a = cat.relation(3, &[(0, 1), (1, 2)])?;
    let m = cat.map(&c, &a, &[0, 2])?;
    let f = cat.to_terminal(&c);
    let po = cat.pushout(&m, &f)?;
    let sq = Square::new(m.clone(), f, po.left, po.right);
    let corner_terminal = cat.is_iso(&cat.to_terminal(&sq.g.cod));
    let regular = is_regular_mono(&cat, &m)?;
    let pushout = is_pushout(&cat, &sq)?;
    let pullback = is_pullback(&cat, &sq)?;
    let adhesive = is_adhesive_morphism(&cat, &m, cfg.bound)?;
    let ok = corner_terminal && regular.passed() && pushout.passed() && !pullback.passed() && !adhesive.passed();
    Ok((
        ok,
        json!({
            "expected": "the pushout corner is the terminal object and the square is not a pullback, so the regular mono is not adhesive",
            "observed": {
                "pushout_corner": cat.obj_to_json(&sq.g.cod),
                "pushout_corner_is_terminal": corner_terminal,
                "m_regular": regular.passed(),
                "square_is_pushout": pushout.passed(),
                "square_is_pullback": pullback.passed(),
                "m_adhesive": adhesive.passed(),
            },
            "square": sq.to_json(&cat),
            "witnesses": [wjson(&regular), wjson(&pushout), wjson(&pullback), wjson(&adhesive)],
        }),
    ))
}

/// The two points of `0 → 1` are regular subobjects whose union is not.
fn relset_union(cfg: &RunConfig) -> Result<(bool, Value)> {
    let cat = StructCat::relset();
    let x = cat.relation(2, &[(0, 1)])?;
    let p = cat.relation(1, &[])?;
    let m1 = cat.map(&p, &x, &[0])?;
    let m2 = cat.map(&p, &x, &[1])?;
    let w1 = is_regular_mono(&cat, &m1)?;
    let w2 = is_regular_mono(&cat, &m2)?;
    let (union, effective) = union_effective(&cat, &m1, &m2)?;
    let union = union.ok_or_else(|| CatError::PreconditionUnmet("union of two points is not effective".into()))?;
    let wu = is_regular_mono(&cat, &union)?;
    let reflects = union.reflects_relation();
    let subject = json!({ "m1": cat.mor_to_json(&m1), "m2": cat.mor_to_json(&m2) });
    let wr = Witness::from_outcome("regular_union", cat.descriptor(), subject, regular_union_failure(&cat, &m1, &m2)?);
    let class = classify(&cat, cfg.bound)?;
    let ok = w1.passed()
        && w2.passed()
        && effective.passed()
        && !wu.passed()
        && !reflects
        && !wr.passed()
        && class.q_adhesive.holds()
        && !class.rm_adhesive.holds();
    Ok((
        ok,
        json!({
            "expected": "both points are regular subobjects, their union is not regular, and the classification reads q-adhesive verified, rm-adhesive refuted",
            "observed": {
                "m1_regular": w1.passed(),
                "m2_regular": w2.passed(),
                "union_effective": effective.passed(),
                "union": cat.mor_to_json(&union),
                "union_regular_by_cokernel_pair": wu.passed(),
                "union_reflects_relation": reflects,
                "q_adhesive": class.q_adhesive.status,
                "rm_adhesive": class.rm_adhesive.status,
            },
            "witnesses": [wjson(&w1), wjson(&w2), wjson(&effective), wjson(&wu), wjson(&wr)],
            "classification": class,
        }),
    ))
}

/// Cube tops for the relational square need one more element (or pair)
/// than the default bound allows.
pub const RELSET_CUBE_BOUND: usize = 4;

/// In FinSet every pushout along a mono is van Kampen at the bound. In
/// RelSet the pushout of `{1, 2} ↪ ({0,1,2}, {0R1, 0R2})` along the map to
/// the point is a stable pushout and a pullback, yet a cube over it with a
/// pushout top has a front face that is not a pullback.
fn vk_biconditional(cfg: &RunConfig) -> Result<(bool, Value)> {
    let finset = suites::pushouts_along_monos(&StructCat::finset(), cfg.bound)?;
    let cat = StructCat::relset();
    let c = cat.relation(2, &[])?;
    let a = cat.relation(3, &[(0, 1), (0, 2)])?;
    let m = cat.map(&c, &a, &[1, 2])?;
    let f = cat.to_terminal(&c);
    let po = cat.pushout(&m, &f)?;
    let sq = Square::new(m.clone(), f, po.left, po.right);
    let bound = RELSET_CUBE_BOUND;
    let probes = ProbeSet::exhaustive(&cat, &sq.g.cod, bound)?;
    let regular = is_regular_mono(&cat, &m)?;
    let stable = is_stable_pushout(&cat, &sq, &probes)?;
    let pullback = is_pullback(&cat, &sq)?;
    let vk = is_van_kampen(&cat, &sq, &probes, bound)?;
    let direction = vk.counterexample.as_ref().and_then(|c| c.get("direction")).cloned();
    let converse = direction.as_ref().and_then(Value::as_str) == Some("pushout top => pullback faces");
    let ok = finset.passed() && regular.passed() && stable.passed() && pullback.passed() && !vk.passed() && converse;
    Ok((
        ok,
        json!({
            "expected": "every FinSet pushout along a mono is van Kampen at the bound; the RelSet pushout along a regular mono is stable and a pullback but fails the van Kampen converse",
            "observed": {
                "finset_squares": finset.cases,
                "finset_failures": finset.failures,
                "relset_m_regular": regular.passed(),
                "relset_stable": stable.passed(),
                "relset_pullback": pullback.passed(),
                "relset_van_kampen": vk.passed(),
                "relset_failing_direction": direction,
                "relset_cube_bound": bound,
            },
            "finset": suite_json(&finset),
            "witnesses": [wjson(&regular), wjson(&stable), wjson(&pullback), wjson(&vk)],
        }),
    ))
}

pub const BASIC_LEMMA_CASES: usize = 200;
pub const FACTORIZATION_CASES: usize = 200;

fn basic_lemma(cfg: &RunConfig) -> Result<(bool, Value)> {
    let fs = suites::basic_lemma(&StructCat::finset(), BASIC_LEMMA_CASES, cfg.seed)?;
    let fg = suites::basic_lemma(&StructCat::fingraph(), BASIC_LEMMA_CASES, cfg.seed)?;
    Ok((
        fs.passed() && fg.passed(),
        json!({
            "seed": cfg.seed,
            "expected": "all four squares are pushouts and pullbacks in every random case; in FinSet the kernel pair counts add up",
            "observed": {
                "finset": { "cases": fs.cases, "failures": fs.failures },
                "fingraph": { "cases": fg.cases, "failures": fg.failures },
            },
            "suites": [suite_json(&fs), suite_json(&fg)],
        }),
    ))
}

fn factorization(cfg: &RunConfig) -> Result<(bool, Value)> {
    let cat = StructCat::finset();
    let x = cat.set(3);
    let m1 = cat.map(&cat.set(1), &x, &[0])?;
    let m2 = cat.map(&cat.set(1), &x, &[1])?;
    let trace = stable_factorization(&cat, &m1, &m2)?;
    let w = check_factorization(&cat, &trace, cfg.bound)?;
    let inclusion = cat.map(&cat.set(2), &x, &[0, 1])?;
    let e_iso = cat.is_iso(&trace.e);
    let n_is_inclusion = cat.factor_through(&trace.n, &inclusion).is_some_and(|phi| cat.is_iso(&phi));
    let random = suites::factorization(FACTORIZATION_CASES, cfg.bound, cfg.seed)?;
    Ok((
        w.passed() && e_iso && n_is_inclusion && random.passed(),
        json!({
            "seed": cfg.seed,
            "expected": "for the points 0 and 1 of 3, e is invertible and n is the inclusion of {0,1}; random pairs agree with the image of the union",
            "observed": {
                "e_iso": e_iso,
                "n_is_inclusion_of_01": n_is_inclusion,
                "random": { "cases": random.cases, "failures": random.failures },
            },
            "trace": trace.to_json(&cat),
            "witnesses": [wjson(&w)],
            "suite": suite_json(&random),
        }),
    ))
}

/// Site JSON from a shipped demo name or a parsed file.
pub fn site_from_json(v: &Value) -> Result<Site<Presentation>> {
    Site::from_json(v)
}

/// Runs the three sheaf checks on each presheaf: the given one, or every
/// representable when none is given.
pub fn sheaf_report(site: &Site<Presentation>, presheaf: Option<&Value>, cfg: &RunConfig) -> Result<Value> {
    let start = Instant::now();
    let p = &site.cat;
    let functors: Vec<Box<dyn SetFunctor<Presentation>>> = match presheaf {
        Some(v) => vec![presheaf_from_json(p, v)?],
        None => (0..p.object_names().len())
            .map(|x| Box::new(Representable::<Presentation>::new(x)) as Box<dyn SetFunctor<Presentation>>)
            .collect(),
    };
    let mut results = Vec::new();
    for f in &functors {
        let j = is_j_sheaf(site, f.as_ref())?;
        let simplified = match simplified_sheaf_check(site, f.as_ref()) {
            Ok(w) => wjson(&w),
            Err(CatError::HypothesisFailed(why)) => json!({ "hypothesis_failed": why }),
            Err(e) => return Err(e),
        };
        let k = is_k_separated(site, f.as_ref())?;
        results.push(json!({
            "presheaf": f.to_json(p),
            "j_sheaf": j.passed(),
            "k_separated": k.passed(),
            "is_j_sheaf": wjson(&j),
            "simplified_sheaf_check": simplified,
            "is_k_separated": wjson(&k),
        }));
    }
    let report = json!({
        "command": "sheaf",
        "site": p.descriptor(),
        "declared_squares": site.squares.len(),
        "results": results,
    });
    Ok(cfg.stamp(report, start))
}

/// The category a rule file asks for (`"category"`, default FinGraph).
pub fn rule_category(v: &Value) -> Result<StructCat> {
    match v.get("category") {
        None => Ok(StructCat::fingraph()),
        Some(c) => instance_from_json(c),
    }
}

/// One rewriting step per match (the given one, or every morphism `L → G`),
/// with the uniqueness search for complements.
pub fn dpo_report(rule_v: &Value, host_v: &Value, cfg: &RunConfig) -> Result<Value> {
    let start = Instant::now();
    let cat = rule_category(rule_v)?;
    let rule = Rule::from_json(&cat, rule_v)?;
    let (host, given) = host_from_json(&cat, &rule, host_v)?;
    let matches = match given {
        Some(m) => vec![m],
        None => cat.hom(rule.lhs(), &host),
    };
    let search = cat.size(&host).min(DPO_SEARCH_CAP);
    let mut steps = Vec::new();
    for m in &matches {
        let uniqueness = complement_uniqueness(&cat, &rule.l, m, search)?;
        let step = match dpo_step(&cat, &rule, m)? {
            Step::Applied(d) => json!({ "applied": true, "derivation": d.to_json(&cat) }),
            Step::Inapplicable(why) => json!({ "applied": false, "inapplicable": why }),
        };
        steps.push(json!({ "match": cat.mor_to_json(m), "step": step, "uniqueness": wjson(&uniqueness) }));
    }
    let report = json!({
        "command": "dpo",
        "category": cat.descriptor(),
        "rule": rule.to_json(&cat),
        "host": cat.obj_to_json(&host),
        "matches": matches.len(),
        "complement_search_bound": search,
        "steps": steps,
    });
    Ok(cfg.stamp(report, start))
}

pub fn embed_report(cat: &StructCat, cfg: &RunConfig) -> Result<Value> {
    cfg.validate()?;
    let start = Instant::now();
    let mut inner = embedding_report(cat, cfg.bound)?;
    let mut report = json!({ "command": "embed" }).as_object().expect("object").clone();
    report.append(inner.as_object_mut().expect("embedding report is an object"));
    Ok(cfg.stamp(Value::Object(report), start))
}

/// Replays every witness found in `v` (a single witness or a report).
/// Returns whether all reproduced.
pub fn replay_report(v: &Value) -> Result<(bool, Value)> {
    let witnesses = collect_witnesses(v);
    if witnesses.is_empty() {
        return Err(CatError::Parse("no witnesses found in the input".into()));
    }
    let mut results = Vec::new();
    let mut all = true;
    for w in &witnesses {
        let r = replay(w)?;
        all &= r["reproduced"] == json!(true);
        results.push(r);
    }
    Ok((all, json!({ "command": "replay", "witnesses": witnesses.len(), "all_reproduced": all, "results": results })))
}

/// Pretty JSON with a trailing newline.
pub fn to_json_text(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// A short human-readable rendering: scalars and small objects in full,
/// arrays and nested objects summarized.
pub fn to_text(report: &Value) -> String {
    let mut out = String::new();
    render(report, 0, &mut out);
    out
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let Some(obj) = v.as_object() else {
        out.push_str(&format!("{}{}\n", "  ".repeat(depth), v));
        return;
    };
    for (k, x) in obj {
        let pad = "  ".repeat(depth);
        let compact = x.to_string();
        match x {
            Value::Object(o) if o.contains_key("check") => {
                out.push_str(&format!(
                    "{pad}{k}: {} {}\n",
                    o["check"].as_str().unwrap_or("?"),
                    o["verdict"].as_str().unwrap_or("?")
                ));
            }
            Value::Object(_) | Value::Array(_) if compact.len() <= 72 => {
                out.push_str(&format!("{pad}{k}: {compact}\n"))
            }
            Value::Object(_) if depth < 2 => {
                out.push_str(&format!("{pad}{k}:\n"));
                render(x, depth + 1, out);
            }
            Value::Object(o) => out.push_str(&format!("{pad}{k}: {{{} keys}}\n", o.len())),
            Value::Array(a) => out.push_str(&format!("{pad}{k}: [{} items]\n", a.len())),
            Value::String(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            _ => out.push_str(&format!("{pad}{k}: {x}\n")),
        }
    }
}
