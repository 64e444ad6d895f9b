//! Batch runs of the checkers: exhaustive sweeps at a bound and seeded
//! random samples. Each run reports its case count, failure count, the
//! first failure and one sample witness, so a report can be replayed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::adhesion::cancellation::{cancellation_lemma_check, random_config};
use crate::adhesion::classify::monos_by_codomain;
use crate::adhesion::vk::{is_stable_pushout, is_van_kampen};
use crate::category::Category;
use crate::colimit::{
    basic_lemma_squares, check_factorization, is_regular_mono, regular_mono_holds, stable_factorization,
    stably_jointly_epi,
};
use crate::diagram::Square;
use crate::dpo::{complement_uniqueness, dpo_step, random_case, Step};
use crate::error::Result;
use crate::instances::{gen, Hom, Kind, StructCat};
use crate::presentation::Presentation;
use crate::presheaf::{for_each_presheaf, Presheaf, SetFunctor};
use crate::probe::{probes_from, ProbeSet};
use crate::sheaf::check::{j_sheaf_failure, k_separated_failure, simplified_outcome};
use crate::sheaf::Site;
use crate::universal::is_pullback;
use crate::witness::Witness;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub category: Value,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Value>,
    /// Kept for replay: the first witness produced, and the first failing one.
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl SuiteOutcome {
    fn new(suite: &str, category: Value) -> Self {
        SuiteOutcome {
            suite: suite.to_string(),
            category,
            cases: 0,
            failures: 0,
            first_failure: None,
            witnesses: Vec::new(),
            detail: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failures == 0
    }

    /// Counts one case made of one or more witnesses.
    fn record(&mut self, ws: &[Witness]) {
        self.cases += 1;
        if self.cases == 1 {
            self.witnesses.extend(ws.iter().cloned());
        }
        if let Some(bad) = ws.iter().find(|w| !w.passed()) {
            self.fail_with(serde_json::to_value(bad).expect("witness serializes"));
            if self.failures == 1 {
                self.witnesses.push(bad.clone());
            }
        }
    }

    /// Counts one case decided without a witness.
    fn record_plain(&mut self, failure: Option<Value>) {
        self.cases += 1;
        if let Some(v) = failure {
            self.fail_with(v);
        }
    }

    fn fail_with(&mut self, v: Value) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(v);
        }
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn admissible(cat: &StructCat, m: &Hom) -> Result<bool> {
    Ok(match cat.kind() {
        Kind::FinSet | Kind::FinGraph => true,
        Kind::RelSet | Kind::AcyclicRel => regular_mono_holds(cat, m)?,
    })
}

/// Every pushout along an admissible mono between objects of size at most
/// `bound` is a stable pushout, a pullback, and van Kampen in both
/// directions.
pub fn pushouts_along_monos(cat: &StructCat, bound: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("pushouts_along_monos", cat.descriptor());
    let mut probe_cache = std::collections::BTreeMap::new();
    for (_, monos) in monos_by_codomain(cat, bound, |m| cat.arrow_key(m))? {
        for m in monos {
            if !admissible(cat, &m)? {
                continue;
            }
            for f in probes_from(cat, &m.dom, bound)? {
                let po = cat.pushout(&m, &f)?;
                let sq = Square::new(m.clone(), f, po.left, po.right);
                let d = sq.g.cod.clone();
                if !probe_cache.contains_key(&d) {
                    probe_cache.insert(d.clone(), ProbeSet::exhaustive(cat, &d, bound)?);
                }
                let probes = &probe_cache[&d];
                out.record(&[
                    is_stable_pushout(cat, &sq, probes)?,
                    is_pullback(cat, &sq)?,
                    is_van_kampen(cat, &sq, probes, bound)?,
                ]);
            }
        }
    }
    Ok(out)
}

/// Exhaustively over all maps between objects of size at most `bound`:
/// the cokernel-pair test agrees with injectivity (FinSet, FinGraph) or with
/// relation-reflecting injectivity (RelSet, AcyclicRel).
pub fn regular_mono_exhaustive(cat: &StructCat, bound: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("regular_mono_exhaustive", cat.descriptor());
    let objects = cat.objects(bound)?;
    for x in &objects {
        for y in &objects {
            for h in cat.hom(x, y) {
                regular_case(cat, &h, &mut out)?;
            }
        }
    }
    Ok(out)
}

fn regular_case(cat: &StructCat, h: &Hom, out: &mut SuiteOutcome) -> Result<()> {
    let expected = match cat.kind() {
        Kind::FinSet | Kind::FinGraph => cat.is_mono(h),
        Kind::RelSet | Kind::AcyclicRel => h.is_injective() && h.reflects_relation(),
    };
    let w = is_regular_mono(cat, h)?;
    if out.cases == 0 {
        out.witnesses.push(w.clone());
    }
    let failure = (w.passed() != expected)
        .then(|| json!({ "morphism": cat.mor_to_json(h), "cokernel_pair_test": w.passed(), "expected": expected }));
    out.record_plain(failure);
    Ok(())
}

/// `n` random morphisms, half of them random inclusions (regular or not),
/// half arbitrary maps between random objects.
pub fn regular_mono_random(cat: &StructCat, n: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("regular_mono_random", cat.descriptor());
    let mut rng = rng_for(seed);
    while out.cases < n {
        let h = if rng.gen_bool(0.5) {
            let regular = rng.gen_bool(0.5);
            gen::mono(cat, 3, 2, regular, &mut rng)
        } else {
            let x = gen::object(cat, 3, &mut rng);
            let y = gen::object(cat, 3, &mut rng);
            match gen::hom(cat, &x, &y, &mut rng) {
                Some(h) => h,
                None => continue,
            }
        };
        regular_case(cat, &h, &mut out)?;
    }
    Ok(out)
}

/// Random valid configurations: the right square is a pullback.
pub fn cancellation(cat: &StructCat, n: usize, bound: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("cancellation", cat.descriptor());
    let mut rng = rng_for(seed);
    for _ in 0..n {
        let config = random_config(cat, bound, &mut rng)?;
        out.record(&[cancellation_lemma_check(cat, &config, bound)?]);
    }
    Ok(out)
}

/// Random `(m mono, f)`: the four squares around the pushout are pushouts
/// and pullbacks. In FinSet also `|A₂| = |C₂| + |A| − |C|`.
pub fn basic_lemma(cat: &StructCat, n: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("basic_lemma", cat.descriptor());
    let mut rng = rng_for(seed);
    let mut count_checked = 0;
    while out.cases < n {
        let m = gen::mono(cat, 2, 2, true, &mut rng);
        let b = gen::object(cat, 3, &mut rng);
        let Some(f) = gen::hom(cat, &m.dom, &b, &mut rng) else { continue };
        let (data, w) = basic_lemma_squares(cat, &m, &f)?;
        let mut ws = vec![w];
        if cat.kind() == Kind::FinSet {
            count_checked += 1;
            let a2 = cat.size(&data.kernel_g.p1.dom);
            let c2 = cat.size(&data.kernel_f.p1.dom);
            let (a, c) = (cat.size(&m.cod), cat.size(&m.dom));
            if a2 + c != c2 + a {
                let subject = json!({ "m": cat.mor_to_json(&m), "f": cat.mor_to_json(&f) });
                ws.push(Witness::fail(
                    "kernel_pair_count",
                    cat.descriptor(),
                    subject,
                    json!({ "A2": a2, "C2": c2, "A": a, "C": c }),
                ));
            }
        }
        out.record(&ws);
    }
    if cat.kind() == Kind::FinSet {
        out.detail = Some(json!({ "kernel_pair_count_checked": count_checked }));
    }
    Ok(out)
}

/// Random pairs of subsets of a finite set: the constructed factorization
/// of their union agrees with the image of the union up to isomorphism, `n`
/// is regular, `e` is surjective and both survive probes up to `bound`.
pub fn factorization(n: usize, bound: usize, seed: u64) -> Result<SuiteOutcome> {
    let cat = StructCat::finset();
    let mut out = SuiteOutcome::new("stable_factorization", cat.descriptor());
    let mut rng = rng_for(seed);
    for _ in 0..n {
        let size = rng.gen_range(0..=4);
        let x = cat.set(size);
        let subset = |rng: &mut ChaCha8Rng| -> Hom {
            let keep: Vec<usize> = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
            let inc = cat.induced_substructure(&x, vec![keep]);
            let twist = gen::relabel(&cat, &inc.dom, rng);
            cat.then(&twist, &inc)
        };
        let (m1, m2) = (subset(&mut rng), subset(&mut rng));
        let trace = stable_factorization(&cat, &m1, &m2)?;
        let w = check_factorization(&cat, &trace, bound)?;
        let mut hit = vec![false; size];
        m1.maps[0].iter().chain(&m2.maps[0]).for_each(|&y| hit[y] = true);
        let image = cat.induced_substructure(&x, vec![(0..size).filter(|&y| hit[y]).collect()]);
        let iso = cat.factor_through(&trace.n, &image).filter(|phi| cat.is_iso(phi));
        let mut problems = Vec::new();
        if iso.is_none() {
            problems.push("n differs from the image of the union");
        }
        if !trace.e.is_surjective() {
            problems.push("e is not surjective");
        }
        let mut ws = vec![w];
        if !problems.is_empty() {
            let subject = json!({ "m1": cat.mor_to_json(&m1), "m2": cat.mor_to_json(&m2) });
            ws.push(Witness::fail("image_agreement", cat.descriptor(), subject, json!(problems)));
        }
        out.record(&ws);
    }
    Ok(out)
}

/// Every admissible mono and map out of its domain, up to `bound`.
pub fn jointly_epi_exhaustive(cat: &StructCat, bound: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("stably_jointly_epi_exhaustive", cat.descriptor());
    for (_, monos) in monos_by_codomain(cat, bound, |m| cat.arrow_key(m))? {
        for m in monos {
            if !admissible(cat, &m)? {
                continue;
            }
            for f in probes_from(cat, &m.dom, bound)? {
                out.record(&[stably_jointly_epi(cat, &m, &f, bound)?]);
            }
        }
    }
    Ok(out)
}

/// Random regular monos and maps out of their domains.
pub fn jointly_epi_random(cat: &StructCat, n: usize, bound: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("stably_jointly_epi_random", cat.descriptor());
    let mut rng = rng_for(seed);
    while out.cases < n {
        let m = gen::mono(cat, 2, 2, true, &mut rng);
        let b = gen::object(cat, 2, &mut rng);
        let Some(f) = gen::hom(cat, &m.dom, &b, &mut rng) else { continue };
        out.record(&[stably_jointly_epi(cat, &m, &f, bound)?]);
    }
    Ok(out)
}

/// Random rules and matches. Where a complement exists, the derivation
/// squares certify and no second complement up to the size of the host is
/// non-isomorphic to it; where none exists, the search finds none.
pub fn dpo_uniqueness(cat: &StructCat, n: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("dpo_uniqueness", cat.descriptor());
    let mut rng = rng_for(seed);
    let mut applied = 0;
    for _ in 0..n {
        let (rule, m) = random_case(cat, &mut rng)?;
        let bound = cat.size(&m.cod);
        let mut ws = vec![complement_uniqueness(cat, &rule.l, &m, bound)?];
        if let Step::Applied(der) = dpo_step(cat, &rule, &m)? {
            applied += 1;
            ws.extend(der.certificates.iter().cloned());
        }
        out.record(&ws);
    }
    out.detail = Some(json!({ "applied": applied }));
    Ok(out)
}

/// All presheaves with sets of size at most `max`: wherever `F(δ)` and
/// `F(m₂)` are jointly monic, the pullback form of the sheaf condition
/// agrees with the full one. Representables are j-sheaves and k-separated.
pub fn sheaf_equivalence(site: &Site<Presentation>, max: usize) -> Result<SuiteOutcome> {
    let p = &site.cat;
    let mut out = SuiteOutcome::new("sheaf_equivalence", p.descriptor());
    let (mut hypothesis_failed, mut sheaves) = (0, 0);
    let mut err = None;
    for_each_presheaf(p, max, |f| {
        let mut step = || -> Result<Option<Value>> {
            let full = j_sheaf_failure(site, f)?;
            match simplified_outcome(site, f) {
                Err(crate::error::CatError::HypothesisFailed(_)) => {
                    hypothesis_failed += 1;
                    Ok(None)
                }
                Err(e) => Err(e),
                Ok((simple, _)) => {
                    sheaves += usize::from(full.is_none());
                    Ok((simple.is_none() != full.is_none()).then(|| {
                        json!({
                            "presheaf": f.to_json(p),
                            "j_sheaf": full.is_none(),
                            "pullback_form": simple.is_none(),
                        })
                    }))
                }
            }
        };
        match step() {
            Ok(v) => {
                out.record_plain(v);
                true
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut reps = Vec::new();
    for x in 0..p.object_names().len() {
        let r = Presheaf::representable(p, x);
        let j = j_sheaf_failure(site, &r)?;
        let k = k_separated_failure(site, &r)?;
        reps.push(json!({ "object": p.object_names()[x], "j_sheaf": j.is_none(), "k_separated": k.is_none() }));
        out.record_plain((j.is_some() || k.is_some()).then(|| json!({ "representable": p.object_names()[x] })));
    }
    out.detail = Some(json!({
        "presheaves": out.cases - reps.len(),
        "hypothesis_failed": hypothesis_failed,
        "j_sheaves": sheaves,
        "representables": reps,
    }));
    Ok(out)
}
