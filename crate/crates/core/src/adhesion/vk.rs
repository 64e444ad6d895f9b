//! Pullback cubes, stable pushouts and the van Kampen condition.

use serde_json::{json, Value};

use crate::category::Category;
use crate::diagram::{Cube, Square};
use crate::error::{CatError, Result};
use crate::probe::ProbeSet;
use crate::universal::{pullback_holds, pushout_holds};
use crate::witness::Witness;

/// Pulls the whole bottom square back along `d: D' → D`. All four side faces
/// of the result are pullbacks by construction.
pub fn pullback_cube<C: Category>(cat: &C, bottom: &Square<C::Mor>, d: &C::Mor) -> Result<Cube<C::Mor>> {
    if cat.cod(d) != cat.cod(&bottom.g) {
        return Err(CatError::TypeMismatch("probe must land in the pushout corner".into()));
    }
    let pa = cat.pullback(&bottom.g, d)?;
    let pb = cat.pullback(&bottom.n, d)?;
    let pc = cat.pullback(&bottom.m, &pa.left)?;
    let f2 = cat
        .pullback_lift(&pb, &cat.compose(&pc.left, &bottom.f)?, &cat.compose(&pc.right, &pa.right)?)
        .ok_or_else(|| CatError::UnsupportedLimit("cube top face has no mediator".into()))?;
    Ok(Cube {
        bottom: bottom.clone(),
        top: Square::new(pc.right, f2, pa.right, pb.right),
        a: pa.left,
        b: pb.left,
        c: pc.left,
        d: d.clone(),
    })
}

fn require_pushout<C: Category>(cat: &C, sq: &Square<C::Mor>) -> Result<()> {
    if pushout_holds(cat, sq)? {
        Ok(())
    } else {
        Err(CatError::NotAPushout)
    }
}

/// First probe whose cube has a top face that is not a pushout.
pub fn stable_failure<C: Category>(cat: &C, sq: &Square<C::Mor>, probes: &[C::Mor]) -> Result<Option<Cube<C::Mor>>> {
    for d in probes {
        let cube = pullback_cube(cat, sq, d)?;
        if !pushout_holds(cat, &cube.top)? {
            return Ok(Some(cube));
        }
    }
    Ok(None)
}

pub fn is_stable_pushout<C: Category>(cat: &C, sq: &Square<C::Mor>, probes: &ProbeSet<C::Mor>) -> Result<Witness> {
    require_pushout(cat, sq)?;
    let outcome = stable_failure(cat, sq, &probes.probes)?.map(|cube| json!({ "cube": cube.to_json(cat) }));
    let w = Witness::from_outcome("is_stable_pushout", cat.descriptor(), sq.to_json(cat), outcome);
    Ok(record_probes(cat, w, probes))
}

/// Exhaustive probe sets are recorded by their bound, supplied ones by value,
/// so the witness can be rerun.
fn record_probes<C: Category>(cat: &C, w: Witness, probes: &ProbeSet<C::Mor>) -> Witness {
    match probes.bound() {
        Some(b) => w.with_bound(b),
        None => w.with_detail(json!({
            "probes": probes.probes.iter().map(|d| cat.mor_to_json(d)).collect::<Vec<_>>(),
        })),
    }
}

/// The "only if" half: among commuting cubes over `sq` with pullback left
/// and back faces and a pushout top face, the first whose front or right
/// face is not a pullback. `A'` and `B'` range over objects of size at most
/// `bound`; the top face is completed by the canonical pushout, which covers
/// every such cube up to isomorphism.
pub fn vk_converse_failure<C: Category>(
    cat: &C,
    sq: &Square<C::Mor>,
    bound: usize,
) -> Result<Option<(Cube<C::Mor>, Value)>> {
    let objects = cat.objects(bound)?;
    let (a_obj, b_obj) = (cat.cod(&sq.m), cat.cod(&sq.f));
    let a_maps: Vec<C::Mor> = objects.iter().flat_map(|x| cat.hom(x, &a_obj)).collect();
    let b_maps: Vec<C::Mor> = objects.iter().flat_map(|x| cat.hom(x, &b_obj)).collect();
    for a in &a_maps {
        let left = cat.pullback(&sq.m, a)?;
        let (c, m2) = (left.left, left.right);
        let fc = cat.compose(&c, &sq.f)?;
        for b in &b_maps {
            for f2 in cat.hom(&cat.dom(&c), &cat.dom(b)) {
                if cat.compose(&f2, b)? != fc {
                    continue;
                }
                let back = Square::new(c.clone(), f2.clone(), sq.f.clone(), b.clone());
                if !pullback_holds(cat, &back)? {
                    continue;
                }
                let top = cat.pushout_any(&m2, &f2)?;
                let d = cat
                    .pushout_lift(&top, &cat.compose(a, &sq.g)?, &cat.compose(b, &sq.n)?)
                    .ok_or_else(|| CatError::UnsupportedColimit("no map out of the top pushout".into()))?;
                let cube = Cube {
                    bottom: sq.clone(),
                    top: Square::new(m2.clone(), f2, top.left, top.right),
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    d,
                };
                let front = pullback_holds(cat, &cube.front())?;
                let right = pullback_holds(cat, &cube.right())?;
                if !(front && right) {
                    return Ok(Some((cube, json!({ "front_pullback": front, "right_pullback": right }))));
                }
            }
        }
    }
    Ok(None)
}

/// Both directions of the van Kampen condition at the bound: every probe
/// cube (side faces pullbacks) has a pushout top, and every enumerated cube
/// with pullback left/back faces and pushout top has pullback front/right.
pub fn van_kampen_failure<C: Category>(
    cat: &C,
    sq: &Square<C::Mor>,
    probes: &[C::Mor],
    bound: usize,
) -> Result<Option<Value>> {
    if let Some(cube) = stable_failure(cat, sq, probes)? {
        return Ok(Some(json!({
            "direction": "pullback faces => pushout top",
            "cube": cube.to_json(cat),
        })));
    }
    if let Some((cube, faces)) = vk_converse_failure(cat, sq, bound)? {
        return Ok(Some(json!({
            "direction": "pushout top => pullback faces",
            "cube": cube.to_json(cat),
            "faces": faces,
        })));
    }
    Ok(None)
}

pub fn is_van_kampen<C: Category>(
    cat: &C,
    sq: &Square<C::Mor>,
    probes: &ProbeSet<C::Mor>,
    bound: usize,
) -> Result<Witness> {
    require_pushout(cat, sq)?;
    let outcome = van_kampen_failure(cat, sq, &probes.probes, bound)?;
    let w = Witness::from_outcome("is_van_kampen", cat.descriptor(), sq.to_json(cat), outcome);
    Ok(match probes.bound() {
        Some(b) if b == bound => w.with_bound(bound),
        _ => w
            .with_detail(json!({
                "probes": probes.probes.iter().map(|d| cat.mor_to_json(d)).collect::<Vec<_>>(),
            }))
            .with_bound(bound),
    })
}
