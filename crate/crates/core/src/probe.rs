//! Finite probe families standing in for "all morphisms into D".

use crate::category::Category;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbePolicy {
    /// Every morphism into the target from an object of size at most the bound.
    Exhaustive(usize),
    /// An explicit list.
    Supplied,
}

#[derive(Debug, Clone)]
pub struct ProbeSet<M> {
    pub policy: ProbePolicy,
    pub probes: Vec<M>,
}

impl<M: Clone> ProbeSet<M> {
    pub fn exhaustive<C: Category<Mor = M>>(cat: &C, target: &C::Obj, bound: usize) -> Result<Self> {
        Ok(ProbeSet { policy: ProbePolicy::Exhaustive(bound), probes: probes_into(cat, target, bound)? })
    }

    pub fn supplied(probes: Vec<M>) -> Self {
        ProbeSet { policy: ProbePolicy::Supplied, probes }
    }

    pub fn bound(&self) -> Option<usize> {
        match self.policy {
            ProbePolicy::Exhaustive(b) => Some(b),
            ProbePolicy::Supplied => None,
        }
    }
}

/// All morphisms into `target` from objects of size at most `bound`, in
/// canonical order.
pub fn probes_into<C: Category>(cat: &C, target: &C::Obj, bound: usize) -> Result<Vec<C::Mor>> {
    let mut out = Vec::new();
    for x in cat.objects(bound)? {
        out.extend(cat.hom(&x, target));
    }
    Ok(out)
}

/// All morphisms out of `source` into objects of size at most `bound`.
pub fn probes_from<C: Category>(cat: &C, source: &C::Obj, bound: usize) -> Result<Vec<C::Mor>> {
    let mut out = Vec::new();
    for x in cat.objects(bound)? {
        out.extend(cat.hom(source, &x));
    }
    Ok(out)
}
